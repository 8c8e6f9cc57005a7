#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bvpkit {

/// Square matrix with nonzeros confined to lower_bandwidth sub- and
/// upper_bandwidth super-diagonals, stored row by row.
class BandedSystem {
public:
    explicit BandedSystem(std::size_t dimension, std::size_t lower_bandwidth = 1,
                          std::size_t upper_bandwidth = 2);

    std::size_t dimension() const noexcept { return n_; }
    std::size_t lower_bandwidth() const noexcept { return kl_; }
    std::size_t upper_bandwidth() const noexcept { return ku_; }

    bool in_band(std::size_t i, std::size_t j) const noexcept;

    /// Throws std::out_of_range for (i, j) outside the band.
    double& at(std::size_t i, std::size_t j);
    double at(std::size_t i, std::size_t j) const;

    /// Entry value, zero outside the band.
    double entry(std::size_t i, std::size_t j) const noexcept;

    std::vector<double> multiply(std::span<const double> x) const;
    double norm_inf() const noexcept;

    static BandedSystem identity(std::size_t dimension);

private:
    std::size_t n_;
    std::size_t kl_;
    std::size_t ku_;
    std::vector<double> bands_;
};

/// Solves A x = rhs by banded LU with partial pivoting. Row interchanges widen
/// the upper band of U to lower + upper. Throws SingularMatrixError on an exact
/// zero pivot.
std::vector<double> solve_banded(const BandedSystem& system, std::span<const double> rhs);

}  // namespace bvpkit
