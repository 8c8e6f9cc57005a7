#include "bvpkit/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "bvpkit/errors.hpp"

namespace bvpkit {

BandedSystem::BandedSystem(std::size_t dimension, std::size_t lower_bandwidth,
                           std::size_t upper_bandwidth)
    : n_(dimension),
      kl_(lower_bandwidth),
      ku_(upper_bandwidth),
      bands_(dimension * (lower_bandwidth + upper_bandwidth + 1), 0.0) {
    if (dimension == 0) {
        throw DomainError("banded system dimension must be positive");
    }
}

bool BandedSystem::in_band(std::size_t i, std::size_t j) const noexcept {
    return i < n_ && j < n_ && j + kl_ >= i && j <= i + ku_;
}

double& BandedSystem::at(std::size_t i, std::size_t j) {
    if (!in_band(i, j)) {
        throw std::out_of_range("banded access outside the declared band");
    }
    return bands_[i * (kl_ + ku_ + 1) + (j + kl_ - i)];
}

double BandedSystem::at(std::size_t i, std::size_t j) const {
    return const_cast<BandedSystem*>(this)->at(i, j);
}

double BandedSystem::entry(std::size_t i, std::size_t j) const noexcept {
    return in_band(i, j) ? bands_[i * (kl_ + ku_ + 1) + (j + kl_ - i)] : 0.0;
}

std::vector<double> BandedSystem::multiply(std::span<const double> x) const {
    if (x.size() != n_) {
        throw DomainError("vector length does not match the banded system");
    }
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t lo = i > kl_ ? i - kl_ : 0;
        const std::size_t hi = std::min(n_ - 1, i + ku_);
        for (std::size_t j = lo; j <= hi; ++j) {
            y[i] += entry(i, j) * x[j];
        }
    }
    return y;
}

double BandedSystem::norm_inf() const noexcept {
    double worst = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        double row = 0;
        for (std::size_t j = (i > kl_ ? i - kl_ : 0); j <= std::min(n_ - 1, i + ku_); ++j) {
            row += std::abs(entry(i, j));
        }
        worst = std::max(worst, row);
    }
    return worst;
}

BandedSystem BandedSystem::identity(std::size_t dimension) {
    BandedSystem id(dimension);
    for (std::size_t i = 0; i < dimension; ++i) {
        id.at(i, i) = 1.0;
    }
    return id;
}

namespace {

// LU workspace: row i holds columns i - kl .. i + kl + ku.
class Workspace {
public:
    explicit Workspace(const BandedSystem& a)
        : n_(a.dimension()),
          kl_(a.lower_bandwidth()),
          width_(2 * a.lower_bandwidth() + a.upper_bandwidth() + 1),
          cells_(n_ * width_, 0.0) {
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t lo = i > kl_ ? i - kl_ : 0;
            const std::size_t hi = std::min(n_ - 1, i + a.upper_bandwidth());
            for (std::size_t j = lo; j <= hi; ++j) {
                (*this)(i, j) = a.entry(i, j);
            }
        }
    }

    double& operator()(std::size_t i, std::size_t j) {
        if (j + kl_ < i || j + kl_ - i >= width_) {
            throw std::logic_error("banded LU stepped outside its fill band");
        }
        return cells_[i * width_ + (j + kl_ - i)];
    }

    std::size_t fill_reach() const noexcept { return width_ - kl_ - 1; }

private:
    std::size_t n_;
    std::size_t kl_;
    std::size_t width_;
    std::vector<double> cells_;
};

}  // namespace

std::vector<double> solve_banded(const BandedSystem& system, std::span<const double> rhs) {
    const std::size_t n = system.dimension();
    if (rhs.size() != n) {
        throw DomainError("right-hand side length does not match the banded system");
    }
    const std::size_t kl = system.lower_bandwidth();
    Workspace lu(system);
    const std::size_t reach = lu.fill_reach();
    std::vector<double> b(rhs.begin(), rhs.end());

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t last_row = std::min(n - 1, k + kl);
        const std::size_t last_col = std::min(n - 1, k + reach);

        std::size_t pivot = k;
        for (std::size_t i = k + 1; i <= last_row; ++i) {
            if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) {
                pivot = i;
            }
        }
        if (lu(pivot, k) == 0.0) {
            throw SingularMatrixError(k);
        }
        if (pivot != k) {
            for (std::size_t j = k; j <= last_col; ++j) {
                std::swap(lu(k, j), lu(pivot, j));
            }
            std::swap(b[k], b[pivot]);
        }
        for (std::size_t i = k + 1; i <= last_row; ++i) {
            const double m = lu(i, k) / lu(k, k);
            if (m == 0.0) {
                continue;
            }
            lu(i, k) = 0.0;
            for (std::size_t j = k + 1; j <= last_col; ++j) {
                lu(i, j) -= m * lu(k, j);
            }
            b[i] -= m * b[k];
        }
    }

    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j <= std::min(n - 1, i + reach); ++j) {
            s -= lu(i, j) * x[j];
        }
        x[i] = s / lu(i, i);
    }

    const auto check = system.multiply(x);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(check[i] - rhs[i])) {
            throw Error("banded solve produced a non-finite residual");
        }
    }
    return x;
}

}  // namespace bvpkit
