#pragma once

#include <concepts>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "bvpkit/errors.hpp"

namespace bvpkit {

/// Second-order two-point problem v'' = f(r, v, v') on [domain_start, domain_end]
/// with v'(domain_start) = left_neumann and v(domain_end) = right_dirichlet.
///
/// `singular_offset` shifts the start of IVP integration away from a
/// coefficient singularity at domain_start; the finite-difference engine
/// never evaluates f at domain_start and ignores it.
template <std::floating_point Real>
struct BasicProblem {
    using Function = std::function<Real(Real r, Real v, Real vp)>;

    Real domain_start = 0;
    Real domain_end = 1;
    Real singular_offset = 0;
    Function rhs;
    Function rhs_dv;   // df/dv
    Function rhs_dvp;  // df/dv'
    Real left_neumann = 0;
    Real right_dirichlet = 0;

    void validate() const {
        if (!(domain_start < domain_end)) {
            throw DomainError("problem domain must satisfy domain_start < domain_end");
        }
        if (!(singular_offset >= 0) || !(singular_offset < domain_end - domain_start)) {
            throw DomainError("singular_offset must lie in [0, domain_end - domain_start)");
        }
        if (!rhs || !rhs_dv || !rhs_dvp) {
            throw DomainError("problem is missing its right-hand side or a partial derivative");
        }
    }
};

using ProblemDefinition = BasicProblem<double>;

/// Uniform grid of n_subintervals + 1 nodes.
class Mesh {
public:
    Mesh(double a, double b, int n_subintervals);

    int n_subintervals() const noexcept { return n_; }
    double spacing() const noexcept { return h_; }
    std::span<const double> nodes() const noexcept { return nodes_; }
    double node(std::size_t i) const { return nodes_.at(i); }
    double start() const noexcept { return nodes_.front(); }
    double end() const noexcept { return nodes_.back(); }

private:
    int n_;
    double h_;
    std::vector<double> nodes_;
};

Mesh build_mesh(double a, double b, int n);

/// Sampled solution curve: strictly increasing abscissae paired with values.
class SolutionProfile {
public:
    SolutionProfile(std::vector<double> abscissae, std::vector<double> values);

    std::span<const double> abscissae() const noexcept { return r_; }
    std::span<const double> values() const noexcept { return v_; }
    std::size_t size() const noexcept { return r_.size(); }

    /// Piecewise-linear interpolation; r must lie inside [front, back].
    double interpolate(double r) const;

    SolutionProfile negated() const;

    friend bool operator==(const SolutionProfile&, const SolutionProfile&) = default;

private:
    std::vector<double> r_;
    std::vector<double> v_;
};

enum class Method { shooting, finite_difference };

std::string_view to_string(Method m) noexcept;

struct SolverReport {
    Method method = Method::shooting;
    int iterations = 0;
    bool converged = false;
    /// |v(b) - beta| for shooting, Euclidean norm of the last Newton update for FDM.
    double final_metric = 0;
    double tolerance = 0;
    std::vector<double> history;
};

/// Zero crossings between samples whose magnitude exceeds dead_band;
/// samples inside the band are skipped.
int count_sign_changes(const SolutionProfile& profile, double dead_band);
int count_sign_changes(std::span<const double> values, double dead_band);

/// max over p1's abscissae in the common domain of |p1(r) - p2(r)|, p2 linearly interpolated.
double profile_max_abs_difference(const SolutionProfile& p1, const SolutionProfile& p2);

}  // namespace bvpkit
