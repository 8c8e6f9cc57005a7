#pragma once

#include <cmath>
#include <concepts>

#include "bvpkit/core.hpp"
#include "bvpkit/errors.hpp"
#include "bvpkit/fdm.hpp"

namespace bvpkit {

/// v'' = -(1/r) v' + v - 2 v^3, the radial beam-profile equation of a Kerr medium.
template <std::floating_point Real>
Real kerr_rhs(Real r, Real v, Real vp) {
    if (!(r > 0)) {
        throw DomainError("Kerr right-hand side is singular at r <= 0");
    }
    return -vp / r + v - 2 * v * v * v;
}

template <std::floating_point Real>
Real kerr_dv(Real v) {
    return 1 - 6 * v * v;
}

template <std::floating_point Real>
Real kerr_dvp(Real r) {
    if (!(r > 0)) {
        throw DomainError("Kerr right-hand side is singular at r <= 0");
    }
    return -1 / r;
}

inline constexpr double kerr_singular_offset = 1e-6;

/// Kerr problem on [0, domain_end] with v'(0) = 0 and v(domain_end) = 0.
template <std::floating_point Real = double>
BasicProblem<Real> kerr_problem(Real domain_end = 10) {
    BasicProblem<Real> p;
    p.domain_start = 0;
    p.domain_end = domain_end;
    p.singular_offset = static_cast<Real>(kerr_singular_offset);
    p.rhs = [](Real r, Real v, Real vp) { return kerr_rhs(r, v, vp); };
    p.rhs_dv = [](Real, Real v, Real) { return kerr_dv(v); };
    p.rhs_dvp = [](Real r, Real, Real) { return kerr_dvp(r); };
    p.left_neumann = 0;
    p.right_dirichlet = 0;
    p.validate();
    return p;
}

/// w_i = 2 exp(-0.1 (i + 1)), i = 1..N. A guess for the node-free profile at N = 100 on [0, 10].
GridFunction guess_decaying(const Mesh& mesh, double boundary_value = 0.0);

/// Piecewise guess for the one-node profile: 6 exp(-0.2 (i + 1)) - 1 while
/// a + (i - 1) h < 3, then 1 / (1 + exp(N/3 - i)) - 1.
GridFunction guess_one_node(const Mesh& mesh, double boundary_value = 0.0);

using GuessGenerator = GridFunction (*)(const Mesh&, double);

/// Evaluates `guess` on a reference_n-subinterval mesh of the same interval and
/// interpolates it linearly onto `mesh`. Identical to `guess(mesh)` when the
/// subinterval counts match.
GridFunction resampled_guess(GuessGenerator guess, const Mesh& mesh, double boundary_value = 0.0,
                             int reference_n = 100);

/// Closed-form solution v*(r) = exp(-(r/scale)^2) used to manufacture a forcing term.
struct ManufacturedSolution {
    double scale = std::sqrt(2.0);

    double value(double r) const;
    double derivative(double r) const;
    double second_derivative(double r) const;
    /// g(r) = v*'' + v*'/r - v* + 2 v*^3 with the 1/r factor cancelled analytically.
    double forcing(double r) const;
};

/// Kerr operator plus forcing g so that `solution` is exact:
/// v'' = -(1/r) v' + v - 2 v^3 + g(r), v'(0) = 0, v(domain_end) = v*(domain_end).
ProblemDefinition manufactured_problem(const ManufacturedSolution& solution = {},
                                       double domain_end = 10.0);

}  // namespace bvpkit
