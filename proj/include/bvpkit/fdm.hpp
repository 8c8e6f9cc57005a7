#pragma once

#include <span>
#include <vector>

#include "bvpkit/banded.hpp"
#include "bvpkit/core.hpp"

namespace bvpkit {

/// Nodal unknowns w_1..w_N plus the pinned right boundary value w_{N+1}.
struct GridFunction {
    std::vector<double> interior;
    double boundary_value = 0;
};

/// `consistent` is the exact derivative of the residual. `listing` reproduces
/// the historical MATLAB routine, which never assigns the sub-diagonal entry of
/// the second row and so iterates with a zero there; convergence degrades to
/// linear.
enum class JacobianVariant { consistent, listing };

struct FdmConfig {
    /// Threshold on the Euclidean norm of the Newton update.
    double tolerance = 1e-6;
    int max_iterations = 100;
    JacobianVariant jacobian = JacobianVariant::consistent;

    void validate() const;
};

/// Residual of the discrete system. Row 0 is the three-point one-sided
/// derivative at the left end minus alpha; row k (1..N-1) is the centred
/// second difference at node k scaled by -h^2, plus h^2 f at node k with the
/// centred slope.
std::vector<double> assemble_residual(const ProblemDefinition& problem, const Mesh& mesh,
                                      const GridFunction& w);

/// Analytic dF/dw in (1, 2)-banded storage.
BandedSystem assemble_jacobian(const ProblemDefinition& problem, const Mesh& mesh,
                               const GridFunction& w,
                               JacobianVariant variant = JacobianVariant::consistent);

struct FdmResult {
    SolutionProfile profile;
    GridFunction solution;
    SolverReport report;
};

/// Plain Newton iteration. Stops when the update norm drops below the
/// tolerance; that final update is not applied. iterations counts linear solves.
FdmResult newton_solve(const ProblemDefinition& problem, const Mesh& mesh, const GridFunction& w0,
                       const FdmConfig& config);

}  // namespace bvpkit
