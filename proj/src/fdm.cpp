#include "bvpkit/fdm.hpp"

#include <cmath>
#include <numeric>

#include "bvpkit/errors.hpp"

namespace bvpkit {

void FdmConfig::validate() const {
    if (!(tolerance > 0)) {
        throw DomainError("Newton tolerance must be positive");
    }
    if (max_iterations <= 0) {
        throw DomainError("Newton needs a positive iteration budget");
    }
}

namespace {

void check_inputs(const ProblemDefinition& problem, const Mesh& mesh, const GridFunction& w) {
    problem.validate();
    if (mesh.n_subintervals() < 3) {
        throw DomainError("finite-difference system needs at least 3 subintervals");
    }
    if (w.interior.size() != static_cast<std::size_t>(mesh.n_subintervals())) {
        throw DomainError("grid function length does not match the mesh");
    }
    if (mesh.start() != problem.domain_start || mesh.end() != problem.domain_end) {
        throw DomainError("mesh does not span the problem domain");
    }
    if (w.boundary_value != problem.right_dirichlet) {
        throw DomainError("grid function boundary value must equal the right Dirichlet data");
    }
}

// w_j for j in 0..N, with w_N the pinned boundary value.
double value(const GridFunction& w, std::size_t j) {
    return j < w.interior.size() ? w.interior[j] : w.boundary_value;
}

}  // namespace

std::vector<double> assemble_residual(const ProblemDefinition& problem, const Mesh& mesh,
                                      const GridFunction& w) {
    check_inputs(problem, mesh, w);
    const auto n = w.interior.size();
    const double h = mesh.spacing();

    std::vector<double> f(n);
    f[0] = (-1.5 * value(w, 0) + 2.0 * value(w, 1) - 0.5 * value(w, 2)) / h - problem.left_neumann;
    for (std::size_t k = 1; k < n; ++k) {
        const double left = value(w, k - 1);
        const double centre = value(w, k);
        const double right = value(w, k + 1);
        const double slope = (right - left) / (2.0 * h);
        f[k] = -left + 2.0 * centre - right + h * h * problem.rhs(mesh.node(k), centre, slope);
    }
    return f;
}

BandedSystem assemble_jacobian(const ProblemDefinition& problem, const Mesh& mesh,
                               const GridFunction& w, JacobianVariant variant) {
    check_inputs(problem, mesh, w);
    const auto n = w.interior.size();
    const double h = mesh.spacing();

    BandedSystem jac(n, 1, 2);
    jac.at(0, 0) = -3.0 / (2.0 * h);
    jac.at(0, 1) = 2.0 / h;
    jac.at(0, 2) = -1.0 / (2.0 * h);

    for (std::size_t k = 1; k < n; ++k) {
        const double r = mesh.node(k);
        const double centre = value(w, k);
        const double slope = (value(w, k + 1) - value(w, k - 1)) / (2.0 * h);
        const double dvp = problem.rhs_dvp(r, centre, slope);

        jac.at(k, k - 1) = -1.0 - 0.5 * h * dvp;
        jac.at(k, k) = 2.0 + h * h * problem.rhs_dv(r, centre, slope);
        if (k + 1 < n) {
            jac.at(k, k + 1) = -1.0 + 0.5 * h * dvp;
        }
    }
    if (variant == JacobianVariant::listing) {
        jac.at(1, 0) = 0.0;
    }
    return jac;
}

FdmResult newton_solve(const ProblemDefinition& problem, const Mesh& mesh, const GridFunction& w0,
                       const FdmConfig& config) {
    config.validate();
    check_inputs(problem, mesh, w0);

    GridFunction w = w0;
    SolverReport report;
    report.method = Method::finite_difference;
    report.tolerance = config.tolerance;

    for (int solve = 1; solve <= config.max_iterations; ++solve) {
        auto residual = assemble_residual(problem, mesh, w);
        const auto jac = assemble_jacobian(problem, mesh, w, config.jacobian);
        bool finite = std::isfinite(jac.norm_inf());
        for (double& x : residual) {
            finite = finite && std::isfinite(x);
            x = -x;
        }
        if (!finite) {
            report.iterations = solve;
            throw DivergenceError(solve);
        }
        const auto delta = solve_banded(jac, residual);
        const double norm =
            std::sqrt(std::inner_product(delta.begin(), delta.end(), delta.begin(), 0.0));

        report.iterations = solve;
        report.history.push_back(norm);
        report.final_metric = norm;
        if (!std::isfinite(norm)) {
            throw DivergenceError(solve);
        }
        if (norm < config.tolerance) {
            report.converged = true;
            break;
        }
        for (std::size_t i = 0; i < delta.size(); ++i) {
            w.interior[i] += delta[i];
            if (!std::isfinite(w.interior[i])) {
                throw DivergenceError(solve);
            }
        }
    }

    std::vector<double> values(w.interior);
    values.push_back(w.boundary_value);
    std::vector<double> nodes(mesh.nodes().begin(), mesh.nodes().end());
    return {SolutionProfile(std::move(nodes), std::move(values)), std::move(w), std::move(report)};
}

}  // namespace bvpkit
