#include "bvpkit/problems.hpp"

namespace bvpkit {

GridFunction guess_decaying(const Mesh& mesh, double boundary_value) {
    const int n = mesh.n_subintervals();
    GridFunction w{std::vector<double>(static_cast<std::size_t>(n)), boundary_value};
    for (int i = 1; i <= n; ++i) {
        w.interior[static_cast<std::size_t>(i - 1)] = 2.0 * std::exp(-0.1 * (i + 1));
    }
    return w;
}

GridFunction guess_one_node(const Mesh& mesh, double boundary_value) {
    const int n = mesh.n_subintervals();
    const double h = mesh.spacing();
    GridFunction w{std::vector<double>(static_cast<std::size_t>(n)), boundary_value};
    for (int i = 1; i <= n; ++i) {
        double& wi = w.interior[static_cast<std::size_t>(i - 1)];
        if (mesh.start() + (i - 1) * h < 3.0) {
            wi = 6.0 * std::exp(-0.2 * (i + 1)) - 1.0;
        } else {
            wi = 1.0 / (1.0 + std::exp(-i + n / 3.0)) - 1.0;
        }
    }
    return w;
}

GridFunction resampled_guess(GuessGenerator guess, const Mesh& mesh, double boundary_value,
                             int reference_n) {
    if (mesh.n_subintervals() == reference_n) {
        return guess(mesh, boundary_value);
    }
    const Mesh reference = build_mesh(mesh.start(), mesh.end(), reference_n);
    GridFunction coarse = guess(reference, boundary_value);
    std::vector<double> values = std::move(coarse.interior);
    values.push_back(boundary_value);
    const auto nodes = reference.nodes();
    const SolutionProfile profile(std::vector<double>(nodes.begin(), nodes.end()), std::move(values));
    GridFunction w{std::vector<double>(static_cast<std::size_t>(mesh.n_subintervals())), boundary_value};
    for (std::size_t i = 0; i < w.interior.size(); ++i) {
        w.interior[i] = profile.interpolate(mesh.node(i));
    }
    return w;
}

double ManufacturedSolution::value(double r) const {
    const double x = r / scale;
    return std::exp(-x * x);
}

double ManufacturedSolution::derivative(double r) const {
    const double q = 1.0 / (scale * scale);
    return -2.0 * q * r * value(r);
}

double ManufacturedSolution::second_derivative(double r) const {
    const double q = 1.0 / (scale * scale);
    return (4.0 * q * q * r * r - 2.0 * q) * value(r);
}

double ManufacturedSolution::forcing(double r) const {
    const double q = 1.0 / (scale * scale);
    const double e = value(r);
    // v*'/r = -2 q e
    return (4.0 * q * q * r * r - 4.0 * q - 1.0) * e + 2.0 * e * e * e;
}

ProblemDefinition manufactured_problem(const ManufacturedSolution& solution, double domain_end) {
    ProblemDefinition p;
    p.domain_start = 0.0;
    p.domain_end = domain_end;
    p.singular_offset = kerr_singular_offset;
    p.rhs = [solution](double r, double v, double vp) {
        return kerr_rhs(r, v, vp) + solution.forcing(r);
    };
    p.rhs_dv = [](double, double v, double) { return kerr_dv(v); };
    p.rhs_dvp = [](double r, double, double) { return kerr_dvp(r); };
    p.left_neumann = solution.derivative(0.0);
    p.right_dirichlet = solution.value(domain_end);
    p.validate();
    return p;
}

}  // namespace bvpkit
