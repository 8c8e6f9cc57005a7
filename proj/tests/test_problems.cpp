#include <cmath>
#include <random>

#include "bvpkit/fdm.hpp"
#include "bvpkit/problems.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bvpkit;
using doctest::Approx;

TEST_SUITE("problems") {

TEST_CASE("kerr_rhs values") {
    CHECK(kerr_rhs(1.0, 1.0, 0.0) == -1.0);
    CHECK(kerr_rhs(2.0, 0.5, -0.1) == Approx(0.3).epsilon(1e-15));
    for (double r : {1e-6, 0.5, 3.0, 1e3}) {
        CHECK(kerr_rhs(r, 0.0, 0.0) == 0.0);
    }
    CHECK_THROWS_AS(kerr_rhs(0.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(kerr_rhs(-1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("kerr partials") {
    CHECK(kerr_dv(0.0) == 1.0);
    CHECK(kerr_dv(1.0) == -5.0);
    CHECK(kerr_dvp(2.0) == -0.5);
    CHECK_THROWS_AS(kerr_dvp(0.0), DomainError);
}

TEST_CASE("kerr_rhs is odd in (v, v')") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> r(1e-3, 10.0);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double x = r(rng), v = u(rng), vp = u(rng);
        CHECK(kerr_rhs(x, -v, -vp) == -kerr_rhs(x, v, vp));
    }
}

TEST_CASE("kerr partials match central differences") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> r(1e-2, 10.0);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const double x = r(rng), v = u(rng), vp = u(rng);
        const double dv = 1e-5 * std::max(1.0, std::abs(v));
        const double fd_v = (kerr_rhs(x, v + dv, vp) - kerr_rhs(x, v - dv, vp)) / (2 * dv);
        CHECK(kerr_dv(v) == Approx(fd_v).epsilon(1e-8).scale(1.0));
        const double dp = 1e-5 * std::max(1.0, std::abs(vp));
        const double fd_p = (kerr_rhs(x, v, vp + dp) - kerr_rhs(x, v, vp - dp)) / (2 * dp);
        CHECK(kerr_dvp(x) == Approx(fd_p).epsilon(1e-8));
    }
}

TEST_CASE("kerr_problem fields") {
    const auto p = kerr_problem();
    CHECK(p.domain_start == 0.0);
    CHECK(p.domain_end == 10.0);
    CHECK(p.singular_offset == 1e-6);
    CHECK(p.left_neumann == 0.0);
    CHECK(p.right_dirichlet == 0.0);
    CHECK(p.rhs(2.0, 0.5, -0.1) == kerr_rhs(2.0, 0.5, -0.1));
    CHECK(kerr_problem(30.0).domain_end == 30.0);
    CHECK_THROWS_AS(kerr_problem(-1.0), DomainError);
}

TEST_CASE("guess_decaying") {
    const Mesh mesh = build_mesh(0.0, 10.0, 100);
    const auto w = guess_decaying(mesh);
    REQUIRE(w.interior.size() == 100);
    CHECK(w.boundary_value == 0.0);
    CHECK(w.interior[0] == Approx(2.0 * std::exp(-0.2)));
    CHECK(w.interior[0] == Approx(1.637462).epsilon(1e-6));
    CHECK(w.interior[98] == Approx(9.0799859525e-5).epsilon(1e-9));
    for (std::size_t i = 1; i < w.interior.size(); ++i) {
        CHECK(w.interior[i] < w.interior[i - 1]);
        CHECK(w.interior[i] > 0.0);
    }
    CHECK(count_sign_changes(w.interior, 0.0) == 0);
}

TEST_CASE("guess_one_node") {
    const Mesh mesh = build_mesh(0.0, 10.0, 100);
    const auto w = guess_one_node(mesh);
    REQUIRE(w.interior.size() == 100);
    CHECK(w.interior[0] == Approx(6.0 * std::exp(-0.4) - 1.0));
    CHECK(w.interior[0] == Approx(3.021924).epsilon(1e-6));
    // 1/(1 + e^{-100 + 100/3}) - 1, rounds to zero in double.
    CHECK(std::abs(w.interior[99]) < 1e-15);
    // Branch switch between i = 30 ((i-1) h = 2.9) and i = 31 ((i-1) h = 3.0).
    CHECK(w.interior[29] == Approx(6.0 * std::exp(-0.2 * 31) - 1.0));
    CHECK(w.interior[30] == Approx(1.0 / (1.0 + std::exp(-31.0 + 100.0 / 3.0)) - 1.0));
    CHECK(count_sign_changes(w.interior, 0.0) == 1);
}

TEST_CASE("resampled guesses") {
    const Mesh reference = build_mesh(0.0, 10.0, 100);
    const auto same = resampled_guess(&guess_one_node, reference);
    CHECK(same.interior == guess_one_node(reference).interior);

    const Mesh fine = build_mesh(0.0, 10.0, 400);
    const auto coarse = guess_decaying(reference);
    const auto w = resampled_guess(&guess_decaying, fine);
    REQUIRE(w.interior.size() == 400);
    for (std::size_t i = 0; i < 100; ++i) CHECK(w.interior[4 * i] == doctest::Approx(coarse.interior[i]).epsilon(1e-14));
    CHECK(w.interior[2] == doctest::Approx(0.5 * (coarse.interior[0] + coarse.interior[1])));
    CHECK(count_sign_changes(resampled_guess(&guess_one_node, fine).interior, 0.0) == 1);

    // The literal index formula on the fine mesh sits in the basin of the zero solution.
    FdmConfig config;
    config.tolerance = 1e-9;
    const auto literal = newton_solve(kerr_problem(), fine, guess_decaying(fine), config);
    const auto resampled = newton_solve(kerr_problem(), fine, w, config);
    REQUIRE(resampled.report.converged);
    CHECK(std::abs(resampled.profile.values().front() - oracle::decaying_amplitude) < 1e-3);
    CHECK(std::abs(literal.profile.values().front()) < 1e-6);
}

TEST_CASE("manufactured solution closed forms") {
    const ManufacturedSolution ms;
    for (double r : {0.1, 0.7, 1.3, 2.0, 4.5}) {
        const double d = 1e-5;
        CHECK(ms.derivative(r) == Approx((ms.value(r + d) - ms.value(r - d)) / (2 * d)).epsilon(1e-8));
        CHECK(ms.second_derivative(r) ==
              Approx((ms.derivative(r + d) - ms.derivative(r - d)) / (2 * d)).epsilon(1e-8));
        const double g = ms.second_derivative(r) + ms.derivative(r) / r - ms.value(r) +
                         2 * std::pow(ms.value(r), 3);
        CHECK(ms.forcing(r) == Approx(g).epsilon(1e-12).scale(1.0));
    }
    CHECK(std::isfinite(ms.forcing(0.0)));
    // scale sqrt(2): g(0) = -2 - 1 + 2
    CHECK(ms.forcing(0.0) == Approx(-1.0));

    const auto p = manufactured_problem(ms);
    CHECK(p.left_neumann == 0.0);
    CHECK(p.right_dirichlet == Approx(std::exp(-50.0)));
    for (double r : {0.3, 1.0, 2.5}) {
        CHECK(p.rhs(r, ms.value(r), ms.derivative(r)) == Approx(ms.second_derivative(r)).epsilon(1e-12));
    }
}

TEST_CASE("manufactured residual is second order") {
    const ManufacturedSolution ms;
    const auto p = manufactured_problem(ms);
    double previous = 0;
    for (int n : {100, 200, 400, 800}) {
        const Mesh mesh = build_mesh(0.0, 10.0, n);
        GridFunction w{std::vector<double>(static_cast<std::size_t>(n)), p.right_dirichlet};
        for (int i = 0; i < n; ++i) w.interior[static_cast<std::size_t>(i)] = ms.value(mesh.node(static_cast<std::size_t>(i)));
        const auto f = assemble_residual(p, mesh, w);
        // Interior rows carry h^2 times the truncation error.
        double tau = 0;
        for (std::size_t k = 1; k < f.size(); ++k) tau = std::max(tau, std::abs(f[k]));
        tau /= mesh.spacing() * mesh.spacing();
        if (previous > 0) {
            CHECK(previous / tau == Approx(4.0).epsilon(0.1));
        }
        previous = tau;
    }
}

TEST_CASE("newton recovers the manufactured solution from 0.9 v*") {
    const ManufacturedSolution ms;
    const auto p = manufactured_problem(ms);
    const Mesh mesh = build_mesh(0.0, 10.0, 400);
    GridFunction w0{std::vector<double>(400), p.right_dirichlet};
    for (std::size_t i = 0; i < 400; ++i) w0.interior[i] = 0.9 * ms.value(mesh.node(i));
    FdmConfig config;
    config.tolerance = 1e-12;
    const auto result = newton_solve(p, mesh, w0, config);
    REQUIRE(result.report.converged);
    double err = 0;
    for (std::size_t i = 0; i < mesh.nodes().size(); ++i) {
        err = std::max(err, std::abs(result.profile.values()[i] - ms.value(mesh.node(i))));
    }
    const double h = mesh.spacing();
    CHECK(err < 1.0 * h * h);
}

TEST_CASE("narrow Gaussian manufactured problem folds on coarse meshes") {
    // v* = exp(-r^2): the discrete system has no root near v* at N = 100,
    // so plain Newton wanders until the budget runs out.
    const ManufacturedSolution narrow{1.0};
    const auto p = manufactured_problem(narrow);
    const Mesh mesh = build_mesh(0.0, 10.0, 100);
    GridFunction w0{std::vector<double>(100), p.right_dirichlet};
    for (std::size_t i = 0; i < 100; ++i) w0.interior[i] = narrow.value(mesh.node(i));
    FdmConfig config;
    config.tolerance = 1e-10;
    config.max_iterations = 60;
    const auto result = newton_solve(p, mesh, w0, config);
    CHECK_FALSE(result.report.converged);
}

}
