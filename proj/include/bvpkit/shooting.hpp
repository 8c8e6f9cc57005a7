#pragma once

#include <cmath>
#include <concepts>
#include <optional>
#include <sstream>

#include "bvpkit/core.hpp"
#include "bvpkit/errors.hpp"
#include "bvpkit/ivp.hpp"

namespace bvpkit {

/// Which bracket end moves when the terminal value lands above the target
/// (terminal - beta > 0).
enum class Orientation {
    overshoot_raises_lower,  // excess => lower = p
    overshoot_raises_upper,  // excess => upper = p
};

/// Search interval for the unknown initial value p = v(a).
struct BracketSpec {
    double lower = 0;
    double upper = 1;
    Orientation orientation = Orientation::overshoot_raises_upper;

    void validate() const {
        if (!(lower < upper)) {
            throw DomainError("bracket requires lower < upper");
        }
    }
};

struct ShootingConfig {
    double tolerance = 1e-6;
    int max_iterations = 100;
    IntegratorConfig integrator;
    /// Check before bisecting that the bracket ends straddle the target in the
    /// configured orientation.
    bool validate_bracket = true;

    void validate() const {
        if (!(tolerance > 0)) {
            throw DomainError("shooting tolerance must be positive");
        }
        if (max_iterations <= 0) {
            throw DomainError("shooting needs a positive iteration budget");
        }
        integrator.validate();
    }
};

template <std::floating_point Real>
struct Shot {
    SolutionProfile profile;
    /// v(domain_end)
    Real terminal;
};

template <std::floating_point Real>
struct ShootingResult {
    SolutionProfile profile;
    Real p_star;
    SolverReport report;
    /// Bisection interval after the last update.
    Real final_lower;
    Real final_upper;
};

/// Integrates the IVP v(a + offset) = p, v'(a + offset) = alpha up to domain_end.
template <std::floating_point Real>
Shot<Real> shoot_once(const BasicProblem<Real>& problem, Real p, const ShootingConfig& config) {
    if (!std::isfinite(p)) {
        throw DomainError("shooting parameter must be finite");
    }
    auto system = [&problem](Real r, Real v, Real vp) -> std::array<Real, 2> {
        return {vp, problem.rhs(r, v, vp)};
    };
    const IvpState<Real> start{problem.domain_start + problem.singular_offset, p,
                               problem.left_neumann};
    try {
        auto result = integrate(system, start, problem.domain_end, config.integrator);
        return {std::move(result.trajectory), result.final.value};
    } catch (const IntegrationError& e) {
        throw e.with_parameter(static_cast<double>(p));
    }
}

/// Bisection on p = v(a) until |v(b) - beta| < tolerance.
///
/// The first midpoint counts as iteration 1 and the convergence check follows
/// each evaluation. When the budget runs out the result is flagged unconverged
/// and carries the evaluated midpoint with the smallest mismatch.
template <std::floating_point Real>
ShootingResult<Real> solve_shooting(const BasicProblem<Real>& problem, const BracketSpec& bracket,
                                    const ShootingConfig& config) {
    problem.validate();
    bracket.validate();
    config.validate();

    const Real beta = problem.right_dirichlet;
    // Positive means p is too large.
    auto adjusted = [&](Real terminal) {
        const Real excess = terminal - beta;
        return bracket.orientation == Orientation::overshoot_raises_upper ? excess : -excess;
    };

    Real lower = static_cast<Real>(bracket.lower);
    Real upper = static_cast<Real>(bracket.upper);

    if (config.validate_bracket) {
        const Real s_lo = adjusted(shoot_once(problem, lower, config).terminal);
        const Real s_hi = adjusted(shoot_once(problem, upper, config).terminal);
        if (s_lo > 0 || s_hi < 0) {
            std::ostringstream os;
            os << "bracket [" << bracket.lower << ", " << bracket.upper
               << "] does not straddle the target in the configured orientation"
               << " (adjusted mismatch " << static_cast<double>(s_lo) << " at lower, "
               << static_cast<double>(s_hi) << " at upper)";
            throw BracketError(os.str());
        }
    }

    SolverReport report;
    report.method = Method::shooting;
    report.tolerance = config.tolerance;

    std::optional<Shot<Real>> best;
    Real best_p = 0;
    double best_metric = 0;

    for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
        const Real p = (lower + upper) / 2;
        Shot<Real> shot = shoot_once(problem, p, config);
        const auto metric = static_cast<double>(std::abs(shot.terminal - beta));
        const Real side = adjusted(shot.terminal);
        report.history.push_back(metric);
        report.iterations = iteration;

        const bool converged = metric < config.tolerance;
        if (converged || !best || metric < best_metric) {
            best_metric = metric;
            best_p = p;
            best.emplace(std::move(shot));
        }
        if (converged) {
            report.converged = true;
            break;
        }
        if (side > 0) {
            upper = p;
        } else {
            lower = p;
        }
    }
    report.final_metric = best_metric;
    return {std::move(best->profile), best_p, std::move(report), lower, upper};
}

}  // namespace bvpkit
