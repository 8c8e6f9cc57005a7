#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <vector>

#include "bvpkit/core.hpp"
#include "bvpkit/errors.hpp"

namespace bvpkit {

/// State of the first-order system y = (v, v') at abscissa r.
template <std::floating_point Real>
struct IvpState {
    Real position = 0;
    Real value = 0;
    Real derivative = 0;
};

struct IntegratorConfig {
    double rel_tolerance = 1e-8;
    double abs_tolerance = 1e-10;
    double initial_step = 1e-3;
    double min_step = 1e-12;
    double max_step = 0.5;
    int max_steps = 100000;

    void validate() const;

    /// Every step has length h; loose tolerances so no step is rejected on accuracy grounds.
    static IntegratorConfig fixed_step(double h);
};

/// Right-hand side of the first-order system: (r, v, v') -> (v', v'').
template <typename F, typename Real>
concept PlanarSystem = std::floating_point<Real> && requires(const F& f, Real r, Real v, Real vp) {
    { f(r, v, vp) } -> std::convertible_to<std::array<Real, 2>>;
};

template <std::floating_point Real>
struct StepAttempt {
    IvpState<Real> candidate;
    /// Scaled max-norm of the embedded error; +inf when a stage was non-finite.
    Real error_estimate;
};

template <std::floating_point Real>
struct IntegrationResult {
    SolutionProfile trajectory;
    IvpState<Real> final;
    int accepted_steps = 0;
    int rejected_steps = 0;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
template <std::floating_point Real>
struct DormandPrince {
    static constexpr Real c[7] = {0, Real(1) / 5, Real(3) / 10, Real(4) / 5, Real(8) / 9, 1, 1};
    static constexpr Real a[7][6] = {
        {},
        {Real(1) / 5},
        {Real(3) / 40, Real(9) / 40},
        {Real(44) / 45, Real(-56) / 15, Real(32) / 9},
        {Real(19372) / 6561, Real(-25360) / 2187, Real(64448) / 6561, Real(-212) / 729},
        {Real(9017) / 3168, Real(-355) / 33, Real(46732) / 5247, Real(49) / 176,
         Real(-5103) / 18656},
        {Real(35) / 384, 0, Real(500) / 1113, Real(125) / 192, Real(-2187) / 6784, Real(11) / 84},
    };
    static constexpr Real b5[7] = {Real(35) / 384,     0, Real(500) / 1113, Real(125) / 192,
                                   Real(-2187) / 6784, Real(11) / 84, 0};
    static constexpr Real b4[7] = {Real(5179) / 57600,    0, Real(7571) / 16695, Real(393) / 640,
                                   Real(-92097) / 339200, Real(187) / 2100, Real(1) / 40};
};

template <std::floating_point Real>
using Vec2 = std::array<Real, 2>;

/// Neumaier summation.
template <std::floating_point Real>
class CompensatedSum {
public:
    void add(Real x) {
        const Real t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    Real value() const { return sum_ + carry_; }

private:
    Real sum_ = 0;
    Real carry_ = 0;
};

template <std::floating_point Real>
struct StepOutcome {
    StepAttempt<Real> attempt;
    Vec2<Real> last_stage;  // f at the candidate (FSAL)
};

template <std::floating_point Real, PlanarSystem<Real> System>
StepOutcome<Real> dopri_step(const System& system, const IvpState<Real>& s, Real h,
                             const IntegratorConfig& config, const Vec2<Real>& k1) {
    using T = DormandPrince<Real>;
    constexpr Real inf = std::numeric_limits<Real>::infinity();

    std::array<Vec2<Real>, 7> k;
    k[0] = k1;
    const Vec2<Real> y{s.value, s.derivative};
    for (int stage = 1; stage < 7; ++stage) {
        Vec2<Real> t = y;
        for (int j = 0; j < stage; ++j) {
            t[0] += h * T::a[stage][j] * k[j][0];
            t[1] += h * T::a[stage][j] * k[j][1];
        }
        k[stage] = system(s.position + T::c[stage] * h, t[0], t[1]);
    }

    // Compensated sums so the rounded weights still integrate polynomials exactly.
    Vec2<Real> high;
    Vec2<Real> low;
    for (int c = 0; c < 2; ++c) {
        CompensatedSum<Real> inc5;
        CompensatedSum<Real> inc4;
        for (int j = 0; j < 7; ++j) {
            inc5.add(h * T::b5[j] * k[j][c]);
            inc4.add(h * T::b4[j] * k[j][c]);
        }
        high[c] = y[c] + inc5.value();
        low[c] = y[c] + inc4.value();
    }

    const auto rel = static_cast<Real>(config.rel_tolerance);
    const auto abs = static_cast<Real>(config.abs_tolerance);
    Real err = 0;
    bool finite = std::isfinite(k[6][0]) && std::isfinite(k[6][1]);
    for (int c = 0; c < 2; ++c) {
        finite = finite && std::isfinite(high[c]) && std::isfinite(low[c]);
        err = std::max(err, std::abs(high[c] - low[c]) / (abs + rel * std::abs(high[c])));
    }
    if (!finite || !std::isfinite(err)) {
        err = inf;
    }
    return {{{s.position + h, high[0], high[1]}, err}, k[6]};
}

}  // namespace detail

/// One embedded Dormand-Prince 5(4) step of length h from `state`.
/// The candidate carries the 5th-order solution.
template <std::floating_point Real, PlanarSystem<Real> System>
StepAttempt<Real> rk_attempt_step(const System& system, const IvpState<Real>& state, Real h,
                                  const IntegratorConfig& config) {
    if (!(h > 0)) {
        throw DomainError("step length must be positive");
    }
    const detail::Vec2<Real> k1 = system(state.position, state.value, state.derivative);
    return detail::dopri_step(system, state, h, config, k1).attempt;
}

/// Adaptive integration from start.position to r_end. The final state lands on r_end
/// exactly; the trajectory holds the start and every accepted step.
template <std::floating_point Real, PlanarSystem<Real> System>
IntegrationResult<Real> integrate(const System& system, const IvpState<Real>& start, Real r_end,
                                  const IntegratorConfig& config) {
    config.validate();
    if (!(start.position < r_end)) {
        throw DomainError("integration requires start.position < r_end");
    }

    const auto min_step = static_cast<Real>(config.min_step);
    const auto max_step = static_cast<Real>(config.max_step);
    const Real end_slack = 4 * std::numeric_limits<Real>::epsilon() * std::abs(r_end);

    std::vector<double> rs{static_cast<double>(start.position)};
    std::vector<double> vs{static_cast<double>(start.value)};

    IvpState<Real> state = start;
    auto k1 = system(state.position, state.value, state.derivative);
    Real h = static_cast<Real>(config.initial_step);
    int accepted = 0;
    int rejected = 0;

    while (state.position < r_end) {
        if (accepted + rejected >= config.max_steps) {
            throw IntegrationError(IntegrationError::Kind::step_budget,
                                   static_cast<double>(state.position));
        }
        bool last = false;
        // Accumulated rounding in the position must not leave a sliver step.
        if (state.position + h >= r_end - std::max(end_slack, h * Real(1e-9))) {
            h = r_end - state.position;
            last = true;
        }

        const auto outcome = detail::dopri_step(system, state, h, config, k1);
        const Real err = outcome.attempt.error_estimate;

        Real factor;
        if (err == 0) {
            factor = 5;
        } else if (!std::isfinite(err)) {
            factor = Real(0.2);
        } else {
            factor = std::min(Real(5), std::max(Real(0.2), Real(0.9) * std::pow(err, Real(-0.2))));
        }

        if (err <= 1) {
            state = outcome.attempt.candidate;
            if (last) {
                state.position = r_end;
            }
            k1 = outcome.last_stage;
            ++accepted;
            rs.push_back(static_cast<double>(state.position));
            vs.push_back(static_cast<double>(state.value));
            if (last) {
                break;
            }
        } else {
            ++rejected;
            if (h <= min_step) {
                throw IntegrationError(IntegrationError::Kind::step_underflow,
                                       static_cast<double>(state.position));
            }
        }
        h = std::clamp(h * factor, min_step, max_step);
    }

    return {SolutionProfile(std::move(rs), std::move(vs)), state, accepted, rejected};
}

}  // namespace bvpkit
