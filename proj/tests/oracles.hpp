// Reference computations used only by tests. Nothing here calls into the
// solver paths it is used to check.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

// Independent scipy DOP853 (rtol 1e-13) + Brent root of v(10; p) on the Kerr problem.
inline constexpr double decaying_amplitude = 1.5600196298695;
inline constexpr double one_node_amplitude = 2.3560857077597;
// v(10; p) for the bracket ends, same oracle.
inline constexpr double terminal_at_1_5 = 0.5732643270;
inline constexpr double terminal_at_2_0 = -0.6344149564;
inline constexpr double terminal_at_2_5 = 0.3640077797;

using Dense = std::vector<std::vector<double>>;

/// Gaussian elimination with partial pivoting on a full matrix.
inline std::vector<double> dense_solve(Dense a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
        }
        if (a[p][k] == 0.0) throw std::runtime_error("dense oracle: singular");
        std::swap(a[p], a[k]);
        std::swap(b[p], b[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= m * a[k][j];
            b[i] -= m * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

/// Central-difference Jacobian of F at x, perturbation scale * max(1, |x_j|).
inline Dense numerical_jacobian(const std::function<std::vector<double>(const std::vector<double>&)>& f,
                                const std::vector<double>& x, double scale = 1e-7) {
    const std::size_t n = x.size();
    Dense jac(f(x).size(), std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        const double step = scale * std::max(1.0, std::abs(x[j]));
        auto plus = x;
        auto minus = x;
        plus[j] += step;
        minus[j] -= step;
        const auto fp = f(plus);
        const auto fm = f(minus);
        for (std::size_t i = 0; i < fp.size(); ++i) jac[i][j] = (fp[i] - fm[i]) / (2 * step);
    }
    return jac;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace oracle
