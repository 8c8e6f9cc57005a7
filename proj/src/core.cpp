#include "bvpkit/core.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace bvpkit {

Mesh::Mesh(double a, double b, int n_subintervals) : n_(n_subintervals) {
    if (n_subintervals < 2) {
        throw DomainError("mesh needs at least 2 subintervals");
    }
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("mesh interval must be finite with a < b");
    }
    h_ = (b - a) / n_;
    nodes_.resize(static_cast<std::size_t>(n_) + 1);
    for (int i = 0; i < n_; ++i) {
        nodes_[static_cast<std::size_t>(i)] = a + i * h_;
    }
    nodes_.back() = b;
}

Mesh build_mesh(double a, double b, int n) { return Mesh(a, b, n); }

SolutionProfile::SolutionProfile(std::vector<double> abscissae, std::vector<double> values)
    : r_(std::move(abscissae)), v_(std::move(values)) {
    if (r_.size() != v_.size()) {
        throw DomainError("profile abscissae and values differ in length");
    }
    if (r_.size() < 2) {
        throw DomainError("profile needs at least two samples");
    }
    if (std::adjacent_find(r_.begin(), r_.end(), std::greater_equal<>{}) != r_.end()) {
        throw DomainError("profile abscissae must be strictly increasing");
    }
}

double SolutionProfile::interpolate(double r) const {
    if (r < r_.front() || r > r_.back()) {
        throw DomainError("interpolation point outside the profile domain");
    }
    auto hi = std::lower_bound(r_.begin(), r_.end(), r);
    auto j = static_cast<std::size_t>(std::distance(r_.begin(), hi));
    if (r_[j] == r) {
        return v_[j];
    }
    const double t = (r - r_[j - 1]) / (r_[j] - r_[j - 1]);
    return v_[j - 1] + t * (v_[j] - v_[j - 1]);
}

SolutionProfile SolutionProfile::negated() const {
    std::vector<double> v(v_.size());
    std::transform(v_.begin(), v_.end(), v.begin(), std::negate<>{});
    return {r_, std::move(v)};
}

std::string_view to_string(Method m) noexcept {
    return m == Method::shooting ? "shooting" : "finite_difference";
}

int count_sign_changes(std::span<const double> values, double dead_band) {
    if (!(dead_band >= 0)) {
        throw DomainError("dead band must be non-negative");
    }
    int changes = 0;
    int last_sign = 0;
    for (double v : values) {
        if (!(std::abs(v) > dead_band)) {
            continue;
        }
        const int sign = v > 0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) {
            ++changes;
        }
        last_sign = sign;
    }
    return changes;
}

int count_sign_changes(const SolutionProfile& profile, double dead_band) {
    return count_sign_changes(profile.values(), dead_band);
}

double profile_max_abs_difference(const SolutionProfile& p1, const SolutionProfile& p2) {
    const double lo = std::max(p1.abscissae().front(), p2.abscissae().front());
    const double hi = std::min(p1.abscissae().back(), p2.abscissae().back());
    if (!(lo <= hi)) {
        throw DomainError("profiles share no common domain");
    }
    double worst = 0;
    bool any = false;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        const double r = p1.abscissae()[i];
        if (r < lo || r > hi) {
            continue;
        }
        any = true;
        worst = std::max(worst, std::abs(p1.values()[i] - p2.interpolate(r)));
    }
    if (!any) {
        throw DomainError("no samples of the first profile fall inside the common domain");
    }
    return worst;
}

}  // namespace bvpkit
