#include "bvpkit/ivp.hpp"

namespace bvpkit {

void IntegratorConfig::validate() const {
    if (!(rel_tolerance > 0) || !(abs_tolerance > 0)) {
        throw DomainError("integrator tolerances must be positive");
    }
    if (!(min_step > 0) || !(min_step <= initial_step) || !(initial_step <= max_step)) {
        throw DomainError("integrator steps must satisfy 0 < min_step <= initial_step <= max_step");
    }
    if (max_steps <= 0) {
        throw DomainError("integrator step budget must be positive");
    }
}

IntegratorConfig IntegratorConfig::fixed_step(double h) {
    IntegratorConfig c;
    c.rel_tolerance = 1e6;
    c.abs_tolerance = 1e6;
    c.initial_step = h;
    c.min_step = h;
    c.max_step = h;
    return c;
}

}  // namespace bvpkit
