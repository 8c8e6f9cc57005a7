#include "bvpkit/errors.hpp"

#include <sstream>

namespace bvpkit {

namespace {

std::string integration_message(IntegrationError::Kind kind, double position,
                                std::optional<double> parameter) {
    std::ostringstream os;
    os.precision(17);
    os << (kind == IntegrationError::Kind::step_underflow ? "step size underflow"
                                                          : "step budget exhausted")
       << " at r = " << position;
    if (parameter) {
        os << " (shooting parameter p = " << *parameter << ")";
    }
    return os.str();
}

}  // namespace

IntegrationError::IntegrationError(Kind kind, double position, std::optional<double> parameter)
    : Error(integration_message(kind, position, parameter)),
      kind_(kind),
      position_(position),
      parameter_(parameter) {}

SingularMatrixError::SingularMatrixError(std::size_t pivot)
    : Error("singular matrix: zero pivot at index " + std::to_string(pivot)), pivot_(pivot) {}

DivergenceError::DivergenceError(int iteration)
    : Error("Newton iterate became non-finite at iteration " + std::to_string(iteration)),
      iteration_(iteration) {}

}  // namespace bvpkit
