#ifndef ZDG_ERRORS_HPP
#define ZDG_ERRORS_HPP

#include <stdexcept>

namespace zdg {

// An instance exceeds a configured enumeration bound (ring size, vertex cap, ...).
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An input graph violates a structural precondition of the requested operation.
struct PropertyViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace zdg

#endif
