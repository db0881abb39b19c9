#pragma once

#include <stdexcept>
#include <string>

namespace dmf {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bad argument values (non-monic modulus, reducible prime, ...)
struct value_error : error {
    using error::error;
};

// division by zero, non-unit inversion
struct arithmetic_error : error {
    using error::error;
};

// weight/type grading violations
struct grading_error : error {
    using error::error;
};

// requested coefficients beyond certified precision
struct precision_error : error {
    using error::error;
};

// prime divides (or fails to divide) the level as required
struct level_error : error {
    using error::error;
};

// degree ceiling or similar resource guard hit
struct resource_error : error {
    using error::error;
};

// symbolic layer has no rule for the requested operation
struct unknown_action_error : error {
    using error::error;
};

}  // namespace dmf
