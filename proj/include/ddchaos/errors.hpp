#pragma once

#include <stdexcept>
#include <string>

namespace ddc {

struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct domain_violation : std::domain_error {
  using std::domain_error::domain_error;
};

/// Raised when no element of a coset reaches the requested seminorm.
struct not_attainable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct bracket_too_small : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ddc
