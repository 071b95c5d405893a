#pragma once

#include <stdexcept>

namespace ngv {

/// Bad argument or violated precondition. The CLI maps this to exit 3.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A budget (element cap, level cap, time cap) made the computation
/// infeasible. Distinct from a negative verdict; the CLI maps this to exit 2.
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ngv
