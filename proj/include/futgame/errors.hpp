#pragma once

#include <stdexcept>

namespace futgame {

/// Malformed scenario document (unreadable file, bad JSON).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A scenario field violates an invariant; the message names the field.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// No feasible control sequence / no admissible joint control at a node.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Brute-force enumeration would exceed the configured cap.
struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace futgame
