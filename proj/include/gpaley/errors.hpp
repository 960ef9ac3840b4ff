#pragma once

#include <stdexcept>
#include <string>

namespace gpaley {

// Thrown when a computation would exceed a configured size bound
// (field order, automorphism search, group closure, oracle vertex limit).
struct bound_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an internally produced certificate fails its own re-check.
// This always indicates a bug, never bad user input.
struct verification_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Thrown by operations that require a connected graph.
struct disconnected_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class param_error_code {
  not_prime,
  k_does_not_divide,
  odd_k_odd_p,
  order_bound,
  odd_factor_valency,  // p odd but a decomposition factor would need odd valency
};

struct param_error : std::invalid_argument {
  param_error_code code;
  param_error(param_error_code c, const std::string& msg)
      : std::invalid_argument(msg), code(c) {}
};

}  // namespace gpaley
