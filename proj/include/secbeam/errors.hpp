#pragma once

#include <stdexcept>
#include <string>

namespace secbeam {

/// Arguments violate an operation's preconditions.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The operation needs more relays than the realization provides
/// (null-space schemes require m >= 2).
class unsupported_dimension : public invalid_input {
 public:
  using invalid_input::invalid_input;
};

/// An input file or document could not be parsed.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace secbeam
