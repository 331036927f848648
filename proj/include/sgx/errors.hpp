#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgx {

// Precondition or argument violation (bad vertex, invalid parameters, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed sg6 / graph6 text. `position` is the byte offset of the fault.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
        position(pos),
        reason(what) {}
  std::size_t position;
  std::string reason;  // message without the position suffix
};

// A resource guard refused the request (order too large, exhaustive mode
// requested where only pruned mode is allowed, ...).
struct CapabilityError : std::runtime_error {
  CapabilityError(std::string guard_name, const std::string& what)
      : std::runtime_error(what), guard(std::move(guard_name)) {}
  std::string guard;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sgx
