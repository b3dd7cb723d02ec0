#pragma once

#include <stdexcept>
#include <string>

namespace sisz {

// Basis or matrix is not of full rank where full rank is required.
class RankDeficiencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The request is well formed but exceeds a configured enumeration or search
// budget (dimension ceiling, point budget, brute-force budget).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments outside the mathematical domain of an operation (m <= n, beta = 0...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sisz
