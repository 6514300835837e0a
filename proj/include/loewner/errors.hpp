#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace loewner {

/// Malformed expression text; `position` is a 0-based character offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Evaluation outside the domain of an elementary function, a singular
/// jet division, or a transform applied to an incompatible interval.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative numerics that failed to converge (eigensolver sweeps,
/// rejection sampling budgets).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace loewner
