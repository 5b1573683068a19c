#pragma once

#include <stdexcept>
#include <string>

namespace ssclab {

/// A downstream operation needed a closed form that the value cannot
/// provide (e.g. re-projecting a surrogate tail).
class UnrepresentableError : public std::runtime_error {
 public:
  explicit UnrepresentableError(const std::string& what)
      : std::runtime_error(what) {}
};

/// A certified distance interval was too wide to build a sound image point.
class WidthExceededError : public std::runtime_error {
 public:
  explicit WidthExceededError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Banach iteration did not reach the residual tolerance within max_iter.
class NoConvergenceError : public std::runtime_error {
 public:
  explicit NoConvergenceError(const std::string& what)
      : std::runtime_error(what) {}
};

/// An interval quotient hit a denominator enclosure containing zero.
class DegenerateDenominatorError : public std::runtime_error {
 public:
  explicit DegenerateDenominatorError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace ssclab
