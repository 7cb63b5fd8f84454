#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace infomax {

/// Bad dimensions, out-of-range parameters, non-finite inputs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix that had to be inverted (or have its log-determinant taken)
/// was singular to working precision.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Q = WA has an all-zero row or column, so the performance index is undefined.
class DegenerateMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed file contents (CSV, WAV, key-value config).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure inside the adaptation loop. Carries the 1-based iteration at
/// which the loop stopped.
class RunError : public std::runtime_error {
 public:
  enum class Kind { singular, divergence };

  RunError(Kind kind, std::uint64_t iteration, const std::string& what)
      : std::runtime_error(what), kind_(kind), iteration_(iteration) {}

  Kind kind() const noexcept { return kind_; }
  std::uint64_t iteration() const noexcept { return iteration_; }

 private:
  Kind kind_;
  std::uint64_t iteration_;
};

}  // namespace infomax
