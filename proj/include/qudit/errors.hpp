#pragma once

#include <stdexcept>
#include <string>

namespace qudit {

// Thrown when a dimension is even, too small, or otherwise unusable.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when two objects built on different grids are combined.
class GridMismatchError : public std::invalid_argument {
 public:
  explicit GridMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a matrix does not satisfy the structure it is tagged with.
class StructureError : public std::invalid_argument {
 public:
  explicit StructureError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when an iterative eigensolver fails to converge.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int iterations)
      : std::runtime_error(what + " (iterations: " + std::to_string(iterations) + ")"),
        iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

// Thrown when a series truncation cannot certify the requested tail tolerance.
class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on invalid numeric input (out-of-range phase point, non-finite
// phase-space function, non-normalized state where a unit state is required).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace qudit
