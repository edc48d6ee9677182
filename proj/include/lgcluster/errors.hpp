#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lgcluster {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-width exponent or coefficient arithmetic left its range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Operands live in rings with a different number of variables.
class VariableCountMismatch : public Error {
 public:
  VariableCountMismatch(std::size_t lhs, std::size_t rhs)
      : Error("variable count mismatch: " + std::to_string(lhs) + " vs " +
              std::to_string(rhs)) {}
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

// A rational function denominator vanished at a sample point.
class DegeneratePoint : public Error {
 public:
  using Error::Error;
};

// Randomized identity testing kept hitting degenerate points.
class RetryBudgetExhausted : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  IndexOutOfRange(std::size_t index, std::size_t size)
      : Error("index " + std::to_string(index) + " out of range (size " +
              std::to_string(size) + ")"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Mutating a seed produced a non-Laurent potential. `step` is the 0-based
// position inside an iterated sequence (0 for a single mutation).
class NotLaurent : public Error {
 public:
  NotLaurent(std::size_t direction, std::size_t step)
      : Error("mutation in direction " + std::to_string(direction + 1) +
              " (step " + std::to_string(step + 1) +
              ") does not yield a Laurent polynomial"),
        direction_(direction),
        step_(step) {}
  std::size_t direction() const { return direction_; }
  std::size_t step() const { return step_; }

 private:
  std::size_t direction_;
  std::size_t step_;
};

class RepetitionRejected : public Error {
 public:
  explicit RepetitionRejected(std::size_t index)
      : Error("index " + std::to_string(index + 1) +
              " repeats in mutation sequence (use --allow-repeats to override)"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

}  // namespace lgcluster
