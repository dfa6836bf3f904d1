#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rrsvd {

/// Incompatible matrix or vector dimensions.
class ShapeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An argument outside its documented range (rank k, group letter, ...).
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Input with no usable structure (zero vector, insufficient rank, ...).
class DegenerateInputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Jacobi sweep budget exhausted before the off-diagonal residual fell
/// below tolerance. Carries the residual that was reached.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(double residual, int sweeps)
      : std::runtime_error("svd did not converge after " + std::to_string(sweeps) +
                           " sweeps (off-diagonal residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

/// Line-numbered failure while reading a tournament document.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace rrsvd
