#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rolextract {

// Thrown when an iterative method exhausts its budget. Subclasses attach the
// last iterate so callers can inspect how far the iteration got.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int iterations, double last_estimate)
      : std::runtime_error(what), iterations_(iterations), last_estimate_(last_estimate) {}

  int iterations() const noexcept { return iterations_; }
  double last_estimate() const noexcept { return last_estimate_; }

 private:
  int iterations_;
  double last_estimate_;
};

// beta^2 at or above the reciprocal spectral radius of the similarity operator.
class InadmissibleBeta : public std::invalid_argument {
 public:
  InadmissibleBeta(double beta2, double bound)
      : std::invalid_argument("beta^2 = " + std::to_string(beta2) +
                              " is not below the admissible bound " + std::to_string(bound)),
        beta2_(beta2),
        bound_(bound) {}

  double beta2() const noexcept { return beta2_; }
  double bound() const noexcept { return bound_; }

 private:
  double beta2_;
  double bound_;
};

// Malformed text input; line() is 1-based, 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace rolextract
