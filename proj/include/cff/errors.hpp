#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cff {

// Base for every failure the library raises on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input shapes disagree (matrix sizes, block counts, ambient dimensions).
struct DimensionMismatch : Error {
  using Error::Error;
};

// Matrix fails the Hermitian symmetry gate.
struct NotHermitian : Error {
  using Error::Error;
};

// Matrix has an eigenvalue below the negativity tolerance.
struct NotPositive : Error {
  using Error::Error;
};

// Control matrix fails the condition-number gate for GL membership.
struct NotInvertible : Error {
  using Error::Error;
};

// Eigen/SVD iteration did not converge, or produced non-finite output.
struct DecompositionFailure : Error {
  using Error::Error;
};

// Orthonormalization found numerical rank zero.
struct ZeroSubspace : Error {
  using Error::Error;
};

// Operation needs roots R_i but some C*pi_i C' failed the positivity test.
struct PositivityViolated : Error {
  PositivityViolated(const std::string& what, std::vector<std::size_t> indices)
      : Error(what), offending(std::move(indices)) {}
  std::vector<std::size_t> offending;
};

// Erasing every member leaves nothing to analyze.
struct EmptyRemainder : Error {
  using Error::Error;
};

// Approximation operator needs one shared weight family.
struct WeightMismatch : Error {
  using Error::Error;
};

// Random generation exhausted its resample budget.
struct GenerationFailure : Error {
  using Error::Error;
};

// Config file failures, split so the CLI can map them to exit codes.
struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace cff
