#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "cff/errors.hpp"
#include "cff/numerics.hpp"
#include "cff/types.hpp"

namespace cff {

// Deterministic across platforms: mt19937_64 drives everything, and the
// uniform/gaussian transforms below avoid std::distributions, whose output
// sequences are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // [0, 1)
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller; consumes exactly two uniforms per call.
  double gaussian() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(2.0 * M_PI * u2);
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

template <ScalarType S>
S random_scalar(Rng& rng);

template <>
inline Real random_scalar<Real>(Rng& rng) {
  return rng.gaussian();
}

// Standard complex gaussian, E|z|^2 = 1.
template <>
inline Complex random_scalar<Complex>(Rng& rng) {
  const double re = rng.gaussian();
  const double im = rng.gaussian();
  return Complex(re, im) / std::sqrt(2.0);
}

// Row-major fill so the draw order is part of the format.
template <ScalarType S>
Matrix<S> random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix<S> m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = random_scalar<S>(rng);
  return m;
}

template <ScalarType S>
Vector<S> random_unit_vector(Rng& rng, Eigen::Index n) {
  Vector<S> v(n);
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < n; ++i) v(i) = random_scalar<S>(rng);
    norm = v.norm();
  } while (norm < 1e-6);
  return v / norm;
}

// Gaussian square matrix resampled until cond(M) <= gate.
template <ScalarType S>
Matrix<S> random_invertible(Rng& rng, Eigen::Index n, double gate = kGeneratorGate,
                            int max_attempts = 100) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Matrix<S> m = random_matrix<S>(rng, n, n);
    const RealVector sigma = svd(m).singular_values;
    const double smin = sigma(sigma.size() - 1);
    if (smin > 0.0 && sigma(0) / smin <= gate) return m;
  }
  throw GenerationFailure("random_invertible: condition gate not met after resampling");
}

}  // namespace cff
