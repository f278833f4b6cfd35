#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cff/errors.hpp"
#include "cff/fusion_frames.hpp"
#include "cff/random.hpp"
#include "cff/types.hpp"

namespace cff {

enum class ControlMode { Identity, C2, Pair };

inline const char* to_string(ControlMode m) {
  switch (m) {
    case ControlMode::Identity: return "identity";
    case ControlMode::C2:       return "c2";
    case ControlMode::Pair:     return "pair";
  }
  return "unknown";
}

struct WeightLaw {
  bool uniform = true;
  double value = 1.0;

  static WeightLaw uniform_weights(double v) { return {true, v}; }
  static WeightLaw random_weights() { return {false, 0.0}; }
};

// Deterministic for a fixed seed. Draw order is part of the contract:
// C, then C', then the subspace bases in member order, then the weights.
// Random weights are uniform on [0.5, 1.5).
template <ScalarType S>
ControlledFusionSystem<S> generate_system(Eigen::Index dim,
                                          const std::vector<Eigen::Index>& dims,
                                          ControlMode mode, WeightLaw law,
                                          std::uint64_t seed, double tol = kSymmetryTol) {
  if (dim < 1) throw DimensionMismatch("generate_system: dimension must be at least 1");
  if (dims.empty()) throw DimensionMismatch("generate_system: no subspaces requested");
  for (Eigen::Index k : dims)
    if (k < 1 || k > dim)
      throw DimensionMismatch("generate_system: subspace dimension outside [1, dim]");

  Rng rng(seed);
  Matrix<S> c, cprime;
  switch (mode) {
    case ControlMode::Identity:
      c = Matrix<S>::Identity(dim, dim);
      cprime = c;
      break;
    case ControlMode::C2:
      c = random_invertible<S>(rng, dim, kGeneratorGate);
      cprime = c;  // C* pi C is positive by construction
      break;
    case ControlMode::Pair:
      c = random_invertible<S>(rng, dim, kGeneratorGate);
      cprime = random_invertible<S>(rng, dim, kGeneratorGate);
      break;
  }

  std::vector<Matrix<S>> bases;
  for (Eigen::Index k : dims)
    bases.push_back(orthonormalize(random_matrix<S>(rng, dim, k)));

  std::vector<WeightedSubspace<S>> members;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const double v = law.uniform ? law.value : rng.uniform(0.5, 1.5);
    members.push_back({Subspace<S>{dim, bases[i]}, v});
  }

  return build_system<S>(make_controlled_pair<S>(std::move(c), std::move(cprime)),
                         std::move(members), tol);
}

}  // namespace cff
