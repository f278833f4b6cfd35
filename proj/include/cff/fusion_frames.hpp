#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cff/errors.hpp"
#include "cff/numerics.hpp"
#include "cff/random.hpp"
#include "cff/types.hpp"
#include "cff/vector_frames.hpp"

namespace cff {

template <ScalarType S>
struct Subspace {
  Eigen::Index ambient_dim = 0;
  Matrix<S> basis;  // n x k, orthonormal columns

  Eigen::Index dim() const { return basis.cols(); }

  // Columns that are already orthonormal are kept verbatim so a saved system
  // reloads bit-for-bit; anything else goes through orthonormalize.
  static Subspace from_columns(const Matrix<S>& columns, double tol = kRankTol) {
    if (columns.cols() == 0) throw ZeroSubspace("subspace: no basis columns");
    const Matrix<S> gram =
        columns.adjoint() * columns - Matrix<S>::Identity(columns.cols(), columns.cols());
    if (operator_norm(gram) <= 1e-10) return {columns.rows(), columns};
    return {columns.rows(), orthonormalize(columns, tol)};
  }
};

template <ScalarType S>
struct WeightedSubspace {
  Subspace<S> subspace;
  double weight = 1.0;  // v_i > 0
};

// pi_W = basis basis*
template <ScalarType S>
Matrix<S> projection(const Subspace<S>& w) {
  return w.basis * w.basis.adjoint();
}

template <ScalarType S>
struct ControlledFusionSystem {
  Eigen::Index dim = 0;
  ControlledPair<S> pair;
  std::vector<WeightedSubspace<S>> members;
  // roots[i] = (C* pi_i C')^{1/2}, present exactly when positivity_ok[i]
  std::vector<Matrix<S>> roots;
  std::vector<bool> positivity_ok;

  std::size_t size() const { return members.size(); }

  bool all_positive() const {
    for (bool ok : positivity_ok)
      if (!ok) return false;
    return true;
  }

  std::vector<std::size_t> offending_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < positivity_ok.size(); ++i)
      if (!positivity_ok[i]) out.push_back(i);
    return out;
  }
};

namespace detail {

template <ScalarType S>
void require_all_positive(const ControlledFusionSystem<S>& sys, const char* who) {
  if (!sys.all_positive())
    throw PositivityViolated(std::string(who) + ": C* pi_i C' is not positive at some index",
                             sys.offending_indices());
}

}  // namespace detail

// Evaluates C* pi_i C' per member; positivity_ok records which indices admit
// the Hermitian PSD root, and roots are cached for those.
template <ScalarType S>
ControlledFusionSystem<S> build_system(ControlledPair<S> pair,
                                       std::vector<WeightedSubspace<S>> members,
                                       double tol = kSymmetryTol) {
  const Eigen::Index n = pair.dim();
  ControlledFusionSystem<S> sys;
  sys.dim = n;
  for (const WeightedSubspace<S>& m : members) {
    if (m.subspace.ambient_dim != n || m.subspace.basis.rows() != n)
      throw DimensionMismatch("build_system: subspace ambient dimension differs from controls");
    if (!(m.weight > 0.0)) throw ValidationError("weight must be positive");
  }
  sys.pair = std::move(pair);
  sys.members = std::move(members);
  const Matrix<S> c_adj = sys.pair.c.adjoint();
  for (const WeightedSubspace<S>& m : sys.members) {
    const Matrix<S> op = c_adj * projection(m.subspace) * sys.pair.cprime;
    const double scale = std::max(1.0, operator_norm(op));
    bool ok = operator_norm<S>(op - op.adjoint()) <= tol * scale;
    if (ok) {
      const HermitianSpectrum<S> es = hermitian_spectrum(op, tol);
      ok = es.values(0) >= -tol * scale;
    }
    if (ok) {
      sys.roots.push_back(psd_sqrt(op, tol));
      sys.positivity_ok.push_back(true);
    } else {
      sys.roots.emplace_back();
      sys.positivity_ok.push_back(false);
    }
  }
  return sys;
}

// Element of K_{2,W}: one block per member.
template <ScalarType S>
struct SequenceVector {
  std::vector<Vector<S>> blocks;
};

// Block-stacked (n m) x n matrix, i-th block v_i R_i.
template <ScalarType S>
Matrix<S> analysis_matrix(const ControlledFusionSystem<S>& sys) {
  detail::require_all_positive(sys, "analysis_matrix");
  const Eigen::Index n = sys.dim;
  const Eigen::Index m = static_cast<Eigen::Index>(sys.size());
  Matrix<S> t(n * m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    t.middleRows(i * n, n) = sys.members[i].weight * sys.roots[i];
  return t;
}

template <ScalarType S>
SequenceVector<S> analysis_apply(const ControlledFusionSystem<S>& sys, const Vector<S>& f) {
  detail::require_all_positive(sys, "analysis_apply");
  if (f.size() != sys.dim)
    throw DimensionMismatch("analysis_apply: vector dimension differs from system");
  SequenceVector<S> g;
  for (std::size_t i = 0; i < sys.size(); ++i)
    g.blocks.push_back(sys.members[i].weight * (sys.roots[i] * f));
  return g;
}

// sum_i v_i R_i g_i, the adjoint of the analysis operator.
template <ScalarType S>
Vector<S> synthesis_apply(const ControlledFusionSystem<S>& sys, const SequenceVector<S>& g) {
  detail::require_all_positive(sys, "synthesis_apply");
  if (g.blocks.size() != sys.size())
    throw DimensionMismatch("synthesis_apply: block count differs from member count");
  Vector<S> out = Vector<S>::Zero(sys.dim);
  for (std::size_t i = 0; i < sys.size(); ++i) {
    if (g.blocks[i].size() != sys.dim)
      throw DimensionMismatch("synthesis_apply: block dimension differs from system");
    out.noalias() += sys.members[i].weight * (sys.roots[i] * g.blocks[i]);
  }
  return out;
}

// Membership test for K_{2,W} (range of the analysis operator): distance from
// the stacked sequence to the column space of the analysis matrix.
template <ScalarType S>
bool in_measurement_range(const ControlledFusionSystem<S>& sys, const SequenceVector<S>& g,
                          double tol = 1e-8) {
  const Matrix<S> t = analysis_matrix(sys);
  if (g.blocks.size() != sys.size())
    throw DimensionMismatch("in_measurement_range: block count differs from member count");
  Vector<S> stacked(t.rows());
  for (std::size_t i = 0; i < sys.size(); ++i)
    stacked.segment(static_cast<Eigen::Index>(i) * sys.dim, sys.dim) = g.blocks[i];
  const Vector<S> projected = t * (pinv(t) * stacked);
  return (projected - stacked).norm() <= tol * std::max(1.0, stacked.norm());
}

// S_W = sum_i v_i^2 C* pi_i C', assembled from raw products (no roots needed).
template <ScalarType S>
Matrix<S> fusion_frame_operator(const ControlledFusionSystem<S>& sys) {
  const Eigen::Index n = sys.dim;
  Matrix<S> s = Matrix<S>::Zero(n, n);
  const Matrix<S> c_adj = sys.pair.c.adjoint();
  for (const WeightedSubspace<S>& m : sys.members) {
    const double v2 = m.weight * m.weight;
    s.noalias() += v2 * (c_adj * projection(m.subspace) * sys.pair.cprime);
  }
  return s;
}

// Trace identity for fusion systems, both sides by independent paths:
// tr(S_W) against sum_i v_i^2 sum_j <C* b_ij, C'* b_ij> over basis columns.
template <ScalarType S>
EigensumIdentity fusion_eigensum_identity(const ControlledFusionSystem<S>& sys,
                                          double tol = kSymmetryTol) {
  EigensumIdentity out;
  out.lhs = Complex(fusion_frame_operator(sys).trace());
  const Matrix<S> c_adj = sys.pair.c.adjoint();
  const Matrix<S> cp_adj = sys.pair.cprime.adjoint();
  Complex rhs(0.0, 0.0);
  for (const WeightedSubspace<S>& m : sys.members) {
    const double v2 = m.weight * m.weight;
    for (Eigen::Index j = 0; j < m.subspace.basis.cols(); ++j) {
      const Vector<S> b = m.subspace.basis.col(j);
      const Vector<S> u = c_adj * b;
      const Vector<S> w = cp_adj * b;
      rhs += v2 * Complex(inner<S>(u, w));
    }
  }
  out.rhs = rhs;
  out.holds = std::abs(out.lhs - out.rhs) <= tol * std::max(1.0, std::abs(out.lhs));
  out.parseval_gap = std::abs(rhs - Complex(static_cast<double>(sys.dim), 0.0));
  return out;
}

struct FusionBounds {
  FrameBounds bounds;
  // Rayleigh cross-check: samples of sum_i v_i^2 ||R_i f||^2 against [A, B]
  int rayleigh_samples = 0;
  int rayleigh_violations = 0;
};

// Optimal bounds from the spectrum of S_W, cross-checked by seeded Rayleigh
// sampling (skipped when samples == 0 or positivity fails anywhere).
template <ScalarType S>
FusionBounds fusion_frame_bounds(const ControlledFusionSystem<S>& sys,
                                 double tol = kSymmetryTol, int samples = 1000,
                                 std::uint64_t seed = 0) {
  FusionBounds out;
  const Matrix<S> s = fusion_frame_operator(sys);
  if (!sys.all_positive()) {
    const Matrix<S> herm = (s + s.adjoint()) / S(2);
    const HermitianSpectrum<S> es = hermitian_spectrum(herm, tol);
    out.bounds.lower = es.values(0);
    out.bounds.upper = es.values(es.values.size() - 1);
    out.bounds.classification = FrameClass::Indefinite;
    const double scale = operator_norm(s);
    const double defect = operator_norm<S>(s - s.adjoint());
    out.bounds.selfadjoint_defect = scale > 0.0 ? defect / scale : defect;
    return out;
  }
  out.bounds = frame_bounds_of_operator(s, tol);
  for (int trial = 0; trial < samples; ++trial) {
    Rng rng(seed + static_cast<std::uint64_t>(trial));  // per-trial sub-seed
    const Vector<S> f = random_unit_vector<S>(rng, sys.dim);
    double q = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
      const double v = sys.members[i].weight;
      q += v * v * (sys.roots[i] * f).squaredNorm();
    }
    ++out.rayleigh_samples;
    if (q < out.bounds.lower - 1e-8 || q > out.bounds.upper + 1e-8) ++out.rayleigh_violations;
  }
  return out;
}

struct SynthesisCharacterization {
  bool surjective = false;
  double norm = 0.0;        // ||T*||
  double upper_gap = 0.0;   // | ||T*||^2 - lambda_max(S_W) |
  double pinv_lower = 0.0;  // ||T*^dagger||^{-2}
  bool consistent = false;  // pinv_lower matches lambda_min(S_W)
};

template <ScalarType S>
SynthesisCharacterization synthesis_characterization(const ControlledFusionSystem<S>& sys,
                                                     double tol = 1e-8) {
  detail::require_all_positive(sys, "synthesis_characterization");
  const Matrix<S> t = analysis_matrix(sys);
  const Matrix<S> tstar = t.adjoint();
  SynthesisCharacterization out;

  const RealVector sigma = svd(tstar).singular_values;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > tol * sigma(0)) ++rank;
  out.surjective = rank == sys.dim;
  out.norm = sigma(0);

  const HermitianSpectrum<S> es = hermitian_spectrum<S>(tstar * t);
  const double lambda_min = es.values(0);
  const double lambda_max = es.values(es.values.size() - 1);
  out.upper_gap = std::abs(out.norm * out.norm - lambda_max);

  const double pinv_norm = operator_norm(pinv(tstar));
  out.pinv_lower = pinv_norm > 0.0 ? 1.0 / (pinv_norm * pinv_norm) : 0.0;
  out.consistent = std::abs(out.pinv_lower - lambda_min) <= tol * std::max(1.0, lambda_min);
  return out;
}

}  // namespace cff
