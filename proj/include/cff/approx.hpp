#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cff/errors.hpp"
#include "cff/fusion_frames.hpp"
#include "cff/numerics.hpp"
#include "cff/types.hpp"

namespace cff {

namespace detail {

template <ScalarType S>
void require_compatible(const ControlledFusionSystem<S>& w, const ControlledFusionSystem<S>& z,
                        const char* who) {
  if (w.dim != z.dim)
    throw DimensionMismatch(std::string(who) + ": ambient dimensions differ");
  if (w.size() != z.size())
    throw DimensionMismatch(std::string(who) + ": member counts differ");
  require_all_positive(w, who);
  require_all_positive(z, who);
}

}  // namespace detail

// phi = T_W* T_Z = sum_i v_i w_i R_{W,i} R_{Z,i}
template <ScalarType S>
Matrix<S> cross_operator(const ControlledFusionSystem<S>& w, const ControlledFusionSystem<S>& z) {
  detail::require_compatible(w, z, "cross_operator");
  Matrix<S> phi = Matrix<S>::Zero(w.dim, w.dim);
  for (std::size_t i = 0; i < w.size(); ++i)
    phi.noalias() += (w.members[i].weight * z.members[i].weight) * (w.roots[i] * z.roots[i]);
  return phi;
}

struct TraceClassReport {
  double trace_norm_phi = 0.0;
  double bound = 0.0;           // sqrt(B_W B_Z) * m
  bool holds = false;
  double bound_adjusted = 0.0;  // sqrt(B_W B_Z) * max(m, n)
  bool holds_adjusted = false;
};

// tr|phi| against sqrt(B_W B_Z) * m with ||u|| = 1. The factor max(m, n) is
// reported alongside: summing ||u e_i|| over an orthonormal basis of H gives
// dim H terms, so the m factor cannot cover single-member systems with n > m.
template <ScalarType S>
TraceClassReport trace_class_check(const ControlledFusionSystem<S>& w,
                                   const ControlledFusionSystem<S>& z) {
  detail::require_compatible(w, z, "trace_class_check");
  TraceClassReport report;
  report.trace_norm_phi = trace_norm(cross_operator(w, z));
  const double bw = frame_bounds_of_operator(fusion_frame_operator(w)).upper;
  const double bz = frame_bounds_of_operator(fusion_frame_operator(z)).upper;
  const double root = std::sqrt(bw * bz);
  const double m = static_cast<double>(w.size());
  const double n = static_cast<double>(w.dim);
  report.bound = root * m;
  report.holds = report.trace_norm_phi <= report.bound + 1e-9 * std::max(1.0, report.bound);
  report.bound_adjusted = root * std::max(m, n);
  report.holds_adjusted =
      report.trace_norm_phi <= report.bound_adjusted + 1e-9 * std::max(1.0, report.bound_adjusted);
  return report;
}

// Phi = sum_i v_i^2 R_{Z,i} R_{W,i}, with one shared weight family.
template <ScalarType S>
Matrix<S> approximation_operator(const ControlledFusionSystem<S>& w,
                                 const ControlledFusionSystem<S>& z) {
  detail::require_compatible(w, z, "approximation_operator");
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double vw = w.members[i].weight;
    const double vz = z.members[i].weight;
    if (std::abs(vw - vz) > 1e-12 * std::max(1.0, std::abs(vw)))
      throw WeightMismatch("approximation_operator: weight families differ at index " +
                           std::to_string(i));
  }
  Matrix<S> phi = Matrix<S>::Zero(w.dim, w.dim);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double v2 = w.members[i].weight * w.members[i].weight;
    phi.noalias() += v2 * (z.roots[i] * w.roots[i]);
  }
  return phi;
}

struct PredictedBounds {
  double lower = 0.0;
  double upper = 0.0;
};

struct ApproxReport {
  double gamma = 0.0;     // ||I - Phi||^2, the optimal constant in (III)
  double a1 = 0.0;        // lambda_max(S_W), tight Bessel constant of (I)
  double a2 = 0.0;        // lambda_max(S_Z), tight synthesis constant of (II)
  double a2_full = 0.0;   // ||T_Z*||^2 over the full stacked space
  double a1_block = 0.0;  // m * max_i v_i^2 ||C* pi_{W_i} C'||
  double a2_block = 0.0;  // m * max_i v_i^2 ||C* pi_{Z_i} C'||
  bool applicable = false;  // gamma < 1
  std::optional<PredictedBounds> predicted_w;  // (A2^{-1} (1-gamma)^2, A1)
  std::optional<PredictedBounds> predicted_z;  // (A1^{-1} (1-gamma)^2, A2)
  FrameBounds actual_w;
  FrameBounds actual_z;
  bool holds = false;               // one-sided checks with the tight constants
  bool holds_conservative = false;  // same with the block-diagonal constants
  double dual_defect = 0.0;         // ||Phi* - Phi_{Z,W}||
  bool dual_ok = false;
};

namespace detail {

template <ScalarType S>
double block_constant(const ControlledFusionSystem<S>& sys) {
  double worst = 0.0;
  const Matrix<S> c_adj = sys.pair.c.adjoint();
  for (const WeightedSubspace<S>& m : sys.members) {
    const double v2 = m.weight * m.weight;
    worst = std::max(worst, v2 * operator_norm<S>(c_adj * projection(m.subspace) *
                                                  sys.pair.cprime));
  }
  return static_cast<double>(sys.size()) * worst;
}

}  // namespace detail

template <ScalarType S>
ApproxReport approximation_analysis(const ControlledFusionSystem<S>& w,
                                    const ControlledFusionSystem<S>& z,
                                    double tol = kSymmetryTol) {
  ApproxReport report;
  const Matrix<S> phi = approximation_operator(w, z);
  const Eigen::Index n = w.dim;
  report.gamma = std::pow(operator_norm<S>(Matrix<S>::Identity(n, n) - phi), 2);

  report.actual_w = frame_bounds_of_operator(fusion_frame_operator(w), tol);
  report.actual_z = frame_bounds_of_operator(fusion_frame_operator(z), tol);
  report.a1 = report.actual_w.upper;
  report.a2 = report.actual_z.upper;
  report.a2_full = std::pow(operator_norm(analysis_matrix(z)), 2);
  report.a1_block = detail::block_constant(w);
  report.a2_block = detail::block_constant(z);

  const Matrix<S> dual = approximation_operator(z, w);
  report.dual_defect = operator_norm<S>(phi.adjoint() - dual);
  report.dual_ok = report.dual_defect <= 1e-10 * std::max(1.0, operator_norm(phi));

  report.applicable = report.gamma < 1.0;
  if (!report.applicable) return report;

  const double shrink = std::pow(1.0 - report.gamma, 2);
  report.predicted_w = PredictedBounds{shrink / report.a2, report.a1};
  report.predicted_z = PredictedBounds{shrink / report.a1, report.a2};

  auto inside = [tol](const FrameBounds& actual, const PredictedBounds& predicted) {
    return actual.lower >= predicted.lower - tol && actual.upper <= predicted.upper + tol;
  };
  report.holds = inside(report.actual_w, *report.predicted_w) &&
                 inside(report.actual_z, *report.predicted_z);
  report.holds_conservative =
      inside(report.actual_w, PredictedBounds{shrink / report.a2_block, report.a1_block}) &&
      inside(report.actual_z, PredictedBounds{shrink / report.a1_block, report.a2_block});
  return report;
}

}  // namespace cff
