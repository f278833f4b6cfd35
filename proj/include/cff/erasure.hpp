#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cff/errors.hpp"
#include "cff/fusion_frames.hpp"
#include "cff/numerics.hpp"
#include "cff/types.hpp"

namespace cff {

// M_i = {f : R_i f = f}: span of eigenvectors of R_i with |lambda - 1| <= tol.
// Returns an n x k orthonormal basis; k may be zero.
template <ScalarType S>
Matrix<S> fixed_point_subspace(const ControlledFusionSystem<S>& sys, std::size_t i,
                               double tol = kFixedPointTol) {
  if (i >= sys.size())
    throw DimensionMismatch("fixed_point_subspace: index out of range");
  if (!sys.positivity_ok[i])
    throw PositivityViolated("fixed_point_subspace: no root at the requested index", {i});
  const HermitianSpectrum<S> es = hermitian_spectrum(sys.roots[i]);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < es.values.size(); ++k)
    if (std::abs(es.values(k) - 1.0) <= tol) keep.push_back(k);
  Matrix<S> basis(sys.dim, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) =
      es.vectors.col(keep[k]);
  return basis;
}

// The members of I \ J, with their cached roots.
template <ScalarType S>
ControlledFusionSystem<S> reduced_system(const ControlledFusionSystem<S>& sys,
                                         const std::set<std::size_t>& erased) {
  ControlledFusionSystem<S> out;
  out.dim = sys.dim;
  out.pair = sys.pair;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    if (erased.count(i)) continue;
    out.members.push_back(sys.members[i]);
    out.roots.push_back(sys.roots[i]);
    out.positivity_ok.push_back(sys.positivity_ok[i]);
  }
  if (out.members.empty())
    throw EmptyRemainder("reduced_system: erasing every member leaves nothing");
  return out;
}

enum class ErasureCase { AboveB, EqualsB, BelowA, Inconclusive };

inline const char* to_string(ErasureCase c) {
  switch (c) {
    case ErasureCase::AboveB:       return "above-B";
    case ErasureCase::EqualsB:      return "equals-B";
    case ErasureCase::BelowA:       return "below-A";
    case ErasureCase::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct ErasureReport {
  std::vector<std::size_t> erased;  // sorted, deduplicated
  double alpha = 0.0;               // sum of erased v_i^2
  double lower = 0.0;               // A of the full system
  double upper = 0.0;               // B of the full system
  ErasureCase kase = ErasureCase::Inconclusive;
  std::optional<double> predicted_lower;      // A - alpha, BelowA only
  std::optional<FrameBounds> actual_bounds;   // absent when every member was erased
  Eigen::Index intersection_dim = 0;          // dim of the M_i intersection over J
  bool kernel_check = true;   // EqualsB: remaining roots kill the intersection
  bool theorem_holds = false;
};

// Case selection against the OPTIMAL bounds (A, B) of the full system:
//   alpha = B  -> intersection contained in the kernels of the remaining roots
//   alpha > B  -> the M_i over J intersect trivially
//   alpha < A  -> remainder is a frame with bounds (A - alpha, B)
//   otherwise  -> the theorem makes no claim; reduced bounds are recorded
// Erasing every member is allowed only for the first two cases, whose claims
// need no remainder.
template <ScalarType S>
ErasureReport erasure_analysis(const ControlledFusionSystem<S>& sys,
                               const std::vector<std::size_t>& indices,
                               double tol = kFixedPointTol) {
  detail::require_all_positive(sys, "erasure_analysis");
  if (indices.empty()) throw DimensionMismatch("erasure_analysis: empty index set");
  std::set<std::size_t> erased(indices.begin(), indices.end());
  for (std::size_t i : erased)
    if (i >= sys.size())
      throw DimensionMismatch("erasure_analysis: index " + std::to_string(i) +
                              " out of range");

  ErasureReport report;
  report.erased.assign(erased.begin(), erased.end());

  double alpha = 0.0;
  for (std::size_t i : erased) alpha += sys.members[i].weight * sys.members[i].weight;
  report.alpha = alpha;

  const FrameBounds full = frame_bounds_of_operator(fusion_frame_operator(sys));
  report.lower = full.lower;
  report.upper = full.upper;
  const double a = full.lower;
  const double b = full.upper;

  if (std::abs(alpha - b) <= tol * std::max(1.0, b))
    report.kase = ErasureCase::EqualsB;
  else if (alpha > b)
    report.kase = ErasureCase::AboveB;
  else if (alpha < a)
    report.kase = ErasureCase::BelowA;
  else
    report.kase = ErasureCase::Inconclusive;

  // dim of the intersection of the fixed-point subspaces over J
  std::vector<Matrix<S>> fixed;
  bool some_empty = false;
  for (std::size_t i : erased) {
    Matrix<S> m = fixed_point_subspace(sys, i);
    if (m.cols() == 0) {
      some_empty = true;
      break;
    }
    fixed.push_back(std::move(m));
  }
  Matrix<S> meet;
  if (some_empty) {
    report.intersection_dim = 0;
  } else {
    meet = subspace_intersection(fixed, tol);
    report.intersection_dim = meet.cols();
  }

  const bool full_erasure = erased.size() == sys.size();

  switch (report.kase) {
    case ErasureCase::AboveB:
      report.theorem_holds = report.intersection_dim == 0;
      break;
    case ErasureCase::EqualsB: {
      bool killed = true;
      for (Eigen::Index col = 0; col < meet.cols(); ++col) {
        for (std::size_t k = 0; k < sys.size(); ++k) {
          if (erased.count(k)) continue;
          if ((sys.roots[k] * meet.col(col)).norm() > tol) {
            killed = false;
            break;
          }
        }
        if (!killed) break;
      }
      report.kernel_check = killed;
      report.theorem_holds = killed;
      break;
    }
    case ErasureCase::BelowA:
    case ErasureCase::Inconclusive:
      if (full_erasure)
        throw EmptyRemainder("erasure_analysis: the claim needs a nonempty remainder");
      break;
  }

  if (!full_erasure) {
    const ControlledFusionSystem<S> rest = reduced_system(sys, erased);
    const FrameBounds rb = frame_bounds_of_operator(fusion_frame_operator(rest));
    report.actual_bounds = rb;
    if (report.kase == ErasureCase::BelowA) {
      report.predicted_lower = a - alpha;
      report.theorem_holds = rb.lower >= a - alpha - tol && rb.upper <= b + tol;
    } else if (report.kase == ErasureCase::Inconclusive) {
      report.theorem_holds = true;  // no claim to verify
    }
  } else if (report.kase == ErasureCase::Inconclusive) {
    report.theorem_holds = true;
  }

  return report;
}

// ||T* D_i T|| where D_i keeps block i; equals v_i^2 ||C* pi_i C'||.
template <ScalarType S>
double erasure_operator_norm(const ControlledFusionSystem<S>& sys, std::size_t i) {
  detail::require_all_positive(sys, "erasure_operator_norm");
  if (i >= sys.size())
    throw DimensionMismatch("erasure_operator_norm: index out of range");
  const double v = sys.members[i].weight;
  const Matrix<S> op =
      sys.pair.c.adjoint() * projection(sys.members[i].subspace) * sys.pair.cprime;
  return v * v * operator_norm(op);
}

struct E1Report {
  std::vector<double> per_index_norm;  // v_i^2 ||C* pi_i C'||
  double e1_exact = 0.0;               // max per_index_norm
  double e1_nominal = 0.0;             // max_i v_i^2 ||C|| ||C'||
  bool optimal = false;
  std::vector<double> optimality_residuals;  // | v_i^2 ||C|| ||C'|| - n/(m dim W_i) |
};

// 1-erasure reconstruction error, exact and nominal, plus the per-index
// optimality criterion v_i^2 ||C|| ||C'|| = n / (m dim W_i).
template <ScalarType S>
E1Report reconstruction_error(const ControlledFusionSystem<S>& sys, double tol = kSymmetryTol) {
  detail::require_all_positive(sys, "reconstruction_error");
  E1Report report;
  const double norm_c = operator_norm(sys.pair.c);
  const double norm_cp = operator_norm(sys.pair.cprime);
  const double n = static_cast<double>(sys.dim);
  const double m = static_cast<double>(sys.size());
  report.optimal = true;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const double v2 = sys.members[i].weight * sys.members[i].weight;
    report.per_index_norm.push_back(erasure_operator_norm(sys, i));
    report.e1_nominal = std::max(report.e1_nominal, v2 * norm_c * norm_cp);
    const double target = n / (m * static_cast<double>(sys.members[i].subspace.dim()));
    const double residual = std::abs(v2 * norm_c * norm_cp - target);
    report.optimality_residuals.push_back(residual);
    if (residual > tol) report.optimal = false;
  }
  report.e1_exact =
      *std::max_element(report.per_index_norm.begin(), report.per_index_norm.end());
  return report;
}

}  // namespace cff
