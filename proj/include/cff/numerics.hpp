#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cff/errors.hpp"
#include "cff/types.hpp"

namespace cff {

template <ScalarType S>
struct HermitianSpectrum {
  RealVector values;   // ascending
  Matrix<S> vectors;   // unitary, column i pairs with values[i]
};

template <ScalarType S>
struct SvdResult {
  Matrix<S> u;
  RealVector singular_values;  // descending
  Matrix<S> v;
};

namespace detail {

template <ScalarType S>
void require_finite(const Matrix<S>& m, const char* who) {
  if (!m.allFinite())
    throw DecompositionFailure(std::string(who) + ": non-finite input");
}

}  // namespace detail

// Largest singular value.
template <ScalarType S>
double operator_norm(const Matrix<S>& m) {
  detail::require_finite(m, "operator_norm");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix<S>> svd(m);
  if (svd.info() != Eigen::Success)
    throw DecompositionFailure("operator_norm: SVD did not converge");
  return svd.singularValues()(0);
}

template <ScalarType S>
SvdResult<S> svd(const Matrix<S>& m) {
  detail::require_finite(m, "svd");
  Eigen::JacobiSVD<Matrix<S>> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success)
    throw DecompositionFailure("svd: iteration did not converge");
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

// Eigendecomposition of a matrix that is Hermitian within tol.
// The input is symmetrized as (M + M*)/2 before decomposition.
template <ScalarType S>
HermitianSpectrum<S> hermitian_spectrum(const Matrix<S>& m, double tol = kSymmetryTol) {
  detail::require_finite(m, "hermitian_spectrum");
  if (m.rows() != m.cols())
    throw DimensionMismatch("hermitian_spectrum: matrix is not square");
  const double scale = std::max(1.0, operator_norm(m));
  const double defect = operator_norm<S>(m - m.adjoint());
  if (defect > tol * scale)
    throw NotHermitian("hermitian_spectrum: symmetry defect " + std::to_string(defect) +
                       " exceeds tolerance");
  Matrix<S> h = (m + m.adjoint()) / S(2);
  Eigen::SelfAdjointEigenSolver<Matrix<S>> solver(h);
  if (solver.info() != Eigen::Success)
    throw DecompositionFailure("hermitian_spectrum: eigeniteration did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Hermitian PSD square root. Eigenvalues in [-tol*scale, 0) clamp to zero.
template <ScalarType S>
Matrix<S> psd_sqrt(const Matrix<S>& m, double tol = kSymmetryTol) {
  HermitianSpectrum<S> es = hermitian_spectrum(m, tol);
  const Eigen::Index n = es.values.size();
  const double scale =
      n == 0 ? 1.0 : std::max(1.0, std::max(std::abs(es.values(0)), std::abs(es.values(n - 1))));
  if (n > 0 && es.values(0) < -tol * scale)
    throw NotPositive("psd_sqrt: eigenvalue " + std::to_string(es.values(0)) +
                      " below tolerance");
  RealVector roots(n);
  for (Eigen::Index i = 0; i < n; ++i)
    roots(i) = es.values(i) > 0.0 ? std::sqrt(es.values(i)) : 0.0;
  return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

// Sum of singular values, tr|M|.
template <ScalarType S>
double trace_norm(const Matrix<S>& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("trace_norm: matrix is not square");
  return svd(m).singular_values.sum();
}

// Moore-Penrose pseudo-inverse. Singular values below rel_cutoff * sigma_max
// are treated as exact zeros.
template <ScalarType S>
Matrix<S> pinv(const Matrix<S>& m, double rel_cutoff = kPinvCutoff) {
  SvdResult<S> d = svd(m);
  const Eigen::Index k = d.singular_values.size();
  const double cutoff = k == 0 ? 0.0 : rel_cutoff * d.singular_values(0);
  RealVector inv(k);
  for (Eigen::Index i = 0; i < k; ++i)
    inv(i) = d.singular_values(i) > cutoff ? 1.0 / d.singular_values(i) : 0.0;
  return d.v * inv.asDiagonal() * d.u.adjoint();
}

// Orthonormal basis of the column span; rank detected at rel tolerance tol.
template <ScalarType S>
Matrix<S> orthonormalize(const Matrix<S>& columns, double tol = kRankTol) {
  if (columns.cols() == 0)
    throw ZeroSubspace("orthonormalize: no columns");
  SvdResult<S> d = svd(columns);
  const double sigma_max = d.singular_values.size() ? d.singular_values(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < d.singular_values.size(); ++i)
    if (d.singular_values(i) > tol * sigma_max) ++rank;
  if (sigma_max == 0.0 || rank == 0)
    throw ZeroSubspace("orthonormalize: numerical rank is zero");
  return d.u.leftCols(rank);
}

// Orthonormal basis (possibly zero columns) of the intersection of subspaces,
// via the null space of the stacked complement projections I - U_k U_k*.
// Every returned v satisfies ||(I - U_k U_k*) v|| <= tol for all k.
template <ScalarType S>
Matrix<S> subspace_intersection(const std::vector<Matrix<S>>& bases, double tol = 1e-8) {
  if (bases.empty())
    throw DimensionMismatch("subspace_intersection: no subspaces given");
  const Eigen::Index n = bases.front().rows();
  for (const Matrix<S>& b : bases)
    if (b.rows() != n)
      throw DimensionMismatch("subspace_intersection: ambient dimensions differ");
  Matrix<S> stacked(n * static_cast<Eigen::Index>(bases.size()), n);
  const Matrix<S> eye = Matrix<S>::Identity(n, n);
  for (std::size_t k = 0; k < bases.size(); ++k)
    stacked.middleRows(static_cast<Eigen::Index>(k) * n, n) =
        eye - bases[k] * bases[k].adjoint();
  SvdResult<S> d = svd(stacked);
  Eigen::Index null_dim = 0;
  for (Eigen::Index i = d.singular_values.size(); i-- > 0;) {
    if (d.singular_values(i) <= tol) ++null_dim;
    else break;
  }
  return d.v.rightCols(null_dim);
}

}  // namespace cff
