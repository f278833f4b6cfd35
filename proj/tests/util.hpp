#pragma once

#include <cff/fusion_frames.hpp>
#include <cff/numerics.hpp>
#include <cff/random.hpp>

#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

namespace testutil {

using cff::Complex;
using cff::Matrix;
using cff::Real;
using cff::RealVector;
using cff::Rng;
using cff::ScalarType;
using cff::Vector;

// ||UU* - VV*||, zero iff the two orthonormal bases span the same subspace.
template <ScalarType S>
double span_distance(const Matrix<S>& u, const Matrix<S>& v) {
  return cff::operator_norm<S>(u * u.adjoint() - v * v.adjoint());
}

template <ScalarType S>
Matrix<S> random_hermitian(Rng& rng, Eigen::Index n) {
  Matrix<S> a = cff::random_matrix<S>(rng, n, n);
  return (a + a.adjoint()) * S(0.5);
}

template <ScalarType S>
Matrix<S> random_psd(Rng& rng, Eigen::Index n) {
  Matrix<S> a = cff::random_matrix<S>(rng, n, n);
  return a * a.adjoint();
}

template <ScalarType S>
Matrix<S> random_unitary(Rng& rng, Eigen::Index n) {
  return cff::svd(cff::random_matrix<S>(rng, n, n)).u;
}

// Random subspace basis: orthonormalized gaussian columns.
template <ScalarType S>
Matrix<S> random_subspace(Rng& rng, Eigen::Index n, Eigen::Index k) {
  return cff::orthonormalize(cff::random_matrix<S>(rng, n, k));
}

// R^3 reference systems used across the suites: three two-dimensional
// coordinate subspaces (the third in two variants) with equal weights.
inline cff::Matrix<Real> coord_span(std::initializer_list<int> axes) {
  cff::Matrix<Real> basis(3, static_cast<Eigen::Index>(axes.size()));
  Eigen::Index col = 0;
  for (int axis : axes) basis.col(col++) = cff::Vector<Real>::Unit(3, axis);
  return basis;
}

inline cff::ControlledFusionSystem<Real> r3_system(bool parseval_variant) {
  const double v = std::sqrt(0.5);
  std::vector<cff::WeightedSubspace<Real>> members = {
      {cff::Subspace<Real>::from_columns(coord_span({0, 1})), v},
      {cff::Subspace<Real>::from_columns(coord_span({1, 2})), v},
      {cff::Subspace<Real>::from_columns(parseval_variant ? coord_span({0, 2})
                                                          : coord_span({2})),
       v},
  };
  return cff::build_system<Real>(
      cff::make_controlled_pair<Real>(cff::Matrix<Real>::Identity(3, 3),
                                      cff::Matrix<Real>::Identity(3, 3)),
      std::move(members));
}

// Four-member Parseval system with unequal weights v^2 = 0.4/0.6/0.4/0.2.
inline cff::ControlledFusionSystem<Real> r3_four_member() {
  std::vector<cff::WeightedSubspace<Real>> members = {
      {cff::Subspace<Real>::from_columns(coord_span({0, 1})), std::sqrt(0.4)},
      {cff::Subspace<Real>::from_columns(coord_span({1, 2})), std::sqrt(0.6)},
      {cff::Subspace<Real>::from_columns(coord_span({0, 2})), std::sqrt(0.4)},
      {cff::Subspace<Real>::from_columns(coord_span({0})), std::sqrt(0.2)},
  };
  return cff::build_system<Real>(
      cff::make_controlled_pair<Real>(cff::Matrix<Real>::Identity(3, 3),
                                      cff::Matrix<Real>::Identity(3, 3)),
      std::move(members));
}

template <ScalarType S>
Eigen::Index numerical_rank(const Matrix<S>& m, double tol = 1e-10) {
  const RealVector sigma = cff::svd(m).singular_values;
  if (sigma.size() == 0) return 0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > tol * sigma(0)) ++rank;
  return rank;
}

}  // namespace testutil
