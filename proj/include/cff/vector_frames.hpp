#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cff/errors.hpp"
#include "cff/numerics.hpp"
#include "cff/types.hpp"

namespace cff {

// (C, C') with condition numbers recorded at construction.
template <ScalarType S>
struct ControlledPair {
  Matrix<S> c;
  Matrix<S> cprime;
  double cond_c = 0.0;
  double cond_cprime = 0.0;

  Eigen::Index dim() const { return c.rows(); }
};

namespace detail {

template <ScalarType S>
double condition_number(const Matrix<S>& m) {
  const RealVector sigma = svd(m).singular_values;
  const double smin = sigma(sigma.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sigma(0) / smin;
}

}  // namespace detail

template <ScalarType S>
ControlledPair<S> make_controlled_pair(Matrix<S> c, Matrix<S> cprime,
                                       double gate = kConditionGate) {
  if (c.rows() != c.cols() || cprime.rows() != cprime.cols())
    throw DimensionMismatch("controlled pair: control matrices must be square");
  if (c.rows() != cprime.rows())
    throw DimensionMismatch("controlled pair: C and C' sizes differ");
  const double cond_c = detail::condition_number(c);
  const double cond_cprime = detail::condition_number(cprime);
  if (!(cond_c <= gate))
    throw NotInvertible("controlled pair: cond(C) = " + std::to_string(cond_c) +
                        " exceeds the invertibility gate");
  if (!(cond_cprime <= gate))
    throw NotInvertible("controlled pair: cond(C') = " + std::to_string(cond_cprime) +
                        " exceeds the invertibility gate");
  return {std::move(c), std::move(cprime), cond_c, cond_cprime};
}

// (C*)^-1, with one Newton refinement to push the residual toward roundoff.
template <ScalarType S>
Matrix<S> inverse_adjoint(const Matrix<S>& c) {
  const Matrix<S> a = c.adjoint();
  const Matrix<S> x0 = a.inverse();
  const Matrix<S> eye = Matrix<S>::Identity(c.rows(), c.cols());
  return x0 * (S(2) * eye - a * x0);
}

template <ScalarType S>
struct VectorFrame {
  Eigen::Index dim = 0;
  std::vector<Vector<S>> vectors;
  ControlledPair<S> pair;
};

template <ScalarType S>
VectorFrame<S> make_vector_frame(std::vector<Vector<S>> vectors, ControlledPair<S> pair) {
  if (vectors.empty())
    throw DimensionMismatch("vector frame: at least one vector required");
  const Eigen::Index n = pair.dim();
  for (const Vector<S>& f : vectors)
    if (f.size() != n)
      throw DimensionMismatch("vector frame: vector dimension differs from controls");
  return {n, std::move(vectors), std::move(pair)};
}

// C-controlled frame of Eq. (2.2): S f = sum <f, f_i> C f_i, realized as the
// pair (C*, I) in the two-sided form.
template <ScalarType S>
VectorFrame<S> c_controlled_frame(std::vector<Vector<S>> vectors, const Matrix<S>& c,
                                  double gate = kConditionGate) {
  const Eigen::Index n = c.rows();
  return make_vector_frame(std::move(vectors),
                           make_controlled_pair<S>(c.adjoint(), Matrix<S>::Identity(n, n), gate));
}

// S = sum_i (C* f_i)(C'* f_i)*; the unique matrix with
// S f = sum_i <C' f, f_i> C* f_i under the first-argument-linear convention.
template <ScalarType S>
Matrix<S> controlled_frame_operator(const VectorFrame<S>& frame) {
  const Eigen::Index n = frame.dim;
  Matrix<S> s = Matrix<S>::Zero(n, n);
  const Matrix<S> c_adj = frame.pair.c.adjoint();
  const Matrix<S> cp_adj = frame.pair.cprime.adjoint();
  for (const Vector<S>& f : frame.vectors) {
    const Vector<S> u = c_adj * f;
    const Vector<S> w = cp_adj * f;
    s.noalias() += u * w.adjoint();
  }
  return s;
}

// Classify a (candidate) frame operator. Hermitian within tol: optimal bounds
// are the extreme eigenvalues. Otherwise Indefinite with the Hermitian-part
// spectrum and the relative self-adjointness defect.
template <ScalarType S>
FrameBounds frame_bounds_of_operator(const Matrix<S>& s, double tol = kSymmetryTol) {
  const double scale = operator_norm(s);
  const double defect = operator_norm<S>(s - s.adjoint());
  FrameBounds out;
  if (defect > tol * std::max(1.0, scale)) {
    const Matrix<S> herm = (s + s.adjoint()) / S(2);
    const HermitianSpectrum<S> es = hermitian_spectrum(herm, tol);
    out.lower = es.values(0);
    out.upper = es.values(es.values.size() - 1);
    out.classification = FrameClass::Indefinite;
    out.selfadjoint_defect = scale > 0.0 ? defect / scale : defect;
    return out;
  }
  const HermitianSpectrum<S> es = hermitian_spectrum(s, tol);
  const double a = es.values(0);
  const double b = es.values(es.values.size() - 1);
  out.lower = a;
  out.upper = b;
  if (a <= tol)
    out.classification = FrameClass::NotAFrame;
  else if (std::abs(a - 1.0) <= tol && std::abs(b - 1.0) <= tol)
    out.classification = FrameClass::Parseval;
  else if (std::abs(a - b) <= tol * std::max(1.0, b))
    out.classification = FrameClass::Tight;
  else
    out.classification = FrameClass::Frame;
  return out;
}

template <ScalarType S>
FrameBounds controlled_frame_bounds(const VectorFrame<S>& frame, double tol = kSymmetryTol) {
  return frame_bounds_of_operator(controlled_frame_operator(frame), tol);
}

// Both sides of the eigenvalue-sum identity, computed by independent paths:
// lhs = tr(S) over the assembled operator, rhs accumulated vector by vector.
struct EigensumIdentity {
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  bool holds = false;
  double parseval_gap = 0.0;  // |rhs - n|, of interest for Parseval systems
};

template <ScalarType S>
EigensumIdentity eigensum_identity(const VectorFrame<S>& frame, double tol = kSymmetryTol) {
  EigensumIdentity out;
  out.lhs = Complex(controlled_frame_operator(frame).trace());
  const Matrix<S> c_adj = frame.pair.c.adjoint();
  const Matrix<S> cp_adj = frame.pair.cprime.adjoint();
  Complex rhs(0.0, 0.0);
  for (const Vector<S>& f : frame.vectors) {
    const Vector<S> u = c_adj * f;
    const Vector<S> w = cp_adj * f;
    rhs += Complex(inner<S>(u, w));
  }
  out.rhs = rhs;
  out.holds = std::abs(out.lhs - out.rhs) <= tol * std::max(1.0, std::abs(out.lhs));
  out.parseval_gap = std::abs(rhs - Complex(static_cast<double>(frame.dim), 0.0));
  return out;
}

}  // namespace cff
