#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <type_traits>

namespace cff {

using Real = double;
using Complex = std::complex<double>;

template <class S>
inline constexpr bool is_scalar_v =
    std::is_same_v<S, Real> || std::is_same_v<S, Complex>;

template <class S>
concept ScalarType = is_scalar_v<S>;

template <ScalarType S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <ScalarType S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using RealVector = Eigen::VectorXd;

// <x,y> linear in the first argument, conjugate-linear in the second.
// Eigen's a.dot(b) conjugates a, so the arguments swap.
template <ScalarType S>
S inner(const Vector<S>& x, const Vector<S>& y) {
  return y.dot(x);
}

// Default tolerances. All relative unless noted.
inline constexpr double kSymmetryTol = 1e-9;     // Hermitian / positivity gate
inline constexpr double kPinvCutoff = 1e-12;     // singular value cutoff
inline constexpr double kRankTol = 1e-10;        // rank detection
inline constexpr double kFixedPointTol = 1e-8;   // |lambda - 1|, absolute
inline constexpr double kConditionGate = 1e12;   // GL membership
inline constexpr double kGeneratorGate = 1e6;    // random C resampling

enum class FrameClass { NotAFrame, Frame, Tight, Parseval, Indefinite };

inline const char* to_string(FrameClass c) {
  switch (c) {
    case FrameClass::NotAFrame:  return "not-a-frame";
    case FrameClass::Frame:      return "frame";
    case FrameClass::Tight:      return "tight";
    case FrameClass::Parseval:   return "parseval";
    case FrameClass::Indefinite: return "indefinite";
  }
  return "unknown";
}

struct FrameBounds {
  double lower = 0.0;  // A
  double upper = 0.0;  // B
  FrameClass classification = FrameClass::NotAFrame;
  // ||S - S*|| / ||S||; zero unless classification is Indefinite.
  double selfadjoint_defect = 0.0;
};

}  // namespace cff
