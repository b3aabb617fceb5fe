#pragma once

// Single-qubit states in the half-radius Bloch convention:
//
//   rho = 1/2 * I + w . sigma,   |w| <= 1/2
//
// Pure states have |w| = 1/2 and the trace distance between two states is
// 2 |w_a - w_b|, so orthogonal pure states sit at distance 2. Most textbooks
// use a unit-radius ball instead; every Bloch vector in this library,
// including the CLI's input triples, is in the half-radius convention.

#include <array>
#include <cmath>

#include "qhog/core.hpp"

namespace qhog {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Tolerance on |w| <= 1/2 accepted by the constructors below.
inline constexpr double kBlochTol = 1e-12;

/// (1, w_x, w_y, w_z): the affine coordinates a superoperator acts on.
using AffineQubitVector = std::array<double, 4>;

class QubitState {
 public:
  QubitState() = default;  // maximally mixed
  /// Throws std::invalid_argument if |w| > 1/2 + tol.
  explicit QubitState(Vec3 w, double tol = kBlochTol);

  static QubitState from_density(const CMatrix& rho, double tol = 1e-10);
  static QubitState from_affine(const AffineQubitVector& v, double tol = kBlochTol);
  /// Pure state |psi><psi|; the ket need not be normalized.
  static QubitState from_ket(const std::array<cplx, 2>& ket);

  const Vec3& bloch() const { return w_; }
  CMatrix density() const;
  AffineQubitVector affine() const { return {1.0, w_.x, w_.y, w_.z}; }
  bool is_pure(double tol = 1e-12) const { return std::abs(w_.norm() - 0.5) <= tol; }

  friend bool operator==(const QubitState&, const QubitState&) = default;

 private:
  Vec3 w_{};
};

/// 1/2 I + w . sigma.
CMatrix density_from_bloch(Vec3 w, double tol = kBlochTol);

/// w_k = 1/2 tr(rho sigma_k). Throws std::invalid_argument unless rho is a
/// 2x2 Hermitian, unit-trace, positive semidefinite matrix within `tol`.
Vec3 bloch_from_density(const CMatrix& rho, double tol = 1e-10);

/// Tr|a - b| = 2 |w_a - w_b|.
double trace_distance(const QubitState& a, const QubitState& b);

/// A ket whose projector has Bloch vector w (|w| must be 1/2 within tol).
std::array<cplx, 2> ket_from_bloch(Vec3 w, double tol = 1e-9);

inline std::array<cplx, 2> ket_zero() { return {cplx{1.0, 0.0}, cplx{0.0, 0.0}}; }
inline std::array<cplx, 2> ket_one() { return {cplx{0.0, 0.0}, cplx{1.0, 0.0}}; }
inline std::array<cplx, 2> ket_plus() {
  const double h = 1.0 / std::sqrt(2.0);
  return {cplx{h, 0.0}, cplx{h, 0.0}};
}

}  // namespace qhog
