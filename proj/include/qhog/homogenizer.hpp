#pragma once

// Partial-swap homogenization of a system qubit by a reservoir of identically
// prepared qubits.
//
// One collision applies P(eta) = cos(eta) I + i sin(eta) S to the system and
// one fresh reservoir qubit. With s = sin(eta), c = cos(eta) and reservoir
// Bloch vector t, the system and the outgoing reservoir qubit become
//
//   w'  = s^2 t + c^2 w - 2cs (t x w)
//   t'  = s^2 w + c^2 t + 2cs (t x w)
//
// Everything here works on Bloch vectors; the 4x4 conjugation is kept as an
// independent cross-check (conjugate_and_trace).

#include <array>
#include <cstdint>
#include <vector>

#include "qhog/core.hpp"
#include "qhog/qubit.hpp"

namespace qhog {

/// Interaction strength eta with cached sin and cos.
///
/// Any real eta is accepted and folded modulo pi into (-pi/2, pi/2]; the fold
/// only changes P(eta) by the global sign -1. Negative values are kept since
/// P(-eta) is the inverse collision. Homogenization runs use [0, pi/2].
class SwapAngle {
 public:
  explicit SwapAngle(double eta = 0.0);
  /// eta = asin(sqrt(s2)), with s and c taken as sqrt(s2), sqrt(1 - s2).
  static SwapAngle from_sin_squared(double s2);

  double eta() const { return eta_; }
  double sin() const { return s_; }
  double cos() const { return c_; }
  /// True if the requested value was outside (-pi/2, pi/2].
  bool folded() const { return folded_; }
  double requested() const { return requested_; }

  SwapAngle inverse() const;

 private:
  SwapAngle(double eta, double s, double c);
  double eta_ = 0.0;
  double s_ = 0.0;
  double c_ = 1.0;
  double requested_ = 0.0;
  bool folded_ = false;
};

using Matrix3 = std::array<std::array<double, 3>, 3>;
using Matrix4 = std::array<std::array<double, 4>, 4>;

/// Affine map on (1, w) of the form (1, 0^T; s^2 t, T).
class AffineSuperOp {
 public:
  /// Throws std::invalid_argument unless the top row is exactly (1, 0, 0, 0).
  explicit AffineSuperOp(const Matrix4& m);

  const Matrix4& matrix() const { return m_; }
  double operator()(int r, int c) const { return m_[r][c]; }

  Matrix3 linear_block() const;
  Vec3 translation() const { return {m_[1][0], m_[2][0], m_[3][0]}; }

  AffineQubitVector apply(const AffineQubitVector& v) const;
  QubitState apply(const QubitState& rho) const;

  friend AffineSuperOp operator*(const AffineSuperOp& a, const AffineSuperOp& b);
  AffineSuperOp power(std::uint64_t n) const;

 private:
  Matrix4 m_;
};

struct HomogenizationBudget {
  double delta = 0.0;
  double sin_eta_max = 0.0;
  double eta_max = 0.0;
  int n_delta = 0;

  SwapAngle angle() const { return SwapAngle::from_sin_squared(delta / 2.0); }
};

struct TrajectoryRecord {
  int n = 0;
  QubitState system;         // rho_S^(n)
  QubitState reservoir_out;  // xi'_n; the untouched reservoir state at n = 0
  double d_system = 0.0;     // D(rho_S^(n), xi)
  double d_reservoir = 0.0;  // D(xi'_n, xi)
};

struct Trajectory {
  QubitState reservoir;
  SwapAngle angle;
  std::vector<TrajectoryRecord> records;
};

struct UniversalityReport {
  bool universal = false;
  double max_residual = 0.0;  // largest trace distance seen over all samples
  int samples = 0;
};

CMatrix partial_swap_unitary(const SwapAngle& angle);

QubitState step_system(const QubitState& rho, const QubitState& xi, const SwapAngle& angle);
QubitState step_reservoir(const QubitState& rho, const QubitState& xi, const SwapAngle& angle);

/// Both marginals of P (rho (x) xi) P^dagger by explicit conjugation and
/// partial trace: {system, reservoir}.
std::array<QubitState, 2> conjugate_and_trace(const CMatrix& u, const QubitState& rho,
                                              const QubitState& xi);

AffineSuperOp superoperator(const QubitState& xi, const SwapAngle& angle);

/// System state after n collisions: (1 - c^{2n}) t + T^n w.
QubitState closed_form_system(const QubitState& rho0, const QubitState& xi,
                              const SwapAngle& angle, std::uint64_t n);

/// k = |cos eta|.
double contraction_coefficient(const SwapAngle& angle);

/// Throws std::invalid_argument if n_steps < 1.
Trajectory run_trajectory(const QubitState& rho0, const QubitState& xi, const SwapAngle& angle,
                          int n_steps);

/// sin(eta_max) = sqrt(delta/2), n_delta = ceil(ln(delta/2) / ln(1 - delta/2)).
/// Throws std::invalid_argument unless 0 < delta < 2.
HomogenizationBudget budget_from_delta(double delta);

/// Worst-case distance 2 c^{2N} after N collisions (orthogonal pure inputs).
double worst_case_distance(const SwapAngle& angle, int n);

inline constexpr int kUniversalitySamples = 64;
inline constexpr double kUniversalityTol = 1e-9;

/// Samples `sample_count` pure and `sample_count` mixed states rho and checks
/// that both marginals of U (rho (x) rho) U^dagger equal rho within 1e-9.
/// Throws std::invalid_argument unless u is a 4x4 unitary within 1e-10.
UniversalityReport check_universality(const CMatrix& u, int sample_count = kUniversalitySamples,
                                      std::uint64_t seed = 20011023);

}  // namespace qhog
