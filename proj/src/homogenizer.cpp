#include "qhog/homogenizer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qhog/sampling.hpp"

namespace qhog {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix3 mat3_identity() { return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}}; }

Matrix3 mat3_mul(const Matrix3& a, const Matrix3& b) {
  Matrix3 out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      for (int k = 0; k < 3; ++k) out[r][c] += a[r][k] * b[k][c];
  return out;
}

Matrix3 mat3_pow(Matrix3 base, std::uint64_t n) {
  Matrix3 acc = mat3_identity();
  while (n > 0) {
    if (n & 1U) acc = mat3_mul(acc, base);
    base = mat3_mul(base, base);
    n >>= 1U;
  }
  return acc;
}

Vec3 mat3_apply(const Matrix3& m, Vec3 v) {
  return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
          m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
          m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

// Linear part T = c^2 I - 2cs [t]_x of the one-step map.
Matrix3 linear_part(Vec3 t, double s, double c) {
  const double k = 2.0 * c * s;
  return {{{c * c, k * t.z, -k * t.y}, {-k * t.z, c * c, k * t.x}, {k * t.y, -k * t.x, c * c}}};
}

}  // namespace

SwapAngle::SwapAngle(double eta) : requested_(eta) {
  if (!std::isfinite(eta)) throw std::invalid_argument("SwapAngle: eta must be finite");
  double folded = std::remainder(eta, kPi);
  if (folded <= -kPi / 2.0) folded += kPi;
  folded_ = folded != eta;
  eta_ = folded;
  s_ = std::sin(eta_);
  c_ = std::cos(eta_);
  if (eta_ == kPi / 2.0) c_ = 0.0;
}

SwapAngle::SwapAngle(double eta, double s, double c)
    : eta_(eta), s_(s), c_(c), requested_(eta), folded_(false) {}

SwapAngle SwapAngle::from_sin_squared(double s2) {
  if (!(s2 >= 0.0 && s2 <= 1.0))
    throw std::invalid_argument("SwapAngle: sin^2(eta) must lie in [0, 1]");
  const double s = std::sqrt(s2);
  return SwapAngle(std::asin(s), s, std::sqrt(1.0 - s2));
}

SwapAngle SwapAngle::inverse() const { return SwapAngle(-eta_, -s_, c_); }

AffineSuperOp::AffineSuperOp(const Matrix4& m) : m_(m) {
  if (m[0][0] != 1.0 || m[0][1] != 0.0 || m[0][2] != 0.0 || m[0][3] != 0.0)
    throw std::invalid_argument("AffineSuperOp: top row must be (1, 0, 0, 0)");
}

Matrix3 AffineSuperOp::linear_block() const {
  Matrix3 out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out[r][c] = m_[r + 1][c + 1];
  return out;
}

AffineQubitVector AffineSuperOp::apply(const AffineQubitVector& v) const {
  if (v[0] != 1.0) throw std::invalid_argument("AffineQubitVector: leading component must be 1");
  AffineQubitVector out{1.0, 0.0, 0.0, 0.0};
  for (int r = 1; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r] += m_[r][c] * v[c];
  return out;
}

QubitState AffineSuperOp::apply(const QubitState& rho) const {
  return QubitState::from_affine(apply(rho.affine()));
}

AffineSuperOp operator*(const AffineSuperOp& a, const AffineSuperOp& b) {
  Matrix4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int k = 0; k < 4; ++k) out[r][c] += a.m_[r][k] * b.m_[k][c];
  out[0] = {1.0, 0.0, 0.0, 0.0};
  return AffineSuperOp(out);
}

AffineSuperOp AffineSuperOp::power(std::uint64_t n) const {
  AffineSuperOp acc(Matrix4{{{1.0, 0.0, 0.0, 0.0},
                             {0.0, 1.0, 0.0, 0.0},
                             {0.0, 0.0, 1.0, 0.0},
                             {0.0, 0.0, 0.0, 1.0}}});
  AffineSuperOp base = *this;
  while (n > 0) {
    if (n & 1U) acc = acc * base;
    base = base * base;
    n >>= 1U;
  }
  return acc;
}

CMatrix partial_swap_unitary(const SwapAngle& angle) {
  CMatrix p = CMatrix::identity(4) * cplx{angle.cos(), 0.0};
  p += swap_gate() * cplx{0.0, angle.sin()};
  return p;
}

QubitState step_system(const QubitState& rho, const QubitState& xi, const SwapAngle& angle) {
  const double s = angle.sin();
  const double c = angle.cos();
  const Vec3& w = rho.bloch();
  const Vec3& t = xi.bloch();
  return QubitState((s * s) * t + (c * c) * w - (2.0 * c * s) * cross(t, w));
}

QubitState step_reservoir(const QubitState& rho, const QubitState& xi, const SwapAngle& angle) {
  const double s = angle.sin();
  const double c = angle.cos();
  const Vec3& w = rho.bloch();
  const Vec3& t = xi.bloch();
  return QubitState((s * s) * w + (c * c) * t + (2.0 * c * s) * cross(t, w));
}

std::array<QubitState, 2> conjugate_and_trace(const CMatrix& u, const QubitState& rho,
                                              const QubitState& xi) {
  const CMatrix joint = u * tensor_product(rho.density(), xi.density()) * u.adjoint();
  return {QubitState::from_density(partial_trace(joint, {0}), 1e-9),
          QubitState::from_density(partial_trace(joint, {1}), 1e-9)};
}

AffineSuperOp superoperator(const QubitState& xi, const SwapAngle& angle) {
  const double s = angle.sin();
  const double c = angle.cos();
  const Vec3& t = xi.bloch();
  const Matrix3 lin = linear_part(t, s, c);
  Matrix4 m{};
  m[0] = {1.0, 0.0, 0.0, 0.0};
  for (int r = 0; r < 3; ++r) {
    m[r + 1][0] = s * s * t[r];
    for (int col = 0; col < 3; ++col) m[r + 1][col + 1] = lin[r][col];
  }
  return AffineSuperOp(m);
}

QubitState closed_form_system(const QubitState& rho0, const QubitState& xi,
                              const SwapAngle& angle, std::uint64_t n) {
  const double s = angle.sin();
  const double c = angle.cos();
  const Vec3& t = xi.bloch();
  const double c2n = std::pow(c * c, static_cast<double>(n));
  const Matrix3 tn = mat3_pow(linear_part(t, s, c), n);
  return QubitState((1.0 - c2n) * t + mat3_apply(tn, rho0.bloch()));
}

double contraction_coefficient(const SwapAngle& angle) { return std::abs(angle.cos()); }

Trajectory run_trajectory(const QubitState& rho0, const QubitState& xi, const SwapAngle& angle,
                          int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("run_trajectory: n_steps must be >= 1");
  Trajectory traj{xi, angle, {}};
  traj.records.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.records.push_back({0, rho0, xi, trace_distance(rho0, xi), 0.0});
  QubitState sys = rho0;
  for (int n = 1; n <= n_steps; ++n) {
    const QubitState out = step_reservoir(sys, xi, angle);
    sys = step_system(sys, xi, angle);
    traj.records.push_back({n, sys, out, trace_distance(sys, xi), trace_distance(out, xi)});
  }
  return traj;
}

HomogenizationBudget budget_from_delta(double delta) {
  if (!(delta > 0.0 && delta < 2.0))
    throw std::invalid_argument("budget_from_delta: delta must lie in (0, 2), got " +
                                std::to_string(delta));
  HomogenizationBudget b;
  b.delta = delta;
  b.sin_eta_max = std::sqrt(delta / 2.0);
  b.eta_max = std::asin(b.sin_eta_max);
  b.n_delta = static_cast<int>(std::ceil(std::log(delta / 2.0) / std::log(1.0 - delta / 2.0)));
  return b;
}

double worst_case_distance(const SwapAngle& angle, int n) {
  return 2.0 * std::pow(angle.cos() * angle.cos(), n);
}

UniversalityReport check_universality(const CMatrix& u, int sample_count, std::uint64_t seed) {
  if (u.rows() != 4 || u.cols() != 4)
    throw std::invalid_argument("check_universality: expected a 4x4 operator");
  if (!u.is_unitary(1e-10)) throw std::invalid_argument("check_universality: not unitary");
  if (sample_count < 1) throw std::invalid_argument("check_universality: sample_count < 1");

  Rng rng(seed);
  UniversalityReport report;
  const CMatrix u_dag = u.adjoint();
  const auto probe = [&](const QubitState& rho) {
    const CMatrix r = rho.density();
    const CMatrix joint = u * tensor_product(r, r) * u_dag;
    for (int keep = 0; keep < 2; ++keep) {
      const Vec3 w = bloch_from_density(partial_trace(joint, {keep}), 1e-9);
      report.max_residual = std::max(report.max_residual, 2.0 * (w - rho.bloch()).norm());
    }
    ++report.samples;
  };
  for (int i = 0; i < sample_count; ++i) probe(random_pure_state(rng));
  for (int i = 0; i < sample_count; ++i) probe(random_mixed_state(rng));
  report.universal = report.max_residual <= kUniversalityTol;
  return report;
}

}  // namespace qhog
