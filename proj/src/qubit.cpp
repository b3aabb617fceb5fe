#include "qhog/qubit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qhog {

namespace {
CMatrix bloch_matrix(Vec3 w) {
  return {{0.5 + w.z, cplx{w.x, -w.y}}, {cplx{w.x, w.y}, 0.5 - w.z}};
}
}  // namespace

QubitState::QubitState(Vec3 w, double tol) : w_(w) {
  if (!(w.norm() <= 0.5 + tol))
    throw std::invalid_argument("QubitState: |w| = " + std::to_string(w.norm()) +
                                " exceeds the Bloch radius 1/2");
}

QubitState QubitState::from_density(const CMatrix& rho, double tol) {
  return QubitState(bloch_from_density(rho, tol), std::max(tol, kBlochTol));
}

QubitState QubitState::from_affine(const AffineQubitVector& v, double tol) {
  if (v[0] != 1.0) throw std::invalid_argument("AffineQubitVector: leading component must be 1");
  return QubitState({v[1], v[2], v[3]}, tol);
}

QubitState QubitState::from_ket(const std::array<cplx, 2>& ket) {
  const double n2 = std::norm(ket[0]) + std::norm(ket[1]);
  if (n2 == 0.0) throw std::invalid_argument("QubitState: zero ket");
  const cplx a = ket[0];
  const cplx b = ket[1];
  const cplx ab = a * std::conj(b) / n2;
  return QubitState({ab.real(), -ab.imag(), 0.5 * (std::norm(a) - std::norm(b)) / n2}, 1e-12);
}

CMatrix QubitState::density() const { return bloch_matrix(w_); }

CMatrix density_from_bloch(Vec3 w, double tol) {
  if (!(w.norm() <= 0.5 + tol))
    throw std::invalid_argument("density_from_bloch: |w| exceeds 1/2");
  return bloch_matrix(w);
}

Vec3 bloch_from_density(const CMatrix& rho, double tol) {
  if (rho.rows() != 2 || rho.cols() != 2)
    throw std::invalid_argument("bloch_from_density: expected a 2x2 matrix");
  if (!rho.is_hermitian(tol)) throw std::invalid_argument("bloch_from_density: not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol)
    throw std::invalid_argument("bloch_from_density: trace is not 1");
  const Vec3 w{rho(1, 0).real(), rho(1, 0).imag(), 0.5 * (rho(0, 0).real() - rho(1, 1).real())};
  if (w.norm() > 0.5 + tol) throw std::invalid_argument("bloch_from_density: not positive");
  return w;
}

double trace_distance(const QubitState& a, const QubitState& b) {
  return 2.0 * (a.bloch() - b.bloch()).norm();
}

std::array<cplx, 2> ket_from_bloch(Vec3 w, double tol) {
  const double r = w.norm();
  if (std::abs(r - 0.5) > tol)
    throw std::invalid_argument("ket_from_bloch: Bloch vector does not describe a pure state");
  // Unit vector n = 2w; |psi> = (cos(th/2), e^{i phi} sin(th/2)).
  const double nz = std::clamp(2.0 * w.z / (2.0 * r), -1.0, 1.0);
  const double theta = std::acos(nz);
  const double phi = std::atan2(w.y, w.x);
  return {cplx{std::cos(theta / 2.0), 0.0}, std::polar(std::sin(theta / 2.0), phi)};
}

}  // namespace qhog
