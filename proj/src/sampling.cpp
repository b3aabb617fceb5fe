#include "qhog/sampling.hpp"

#include <numbers>

namespace qhog {

namespace {

cplx gaussian_complex(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace

QubitState random_mixed_state(Rng& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (;;) {
    const Vec3 w{u(rng), u(rng), u(rng)};
    if (w.norm() <= 0.5) return QubitState(w);
  }
}

QubitState random_pure_state(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    const Vec3 g{normal(rng), normal(rng), normal(rng)};
    const double n = g.norm();
    if (n > 1e-8) return QubitState((0.5 / n) * g);
  }
}

QubitState random_state(Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  return coin(rng) ? random_pure_state(rng) : random_mixed_state(rng);
}

std::array<cplx, 2> random_ket(Rng& rng) {
  for (;;) {
    const cplx a = gaussian_complex(rng);
    const cplx b = gaussian_complex(rng);
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n > 1e-8) return {a / n, b / n};
  }
}

CMatrix random_unitary(std::size_t dim, Rng& rng) {
  CMatrix g(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = gaussian_complex(rng);

  // Modified Gram-Schmidt on columns; the resulting Q has R with positive
  // real diagonal, which is the phase fix that makes Q Haar distributed.
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      cplx proj = 0.0;
      for (std::size_t r = 0; r < dim; ++r) proj += std::conj(g(r, prev)) * g(r, c);
      for (std::size_t r = 0; r < dim; ++r) g(r, c) -= proj * g(r, prev);
    }
    double n = 0.0;
    for (std::size_t r = 0; r < dim; ++r) n += std::norm(g(r, c));
    n = std::sqrt(n);
    for (std::size_t r = 0; r < dim; ++r) g(r, c) /= n;
  }
  return g;
}

CMatrix random_hermitian(std::size_t dim, Rng& rng) {
  CMatrix g(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = gaussian_complex(rng);
  CMatrix h = g + g.adjoint();
  return 0.5 * h;
}

CMatrix random_density(std::size_t dim, Rng& rng) {
  CMatrix g(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = gaussian_complex(rng);
  CMatrix rho = g * g.adjoint();
  const double tr = rho.trace().real();
  rho *= 1.0 / tr;
  // Symmetrize away roundoff.
  CMatrix sym = rho + rho.adjoint();
  return 0.5 * sym;
}

double random_eta(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, std::numbers::pi / 2.0);
  return u(rng);
}

}  // namespace qhog
