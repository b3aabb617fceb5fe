#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "qhog/core.hpp"
#include "qhog/sampling.hpp"

using namespace qhog;

namespace {

CMatrix from_oracle(const oracle::Mat& m) {
  CMatrix out(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = m[i][j];
  return out;
}

oracle::Mat to_oracle(const CMatrix& m) {
  oracle::Mat out = oracle::zeros(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

double diff(const CMatrix& a, const oracle::Mat& b) { return max_abs_diff(a, from_oracle(b)); }

}  // namespace

TEST_CASE("matrix basics") {
  const CMatrix a{{1, kI}, {2, 3}};
  CHECK(a.rows() == 2);
  CHECK(a(0, 1) == kI);
  CHECK(a.adjoint()(1, 0) == -kI);
  CHECK(a.transpose()(1, 0) == kI);
  CHECK(a.conjugate()(0, 1) == -kI);
  CHECK(a.trace() == cplx{4, 0});
  CHECK(max_abs_diff(a * CMatrix::identity(2), a) == 0.0);
  CHECK_THROWS_AS(a * CMatrix(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(max_abs_diff(a, CMatrix(3, 3)), std::invalid_argument);
}

TEST_CASE("pauli algebra and the swap gate") {
  const CMatrix i2 = pauli::identity();
  CHECK(max_abs_diff(pauli::x() * pauli::x(), i2) == 0.0);
  CHECK(max_abs_diff(pauli::x() * pauli::y(), kI * pauli::z()) == 0.0);
  const CMatrix s = swap_gate();
  CHECK(s.is_unitary());
  CHECK(max_abs_diff(s * s, CMatrix::identity(4)) == 0.0);
  // S = (I + X.X + Y.Y + Z.Z) / 2
  CMatrix sum = CMatrix::identity(4);
  sum += tensor_product(pauli::x(), pauli::x());
  sum += tensor_product(pauli::y(), pauli::y());
  sum += tensor_product(pauli::z(), pauli::z());
  CHECK(max_abs_diff(0.5 * sum, s) < 1e-15);
}

TEST_CASE("tensor product and partial trace agree with the index-loop oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = random_density(2, rng);
    const CMatrix b = random_density(4, rng);
    CHECK(diff(tensor_product(a, b), oracle::kron(to_oracle(a), to_oracle(b))) < 1e-15);

    const CMatrix rho = random_density(8, rng);
    for (const std::vector<int>& keep :
         {std::vector<int>{0}, {1}, {2}, {0, 1}, {2, 0}, {1, 2}, {2, 1, 0}}) {
      CHECK(diff(partial_trace(rho, keep), oracle::reduce(to_oracle(rho), 3, keep)) < 1e-14);
    }
  }
}

TEST_CASE("partial trace rejects bad input") {
  const CMatrix rho = CMatrix::identity(4);
  CHECK_THROWS_AS(partial_trace(CMatrix::identity(3), {0}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {2}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(CMatrix(4, 2), {0}), std::invalid_argument);
}

TEST_CASE("product state basis order: qubit 0 is the most significant bit") {
  const std::array<cplx, 2> zero{1, 0}, one{0, 1};
  const std::vector<std::array<cplx, 2>> kets{one, zero, zero};
  const MultiQubitVector v = product_state(kets);
  CHECK(v.dimension() == 8);
  CHECK(v.amplitude(0b100) == cplx{1, 0});
  CHECK(v.mask(0) == 0b100);
  CHECK(v.mask(2) == 0b001);
}

TEST_CASE("two-qubit gates on a register match the dense operator") {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 4;
    std::vector<std::array<cplx, 2>> kets;
    for (int q = 0; q < n; ++q) kets.push_back(random_ket(rng));
    MultiQubitVector v = product_state(kets);
    std::vector<oracle::cx> psi(v.amplitudes().begin(), v.amplitudes().end());
    const CMatrix u = random_unitary(4, rng);
    std::uniform_int_distribution<int> pick(0, n - 1);
    int a = pick(rng), b = pick(rng);
    while (b == a) b = pick(rng);
    v.apply_two_qubit(u, a, b);
    psi = oracle::apply_dense(psi, n, to_oracle(u), a, b);
    double err = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) err = std::max(err, std::abs(psi[i] - v.amplitude(i)));
    CHECK(err < 1e-14);
    CHECK(std::abs(v.norm_squared() - 1.0) < 1e-12);

    // Reduced matrices straight from amplitudes.
    const oracle::Mat full = oracle::projector(psi);
    CHECK(max_abs_diff(v.reduced(std::vector<int>{b, a}),
                       from_oracle(oracle::reduce(full, n, {b, a}))) < 1e-14);
    CHECK(max_abs_diff(v.density(), from_oracle(full)) < 1e-14);
  }
  MultiQubitVector v(2);
  CHECK_THROWS_AS(v.apply_two_qubit(swap_gate(), 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(v.apply_two_qubit(swap_gate(), 0, 2), std::invalid_argument);
}

TEST_CASE("jacobi eigensolver") {
  SUBCASE("known spectrum") {
    const auto e = hermitian_eig(pauli::y());
    CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(e.values[1] == doctest::Approx(-1.0).epsilon(1e-15));
    const auto d = hermitian_eig(CMatrix{{3, 0}, {0, -2}});
    CHECK(d.values[0] == 3.0);
    CHECK(d.values[1] == -2.0);
  }
  SUBCASE("random Hermitian reconstruction and orthonormal vectors") {
    Rng rng(13);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t dim = 2 + static_cast<std::size_t>(trial % 7);
      const CMatrix h = random_hermitian(dim, rng);
      const auto e = hermitian_eig(h);
      CHECK(std::is_sorted(e.values.rbegin(), e.values.rend()));
      CMatrix lambda(dim, dim);
      for (std::size_t k = 0; k < dim; ++k) lambda(k, k) = e.values[k];
      CHECK(max_abs_diff(e.vectors * lambda * e.vectors.adjoint(), h) < 1e-9);
      CHECK(e.vectors.is_unitary(1e-12));
    }
  }
  SUBCASE("degenerate spectrum") {
    const auto e = hermitian_eig(CMatrix::identity(4));
    for (double v : e.values) CHECK(v == 1.0);
  }
  CHECK_THROWS_AS(hermitian_eig(CMatrix{{0, 1}, {0, 0}}), std::domain_error);
}

TEST_CASE("psd square root and trace norm") {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix rho = random_density(4, rng);
    const CMatrix root = psd_sqrt(rho);
    CHECK(max_abs_diff(root * root, rho) < 1e-12);
    CHECK(std::abs(trace_norm(rho) - 1.0) < 1e-12);
    const CMatrix h = random_hermitian(4, rng);
    CHECK(trace_norm(h) >= std::abs(h.trace()) - 1e-12);
  }
  CHECK(trace_norm(pauli::z()) == doctest::Approx(2.0));
  CHECK_THROWS_AS(psd_sqrt(pauli::z()), std::domain_error);
}

TEST_CASE("unitary conjugation preserves the trace") {
  Rng rng(15);
  for (int trial = 0; trial < 1000; ++trial) {
    const CMatrix u = random_unitary(4, rng);
    const CMatrix rho = random_density(4, rng);
    CHECK(std::abs((u * rho * u.adjoint()).trace() - rho.trace()) <= 1e-12);
  }
}
