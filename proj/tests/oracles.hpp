#pragma once

// Reference implementations used only by the tests. They share no code with
// the library: plain nested vectors, explicit index loops, brute force where
// possible.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using cx = std::complex<double>;
using Mat = std::vector<std::vector<cx>>;

inline Mat zeros(std::size_t n) { return Mat(n, std::vector<cx>(n)); }

inline Mat mul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat c = zeros(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Mat dagger(const Mat& a) {
  Mat c = zeros(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] = std::conj(a[j][i]);
  return c;
}

inline Mat kron(const Mat& a, const Mat& b) {
  const std::size_t n = a.size(), m = b.size();
  Mat c = zeros(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) c[i * m + k][j * m + l] = a[i][j] * b[k][l];
  return c;
}

// Half-radius Bloch vector -> 2x2 density matrix.
inline Mat qubit(double x, double y, double z) {
  return {{cx(0.5 + z, 0), cx(x, -y)}, {cx(x, y), cx(0.5 - z, 0)}};
}

inline std::array<double, 3> bloch(const Mat& rho) {
  return {rho[1][0].real(), rho[1][0].imag(), 0.5 * (rho[0][0].real() - rho[1][1].real())};
}

// cos(eta) I + i sin(eta) SWAP, written out entry by entry.
inline Mat partial_swap(double eta) {
  const cx c(std::cos(eta), 0), is(0, std::sin(eta));
  Mat p = zeros(4);
  p[0][0] = c + is;
  p[3][3] = c + is;
  p[1][1] = c;
  p[2][2] = c;
  p[1][2] = is;
  p[2][1] = is;
  return p;
}

// Partial traces of a 4x4 operator on qubits (A, B), A major.
inline Mat trace_out_second(const Mat& r) {
  Mat out = zeros(2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k < 2; ++k) out[a][b] += r[2 * a + k][2 * b + k];
  return out;
}

inline Mat trace_out_first(const Mat& r) {
  Mat out = zeros(2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k < 2; ++k) out[a][b] += r[2 * k + a][2 * k + b];
  return out;
}

// Reduced matrix of `keep` from an n-qubit density matrix, by summing over
// every assignment of the traced-out bits. Qubit 0 is the most significant.
inline Mat reduce(const Mat& rho, int n, const std::vector<int>& keep) {
  const std::size_t m = keep.size();
  Mat out = zeros(std::size_t{1} << m);
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      bool same = true;
      for (int q = 0; q < n && same; ++q) {
        if (std::find(keep.begin(), keep.end(), q) != keep.end()) continue;
        const std::size_t bit = std::size_t{1} << (n - 1 - q);
        same = (i & bit) == (j & bit);
      }
      if (!same) continue;
      std::size_t ri = 0, rj = 0;
      for (std::size_t t = 0; t < m; ++t) {
        const std::size_t bit = std::size_t{1} << (n - 1 - keep[t]);
        ri = (ri << 1) | ((i & bit) ? 1 : 0);
        rj = (rj << 1) | ((j & bit) ? 1 : 0);
      }
      out[ri][rj] += rho[i][j];
    }
  return out;
}

// Applies a 4x4 gate to qubits (a, b) of an n-qubit vector by building the
// full 2^n x 2^n operator.
inline std::vector<cx> apply_dense(const std::vector<cx>& psi, int n, const Mat& gate, int a,
                                   int b) {
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t ma = std::size_t{1} << (n - 1 - a), mb = std::size_t{1} << (n - 1 - b);
  std::vector<cx> out(dim);
  for (std::size_t row = 0; row < dim; ++row)
    for (std::size_t col = 0; col < dim; ++col) {
      if ((row & ~(ma | mb)) != (col & ~(ma | mb))) continue;
      const std::size_t gr = ((row & ma) ? 2 : 0) + ((row & mb) ? 1 : 0);
      const std::size_t gc = ((col & ma) ? 2 : 0) + ((col & mb) ? 1 : 0);
      out[row] += gate[gr][gc] * psi[col];
    }
  return out;
}

inline Mat projector(const std::vector<cx>& psi) {
  Mat r = zeros(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) r[i][j] = psi[i] * std::conj(psi[j]);
  return r;
}

// Smallest N with 2 (1 - delta/2)^N <= delta, by counting.
inline int budget_by_search(double delta) {
  const double c2 = 1.0 - delta / 2.0;
  double d = 2.0;
  int n = 0;
  while (d > delta) {
    d *= c2;
    ++n;
  }
  return n;
}

// Concurrence of a pure two-qubit state a|00> + b|01> + c|10> + d|11>.
inline double pure_concurrence(const std::vector<cx>& psi) {
  return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

// Bell-diagonal state with weights p on (Phi+, Phi-, Psi+, Psi-): C = max(0, 2 p_max - 1).
inline Mat bell_diagonal(const std::array<double, 4>& p) {
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<std::vector<cx>> bell = {
      {h, 0, 0, h}, {h, 0, 0, -h}, {0, h, h, 0}, {0, h, -h, 0}};
  Mat r = zeros(4);
  for (int k = 0; k < 4; ++k) {
    const Mat pr = projector(bell[static_cast<std::size_t>(k)]);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r[i][j] += p[static_cast<std::size_t>(k)] * pr[i][j];
  }
  return r;
}

// Closed-form weight-1 amplitudes after collisions 1..N from |1>|0...0>.
inline std::vector<cx> excitation_after(int n_res, double s, double c) {
  std::vector<cx> a(static_cast<std::size_t>(n_res) + 1);
  const cx is(0, s), ph(c, s);
  a[0] = std::pow(c, n_res);
  for (int l = 1; l <= n_res; ++l)
    a[static_cast<std::size_t>(l)] = is * std::pow(c, l - 1) * std::pow(ph, n_res - l);
  return a;
}

// Tree edges for a depth-first walk over all orders of m items.
inline std::uint64_t permutation_tree_edges(int m) {
  std::uint64_t total = 0, falling = 1;
  for (int d = 1; d <= m; ++d) {
    falling *= static_cast<std::uint64_t>(m - d + 1);
    total += falling;
  }
  return total;
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

}  // namespace oracle
