#include "qhog/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qhog {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument("CMatrix: entry count " + std::to_string(data_.size()) +
                                " does not match shape " + std::to_string(rows_) + "x" +
                                std::to_string(cols_));
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("CMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

CMatrix CMatrix::conjugate() const {
  CMatrix out = *this;
  for (auto& v : out.data_) v = std::conj(v);
  return out;
}

CMatrix CMatrix::transpose() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

bool CMatrix::is_hermitian(double tol) const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

bool CMatrix::is_unitary(double tol) const {
  if (!is_square()) return false;
  return max_abs_diff(adjoint() * (*this), identity(rows_)) <= tol;
}

bool CMatrix::is_psd(double tol) const {
  if (!is_hermitian(tol)) return false;
  const auto eig = hermitian_eig(*this, tol);
  return eig.values.empty() || eig.values.back() >= -tol;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("CMatrix: shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("CMatrix: shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx scale) {
  for (auto& v : data_) v *= scale;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx scale, CMatrix a) { return a *= scale; }
CMatrix operator*(CMatrix a, cplx scale) { return a *= scale; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("CMatrix: shape mismatch in *");
  CMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx ark = a(r, k);
      if (ark == cplx{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

namespace pauli {
CMatrix identity() { return CMatrix::identity(2); }
CMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
CMatrix y() { return {{0.0, -kI}, {kI, 0.0}}; }
CMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

CMatrix swap_gate() {
  return {{1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}};
}

CMatrix tensor_product(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac)
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
  return out;
}

namespace {

int qubit_count_of(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim))
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
  return std::countr_zero(dim);
}

void validate_keep(std::span<const int> keep, int n) {
  if (keep.empty()) throw std::invalid_argument("partial trace: empty keep list");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int q : keep) {
    if (q < 0 || q >= n)
      throw std::invalid_argument("partial trace: qubit index " + std::to_string(q) +
                                  " out of range for " + std::to_string(n) + " qubits");
    if (seen[static_cast<std::size_t>(q)])
      throw std::invalid_argument("partial trace: duplicate qubit index " + std::to_string(q));
    seen[static_cast<std::size_t>(q)] = true;
  }
}

// Basis-index offsets contributed by the kept and the traced qubits. A full
// index is kept[r] | traced[t].
struct SplitIndex {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
};

SplitIndex split_index(int n, std::span<const int> keep) {
  const auto bit = [n](int q) { return std::size_t{1} << (n - 1 - q); };
  std::vector<int> rest;
  for (int q = 0; q < n; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);

  const auto offsets = [&](std::span<const int> qubits) {
    const std::size_t m = qubits.size();
    std::vector<std::size_t> out(std::size_t{1} << m, 0);
    for (std::size_t v = 0; v < out.size(); ++v)
      for (std::size_t j = 0; j < m; ++j)
        if (v & (std::size_t{1} << (m - 1 - j))) out[v] |= bit(qubits[j]);
    return out;
  };
  return {offsets(keep), offsets(rest)};
}

}  // namespace

CMatrix partial_trace(const CMatrix& rho, std::span<const int> keep) {
  if (!rho.is_square()) throw std::invalid_argument("partial trace: matrix is not square");
  const int n = qubit_count_of(rho.rows());
  validate_keep(keep, n);
  const auto split = split_index(n, keep);
  const std::size_t dk = split.kept.size();
  CMatrix out(dk, dk);
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c) {
      cplx acc = 0.0;
      for (std::size_t t : split.traced) acc += rho(split.kept[r] | t, split.kept[c] | t);
      out(r, c) = acc;
    }
  return out;
}

CMatrix partial_trace(const CMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

MultiQubitVector::MultiQubitVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > 40)
    throw std::invalid_argument("MultiQubitVector: unsupported qubit count");
  amplitudes_.assign(std::size_t{1} << num_qubits, cplx{});
  amplitudes_[0] = 1.0;
}

MultiQubitVector::MultiQubitVector(int num_qubits, std::vector<cplx> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  if (num_qubits < 1 || amplitudes_.size() != (std::size_t{1} << num_qubits))
    throw std::invalid_argument("MultiQubitVector: amplitude count does not match 2^n");
  if (std::abs(norm_squared() - 1.0) > 1e-12)
    throw std::invalid_argument("MultiQubitVector: amplitudes are not normalized");
}

double MultiQubitVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s;
}

void MultiQubitVector::apply_two_qubit(const CMatrix& gate, int first, int second) {
  if (gate.rows() != 4 || gate.cols() != 4)
    throw std::invalid_argument("apply_two_qubit: gate must be 4x4");
  if (first == second || first < 0 || second < 0 || first >= num_qubits_ ||
      second >= num_qubits_)
    throw std::invalid_argument("apply_two_qubit: bad qubit pair");
  const std::size_t mf = mask(first);
  const std::size_t ms = mask(second);
  const std::size_t both = mf | ms;
  cplx g[4][4];
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) g[r][c] = gate(r, c);

  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if (i & both) continue;
    const std::size_t idx[4] = {i, i | ms, i | mf, i | both};
    const cplx v[4] = {amplitudes_[idx[0]], amplitudes_[idx[1]], amplitudes_[idx[2]],
                       amplitudes_[idx[3]]};
    for (std::size_t r = 0; r < 4; ++r)
      amplitudes_[idx[r]] = g[r][0] * v[0] + g[r][1] * v[1] + g[r][2] * v[2] + g[r][3] * v[3];
  }
}

CMatrix MultiQubitVector::reduced(std::span<const int> keep) const {
  validate_keep(keep, num_qubits_);
  const auto split = split_index(num_qubits_, keep);
  const std::size_t dk = split.kept.size();
  CMatrix out(dk, dk);
  std::vector<cplx> slice(dk);
  for (std::size_t t : split.traced) {
    for (std::size_t r = 0; r < dk; ++r) slice[r] = amplitudes_[split.kept[r] | t];
    for (std::size_t r = 0; r < dk; ++r) {
      if (slice[r] == cplx{}) continue;
      for (std::size_t c = 0; c < dk; ++c) out(r, c) += slice[r] * std::conj(slice[c]);
    }
  }
  return out;
}

CMatrix MultiQubitVector::density() const {
  const std::size_t d = amplitudes_.size();
  CMatrix out(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) out(r, c) = amplitudes_[r] * std::conj(amplitudes_[c]);
  return out;
}

MultiQubitVector product_state(std::span<const std::array<cplx, 2>> kets) {
  const int n = static_cast<int>(kets.size());
  if (n < 1) throw std::invalid_argument("product_state: no qubits");
  std::vector<cplx> amps(std::size_t{1} << n, cplx{1.0, 0.0});
  for (std::size_t i = 0; i < amps.size(); ++i)
    for (int q = 0; q < n; ++q) {
      const std::size_t bit = (i >> (n - 1 - q)) & 1U;
      amps[i] *= kets[static_cast<std::size_t>(q)][bit];
    }
  return MultiQubitVector(n, std::move(amps));
}

EigenDecomposition hermitian_eig(const CMatrix& h, double tol) {
  if (!h.is_hermitian(tol)) throw std::domain_error("hermitian_eig: matrix is not Hermitian");
  const std::size_t n = h.rows();
  CMatrix a = h;
  CMatrix v = CMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (;; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off == 0.0) break;
    if (sweep == kMaxSweeps) throw std::runtime_error("hermitian_eig: Jacobi did not converge");

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Negligible against both diagonal entries: drop it.
        if (sweep > 3 && std::abs(app) + 100.0 * r == std::abs(app) &&
            std::abs(aqq) + 100.0 * r == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        // Real rotation on diag(1, conj(phase)) * A * diag(1, phase).
        const cplx phase = apq / r;
        const double theta = (aqq - app) / (2.0 * r);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        const cplx gqp = -std::conj(phase) * sn;
        const cplx gqq = std::conj(phase) * cs;

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          const cplx np = cs * akp + gqp * akq;
          const cplx nq = sn * akp + gqq * akq;
          a(k, p) = np;
          a(k, q) = nq;
          a(p, k) = std::conj(np);
          a(q, k) = std::conj(nq);
        }
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = cs * vkp + gqp * vkq;
          v(k, q) = sn * vkp + gqq * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  EigenDecomposition out{std::vector<double>(n), CMatrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

CMatrix psd_sqrt(const CMatrix& rho, double tol) {
  const auto eig = hermitian_eig(rho, tol);
  const std::size_t n = rho.rows();
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lambda = eig.values[i];
    if (lambda < -tol)
      throw std::domain_error("psd_sqrt: eigenvalue " + std::to_string(lambda) +
                              " is negative beyond tolerance");
    if (lambda <= kRoundoffFloor) continue;
    const double root = std::sqrt(lambda);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        out(r, c) += root * eig.vectors(r, i) * std::conj(eig.vectors(c, i));
  }
  return out;
}

double trace_norm(const CMatrix& a, double tol) {
  const auto eig = hermitian_eig(a, tol);
  double s = 0.0;
  for (double v : eig.values) s += std::abs(v);
  return s;
}

}  // namespace qhog
