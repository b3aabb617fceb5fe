#pragma once

// Dense complex linear algebra for small quantum registers.
//
// Basis convention used throughout the library: for an n-qubit register the
// computational basis index is the bitstring q0 q1 ... q(n-1) read as a binary
// number, so qubit 0 is the most significant bit. Qubit 0 is always the
// system qubit.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qhog {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const cplx> entries() const { return data_; }

  CMatrix adjoint() const;
  CMatrix conjugate() const;
  CMatrix transpose() const;
  cplx trace() const;
  double frobenius_norm() const;

  bool is_hermitian(double tol = 1e-10) const;
  bool is_unitary(double tol = 1e-10) const;
  bool is_psd(double tol = 1e-10) const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx scale);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx scale, CMatrix a);
CMatrix operator*(CMatrix a, cplx scale);

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

namespace pauli {
CMatrix identity();
CMatrix x();
CMatrix y();
CMatrix z();
}  // namespace pauli

/// Two-qubit swap S|a b> = |b a>.
CMatrix swap_gate();

/// Kronecker product with a's indices major.
CMatrix tensor_product(const CMatrix& a, const CMatrix& b);

/// Reduced density matrix over the qubits in `keep`, in the order given
/// (keep[0] becomes the most significant qubit of the result).
/// Throws std::invalid_argument on a non power-of-two shape or bad indices.
CMatrix partial_trace(const CMatrix& rho, std::span<const int> keep);
CMatrix partial_trace(const CMatrix& rho, std::initializer_list<int> keep);

/// Normalized state vector over n qubits with the basis convention above.
class MultiQubitVector {
 public:
  explicit MultiQubitVector(int num_qubits);  // |0...0>
  MultiQubitVector(int num_qubits, std::vector<cplx> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  cplx amplitude(std::size_t index) const { return amplitudes_[index]; }

  double norm_squared() const;

  /// Bit mask of qubit q inside a basis index.
  std::size_t mask(int qubit) const { return std::size_t{1} << (num_qubits_ - 1 - qubit); }

  /// Applies a 4x4 gate on (first, second); `first` is the gate's major qubit.
  /// Works in place over paired amplitude indices.
  void apply_two_qubit(const CMatrix& gate, int first, int second);

  /// Reduced density matrix of the kept qubits, computed straight from the
  /// amplitudes without forming the global density matrix.
  CMatrix reduced(std::span<const int> keep) const;

  /// |psi><psi| as a dense matrix. Only sensible for small registers.
  CMatrix density() const;

 private:
  int num_qubits_;
  std::vector<cplx> amplitudes_;
};

/// Product state of single-qubit kets, first ket on qubit 0.
MultiQubitVector product_state(std::span<const std::array<cplx, 2>> kets);

struct EigenDecomposition {
  std::vector<double> values;  // descending
  CMatrix vectors;             // column i pairs with values[i]
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
/// Throws std::domain_error if `h` is not Hermitian within `tol`.
EigenDecomposition hermitian_eig(const CMatrix& h, double tol = 1e-10);

/// Eigenvalues at or below this magnitude are treated as exact zeros when a
/// square root is taken; they sit at the roundoff floor of the solver for
/// unit-trace matrices and their square roots would otherwise leak ~1e-8
/// noise into downstream quantities.
inline constexpr double kRoundoffFloor = 1e-15;

/// Positive semidefinite square root. Eigenvalues in [-tol, 0) are clamped.
/// Throws std::domain_error on an eigenvalue below -tol.
CMatrix psd_sqrt(const CMatrix& rho, double tol = 1e-10);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const CMatrix& a, double tol = 1e-10);

}  // namespace qhog
