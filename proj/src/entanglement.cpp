#include "qhog/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qhog {

namespace {

constexpr double kDensityTol = 1e-10;

void require_two_qubit_density(const CMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("concurrence: expected a 4x4 density matrix");
  if (!rho.is_hermitian(kDensityTol))
    throw std::invalid_argument("concurrence: matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > kDensityTol)
    throw std::invalid_argument("concurrence: trace is not 1");
  if (!rho.is_psd(kDensityTol)) throw std::invalid_argument("concurrence: matrix is not PSD");
}

double det2_real(const CMatrix& rho) {
  return (rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0)).real();
}

double pow_int(double base, int exponent) { return std::pow(base, exponent); }

}  // namespace

CMatrix spin_flip(const CMatrix& rho) {
  static const CMatrix yy = tensor_product(pauli::y(), pauli::y());
  return yy * rho.conjugate() * yy;
}

// The l_i are also the singular values of T = W^T (sy (x) sy) W for any
// rho = W W^dagger. With W built from the eigenpairs of rho, T is computed
// to roundoff directly, and its singular values (read off the Hermitian
// dilation [[0, T], [T^dagger, 0]]) inherit that accuracy. Going through the
// eigenvalues of sqrt(rho) rho~ sqrt(rho) instead squares the error.
std::array<double, 4> concurrence_spectrum(const CMatrix& rho) {
  require_two_qubit_density(rho);
  const auto eig = hermitian_eig(rho, kDensityTol);
  if (eig.values.back() < -kDensityTol)
    throw std::domain_error("concurrence: negative eigenvalue " +
                            std::to_string(eig.values.back()));
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < 4; ++i)
    if (eig.values[i] > kRoundoffFloor) kept.push_back(i);
  const std::size_t r = kept.size();

  static const CMatrix yy = tensor_product(pauli::y(), pauli::y());
  CMatrix w(4, r);
  for (std::size_t c = 0; c < r; ++c) {
    const double scale = std::sqrt(eig.values[kept[c]]);
    for (std::size_t row = 0; row < 4; ++row) w(row, c) = scale * eig.vectors(row, kept[c]);
  }
  const CMatrix t = w.transpose() * yy * w;

  CMatrix dilation(2 * r, 2 * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      dilation(i, r + j) = t(i, j);
      dilation(r + j, i) = std::conj(t(i, j));
    }
  std::array<double, 4> lambdas{};
  if (r == 0) return lambdas;
  const auto sv = hermitian_eig(dilation, kDensityTol);
  for (std::size_t i = 0; i < r; ++i) lambdas[i] = std::max(0.0, sv.values[i]);
  return lambdas;
}

double concurrence(const CMatrix& rho) {
  const auto l = concurrence_spectrum(rho);
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double tangle_one_vs_rest(const CollisionState& state, int j) {
  const CMatrix rho = state.reduced({j});
  return std::clamp(4.0 * det2_real(rho), 0.0, 1.0);
}

double ckw_sum(const CollisionState& state, int j) {
  double sum = 0.0;
  for (int k = 0; k < state.num_qubits(); ++k) {
    if (k == j) continue;
    const double c = concurrence(state.reduced({j, k}));
    sum += c * c;
  }
  return sum;
}

double ConcurrenceTable::at(int j, int k) const {
  if (j > k) std::swap(j, k);
  const auto it = entries.find({j, k});
  if (it == entries.end())
    throw std::out_of_range("ConcurrenceTable: no entry for (" + std::to_string(j) + ", " +
                            std::to_string(k) + ")");
  return it->second;
}

ConcurrenceTable concurrence_table(const CollisionState& state) {
  ConcurrenceTable table;
  table.n = static_cast<int>(state.log().size());
  table.reservoir_size = state.reservoir_size();
  for (int j = 0; j < state.num_qubits(); ++j)
    for (int k = j + 1; k < state.num_qubits(); ++k)
      table.entries[{j, k}] = concurrence(state.reduced({j, k}));
  return table;
}

TangleRecord tangle_record(const CollisionState& state) {
  const ConcurrenceTable table = concurrence_table(state);
  TangleRecord rec;
  rec.n = table.n;
  for (int j = 0; j < state.num_qubits(); ++j) {
    double s = 0.0;
    for (int k = 0; k < state.num_qubits(); ++k)
      if (k != j) s += table.at(j, k) * table.at(j, k);
    rec.entries.push_back({j, tangle_one_vs_rest(state, j), s});
  }
  return rec;
}

double pairwise_tangle_sum(const CollisionState& state) {
  double sum = 0.0;
  for (const auto& [pair, c] : concurrence_table(state).entries) sum += c * c;
  return sum;
}

bool in_closed_form_regime(const Ket& system, const Ket& reservoir) {
  return std::abs(std::abs(system[1]) - 1.0) <= 1e-12 && std::abs(system[0]) <= 1e-12 &&
         std::abs(std::abs(reservoir[0]) - 1.0) <= 1e-12 && std::abs(reservoir[1]) <= 1e-12;
}

ConcurrenceTable closed_form_concurrences(int n, int reservoir_size, const SwapAngle& angle,
                                          const Ket& system, const Ket& reservoir) {
  if (!in_closed_form_regime(system, reservoir))
    throw std::domain_error(
        "closed_form_concurrences: closed forms hold only for system |1>, reservoir |0>");
  if (reservoir_size < 1 || n < 0 || n > reservoir_size)
    throw std::invalid_argument("closed_form_concurrences: need 0 <= n <= N, N >= 1");
  const double s = std::abs(angle.sin());
  const double c = angle.cos();
  ConcurrenceTable table;
  table.n = n;
  table.reservoir_size = reservoir_size;
  for (int k = 1; k <= reservoir_size; ++k)
    table.entries[{0, k}] = k <= n ? 2.0 * s * pow_int(c, n + k - 1) : 0.0;
  for (int j = 1; j <= reservoir_size; ++j)
    for (int k = j + 1; k <= reservoir_size; ++k)
      table.entries[{j, k}] = k <= n ? 2.0 * s * s * pow_int(c, j + k - 2) : 0.0;
  return table;
}

double closed_form_tangle(int j, int n, const SwapAngle& angle) {
  const double s2 = angle.sin() * angle.sin();
  const double c2 = angle.cos() * angle.cos();
  if (j == 0) {
    const double x = pow_int(c2, n);
    return 4.0 * x * (1.0 - x);
  }
  if (n < j) return 0.0;
  const double y = s2 * pow_int(c2, j - 1);
  return 4.0 * y * (1.0 - y);
}

TangleRecord closed_form_tangles(int n, int reservoir_size, const SwapAngle& angle,
                                 const Ket& system, const Ket& reservoir) {
  if (!in_closed_form_regime(system, reservoir))
    throw std::domain_error(
        "closed_form_tangles: closed forms hold only for system |1>, reservoir |0>");
  if (reservoir_size < 1 || n < 0 || n > reservoir_size)
    throw std::invalid_argument("closed_form_tangles: need 0 <= n <= N, N >= 1");
  TangleRecord rec;
  rec.n = n;
  for (int j = 0; j <= reservoir_size; ++j) {
    const double tau = closed_form_tangle(j, n, angle);
    rec.entries.push_back({j, tau, tau});
  }
  return rec;
}

double total_tangle_sum(int reservoir_size, const SwapAngle& angle) {
  if (reservoir_size < 1) throw std::invalid_argument("total_tangle_sum: N must be >= 1");
  double sum = 0.0;
  for (int j = 0; j <= reservoir_size; ++j) sum += closed_form_tangle(j, reservoir_size, angle);
  return 0.5 * sum;
}

}  // namespace qhog
