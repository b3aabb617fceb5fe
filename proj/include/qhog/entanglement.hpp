#pragma once

// Two-qubit concurrence, one-vs-rest tangles, CKW sums and the closed forms
// that hold for a system prepared in |1> and a reservoir prepared in |0>.

#include <map>
#include <utility>
#include <vector>

#include "qhog/collision.hpp"
#include "qhog/core.hpp"
#include "qhog/homogenizer.hpp"

namespace qhog {

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), where the l_i are the
/// square roots of the eigenvalues of the Hermitian matrix
/// sqrt(rho) (sy (x) sy) rho* (sy (x) sy) sqrt(rho), in descending order.
/// Throws std::invalid_argument unless rho is a 4x4 density matrix within 1e-10.
double concurrence(const CMatrix& rho);

/// The four l_i above, descending. Computed as singular values of
/// W^T (sy (x) sy) W with rho = W W^dagger; eigenvalues of rho at the roundoff
/// floor are left out of W.
std::array<double, 4> concurrence_spectrum(const CMatrix& rho);

/// sy (x) sy rho* sy (x) sy.
CMatrix spin_flip(const CMatrix& rho);

/// 4 det(rho_j), clipped to [0, 1]. The global state is pure by construction.
double tangle_one_vs_rest(const CollisionState& state, int j);

/// Sum over k != j of concurrence(rho_jk)^2.
double ckw_sum(const CollisionState& state, int j);

struct ConcurrenceTable {
  int n = 0;  // collisions performed
  int reservoir_size = 0;
  std::map<std::pair<int, int>, double> entries;  // (j, k), j < k

  double at(int j, int k) const;
};

struct TangleEntry {
  int j = 0;
  double tau = 0.0;  // one-vs-rest tangle
  double ckw = 0.0;  // S_j
};

struct TangleRecord {
  int n = 0;
  std::vector<TangleEntry> entries;
};

/// Concurrence of every pair of qubits from the simulated state.
ConcurrenceTable concurrence_table(const CollisionState& state);
TangleRecord tangle_record(const CollisionState& state);

/// Sum over j < k of concurrence(rho_jk)^2 from the simulated state.
double pairwise_tangle_sum(const CollisionState& state);

/// True if (system, reservoir) is (|1>, |0>) up to phases, within 1e-12.
bool in_closed_form_regime(const Ket& system, const Ket& reservoir);

/// Piecewise closed forms after n of N collisions in default order:
///   C_0k = 2 s c^{n+k-1},   C_jk = 2 s^2 c^{j+k-2}   (k <= n), 0 otherwise.
/// Throws std::domain_error outside the |1>/|0> initial condition.
ConcurrenceTable closed_form_concurrences(int n, int reservoir_size, const SwapAngle& angle,
                                          const Ket& system = ket_one(),
                                          const Ket& reservoir = ket_zero());

/// Closed-form one-vs-rest tangle of qubit j after n collisions; CKW
/// saturation makes it equal to S_j(n) as well.
///   tau_0 = 4 c^{2n} (1 - c^{2n}),
///   tau_j = 4 s^2 c^{2(j-1)} (1 - s^2 c^{2(j-1)}) for j <= n, 0 for n < j.
double closed_form_tangle(int j, int n, const SwapAngle& angle);

TangleRecord closed_form_tangles(int n, int reservoir_size, const SwapAngle& angle,
                                 const Ket& system = ket_one(),
                                 const Ket& reservoir = ket_zero());

/// Sum over j < k of [C_jk^(N)]^2 = 1/2 sum_j S_j(N), from the closed forms.
/// O(N), usable for very large reservoirs.
double total_tangle_sum(int reservoir_size, const SwapAngle& angle);

}  // namespace qhog
