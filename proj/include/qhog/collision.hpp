#pragma once

// Exact simulation of the system qubit (qubit 0) and N reservoir qubits
// (qubits 1..N) under sequential partial swaps U_N ... U_1.

#include <array>
#include <initializer_list>
#include <span>
#include <vector>

#include "qhog/core.hpp"
#include "qhog/homogenizer.hpp"
#include "qhog/qubit.hpp"

namespace qhog {

using Ket = std::array<cplx, 2>;

inline constexpr int kDefaultMaxQubits = 22;

/// Largest register the global simulator will allocate: QHOG_MAX_QUBITS if
/// set to a positive integer, kDefaultMaxQubits otherwise.
int max_simulated_qubits();

/// 1, 2, ..., n.
std::vector<int> default_order(int n);

class CollisionState {
 public:
  /// system (x) reservoir^{(x) n}. Throws std::invalid_argument if a ket is
  /// not unit-norm within 1e-12, n < 1, or n + 1 exceeds the qubit cap.
  static CollisionState init_pure(const Ket& system, const Ket& reservoir, int n,
                                  const SwapAngle& angle);

  int reservoir_size() const { return vector_.num_qubits() - 1; }
  int num_qubits() const { return vector_.num_qubits(); }
  const MultiQubitVector& vector() const { return vector_; }
  const std::vector<int>& log() const { return log_; }
  const SwapAngle& angle() const { return angle_; }

  /// P(eta) on (0, k). Throws std::invalid_argument if k is outside 1..N or
  /// reservoir qubit k has already interacted.
  void collide(int k);
  void run(std::span<const int> order);
  void run();  // default order 1..N

  /// Reduced state of one or two qubits, in the order given.
  CMatrix reduced(std::span<const int> qubits) const;
  CMatrix reduced(std::initializer_list<int> qubits) const {
    return reduced(std::span<const int>(qubits.begin(), qubits.size()));
  }

 private:
  CollisionState(MultiQubitVector v, const SwapAngle& angle)
      : vector_(std::move(v)), angle_(angle), gate_(partial_swap_unitary(angle)) {}

  MultiQubitVector vector_;
  std::vector<int> log_;
  SwapAngle angle_;
  CMatrix gate_;
};

CollisionState collide(CollisionState state, int k);
CollisionState run(CollisionState state, std::span<const int> order);

/// A mixed initial system state run as a convex mixture of pure runs.
class MixedSystemRun {
 public:
  struct Component {
    double weight;
    CollisionState state;
  };

  explicit MixedSystemRun(std::vector<Component> components)
      : components_(std::move(components)) {}

  const std::vector<Component>& components() const { return components_; }
  CMatrix reduced(std::span<const int> qubits) const;
  CMatrix reduced(std::initializer_list<int> qubits) const {
    return reduced(std::span<const int>(qubits.begin(), qubits.size()));
  }

 private:
  std::vector<Component> components_;
};

/// Eigendecomposes rho0 into at most two pure components and runs each.
/// An empty `order` means 1..n.
MixedSystemRun run_mixed_system(const QubitState& rho0, const Ket& reservoir, int n,
                                const SwapAngle& angle, std::span<const int> order = {});

/// The Hamming-weight-1 sector: amplitude q multiplies the basis state with
/// qubit q in |1> and every other qubit in |0>.
class ExcitationState {
 public:
  /// Throws std::invalid_argument if the amplitudes are not unit-norm within 1e-12.
  explicit ExcitationState(std::vector<cplx> amplitudes);
  /// All weight on qubit `excited`.
  static ExcitationState single(int num_qubits, int excited);

  int num_qubits() const { return static_cast<int>(amplitudes_.size()); }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  cplx amplitude(int q) const { return amplitudes_[static_cast<std::size_t>(q)]; }

  /// P(eta) on qubits (a, b). Inside the sector (a_a, a_b) mixes through
  /// [[c, is], [is, c]] and every other amplitude picks up c + is, the
  /// eigenvalue of P on |00>.
  void apply_pair(int a, int b, const SwapAngle& angle);

  /// <sigma_z> of qubit q: 1 - 2 |a_q|^2.
  double z(int q) const { return 1.0 - 2.0 * std::norm(amplitudes_[static_cast<std::size_t>(q)]); }

  MultiQubitVector to_vector() const;

 private:
  std::vector<cplx> amplitudes_;
};

/// Throws std::invalid_argument if the state has weight outside the
/// Hamming-weight-1 sector beyond `tol`.
ExcitationState to_excitation(const MultiQubitVector& v, double tol = 1e-12);
ExcitationState to_excitation(const CollisionState& state, double tol = 1e-12);

/// Sector counterpart of collide: P(eta) on (0, k).
ExcitationState excitation_collide(ExcitationState es, int k, const SwapAngle& angle);

}  // namespace qhog
