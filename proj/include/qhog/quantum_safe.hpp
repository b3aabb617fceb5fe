#pragma once

// Unwinding a homogenized register with inverse partial swaps.
//
// The forward run starts from system |1> and N reservoir qubits in |0>, so
// the global state never leaves the Hamming-weight-1 sector and unwinding can
// be done on N + 1 amplitudes. A trial picks a qubit as "the system", applies
// P(-eta) between it and every other qubit in some order, and reads
// z = <sigma_z> of the chosen qubit. Only the exact reverse of the forward
// order with the true system restores z = -1.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qhog/collision.hpp"
#include "qhog/homogenizer.hpp"

namespace qhog {

struct UnwindTrial {
  int chosen_system = 0;
  std::vector<int> order;
  double z = 0.0;
};

/// Counts of z over 21 bins centred on -1.0, -0.9, ..., 1.0. Bin b covers
/// [c_b - 0.05, c_b + 0.05) except the outermost bins, which are closed at
/// -1 and +1. Concretely z lands in floor(10 z + 10.5), clamped to [0, 20].
class UnwindHistogram {
 public:
  static constexpr int kBins = 21;

  static int bin_of(double z);
  static double center(int bin) { return -1.0 + 0.1 * bin; }

  void add(double z) { ++counts_[static_cast<std::size_t>(bin_of(z))]; }
  void merge(const UnwindHistogram& other);

  const std::array<std::uint64_t, kBins>& counts() const { return counts_; }
  std::uint64_t total() const;

  friend bool operator==(const UnwindHistogram&, const UnwindHistogram&) = default;

 private:
  std::array<std::uint64_t, kBins> counts_{};
};

enum class ChosenSystemMode { kCorrect, kIncorrect };

std::string_view to_string(ChosenSystemMode mode);

inline constexpr double kExactRecoveryTol = 1e-9;
inline constexpr double kNearRecoveryTol = 1e-6;

struct SweepResult {
  ChosenSystemMode mode = ChosenSystemMode::kCorrect;
  int reservoir_size = 0;
  SwapAngle angle;
  bool sampled = false;
  UnwindHistogram histogram;
  std::uint64_t trials = 0;
  std::uint64_t exact_recoveries = 0;  // |z + 1| <= 1e-9
  std::uint64_t near_recoveries = 0;   // |z + 1| <= 1e-6
  std::uint64_t nonpositive = 0;       // z in [-1, 0]
  double min_z = 1.0;

  void record(double z);
  void merge(const SweepResult& other);
};

/// Full-vector unwinding. `order` must be a permutation of every qubit other
/// than `chosen`; throws std::invalid_argument otherwise. The input is not
/// modified.
MultiQubitVector unwind_state(const CollisionState& state, int chosen, std::span<const int> order);
UnwindTrial unwind(const CollisionState& state, int chosen, std::span<const int> order);

/// Same trial on the weight-1 sector; `angle` is the forward angle.
UnwindTrial unwind(const ExcitationState& state, int chosen, std::span<const int> order,
                   const SwapAngle& angle);

/// |1> (x) |0>^N after collisions 1..N, in the weight-1 sector.
ExcitationState homogenized_excitation(int reservoir_size, const SwapAngle& angle);

/// Throws std::invalid_argument unless `order` is a permutation of
/// {0, ..., num_qubits - 1} \ {chosen}.
void validate_unwind_order(int num_qubits, int chosen, std::span<const int> order);

/// Depth-first walk of every ordering of `items`. Each tree edge applies one
/// inverse collision between `chosen` and the next item to a copy of its
/// parent's snapshot, so a walk over m items costs sum_{d=1..m} m!/(m-d)!
/// pair applications rather than m * m!. `visit(order, leaf)` runs once per
/// permutation, in lexicographic order of item positions. Returns the number
/// of edges applied.
template <class Visitor>
std::uint64_t enumerate_with_prefix_sharing(const ExcitationState& root, int chosen,
                                            std::span<const int> items,
                                            const SwapAngle& inverse_angle, Visitor&& visit) {
  const std::size_t m = items.size();
  std::vector<ExcitationState> stack(m + 1, root);
  std::vector<int> order(m);
  std::vector<bool> used(m, false);
  std::uint64_t edges = 0;

  const auto descend = [&](auto&& self, std::size_t depth) -> void {
    if (depth == m) {
      visit(std::span<const int>(order), stack[m]);
      return;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      used[i] = true;
      order[depth] = items[i];
      stack[depth + 1] = stack[depth];
      stack[depth + 1].apply_pair(chosen, items[i], inverse_angle);
      ++edges;
      self(self, depth + 1);
      used[i] = false;
    }
  };
  descend(descend, 0);
  return edges;
}

/// All N! orders with the true system (qubit 0) chosen. `threads` = 0 uses
/// the hardware concurrency.
SweepResult sweep_correct(int reservoir_size, const SwapAngle& angle, unsigned threads = 0);

/// Every reservoir qubit j chosen in turn with all N! orders of the other
/// qubits: N * N! trials.
SweepResult sweep_incorrect(int reservoir_size, const SwapAngle& angle, unsigned threads = 0);

/// `samples` random (chosen, order) trials instead of the exhaustive sweep.
SweepResult sample_sweep(int reservoir_size, const SwapAngle& angle, ChosenSystemMode mode,
                         std::uint64_t samples, std::uint64_t seed);

}  // namespace qhog
