#include "qhog/quantum_safe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace qhog {

int UnwindHistogram::bin_of(double z) {
  const double clamped = std::clamp(z, -1.0, 1.0);
  const int bin = static_cast<int>(std::floor(10.0 * clamped + 10.5));
  return std::clamp(bin, 0, kBins - 1);
}

void UnwindHistogram::merge(const UnwindHistogram& other) {
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

std::uint64_t UnwindHistogram::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::string_view to_string(ChosenSystemMode mode) {
  return mode == ChosenSystemMode::kCorrect ? "correct" : "incorrect";
}

void SweepResult::record(double z) {
  histogram.add(z);
  ++trials;
  const double gap = std::abs(z + 1.0);
  if (gap <= kExactRecoveryTol) ++exact_recoveries;
  if (gap <= kNearRecoveryTol) ++near_recoveries;
  if (z <= 0.0) ++nonpositive;
  min_z = std::min(min_z, z);
}

void SweepResult::merge(const SweepResult& other) {
  histogram.merge(other.histogram);
  trials += other.trials;
  exact_recoveries += other.exact_recoveries;
  near_recoveries += other.near_recoveries;
  nonpositive += other.nonpositive;
  min_z = std::min(min_z, other.min_z);
}

void validate_unwind_order(int num_qubits, int chosen, std::span<const int> order) {
  if (chosen < 0 || chosen >= num_qubits)
    throw std::invalid_argument("unwind: chosen system " + std::to_string(chosen) +
                                " out of range");
  std::vector<int> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected;
  for (int q = 0; q < num_qubits; ++q)
    if (q != chosen) expected.push_back(q);
  if (sorted != expected)
    throw std::invalid_argument("unwind: order is not a permutation of the remaining qubits");
}

MultiQubitVector unwind_state(const CollisionState& state, int chosen,
                              std::span<const int> order) {
  validate_unwind_order(state.num_qubits(), chosen, order);
  MultiQubitVector v = state.vector();
  const CMatrix inverse = partial_swap_unitary(state.angle().inverse());
  for (int q : order) v.apply_two_qubit(inverse, chosen, q);
  return v;
}

UnwindTrial unwind(const CollisionState& state, int chosen, std::span<const int> order) {
  const MultiQubitVector v = unwind_state(state, chosen, order);
  const CMatrix rho = v.reduced(std::vector<int>{chosen});
  // <sigma_z> directly, so stray off-diagonal roundoff plays no part.
  const double z = (rho(0, 0) - rho(1, 1)).real();
  return {chosen, std::vector<int>(order.begin(), order.end()), z};
}

UnwindTrial unwind(const ExcitationState& state, int chosen, std::span<const int> order,
                   const SwapAngle& angle) {
  validate_unwind_order(state.num_qubits(), chosen, order);
  ExcitationState es = state;
  const SwapAngle inverse = angle.inverse();
  for (int q : order) es.apply_pair(chosen, q, inverse);
  return {chosen, std::vector<int>(order.begin(), order.end()), es.z(chosen)};
}

ExcitationState homogenized_excitation(int reservoir_size, const SwapAngle& angle) {
  if (reservoir_size < 1) throw std::invalid_argument("homogenized_excitation: N must be >= 1");
  ExcitationState es = ExcitationState::single(reservoir_size + 1, 0);
  for (int k = 1; k <= reservoir_size; ++k) es.apply_pair(0, k, angle);
  return es;
}

namespace {

struct SubtreeTask {
  int chosen;
  int first;
};

// Runs each task's subtree on a small thread pool; partial results are merged
// in task order afterwards.
SweepResult run_tasks(const ExcitationState& root, const std::vector<SubtreeTask>& tasks,
                      const SwapAngle& angle, unsigned threads, SweepResult base) {
  const SwapAngle inverse = angle.inverse();
  const int num_qubits = root.num_qubits();
  std::vector<SweepResult> partial(tasks.size(), base);

  const auto run_one = [&](std::size_t t) {
    const SubtreeTask task = tasks[t];
    ExcitationState first = root;
    first.apply_pair(task.chosen, task.first, inverse);
    std::vector<int> rest;
    for (int q = 0; q < num_qubits; ++q)
      if (q != task.chosen && q != task.first) rest.push_back(q);
    SweepResult& acc = partial[t];
    enumerate_with_prefix_sharing(first, task.chosen, rest, inverse,
                                  [&](std::span<const int>, const ExcitationState& leaf) {
                                    acc.record(leaf.z(task.chosen));
                                  });
  };

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
  if (threads <= 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) run_one(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) run_one(t);
      });
  }

  SweepResult out = base;
  for (const auto& p : partial) out.merge(p);
  return out;
}

SweepResult empty_result(ChosenSystemMode mode, int reservoir_size, const SwapAngle& angle) {
  SweepResult r;
  r.mode = mode;
  r.reservoir_size = reservoir_size;
  r.angle = angle;
  return r;
}

}  // namespace

SweepResult sweep_correct(int reservoir_size, const SwapAngle& angle, unsigned threads) {
  const ExcitationState root = homogenized_excitation(reservoir_size, angle);
  std::vector<SubtreeTask> tasks;
  for (int first = 1; first <= reservoir_size; ++first) tasks.push_back({0, first});
  return run_tasks(root, tasks, angle, threads,
                   empty_result(ChosenSystemMode::kCorrect, reservoir_size, angle));
}

SweepResult sweep_incorrect(int reservoir_size, const SwapAngle& angle, unsigned threads) {
  const ExcitationState root = homogenized_excitation(reservoir_size, angle);
  std::vector<SubtreeTask> tasks;
  for (int chosen = 1; chosen <= reservoir_size; ++chosen)
    for (int first = 0; first <= reservoir_size; ++first)
      if (first != chosen) tasks.push_back({chosen, first});
  return run_tasks(root, tasks, angle, threads,
                   empty_result(ChosenSystemMode::kIncorrect, reservoir_size, angle));
}

SweepResult sample_sweep(int reservoir_size, const SwapAngle& angle, ChosenSystemMode mode,
                         std::uint64_t samples, std::uint64_t seed) {
  const ExcitationState root = homogenized_excitation(reservoir_size, angle);
  SweepResult result = empty_result(mode, reservoir_size, angle);
  result.sampled = true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, reservoir_size);
  std::vector<int> order;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const int chosen = mode == ChosenSystemMode::kCorrect ? 0 : pick(rng);
    order.clear();
    for (int q = 0; q <= reservoir_size; ++q)
      if (q != chosen) order.push_back(q);
    std::shuffle(order.begin(), order.end(), rng);
    result.record(unwind(root, chosen, order, angle).z);
  }
  return result;
}

}  // namespace qhog
