#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oracles.hpp"
#include "qhog/quantum_safe.hpp"
#include "qhog/sampling.hpp"

using namespace qhog;

TEST_CASE("histogram bins") {
  CHECK(UnwindHistogram::bin_of(-1.0) == 0);
  CHECK(UnwindHistogram::bin_of(-1.2) == 0);
  CHECK(UnwindHistogram::bin_of(-0.96) == 0);
  CHECK(UnwindHistogram::bin_of(-0.95) == 1);
  CHECK(UnwindHistogram::bin_of(0.0) == 10);
  CHECK(UnwindHistogram::bin_of(0.049) == 10);
  CHECK(UnwindHistogram::bin_of(1.0) == 20);
  CHECK(UnwindHistogram::bin_of(3.0) == 20);
  CHECK(UnwindHistogram::center(0) == -1.0);
  CHECK(UnwindHistogram::center(20) == doctest::Approx(1.0));
  UnwindHistogram a, b;
  a.add(-1.0);
  b.add(0.3);
  b.add(0.31);
  a.merge(b);
  CHECK(a.total() == 3);
  CHECK(a.counts()[13] == 2);
}

TEST_CASE("unwind order validation") {
  CHECK_NOTHROW(validate_unwind_order(4, 0, std::vector<int>{3, 1, 2}));
  CHECK_NOTHROW(validate_unwind_order(4, 2, std::vector<int>{0, 3, 1}));
  CHECK_THROWS_AS(validate_unwind_order(4, 0, std::vector<int>{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(validate_unwind_order(4, 0, std::vector<int>{1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(validate_unwind_order(4, 0, std::vector<int>{0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(validate_unwind_order(4, 0, std::vector<int>{1, 2, 4}), std::invalid_argument);
  CHECK_THROWS_AS(validate_unwind_order(4, 5, std::vector<int>{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("reverse order with the true system restores the input") {
  for (double s2 : {0.05, 0.1, 0.5, 0.9}) {
    const SwapAngle angle = SwapAngle::from_sin_squared(s2);
    for (int n = 1; n <= 6; ++n) {
      auto state = CollisionState::init_pure(ket_one(), ket_zero(), n, angle);
      state.run();
      std::vector<int> order = default_order(n);
      std::reverse(order.begin(), order.end());
      const auto trial = unwind(state, 0, order);
      CHECK(std::abs(trial.z + 1.0) <= 1e-12);
      const auto sector = unwind(homogenized_excitation(n, angle), 0, order, angle);
      CHECK(std::abs(sector.z + 1.0) <= 1e-12);
      // The whole register returns to |1>|0...0>, not only the marginal.
      const MultiQubitVector back = unwind_state(state, 0, order);
      CHECK(std::abs(std::abs(back.amplitude(std::size_t{1} << n)) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("arbitrary input states also unwind") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const SwapAngle angle(random_eta(rng));
    const Ket sys = random_ket(rng);
    auto state = CollisionState::init_pure(sys, random_ket(rng), 4, angle);
    state.run();
    const auto back = unwind_state(state, 0, std::vector<int>{4, 3, 2, 1});
    const CMatrix r = back.reduced(std::vector<int>{0});
    const QubitState expect = QubitState::from_ket(sys);
    CHECK((QubitState::from_density(r).bloch() - expect.bloch()).norm() <= 1e-12);
  }
}

TEST_CASE("full vector and sector unwinding agree on every order") {
  const SwapAngle angle = SwapAngle::from_sin_squared(0.2);
  constexpr int kN = 4;
  auto state = CollisionState::init_pure(ket_one(), ket_zero(), kN, angle);
  state.run();
  const ExcitationState es = homogenized_excitation(kN, angle);
  for (int chosen = 0; chosen <= kN; ++chosen) {
    std::vector<int> items;
    for (int q = 0; q <= kN; ++q)
      if (q != chosen) items.push_back(q);
    do {
      const double zf = unwind(state, chosen, items).z;
      const double zs = unwind(es, chosen, items, angle).z;
      CHECK(std::abs(zf - zs) <= 1e-12);
    } while (std::next_permutation(items.begin(), items.end()));
  }
}

TEST_CASE("prefix sharing visits every order with fewer applications") {
  const SwapAngle angle = SwapAngle::from_sin_squared(0.1);
  for (int m = 1; m <= 6; ++m) {
    const ExcitationState root = homogenized_excitation(m, angle);
    std::vector<int> items = default_order(m);
    std::vector<std::vector<int>> seen;
    std::vector<double> zs;
    const auto edges = enumerate_with_prefix_sharing(
        root, 0, items, angle.inverse(), [&](std::span<const int> order, const ExcitationState& leaf) {
          seen.emplace_back(order.begin(), order.end());
          zs.push_back(leaf.z(0));
        });
    CHECK(edges == oracle::permutation_tree_edges(m));
    CHECK(seen.size() == oracle::factorial(m));
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    // Each leaf matches an unshared unwind.
    for (std::size_t i = 0; i < seen.size(); ++i)
      CHECK(std::abs(zs[i] - unwind(root, 0, seen[i], angle).z) <= 1e-13);
  }
  CHECK(oracle::permutation_tree_edges(3) == 15);
  CHECK(oracle::permutation_tree_edges(5) == 325);
}

TEST_CASE("exhaustive sweeps count every trial once") {
  const SwapAngle angle = SwapAngle::from_sin_squared(0.05);
  for (int n = 1; n <= 6; ++n) {
    const SweepResult ok = sweep_correct(n, angle, 1);
    CHECK(ok.trials == oracle::factorial(n));
    CHECK(ok.histogram.total() == ok.trials);
    CHECK(ok.exact_recoveries == 1);
    CHECK(ok.min_z == doctest::Approx(-1.0).epsilon(1e-12));
    if (n > 1) {
      const SweepResult bad = sweep_incorrect(n, angle, 1);
      CHECK(bad.trials == static_cast<std::uint64_t>(n) * oracle::factorial(n));
      CHECK(bad.near_recoveries == 0);
    }
  }
}

TEST_CASE("sweeps do not depend on the thread count") {
  const SwapAngle angle = SwapAngle::from_sin_squared(0.1);
  const SweepResult one = sweep_correct(6, angle, 1);
  const SweepResult three = sweep_correct(6, angle, 3);
  CHECK(one.histogram == three.histogram);
  CHECK(one.min_z == three.min_z);
  const SweepResult bad1 = sweep_incorrect(5, angle, 1);
  const SweepResult bad4 = sweep_incorrect(5, angle, 4);
  CHECK(bad1.histogram == bad4.histogram);
  CHECK(bad1.nonpositive == bad4.nonpositive);
}

TEST_CASE("sampled sweeps") {
  const SwapAngle angle = SwapAngle::from_sin_squared(0.05);
  const SweepResult a = sample_sweep(12, angle, ChosenSystemMode::kIncorrect, 500, 9);
  const SweepResult b = sample_sweep(12, angle, ChosenSystemMode::kIncorrect, 500, 9);
  CHECK(a.sampled);
  CHECK(a.trials == 500);
  CHECK(a.histogram == b.histogram);
  CHECK(a.near_recoveries == 0);
  const SweepResult c = sample_sweep(12, angle, ChosenSystemMode::kCorrect, 500, 10);
  CHECK(c.histogram.total() == 500);
  CHECK(to_string(ChosenSystemMode::kCorrect) != to_string(ChosenSystemMode::kIncorrect));
}
