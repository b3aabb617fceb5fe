#include "qhog/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qhog/collision.hpp"
#include "qhog/entanglement.hpp"
#include "qhog/quantum_safe.hpp"
#include "qhog/sampling.hpp"

namespace qhog {

namespace {

class Tally {
 public:
  explicit Tally(std::string name) { result_.name = std::move(name); }

  // err <= tol passes; the largest err is kept either way.
  void expect_within(double err, double tol, const std::string& what) {
    ++result_.cases;
    if (!(err <= tol)) {
      result_.worst_error = std::max(result_.worst_error, std::isnan(err) ? INFINITY : err);
      fail(what + ": error " + fmt(err) + " > " + fmt(tol));
      return;
    }
    result_.worst_error = std::max(result_.worst_error, err);
  }

  void expect(bool ok, const std::string& what) {
    ++result_.cases;
    if (!ok) fail(what);
  }

  void fail(const std::string& what) {
    if (result_.passed) result_.failure = what;
    result_.passed = false;
  }

  SuiteResult done() { return std::move(result_); }

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }

 private:
  SuiteResult result_;
};

Rng seeded(const VerifyOptions& opt, std::uint64_t salt) {
  return Rng(opt.seed * 0x9E3779B97F4A7C15ULL + salt);
}

double bloch_diff(const QubitState& a, const QubitState& b) {
  const Vec3 d = a.bloch() - b.bloch();
  return std::max({std::abs(d.x), std::abs(d.y), std::abs(d.z)});
}

std::string case_label(int i) { return "case " + std::to_string(i); }

// Runs body(i) for every case, turning exceptions into failures.
template <class F>
void each_case(Tally& t, int count, F&& body) {
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (const std::exception& e) {
      t.fail(case_label(i) + ": " + e.what());
    }
  }
}

Ket random_ket_from(Rng& rng) { return random_ket(rng); }

CMatrix random_pure_two_qubit(Rng& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(4);
  double n2 = 0.0;
  for (auto& a : v) {
    a = {g(rng), g(rng)};
    n2 += std::norm(a);
  }
  CMatrix rho(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) rho(i, j) = v[i] * std::conj(v[j]) / n2;
  return rho;
}

}  // namespace

double first_step_distance_supremum(const SwapAngle& angle) {
  const double s2 = angle.sin() * angle.sin();
  const double c = std::abs(angle.cos());
  if (s2 <= 0.5) return std::abs(angle.sin()) / c;
  return 2.0 * s2;
}

SuiteResult suite_core_invariants(const VerifyOptions& opt) {
  Tally t("core-invariants");
  Rng rng = seeded(opt, 1);
  each_case(t, opt.samples, [&](int i) {
    const std::size_t dim = i % 2 == 0 ? 4 : 8;
    const CMatrix u = random_unitary(dim, rng);
    const CMatrix rho = random_density(dim, rng);
    const cplx tr = (u * rho * u.adjoint()).trace();
    t.expect_within(std::abs(tr - rho.trace()), 1e-12, case_label(i) + " trace under U");

    const CMatrix rho3 = dim == 8 ? rho : random_density(8, rng);
    const CMatrix direct0 = partial_trace(rho3, {0});
    const CMatrix via01 = partial_trace(partial_trace(rho3, {0, 1}), {0});
    const CMatrix via02 = partial_trace(partial_trace(rho3, {0, 2}), {0});
    t.expect_within(max_abs_diff(direct0, via01), 1e-12, case_label(i) + " ptrace {0,1}->{0}");
    t.expect_within(max_abs_diff(direct0, via02), 1e-12, case_label(i) + " ptrace {0,2}->{0}");
    const CMatrix direct2 = partial_trace(rho3, {2});
    const CMatrix via12 = partial_trace(partial_trace(rho3, {1, 2}), {1});
    t.expect_within(max_abs_diff(direct2, via12), 1e-12, case_label(i) + " ptrace {1,2}->{2}");

    const CMatrix h = random_hermitian(4, rng);
    const auto eig = hermitian_eig(h);
    CMatrix lambda(4, 4);
    for (std::size_t k = 0; k < 4; ++k) lambda(k, k) = eig.values[k];
    const CMatrix back = eig.vectors * lambda * eig.vectors.adjoint();
    t.expect_within(max_abs_diff(back, h), 1e-9, case_label(i) + " eig reconstruction");

    const double gap = std::abs(h.trace()) - trace_norm(h);
    t.expect_within(std::max(gap, 0.0), 1e-12, case_label(i) + " trace_norm >= |trace|");
  });
  return t.done();
}

SuiteResult suite_qubit_metric(const VerifyOptions& opt) {
  Tally t("qubit-metric");
  Rng rng = seeded(opt, 2);
  each_case(t, opt.samples, [&](int i) {
    const QubitState a = random_state(rng);
    const QubitState b = random_state(rng);
    const QubitState c = random_state(rng);
    const double ab = trace_distance(a, b);
    const std::string at = case_label(i);
    t.expect_within(std::abs(ab - trace_distance(b, a)), 1e-12, at + " symmetry");
    t.expect_within(trace_distance(a, a), 1e-12, at + " D(a,a)");
    t.expect_within(std::max(0.0, ab - trace_distance(a, c) - trace_distance(c, b)), 1e-12,
                    at + " triangle");
    t.expect(ab >= 0.0 && ab <= 2.0 + 1e-12, at + " range [0,2]");
    t.expect_within(std::abs(ab - trace_norm(a.density() - b.density())), 1e-12,
                    at + " trace_norm agreement");
  });
  return t.done();
}

SuiteResult suite_fixed_point(const VerifyOptions& opt) {
  Tally t("fixed-point");
  Rng rng = seeded(opt, 3);
  each_case(t, opt.samples, [&](int i) {
    const QubitState xi = random_state(rng);
    const SwapAngle angle(random_eta(rng));
    const QubitState out = opt.kernels.step_system(xi, xi, angle);
    t.expect_within(bloch_diff(out, xi), 1e-12, case_label(i));
  });
  return t.done();
}

SuiteResult suite_contraction(const VerifyOptions& opt) {
  Tally t("contraction");
  Rng rng = seeded(opt, 4);
  each_case(t, opt.samples, [&](int i) {
    const QubitState rho = random_state(rng);
    const QubitState omega = random_state(rng);
    const QubitState xi = random_state(rng);
    const SwapAngle angle(random_eta(rng));
    const double before = trace_distance(rho, omega);
    const double after = trace_distance(opt.kernels.step_system(rho, xi, angle),
                                        opt.kernels.step_system(omega, xi, angle));
    t.expect_within(std::max(0.0, after - angle.cos() * before), 1e-12, case_label(i));
  });
  return t.done();
}

SuiteResult suite_three_way_agreement(const VerifyOptions& opt) {
  Tally t("three-way-agreement");
  Rng rng = seeded(opt, 5);
  each_case(t, opt.samples, [&](int i) {
    const QubitState rho = random_state(rng);
    const QubitState xi = random_state(rng);
    const SwapAngle angle(random_eta(rng));
    const auto oracle = conjugate_and_trace(partial_swap_unitary(angle), rho, xi);
    const QubitState bloch = opt.kernels.step_system(rho, xi, angle);
    const AffineQubitVector v = opt.kernels.superoperator(xi, angle).apply(rho.affine());
    const Vec3 via_matrix{v[1], v[2], v[3]};
    const std::string at = case_label(i);
    t.expect_within(bloch_diff(bloch, oracle[0]), 1e-12, at + " step vs conjugation");
    t.expect_within((via_matrix - oracle[0].bloch()).norm(), 1e-12,
                    at + " superoperator vs conjugation");
    t.expect_within(bloch_diff(step_reservoir(rho, xi, angle), oracle[1]), 1e-12,
                    at + " reservoir step vs conjugation");
  });
  return t.done();
}

SuiteResult suite_closed_form_iteration(const VerifyOptions& opt) {
  Tally t("closed-form-iteration");
  Rng rng = seeded(opt, 6);
  const int cases = std::max(1, opt.samples / 10);
  each_case(t, cases, [&](int i) {
    const QubitState rho0 = random_state(rng);
    const QubitState xi = random_state(rng);
    const SwapAngle angle(random_eta(rng));
    const AffineSuperOp op = opt.kernels.superoperator(xi, angle);
    QubitState iterated = rho0;
    for (int n = 1; n <= 200; ++n) {
      iterated = opt.kernels.step_system(iterated, xi, angle);
      const AffineQubitVector v = op.power(static_cast<std::uint64_t>(n)).apply(rho0.affine());
      const Vec3 powered{v[1], v[2], v[3]};
      const std::string at = case_label(i) + " n=" + std::to_string(n);
      t.expect_within((powered - iterated.bloch()).norm(), 1e-10, at + " T^n vs iteration");
      t.expect_within(bloch_diff(closed_form_system(rho0, xi, angle, n), iterated), 1e-10,
                      at + " closed form vs iteration");
    }
  });
  return t.done();
}

SuiteResult suite_monotone_reservoir(const VerifyOptions& opt) {
  Tally t("monotone-reservoir");
  Rng rng = seeded(opt, 7);
  const int cases = std::max(1, opt.samples / 10);
  each_case(t, cases, [&](int i) {
    const QubitState rho0 = random_state(rng);
    const QubitState xi = random_state(rng);
    const SwapAngle angle(random_eta(rng));
    const Trajectory traj = run_trajectory(rho0, xi, angle, 50);
    for (std::size_t n = 2; n < traj.records.size(); ++n) {
      const double rise = traj.records[n].d_reservoir - traj.records[n - 1].d_reservoir;
      t.expect_within(std::max(0.0, rise), 1e-12,
                      case_label(i) + " n=" + std::to_string(n));
    }
  });
  return t.done();
}

SuiteResult suite_first_step_distance(const VerifyOptions& opt) {
  Tally t("first-step-distance");
  Rng rng = seeded(opt, 8);
  each_case(t, opt.samples, [&](int i) {
    const QubitState xi = random_pure_state(rng);
    const SwapAngle angle(random_eta(rng));
    const double s2 = angle.sin() * angle.sin();
    const std::string at = case_label(i);

    // Antipodal pure inputs: exactly 2 s^2.
    const QubitState anti(-xi.bloch());
    const double d_anti = trace_distance(step_reservoir(anti, xi, angle), xi);
    t.expect_within(std::abs(d_anti - 2.0 * s2), 1e-9, at + " antipodal");

    // Arbitrary inputs never exceed the supremum.
    const double sup = first_step_distance_supremum(angle);
    const QubitState rho = random_state(rng);
    const double d = trace_distance(step_reservoir(rho, xi, angle), xi);
    t.expect_within(std::max(0.0, d - sup), 1e-9, at + " above supremum");

    // The supremum is attained: for s^2 <= c^2 at t.w = -s^2 / (4 c^2).
    const double c2 = angle.cos() * angle.cos();
    if (s2 <= c2 && c2 > 0.0) {
      const double cos_theta = -s2 / c2;
      const Vec3 tv = xi.bloch();
      // Any unit vector orthogonal to t completes the frame.
      const Vec3 helper = std::abs(tv.x) < 0.4 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
      Vec3 perp = cross(tv, helper);
      perp = (1.0 / perp.norm()) * perp;
      const Vec3 t_hat = 2.0 * tv;
      const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
      const QubitState worst(0.5 * (cos_theta * t_hat + sin_theta * perp), 1e-9);
      const double d_worst = trace_distance(step_reservoir(worst, xi, angle), xi);
      t.expect_within(std::abs(d_worst - sup), 1e-9, at + " supremum attained");
    }
  });
  return t.done();
}

SuiteResult suite_budget_soundness(const VerifyOptions&) {
  Tally t("budget-soundness");
  for (double delta : {0.5, 0.2, 0.1, 0.01}) {
    const std::string at = "delta=" + Tally::fmt(delta);
    try {
      const HomogenizationBudget b = budget_from_delta(delta);
      const QubitState xi = QubitState::from_ket(ket_zero());
      const QubitState rho0 = QubitState::from_ket(ket_one());
      const Trajectory traj = run_trajectory(rho0, xi, b.angle(), b.n_delta);
      const double d_n = traj.records[static_cast<std::size_t>(b.n_delta)].d_system;
      const double d_prev = traj.records[static_cast<std::size_t>(b.n_delta - 1)].d_system;
      t.expect(d_n <= delta, at + " D at N_delta exceeds delta");
      t.expect(d_prev > delta * (1.0 - 1e-6), at + " D at N_delta - 1 already within delta");
      t.expect_within(std::abs(d_n - worst_case_distance(b.angle(), b.n_delta)), 1e-12,
                      at + " D = 2 c^{2N}");
    } catch (const std::exception& e) {
      t.fail(at + ": " + e.what());
    }
  }
  return t.done();
}

SuiteResult suite_universality(const VerifyOptions& opt) {
  Tally t("universality");
  Rng rng = seeded(opt, 9);
  each_case(t, 20, [&](int i) {
    const SwapAngle angle(random_eta(rng));
    const auto rep = check_universality(partial_swap_unitary(angle), 16, opt.seed + i);
    t.expect(rep.universal, case_label(i) + " partial swap rejected, residual " +
                                Tally::fmt(rep.max_residual));
  });
  const CMatrix cnot{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  const auto rep_cnot = check_universality(cnot, 16, opt.seed);
  t.expect(!rep_cnot.universal && rep_cnot.max_residual > 0.05, "CNOT accepted");
  const auto rep_random = check_universality(random_unitary(4, rng), 16, opt.seed);
  t.expect(!rep_random.universal && rep_random.max_residual > 0.05, "random unitary accepted");
  return t.done();
}

SuiteResult suite_collision_invariants(const VerifyOptions& opt) {
  Tally t("collision-invariants");
  Rng rng = seeded(opt, 10);
  std::uniform_int_distribution<int> size(2, 9);
  const int cases = std::max(2, opt.samples / 50);
  each_case(t, cases, [&](int i) {
    const int n_res = i == 0 ? 12 : size(rng);
    const SwapAngle angle(random_eta(rng));
    const std::string at = case_label(i) + " N=" + std::to_string(n_res);

    // Random pure inputs: norm and marginal consistency.
    const Ket sys = random_ket_from(rng);
    const Ket res = random_ket_from(rng);
    auto state = CollisionState::init_pure(sys, res, n_res, angle);
    const QubitState rho0 = QubitState::from_ket(sys);
    const QubitState xi = QubitState::from_ket(res);
    for (int k = 1; k <= n_res; ++k) {
      state.collide(k);
      const std::string step = at + " n=" + std::to_string(k);
      t.expect_within(std::abs(state.vector().norm_squared() - 1.0), 1e-12, step + " norm");
      const QubitState numeric = QubitState::from_density(state.reduced({0}));
      t.expect_within(bloch_diff(numeric, closed_form_system(rho0, xi, angle, k)), 1e-10,
                      step + " marginal");
      for (int j = k + 1; j <= n_res; ++j)
        for (int l = j + 1; l <= n_res; ++l)
          t.expect_within(concurrence(state.reduced({j, l})), 1e-10,
                          step + " uncollided pair " + std::to_string(j) + "," +
                              std::to_string(l));
    }

    // |1> and |0>s: sector conservation and the fast path.
    auto exact = CollisionState::init_pure(ket_one(), ket_zero(), n_res, angle);
    ExcitationState es = ExcitationState::single(n_res + 1, 0);
    for (int k = 1; k <= n_res; ++k) {
      exact.collide(k);
      es = excitation_collide(es, k, angle);
      const auto& v = exact.vector();
      double outside = 0.0;
      for (std::size_t idx = 0; idx < v.dimension(); ++idx)
        if (std::popcount(idx) != 1) outside = std::max(outside, std::abs(v.amplitude(idx)));
      t.expect(outside == 0.0, at + " left the weight-1 sector");
      for (int q = 0; q <= n_res; ++q) {
        const CMatrix r = exact.reduced({q});
        t.expect_within(std::abs((r(0, 0) - r(1, 1)).real() - es.z(q)), 1e-12,
                        at + " fast path z, qubit " + std::to_string(q));
      }
    }
  });
  return t.done();
}

SuiteResult suite_concurrence_closed_forms(const VerifyOptions&) {
  Tally t("concurrence-closed-forms");
  constexpr int kN = 10;
  for (double s2 : {0.05, 0.1, 0.5}) {
    const SwapAngle angle = SwapAngle::from_sin_squared(s2);
    const std::string at = "s2=" + Tally::fmt(s2);
    try {
      auto state = CollisionState::init_pure(ket_one(), ket_zero(), kN, angle);
      std::vector<ConcurrenceTable> numeric;
      numeric.push_back(concurrence_table(state));
      for (int k = 1; k <= kN; ++k) {
        state.collide(k);
        numeric.push_back(concurrence_table(state));
      }
      for (int n = 0; n <= kN; ++n) {
        const auto closed = closed_form_concurrences(n, kN, angle);
        for (const auto& [jk, c] : closed.entries)
          t.expect_within(std::abs(numeric[static_cast<std::size_t>(n)].at(jk.first, jk.second) - c),
                          1e-8,
                          at + " n=" + std::to_string(n) + " C(" + std::to_string(jk.first) +
                              "," + std::to_string(jk.second) + ")");
      }
      for (int j = 1; j <= kN; ++j)
        for (int k = j + 1; k <= kN; ++k)
          for (int n = k + 1; n <= kN; ++n)
            t.expect_within(std::abs(numeric[static_cast<std::size_t>(n)].at(j, k) -
                                     numeric[static_cast<std::size_t>(k)].at(j, k)),
                            1e-8, at + " persistence");
      for (int k = 1; k <= kN; ++k)
        for (int n = k; n < kN; ++n)
          t.expect(numeric[static_cast<std::size_t>(n + 1)].at(0, k) <
                       numeric[static_cast<std::size_t>(n)].at(0, k),
                   at + " C(0," + std::to_string(k) + ") not decreasing at n=" +
                       std::to_string(n));
    } catch (const std::exception& e) {
      t.fail(at + ": " + e.what());
    }
  }

  // Largest pairwise concurrence under the delta-budget schedule shrinks.
  double previous = INFINITY;
  for (double delta : {0.5, 0.2, 0.1, 0.05}) {
    const HomogenizationBudget b = budget_from_delta(delta);
    const auto table = closed_form_concurrences(b.n_delta, b.n_delta, b.angle());
    double largest = 0.0;
    for (const auto& [jk, c] : table.entries) largest = std::max(largest, c);
    t.expect(largest < previous, "max concurrence did not shrink at delta=" + Tally::fmt(delta));
    previous = largest;
  }
  return t.done();
}

SuiteResult suite_ckw_saturation(const VerifyOptions&) {
  Tally t("ckw-saturation");
  constexpr int kN = 10;
  for (double s2 : {0.05, 0.1, 0.5}) {
    const SwapAngle angle = SwapAngle::from_sin_squared(s2);
    const std::string at = "s2=" + Tally::fmt(s2);
    try {
      auto state = CollisionState::init_pure(ket_one(), ket_zero(), kN, angle);
      for (int n = 0; n <= kN; ++n) {
        if (n > 0) state.collide(n);
        const TangleRecord rec = tangle_record(state);
        for (const auto& e : rec.entries) {
          const std::string where = at + " n=" + std::to_string(n) + " j=" + std::to_string(e.j);
          t.expect_within(std::abs(e.ckw - e.tau), 1e-8, where + " S_j vs tau_j");
          t.expect_within(std::abs(e.tau - closed_form_tangle(e.j, n, angle)), 1e-8,
                          where + " tau_j closed form");
        }
      }
    } catch (const std::exception& e) {
      t.fail(at + ": " + e.what());
    }
  }
  return t.done();
}

SuiteResult suite_local_unitary_invariance(const VerifyOptions& opt) {
  Tally t("local-unitary-invariance");
  Rng rng = seeded(opt, 11);
  const int cases = std::max(1, opt.samples / 2);
  each_case(t, cases, [&](int i) {
    const CMatrix rho = i % 2 == 0 ? random_pure_two_qubit(rng) : random_density(4, rng);
    const CMatrix uv = tensor_product(random_unitary(2, rng), random_unitary(2, rng));
    CMatrix moved = uv * rho * uv.adjoint();
    moved = 0.5 * (moved + moved.adjoint());
    t.expect_within(std::abs(concurrence(rho) - concurrence(moved)), 1e-9, case_label(i));
  });
  return t.done();
}

SuiteResult suite_safe_unwinding(const VerifyOptions& opt) {
  Tally t("safe-unwinding");
  Rng rng = seeded(opt, 12);

  // Exact reverse order restores the global state, for arbitrary pure inputs.
  each_case(t, 10, [&](int i) {
    const SwapAngle angle(random_eta(rng));
    const Ket sys = i == 0 ? ket_one() : random_ket_from(rng);
    const Ket res = i == 0 ? ket_zero() : random_ket_from(rng);
    constexpr int kN = 6;
    auto forward = CollisionState::init_pure(sys, res, kN, angle);
    const MultiQubitVector initial = forward.vector();
    std::vector<int> order = default_order(kN);
    std::shuffle(order.begin(), order.end(), rng);
    forward.run(order);
    std::vector<int> reverse(order.rbegin(), order.rend());
    const MultiQubitVector back = unwind_state(forward, 0, reverse);
    double err = 0.0;
    for (std::size_t k = 0; k < back.dimension(); ++k)
      err = std::max(err, std::abs(back.amplitude(k) - initial.amplitude(k)));
    t.expect_within(err, 1e-9, case_label(i) + " reverse unwind");
  });

  // Full-vector versus sector path on N = 9, with diagonal reduced states.
  const SwapAngle angle = SwapAngle::from_sin_squared(0.1);
  constexpr int kN = 9;
  auto forward = CollisionState::init_pure(ket_one(), ket_zero(), kN, angle);
  forward.run();
  const ExcitationState sector = homogenized_excitation(kN, angle);
  std::uniform_int_distribution<int> pick(0, kN);
  const int spot_checks = std::min(opt.samples, 1000);
  each_case(t, spot_checks, [&](int i) {
    const int chosen = pick(rng);
    std::vector<int> order;
    for (int q = 0; q <= kN; ++q)
      if (q != chosen) order.push_back(q);
    std::shuffle(order.begin(), order.end(), rng);
    const MultiQubitVector v = unwind_state(forward, chosen, order);
    const CMatrix r = v.reduced(std::vector<int>{chosen});
    const std::string at = case_label(i);
    t.expect_within(std::abs(r(0, 1)), 1e-12, at + " off-diagonal");
    const double z_full = (r(0, 0) - r(1, 1)).real();
    t.expect(z_full >= -1.0 - 1e-12 && z_full <= 1.0 + 1e-12, at + " z outside [-1,1]");
    const double z_sector = unwind(sector, chosen, order, angle).z;
    t.expect_within(std::abs(z_full - z_sector), 1e-12, at + " fast path");
  });

  // Prefix sharing against naive replay, N = 5, every chosen qubit.
  {
    constexpr int kSmall = 5;
    const ExcitationState root = homogenized_excitation(kSmall, angle);
    for (int chosen = 0; chosen <= kSmall; ++chosen) {
      std::vector<int> items;
      for (int q = 0; q <= kSmall; ++q)
        if (q != chosen) items.push_back(q);
      std::vector<int> naive_order = items;
      std::vector<double> naive;
      do {
        naive.push_back(unwind(root, chosen, naive_order, angle).z);
      } while (std::next_permutation(naive_order.begin(), naive_order.end()));
      std::vector<double> shared;
      const std::uint64_t edges = enumerate_with_prefix_sharing(
          root, chosen, items, angle.inverse(),
          [&](std::span<const int>, const ExcitationState& leaf) {
            shared.push_back(leaf.z(chosen));
          });
      t.expect(edges == 325, "prefix sharing edge count " + std::to_string(edges));
      t.expect(shared.size() == naive.size(), "prefix sharing leaf count");
      double err = 0.0;
      for (std::size_t k = 0; k < std::min(shared.size(), naive.size()); ++k)
        err = std::max(err, std::abs(shared[k] - naive[k]));
      t.expect_within(err, 1e-12, "prefix sharing vs naive, chosen " + std::to_string(chosen));
    }
  }

  // Repeat runs, with different thread counts, agree exactly.
  const SweepResult one = sweep_correct(7, angle, 1);
  const SweepResult two = sweep_correct(7, angle, 2);
  t.expect(one.histogram == two.histogram && one.trials == two.trials &&
               one.exact_recoveries == two.exact_recoveries && one.min_z == two.min_z,
           "sweep not deterministic");
  t.expect(one.trials == 5040 && one.exact_recoveries == 1, "N=7 correct sweep counts");
  return t.done();
}

SuiteResult suite_half_pi_edge(const VerifyOptions& opt) {
  Tally t("half-pi-edge");
  Rng rng = seeded(opt, 13);
  const SwapAngle full(std::numbers::pi / 2.0);
  t.expect(full.cos() == 0.0 && full.sin() == 1.0, "eta = pi/2 gives c != 0 or s != 1");
  t.expect(contraction_coefficient(full) == 0.0, "contraction coefficient at pi/2");
  each_case(t, std::max(1, opt.samples / 10), [&](int i) {
    const QubitState rho = random_state(rng);
    const QubitState xi = random_state(rng);
    const std::string at = case_label(i);
    t.expect_within(bloch_diff(opt.kernels.step_system(rho, xi, full), xi), 1e-12,
                    at + " system becomes xi");
    t.expect_within(bloch_diff(step_reservoir(rho, xi, full), rho), 1e-12,
                    at + " reservoir becomes rho");
    t.expect_within(bloch_diff(closed_form_system(rho, xi, full, 3), xi), 1e-12,
                    at + " closed form");
  });
  try {
    constexpr int kN = 4;
    auto state = CollisionState::init_pure(ket_one(), ket_zero(), kN, full);
    for (int k = 1; k <= kN; ++k) {
      state.collide(k);
      const QubitState sys = QubitState::from_density(state.reduced({0}));
      t.expect_within(bloch_diff(sys, QubitState::from_ket(ket_zero())), 1e-12,
                      "simulated system after " + std::to_string(k));
      const auto table = concurrence_table(state);
      const auto closed = closed_form_concurrences(k, kN, full);
      for (const auto& [jk, c] : table.entries) {
        t.expect_within(c, 1e-10, "numeric concurrence at pi/2");
        t.expect_within(closed.at(jk.first, jk.second), 1e-15, "closed-form concurrence at pi/2");
      }
    }
    t.expect(worst_case_distance(full, 1) == 0.0, "worst-case distance at pi/2");
    const SweepResult sweep = sweep_correct(4, full, 1);
    t.expect(sweep.trials == 24 && sweep.exact_recoveries >= 1, "unwinding at pi/2");
  } catch (const std::exception& e) {
    t.fail(e.what());
  }
  return t.done();
}

const std::vector<NamedSuite>& all_suites() {
  static const std::vector<NamedSuite> suites = {
      {"core-invariants", suite_core_invariants},
      {"qubit-metric", suite_qubit_metric},
      {"fixed-point", suite_fixed_point},
      {"contraction", suite_contraction},
      {"three-way-agreement", suite_three_way_agreement},
      {"closed-form-iteration", suite_closed_form_iteration},
      {"monotone-reservoir", suite_monotone_reservoir},
      {"first-step-distance", suite_first_step_distance},
      {"budget-soundness", suite_budget_soundness},
      {"universality", suite_universality},
      {"collision-invariants", suite_collision_invariants},
      {"concurrence-closed-forms", suite_concurrence_closed_forms},
      {"ckw-saturation", suite_ckw_saturation},
      {"local-unitary-invariance", suite_local_unitary_invariance},
      {"safe-unwinding", suite_safe_unwinding},
      {"half-pi-edge", suite_half_pi_edge},
  };
  return suites;
}

std::vector<SuiteResult> run_all_suites(const VerifyOptions& opt) {
  std::vector<SuiteResult> out;
  for (const auto& s : all_suites()) out.push_back(s.run(opt));
  return out;
}

}  // namespace qhog
