#pragma once

// Property suites behind `qhog verify`. Each suite draws its own inputs from
// a seeded generator and reports the largest error it saw.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qhog/homogenizer.hpp"

namespace qhog {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  double worst_error = 0.0;
  std::string failure;  // first failing case, empty on success
};

/// The homogenizer kernels under test. Defaults to the library's own; a
/// caller can swap in a mutated kernel to confirm the suites notice.
struct VerifyKernels {
  std::function<QubitState(const QubitState&, const QubitState&, const SwapAngle&)> step_system =
      qhog::step_system;
  std::function<AffineSuperOp(const QubitState&, const SwapAngle&)> superoperator =
      qhog::superoperator;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int samples = 1000;
  VerifyKernels kernels;
};

/// Supremum of D(xi'_1, xi) over pure (rho0, xi): tan(eta) for s^2 <= 1/2,
/// 2 s^2 above. Antipodal inputs give 2 s^2 in every case.
double first_step_distance_supremum(const SwapAngle& angle);

SuiteResult suite_core_invariants(const VerifyOptions& opt);
SuiteResult suite_qubit_metric(const VerifyOptions& opt);
SuiteResult suite_fixed_point(const VerifyOptions& opt);
SuiteResult suite_contraction(const VerifyOptions& opt);
SuiteResult suite_three_way_agreement(const VerifyOptions& opt);
SuiteResult suite_closed_form_iteration(const VerifyOptions& opt);
SuiteResult suite_monotone_reservoir(const VerifyOptions& opt);
SuiteResult suite_first_step_distance(const VerifyOptions& opt);
SuiteResult suite_budget_soundness(const VerifyOptions& opt);
SuiteResult suite_universality(const VerifyOptions& opt);
SuiteResult suite_collision_invariants(const VerifyOptions& opt);
SuiteResult suite_concurrence_closed_forms(const VerifyOptions& opt);
SuiteResult suite_ckw_saturation(const VerifyOptions& opt);
SuiteResult suite_local_unitary_invariance(const VerifyOptions& opt);
SuiteResult suite_safe_unwinding(const VerifyOptions& opt);
SuiteResult suite_half_pi_edge(const VerifyOptions& opt);

struct NamedSuite {
  const char* name;
  SuiteResult (*run)(const VerifyOptions&);
};

const std::vector<NamedSuite>& all_suites();

std::vector<SuiteResult> run_all_suites(const VerifyOptions& opt);

}  // namespace qhog
