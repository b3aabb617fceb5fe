#include "qhog/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "qhog/entanglement.hpp"
#include "qhog/quantum_safe.hpp"
#include "qhog/serialize.hpp"
#include "qhog/verify.hpp"

namespace qhog::cli {

using nlohmann::json;

namespace {

// Safe sweeps above this size must be sampled.
constexpr int kMaxExhaustiveSafe = 11;

struct Output {
  std::string name;
  std::string content;
};

std::string extension(const RunConfig& cfg) { return cfg.format == "json" ? ".json" : ".csv"; }

void emit(const RunConfig& cfg, const std::vector<Output>& outputs, std::ostream& out) {
  if (!cfg.out.empty()) {
    for (const auto& o : outputs) {
      const std::string path =
          outputs.size() == 1 ? cfg.out : cfg.out + "_" + o.name + extension(cfg);
      std::ofstream f(path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + path + " for writing");
      f << o.content;
      if (!f) throw std::runtime_error("write to " + path + " failed");
    }
    return;
  }
  if (outputs.size() == 1) {
    out << outputs.front().content;
    return;
  }
  if (cfg.format == "json") {
    json combined = json::object();
    for (const auto& o : outputs) combined[o.name] = json::parse(o.content);
    out << combined.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (i > 0) out << '\n';
    out << outputs[i].content;
  }
}

int finish(std::ostream& err, json summary, const std::vector<std::string>& failed) {
  summary["ok"] = failed.empty();
  if (!failed.empty()) summary["failed_checks"] = failed;
  err << summary.dump() << '\n';
  return failed.empty() ? kExitOk : kExitCheckFailed;
}

void require_format(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json")
    throw std::invalid_argument("--format must be csv or json");
}

int reservoir_size(const RunConfig& cfg, int fallback) {
  const int n = cfg.n.value_or(fallback);
  if (n < 1) throw std::invalid_argument("--n must be at least 1");
  return n;
}

std::vector<int> collision_order(const RunConfig& cfg, int n) {
  return cfg.order.empty() ? default_order(n) : parse_order(cfg.order);
}

bool is_default_prefix(const std::vector<int>& order) {
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] != static_cast<int>(i) + 1) return false;
  return true;
}

}  // namespace

QubitState parse_state(const std::string& text) {
  if (text == "zero") return QubitState::from_ket(ket_zero());
  if (text == "one") return QubitState::from_ket(ket_one());
  if (text == "plus") return QubitState::from_ket(ket_plus());
  std::stringstream in(text);
  std::array<double, 3> w{};
  std::string field;
  std::size_t count = 0;
  while (std::getline(in, field, ',')) {
    if (count == 3) throw std::invalid_argument("state '" + text + "': too many components");
    std::size_t used = 0;
    try {
      w[count] = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != field.size() || !std::isfinite(w[count]))
      throw std::invalid_argument("state '" + text +
                                  "': expected zero|one|plus or a Bloch triple x,y,z");
    ++count;
  }
  if (count != 3)
    throw std::invalid_argument("state '" + text +
                                "': expected zero|one|plus or a Bloch triple x,y,z");
  const Vec3 v{w[0], w[1], w[2]};
  if (v.norm() > 0.5 + kBlochTol)
    throw std::invalid_argument("state '" + text +
                                "': Bloch vector longer than 1/2 (half-radius convention)");
  return QubitState(v);
}

Ket parse_pure_state(const std::string& text) {
  if (text == "zero") return ket_zero();
  if (text == "one") return ket_one();
  if (text == "plus") return ket_plus();
  const QubitState s = parse_state(text);
  if (!s.is_pure(1e-9))
    throw std::invalid_argument("state '" + text + "' is not pure (|w| must be 1/2)");
  return ket_from_bloch(s.bloch());
}

std::vector<int> parse_order(const std::string& text) {
  std::vector<int> order;
  std::stringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != field.size())
      throw std::invalid_argument("--order: '" + field + "' is not an integer");
    order.push_back(v);
  }
  if (order.empty()) throw std::invalid_argument("--order is empty");
  return order;
}

SwapAngle resolve_angle(const RunConfig& cfg, double fallback_s2) {
  if (cfg.eta && cfg.delta) throw std::invalid_argument("--eta and --delta are exclusive");
  if (cfg.eta) {
    if (!std::isfinite(*cfg.eta)) throw std::invalid_argument("--eta must be finite");
    return SwapAngle(*cfg.eta);
  }
  if (cfg.delta) return budget_from_delta(*cfg.delta).angle();
  return SwapAngle::from_sin_squared(fallback_s2);
}

int cmd_homogenize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_format(cfg);
  const SwapAngle angle = resolve_angle(cfg);
  std::optional<HomogenizationBudget> budget;
  if (cfg.delta) budget = budget_from_delta(*cfg.delta);
  const int n = reservoir_size(cfg, budget ? budget->n_delta : 10);
  const QubitState rho0 = parse_state(cfg.system);
  const QubitState xi = parse_state(cfg.reservoir);

  const Trajectory traj = run_trajectory(rho0, xi, angle, n);
  emit(cfg, {{"trajectory", cfg.format == "json" ? trajectory_json(traj) : trajectory_csv(traj)}},
       out);

  double max_res = 0.0;
  for (const auto& r : traj.records) max_res = std::max(max_res, r.d_reservoir);
  const double final_d = traj.records.back().d_system;
  json summary = {{"command", "homogenize"}, {"eta", angle.eta()},   {"n", n},
                  {"final_D_sys", final_d},  {"max_D_res", max_res}};
  std::vector<std::string> failed;
  if (budget) {
    // 2 s^2 can round one ulp above delta.
    const double limit = *cfg.delta + 1e-12;
    summary["delta"] = *cfg.delta;
    summary["n_delta"] = budget->n_delta;
    summary["final_within_delta"] = final_d <= limit;
    summary["max_reservoir_within_delta"] = max_res <= limit;
    if (final_d > limit) failed.push_back("final_within_delta");
    if (max_res > limit) failed.push_back("max_reservoir_within_delta");
  }
  return finish(err, std::move(summary), failed);
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_format(cfg);
  if (!cfg.eta && !cfg.delta) throw std::invalid_argument("bounds needs --delta or --eta");
  double delta = 0.0;
  if (cfg.delta) {
    delta = *cfg.delta;
  } else {
    const SwapAngle a(*cfg.eta);
    delta = 2.0 * a.sin() * a.sin();
  }
  const HomogenizationBudget b = budget_from_delta(delta);
  const double d_at_n = worst_case_distance(b.angle(), b.n_delta);
  const std::vector<std::pair<std::string, double>> rows = {
      {"delta", b.delta},
      {"sin_eta_max", b.sin_eta_max},
      {"eta_max", b.eta_max},
      {"n_delta", static_cast<double>(b.n_delta)},
      {"worst_case_D_at_n_delta", d_at_n},
  };
  std::string body;
  if (cfg.format == "json") {
    json j = json::object();
    for (const auto& [k, v] : rows) j[k] = v;
    j["n_delta"] = b.n_delta;
    body = j.dump(2) + "\n";
  } else {
    body = "key,value\n";
    for (const auto& [k, v] : rows)
      body += k + "," + (k == "n_delta" ? std::to_string(b.n_delta) : format_double(v)) + "\n";
  }
  emit(cfg, {{"bounds", body}}, out);
  std::vector<std::string> failed;
  if (d_at_n > delta + 1e-12) failed.push_back("worst_case_within_delta");
  return finish(err, {{"command", "bounds"}, {"delta", delta}, {"n_delta", b.n_delta}}, failed);
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_format(cfg);
  const SwapAngle angle = resolve_angle(cfg);
  const int n = reservoir_size(cfg, 10);
  const Ket sys = parse_pure_state(cfg.system);
  const Ket res = parse_pure_state(cfg.reservoir);
  const std::vector<int> order = collision_order(cfg, n);

  auto state = CollisionState::init_pure(sys, res, n, angle);
  const QubitState rho0 = QubitState::from_ket(sys);
  const QubitState xi = QubitState::from_ket(res);
  struct Row {
    int step;
    int k;
    QubitState system;
    double d_sys;
  };
  std::vector<Row> rows{{0, 0, rho0, trace_distance(rho0, xi)}};
  double residual = 0.0;
  for (int k : order) {
    state.collide(k);
    const QubitState now = QubitState::from_density(state.reduced({0}));
    const int step = static_cast<int>(state.log().size());
    const Vec3 diff = now.bloch() - closed_form_system(rho0, xi, angle, step).bloch();
    residual = std::max(residual, diff.norm());
    rows.push_back({step, k, now, trace_distance(now, xi)});
  }

  std::string body;
  if (cfg.format == "json") {
    json j = json::parse(snapshot_json(state));
    json reduced = json::array();
    for (int q = 0; q < state.num_qubits(); ++q) {
      const Vec3 w = QubitState::from_density(state.reduced({q})).bloch();
      reduced.push_back({{"qubit", q}, {"w", {w.x, w.y, w.z}}});
    }
    json steps = json::array();
    for (const auto& r : rows) {
      const Vec3 w = r.system.bloch();
      steps.push_back({{"step", r.step}, {"k", r.k}, {"w", {w.x, w.y, w.z}}, {"D_sys", r.d_sys}});
    }
    j["reduced"] = std::move(reduced);
    j["system_steps"] = std::move(steps);
    body = j.dump(2) + "\n";
  } else {
    body = "step,k,wx,wy,wz,D_sys\n";
    for (const auto& r : rows)
      body += std::to_string(r.step) + "," + std::to_string(r.k) + "," +
              format_bloch(r.system.bloch()) + "," + format_double(r.d_sys) + "\n";
  }
  emit(cfg, {{"simulate", body}}, out);

  std::vector<std::string> failed;
  if (residual > 1e-10) failed.push_back("marginal_matches_closed_form");
  return finish(err,
                {{"command", "simulate"},
                 {"eta", angle.eta()},
                 {"n", n},
                 {"collisions", state.log().size()},
                 {"norm_error", std::abs(state.vector().norm_squared() - 1.0)},
                 {"marginal_residual", residual}},
                failed);
}

int cmd_entangle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_format(cfg);
  const SwapAngle angle = resolve_angle(cfg);
  const int n = reservoir_size(cfg, 10);
  const Ket sys = parse_pure_state(cfg.system);
  const Ket res = parse_pure_state(cfg.reservoir);
  const std::vector<int> order = collision_order(cfg, n);

  auto state = CollisionState::init_pure(sys, res, n, angle);
  state.run(order);
  const ConcurrenceTable numeric = concurrence_table(state);
  const TangleRecord tangles = tangle_record(state);
  const int steps = static_cast<int>(order.size());
  const bool closed = in_closed_form_regime(sys, res) && is_default_prefix(order);

  std::optional<ConcurrenceTable> c_closed;
  std::optional<TangleRecord> t_closed;
  if (closed) {
    c_closed = closed_form_concurrences(steps, n, angle);
    t_closed = closed_form_tangles(steps, n, angle);
  }

  double max_residual = 0.0;
  double max_ckw_gap = 0.0;  // S_j - tau_j; saturation makes this 0
  for (const auto& e : tangles.entries) max_ckw_gap = std::max(max_ckw_gap, e.ckw - e.tau);

  std::string c_body;
  std::string t_body;
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& [jk, c] : numeric.entries) {
      json row = {{"j", jk.first}, {"k", jk.second}, {"C", c}};
      if (c_closed) {
        const double cc = c_closed->at(jk.first, jk.second);
        row["C_closed"] = cc;
        row["residual"] = std::abs(c - cc);
        max_residual = std::max(max_residual, std::abs(c - cc));
      }
      rows.push_back(std::move(row));
    }
    c_body = json{{"n", steps}, {"N", n}, {"entries", std::move(rows)}}.dump(2) + "\n";
    json trows = json::array();
    for (std::size_t i = 0; i < tangles.entries.size(); ++i) {
      const auto& e = tangles.entries[i];
      json row = {{"j", e.j}, {"tau", e.tau}, {"S", e.ckw}};
      if (t_closed) {
        const double tc = t_closed->entries[i].tau;
        row["tau_closed"] = tc;
        row["residual"] = std::abs(e.tau - tc);
        max_residual = std::max(max_residual, std::abs(e.tau - tc));
      }
      trows.push_back(std::move(row));
    }
    t_body = json{{"n", steps}, {"entries", std::move(trows)}}.dump(2) + "\n";
  } else {
    c_body = closed ? "j,k,C,C_closed,residual\n" : "j,k,C\n";
    for (const auto& [jk, c] : numeric.entries) {
      c_body += std::to_string(jk.first) + "," + std::to_string(jk.second) + "," + format_double(c);
      if (c_closed) {
        const double cc = c_closed->at(jk.first, jk.second);
        c_body += "," + format_double(cc) + "," + format_double(std::abs(c - cc));
        max_residual = std::max(max_residual, std::abs(c - cc));
      }
      c_body += "\n";
    }
    t_body = closed ? "j,tau,S,tau_closed,residual\n" : "j,tau,S\n";
    for (std::size_t i = 0; i < tangles.entries.size(); ++i) {
      const auto& e = tangles.entries[i];
      t_body += std::to_string(e.j) + "," + format_double(e.tau) + "," + format_double(e.ckw);
      if (t_closed) {
        const double tc = t_closed->entries[i].tau;
        t_body += "," + format_double(tc) + "," + format_double(std::abs(e.tau - tc));
        max_residual = std::max(max_residual, std::abs(e.tau - tc));
      }
      t_body += "\n";
    }
  }
  emit(cfg, {{"concurrence", c_body}, {"tangle", t_body}}, out);

  std::vector<std::string> failed;
  json summary = {{"command", "entangle"},     {"eta", angle.eta()},
                  {"n", steps},                {"N", n},
                  {"closed_form", closed},     {"max_ckw_excess", max_ckw_gap},
                  {"pairwise_tangle_sum", pairwise_tangle_sum(state)}};
  // Monogamy holds for any input; the closed forms only in their regime.
  if (max_ckw_gap > 1e-8) failed.push_back("ckw_monogamy");
  if (closed) {
    summary["max_residual"] = max_residual;
    if (max_residual > 1e-8) failed.push_back("closed_form_residual");
    double saturation = 0.0;
    for (const auto& e : tangles.entries) saturation = std::max(saturation, std::abs(e.ckw - e.tau));
    summary["max_ckw_saturation_gap"] = saturation;
    if (saturation > 1e-8) failed.push_back("ckw_saturation");
  }
  return finish(err, std::move(summary), failed);
}

int cmd_safe(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_format(cfg);
  const SwapAngle angle = resolve_angle(cfg, kSafeDefaultSinSquared);
  const int n = reservoir_size(cfg, 9);
  if (!in_closed_form_regime(parse_pure_state(cfg.system), parse_pure_state(cfg.reservoir)))
    throw std::invalid_argument("safe runs on the weight-1 sector: use --system one --reservoir zero");
  if (!cfg.order.empty()) throw std::invalid_argument("safe enumerates orders itself; drop --order");
  if (cfg.mode != "correct" && cfg.mode != "incorrect" && cfg.mode != "both")
    throw std::invalid_argument("--mode must be correct, incorrect or both");
  const bool sampled = cfg.sample > 0;
  if (!sampled && n > kMaxExhaustiveSafe)
    throw std::invalid_argument("exhaustive sweeps are limited to N <= " +
                                std::to_string(kMaxExhaustiveSafe) + "; use --sample");

  std::vector<SweepResult> results;
  if (cfg.mode != "incorrect")
    results.push_back(sampled ? sample_sweep(n, angle, ChosenSystemMode::kCorrect, cfg.sample,
                                             cfg.seed)
                              : sweep_correct(n, angle, cfg.threads));
  if (cfg.mode != "correct")
    results.push_back(sampled ? sample_sweep(n, angle, ChosenSystemMode::kIncorrect, cfg.sample,
                                             cfg.seed + 1)
                              : sweep_incorrect(n, angle, cfg.threads));

  std::vector<Output> outputs;
  for (const auto& r : results)
    outputs.push_back({std::string(to_string(r.mode)),
                       cfg.format == "json" ? histogram_json(r) : histogram_csv(r.histogram)});
  emit(cfg, outputs, out);

  std::uint64_t factorial = 1;
  for (int k = 2; k <= n; ++k) factorial *= static_cast<std::uint64_t>(k);

  json summary = {{"command", "safe"}, {"eta", angle.eta()}, {"N", n}, {"sampled", sampled}};
  std::vector<std::string> failed;
  for (const auto& r : results) {
    const std::string mode(to_string(r.mode));
    const double fraction =
        r.trials == 0 ? 0.0 : static_cast<double>(r.nonpositive) / static_cast<double>(r.trials);
    summary[mode] = {{"trials", r.trials},
                     {"exact_recoveries", r.exact_recoveries},
                     {"near_recoveries", r.near_recoveries},
                     {"nonpositive_fraction", fraction},
                     {"min_z", r.min_z}};
    if (r.mode == ChosenSystemMode::kCorrect) {
      if (!sampled) {
        if (r.trials != factorial) failed.push_back("correct_trial_count");
        if (r.exact_recoveries != 1) failed.push_back("unique_correct_reversal");
        if (!(fraction > 0.5)) failed.push_back("majority_nonpositive");
      }
    } else {
      if (!sampled && r.trials != factorial * static_cast<std::uint64_t>(n))
        failed.push_back("incorrect_trial_count");
      if (r.near_recoveries != 0) failed.push_back("no_incorrect_reversal");
    }
  }
  return finish(err, std::move(summary), failed);
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_format(cfg);
  VerifyOptions opt;
  opt.seed = cfg.seed;
  if (cfg.sample > 0) opt.samples = static_cast<int>(std::min<std::uint64_t>(cfg.sample, 1000000));
  const std::vector<SuiteResult> results = run_all_suites(opt);

  std::string body;
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : results)
      arr.push_back({{"suite", r.name},
                     {"passed", r.passed},
                     {"cases", r.cases},
                     {"worst_error", r.worst_error},
                     {"failure", r.failure}});
    body = arr.dump(2) + "\n";
  } else {
    body = "suite,passed,cases,worst_error,failure\n";
    for (const auto& r : results) {
      std::string failure = r.failure;
      std::replace(failure.begin(), failure.end(), ',', ';');
      body += r.name + "," + (r.passed ? "1" : "0") + "," + std::to_string(r.cases) + "," +
              format_double(r.worst_error) + "," + failure + "\n";
    }
  }
  emit(cfg, {{"verify", body}}, out);

  std::vector<std::string> failed;
  for (const auto& r : results)
    if (!r.passed) failed.push_back(r.name);
  return finish(err, {{"command", "verify"}, {"suites", results.size()}, {"seed", cfg.seed}},
                failed);
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "homogenize") return cmd_homogenize(cfg, out, err);
    if (cfg.command == "bounds") return cmd_bounds(cfg, out, err);
    if (cfg.command == "simulate") return cmd_simulate(cfg, out, err);
    if (cfg.command == "entangle") return cmd_entangle(cfg, out, err);
    if (cfg.command == "safe") return cmd_safe(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
  } catch (const std::exception& e) {
    err << json{{"command", cfg.command}, {"ok", false}, {"error", e.what()}}.dump() << '\n';
    return kExitBadInput;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial-swap homogenization, entanglement and unwinding experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qhog 0.1.0");

  RunConfig cfg;
  double eta = 0.0;
  double delta = 0.0;
  int n = 0;

  const auto add_shared = [&](CLI::App* sub) {
    auto* eta_opt = sub->add_option("--eta", eta, "Interaction strength in radians");
    auto* delta_opt =
        sub->add_option("--delta", delta, "Target trace distance; sets sin(eta) = sqrt(delta/2)");
    eta_opt->excludes(delta_opt);
    sub->add_option("--n", n, "Reservoir size N");
    sub->add_option("--system", cfg.system, "System state: zero|one|plus or Bloch x,y,z");
    sub->add_option("--reservoir", cfg.reservoir, "Reservoir state: zero|one|plus or Bloch x,y,z");
    sub->add_option("--order", cfg.order, "Collision order, e.g. 3,1,2");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "Output file, or prefix when a command writes several");
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--threads", cfg.threads, "Worker threads for sweeps (0 = all cores)");
    sub->add_option("--sample", cfg.sample, "Random trials instead of an exhaustive sweep");
  };

  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : std::vector<std::pair<const char*, const char*>>{
           {"homogenize", "Trajectory of the system and outgoing reservoir qubits"},
           {"bounds", "Angle and reservoir-size budget for a target distance"},
           {"simulate", "Exact state-vector run with reduced states per collision"},
           {"entangle", "Pairwise concurrences, tangles and CKW sums"},
           {"safe", "Unwinding sweeps with the correct and incorrect system"},
           {"verify", "Run every property suite"},
       }) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_shared(sub);
    if (std::string(name) == "safe")
      sub->add_option("--mode", cfg.mode, "correct, incorrect or both")
          ->check(CLI::IsMember({"correct", "incorrect", "both"}));
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and --version.
      app.exit(e, out, err);
      return kExitOk;
    }
    err << json{{"command", "parse"}, {"ok", false}, {"error", e.what()}}.dump() << '\n';
    return kExitBadInput;
  }

  for (CLI::App* sub : subs) {
    if (!sub->parsed()) continue;
    cfg.command = sub->get_name();
    if (sub->count("--eta") > 0) cfg.eta = eta;
    if (sub->count("--delta") > 0) cfg.delta = delta;
    if (sub->count("--n") > 0) cfg.n = n;
  }
  return run(cfg, out, err);
}

}  // namespace qhog::cli
