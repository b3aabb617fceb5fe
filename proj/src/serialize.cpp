#include "qhog/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace qhog {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string format_bloch(Vec3 w) {
  return format_double(w.x) + "," + format_double(w.y) + "," + format_double(w.z);
}

std::string trajectory_csv(const Trajectory& t) {
  std::ostringstream out;
  out << "n,wx,wy,wz,txp,typ,tzp,D_sys,D_res\n";
  for (const auto& r : t.records) {
    out << r.n << ',' << format_bloch(r.system.bloch()) << ','
        << format_bloch(r.reservoir_out.bloch()) << ',' << format_double(r.d_system) << ','
        << format_double(r.d_reservoir) << '\n';
  }
  return out.str();
}

namespace {

json bloch_json(Vec3 w) { return json::array({w.x, w.y, w.z}); }

}  // namespace

std::string trajectory_json(const Trajectory& t) {
  json arr = json::array();
  for (const auto& r : t.records) {
    arr.push_back({{"n", r.n},
                   {"w", bloch_json(r.system.bloch())},
                   {"t_out", bloch_json(r.reservoir_out.bloch())},
                   {"D_sys", r.d_system},
                   {"D_res", r.d_reservoir}});
  }
  return arr.dump(2) + "\n";
}

std::string snapshot_json(const CollisionState& state) {
  json amps = json::array();
  for (const auto& a : state.vector().amplitudes()) amps.push_back({a.real(), a.imag()});
  const json j = {{"num_qubits", state.num_qubits()},
                  {"eta", state.angle().eta()},
                  {"log", state.log()},
                  {"amplitudes", std::move(amps)}};
  return j.dump() + "\n";
}

std::string concurrence_csv(const ConcurrenceTable& table) {
  std::ostringstream out;
  out << "j,k,C\n";
  for (const auto& [jk, c] : table.entries)
    out << jk.first << ',' << jk.second << ',' << format_double(c) << '\n';
  return out.str();
}

std::string concurrence_json(const ConcurrenceTable& table) {
  json rows = json::array();
  for (const auto& [jk, c] : table.entries)
    rows.push_back({{"j", jk.first}, {"k", jk.second}, {"C", c}});
  const json j = {{"n", table.n}, {"N", table.reservoir_size}, {"entries", std::move(rows)}};
  return j.dump(2) + "\n";
}

std::string tangle_csv(const TangleRecord& record) {
  std::ostringstream out;
  out << "j,tau,S\n";
  for (const auto& e : record.entries)
    out << e.j << ',' << format_double(e.tau) << ',' << format_double(e.ckw) << '\n';
  return out.str();
}

std::string tangle_json(const TangleRecord& record) {
  json rows = json::array();
  for (const auto& e : record.entries) rows.push_back({{"j", e.j}, {"tau", e.tau}, {"S", e.ckw}});
  const json j = {{"n", record.n}, {"entries", std::move(rows)}};
  return j.dump(2) + "\n";
}

std::string histogram_csv(const UnwindHistogram& h) {
  std::ostringstream out;
  out << "z_center,count\n";
  char buf[16];
  for (int b = 0; b < UnwindHistogram::kBins; ++b) {
    // Centres are printed to one decimal; 17 digits would show -0.90000000000000002.
    std::snprintf(buf, sizeof buf, "%.1f", UnwindHistogram::center(b));
    out << buf << ',' << h.counts()[static_cast<std::size_t>(b)] << '\n';
  }
  return out.str();
}

std::string histogram_json(const SweepResult& result) {
  json bins = json::array();
  for (int b = 0; b < UnwindHistogram::kBins; ++b)
    bins.push_back({{"z_center", std::round(UnwindHistogram::center(b) * 10.0) / 10.0},
                    {"count", result.histogram.counts()[static_cast<std::size_t>(b)]}});
  const json j = {{"N", result.reservoir_size},
                  {"eta", result.angle.eta()},
                  {"chosen_system_mode", std::string(to_string(result.mode))},
                  {"total_trials", result.trials},
                  {"sampled", result.sampled},
                  {"exact_recoveries", result.exact_recoveries},
                  {"near_recoveries", result.near_recoveries},
                  {"nonpositive", result.nonpositive},
                  {"min_z", result.min_z},
                  {"bins", std::move(bins)}};
  return j.dump(2) + "\n";
}

}  // namespace qhog
