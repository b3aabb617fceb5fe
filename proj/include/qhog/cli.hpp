#pragma once

// Command-line front end: homogenize | bounds | simulate | entangle | safe | verify.
//
// Every command writes its data (CSV or JSON) to --out, or to stdout when no
// --out is given, and finishes with a one-line JSON summary on stderr. Exit
// status is 0 when every check the command performs passes, 1 when a check
// fails and 2 on bad input.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qhog/collision.hpp"
#include "qhog/homogenizer.hpp"
#include "qhog/qubit.hpp"

namespace qhog::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;

/// s^2 used when neither --eta nor --delta is given.
inline constexpr double kDefaultSinSquared = 0.1;
/// The same default for `safe`. Past s^2 ~ 0.093 most correct-system
/// unwindings land at z > 0 for N = 9.
inline constexpr double kSafeDefaultSinSquared = 0.05;

struct RunConfig {
  std::string command;
  std::optional<double> eta;
  std::optional<double> delta;
  std::optional<int> n;
  std::string system = "one";
  std::string reservoir = "zero";
  std::string order;  // "3,1,2"; empty means 1..n
  std::string format = "csv";
  std::string out;  // file, or prefix for commands with several outputs
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::uint64_t sample = 0;  // 0 = exhaustive (safe) or the default count (verify)
  std::string mode = "both";  // safe: correct | incorrect | both
};

/// `zero`, `one`, `plus`, or a half-radius Bloch triple "x,y,z".
/// Throws std::invalid_argument on anything else.
QubitState parse_state(const std::string& text);
/// As parse_state, but the state must be pure; returns a ket for it.
Ket parse_pure_state(const std::string& text);
/// "3,1,2" -> {3, 1, 2}. Throws std::invalid_argument on malformed input.
std::vector<int> parse_order(const std::string& text);

/// --eta, else the angle for --delta, else s^2 = fallback_s2.
SwapAngle resolve_angle(const RunConfig& cfg, double fallback_s2 = kDefaultSinSquared);

int cmd_homogenize(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_entangle(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_safe(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.command; bad input becomes exit 2 with a failure record.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and runs.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qhog::cli
