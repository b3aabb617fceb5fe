#pragma once

// CSV and JSON emitters. CSV numbers use 17 significant digits; JSON numbers
// use the shortest representation that round-trips.

#include <string>

#include "qhog/collision.hpp"
#include "qhog/entanglement.hpp"
#include "qhog/homogenizer.hpp"
#include "qhog/quantum_safe.hpp"
#include "qhog/qubit.hpp"

namespace qhog {

/// printf("%.17g").
std::string format_double(double v);

/// "x,y,z" with 17 significant digits.
std::string format_bloch(Vec3 w);

/// Header n,wx,wy,wz,txp,typ,tzp,D_sys,D_res then one row per record.
std::string trajectory_csv(const Trajectory& t);
std::string trajectory_json(const Trajectory& t);

/// {num_qubits, eta, log, amplitudes: [[re, im], ...]}
std::string snapshot_json(const CollisionState& state);

/// Header j,k,C.
std::string concurrence_csv(const ConcurrenceTable& table);
std::string concurrence_json(const ConcurrenceTable& table);

/// Header j,tau,S.
std::string tangle_csv(const TangleRecord& record);
std::string tangle_json(const TangleRecord& record);

/// Header z_center,count and 21 rows.
std::string histogram_csv(const UnwindHistogram& h);
/// Counts plus {N, eta, chosen_system_mode, total_trials}.
std::string histogram_json(const SweepResult& result);

}  // namespace qhog
