#include "qhog/collision.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qhog {

int max_simulated_qubits() {
  if (const char* env = std::getenv("QHOG_MAX_QUBITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 40) return static_cast<int>(v);
  }
  return kDefaultMaxQubits;
}

std::vector<int> default_order(int n) {
  std::vector<int> order(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(order.begin(), order.end(), 1);
  return order;
}

CollisionState CollisionState::init_pure(const Ket& system, const Ket& reservoir, int n,
                                         const SwapAngle& angle) {
  const auto unit = [](const Ket& k) {
    return std::abs(std::norm(k[0]) + std::norm(k[1]) - 1.0) <= 1e-12;
  };
  if (!unit(system) || !unit(reservoir))
    throw std::invalid_argument("init_pure: input kets must be unit-norm");
  if (n < 1) throw std::invalid_argument("init_pure: need at least one reservoir qubit");
  const int cap = max_simulated_qubits();
  if (n + 1 > cap)
    throw std::invalid_argument("init_pure: " + std::to_string(n + 1) +
                                " qubits exceed the simulator cap of " + std::to_string(cap) +
                                " (QHOG_MAX_QUBITS)");
  std::vector<Ket> kets(static_cast<std::size_t>(n) + 1, reservoir);
  kets[0] = system;
  return CollisionState(product_state(kets), angle);
}

void CollisionState::collide(int k) {
  if (k < 1 || k > reservoir_size())
    throw std::invalid_argument("collide: reservoir index " + std::to_string(k) +
                                " outside 1.." + std::to_string(reservoir_size()));
  if (std::find(log_.begin(), log_.end(), k) != log_.end())
    throw std::invalid_argument("collide: reservoir qubit " + std::to_string(k) +
                                " has already interacted");
  vector_.apply_two_qubit(gate_, 0, k);
  log_.push_back(k);
}

void CollisionState::run(std::span<const int> order) {
  for (int k : order) collide(k);
}

void CollisionState::run() {
  const auto order = default_order(reservoir_size());
  run(order);
}

CMatrix CollisionState::reduced(std::span<const int> qubits) const {
  if (qubits.size() != 1 && qubits.size() != 2)
    throw std::invalid_argument("reduced: expected one or two qubit indices");
  return vector_.reduced(qubits);
}

CollisionState collide(CollisionState state, int k) {
  state.collide(k);
  return state;
}

CollisionState run(CollisionState state, std::span<const int> order) {
  state.run(order);
  return state;
}

CMatrix MixedSystemRun::reduced(std::span<const int> qubits) const {
  CMatrix acc;
  for (const auto& comp : components_) {
    CMatrix part = comp.state.reduced(qubits) * cplx{comp.weight, 0.0};
    acc = acc.rows() == 0 ? std::move(part) : acc + part;
  }
  return acc;
}

MixedSystemRun run_mixed_system(const QubitState& rho0, const Ket& reservoir, int n,
                                const SwapAngle& angle, std::span<const int> order) {
  const std::vector<int> full = default_order(n);
  const std::span<const int> sequence = order.empty() ? std::span<const int>(full) : order;
  const auto eig = hermitian_eig(rho0.density());
  std::vector<MixedSystemRun::Component> parts;
  for (std::size_t i = 0; i < eig.values.size(); ++i) {
    const double weight = eig.values[i];
    if (weight <= kRoundoffFloor) continue;
    const Ket ket{eig.vectors(0, i), eig.vectors(1, i)};
    auto state = CollisionState::init_pure(ket, reservoir, n, angle);
    state.run(sequence);
    parts.push_back({weight, std::move(state)});
  }
  return MixedSystemRun(std::move(parts));
}

ExcitationState::ExcitationState(std::vector<cplx> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  double n2 = 0.0;
  for (const auto& a : amplitudes_) n2 += std::norm(a);
  if (amplitudes_.empty() || std::abs(n2 - 1.0) > 1e-12)
    throw std::invalid_argument("ExcitationState: amplitudes are not normalized");
}

ExcitationState ExcitationState::single(int num_qubits, int excited) {
  if (excited < 0 || excited >= num_qubits)
    throw std::invalid_argument("ExcitationState: excited qubit out of range");
  std::vector<cplx> amps(static_cast<std::size_t>(num_qubits));
  amps[static_cast<std::size_t>(excited)] = 1.0;
  return ExcitationState(std::move(amps));
}

void ExcitationState::apply_pair(int a, int b, const SwapAngle& angle) {
  const int n = num_qubits();
  if (a == b || a < 0 || b < 0 || a >= n || b >= n)
    throw std::invalid_argument("apply_pair: bad qubit pair");
  const cplx c{angle.cos(), 0.0};
  const cplx is{0.0, angle.sin()};
  const cplx phase = c + is;
  const auto ua = static_cast<std::size_t>(a);
  const auto ub = static_cast<std::size_t>(b);
  const cplx xa = amplitudes_[ua];
  const cplx xb = amplitudes_[ub];
  for (auto& amp : amplitudes_) amp *= phase;
  amplitudes_[ua] = c * xa + is * xb;
  amplitudes_[ub] = is * xa + c * xb;
}

MultiQubitVector ExcitationState::to_vector() const {
  const int n = num_qubits();
  std::vector<cplx> amps(std::size_t{1} << n);
  for (int q = 0; q < n; ++q) amps[std::size_t{1} << (n - 1 - q)] = amplitude(q);
  return MultiQubitVector(n, std::move(amps));
}

ExcitationState to_excitation(const MultiQubitVector& v, double tol) {
  const int n = v.num_qubits();
  std::vector<cplx> amps(static_cast<std::size_t>(n));
  double outside = 0.0;
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    if (std::has_single_bit(i)) {
      const int q = n - 1 - std::countr_zero(i);
      amps[static_cast<std::size_t>(q)] = v.amplitude(i);
    } else {
      outside += std::norm(v.amplitude(i));
    }
  }
  if (std::sqrt(outside) > tol)
    throw std::invalid_argument("to_excitation: state has support outside the weight-1 sector");
  // Renormalize away the sub-tolerance leakage.
  double n2 = 0.0;
  for (const auto& a : amps) n2 += std::norm(a);
  for (auto& a : amps) a /= std::sqrt(n2);
  return ExcitationState(std::move(amps));
}

ExcitationState to_excitation(const CollisionState& state, double tol) {
  return to_excitation(state.vector(), tol);
}

ExcitationState excitation_collide(ExcitationState es, int k, const SwapAngle& angle) {
  if (k < 1 || k >= es.num_qubits())
    throw std::invalid_argument("excitation_collide: reservoir index out of range");
  es.apply_pair(0, k, angle);
  return es;
}

}  // namespace qhog
