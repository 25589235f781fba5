#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qgan/rng.hpp"

namespace qgan {

using cdouble = std::complex<double>;

// Resource bound for the dense simulator (2^12 amplitudes, 64 KiB).
inline constexpr int kMaxQubits = 12;

enum class GateKind { H, RY, CX };

// One gate instance. `control` is meaningful for CX only, `angle` for RY only.
// RY convention: RY(a) = [[cos(a/2), -sin(a/2)], [sin(a/2), cos(a/2)]].
struct Gate {
  GateKind kind = GateKind::H;
  int target = 0;
  int control = -1;
  double angle = 0.0;

  static Gate h(int target) { return {GateKind::H, target, -1, 0.0}; }
  static Gate ry(int target, double angle) { return {GateKind::RY, target, -1, angle}; }
  static Gate cx(int control, int target) { return {GateKind::CX, target, control, 0.0}; }
};

// Dense amplitude vector for an n-qubit pure state. Qubit 0 is the least
// significant bit of the basis-state index.
struct StateVector {
  int n_qubits = 0;
  std::vector<cdouble> amps;

  std::size_t dim() const { return amps.size(); }
};

// Per-qubit measurement tally; zeros + ones == shots.
struct ShotCounts {
  int qubit = 0;
  long zeros = 0;
  long ones = 0;
  long shots = 0;
};

/// |00...0> on n_qubits qubits; 1 <= n_qubits <= kMaxQubits.
StateVector init_zero(int n_qubits);

/// In-place unitary action of one gate. Throws std::out_of_range on bad indices.
void apply_gate(StateVector& state, const Gate& g);

void apply_circuit(StateVector& state, std::span<const Gate> gates);

/// Probability of measuring |1> on `qubit`: sum of |amp|^2 over basis states
/// with that bit set.
double prob_one(const StateVector& state, int qubit);

double norm_squared(const StateVector& state);

/// Shot-based estimate of the single-qubit marginal; deterministic given the
/// rng stream. Throws std::invalid_argument when shots < 1.
ShotCounts sample_qubit(const StateVector& state, int qubit, long shots, Rng& rng);

}  // namespace qgan
