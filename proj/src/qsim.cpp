#include "qgan/qsim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qgan {

namespace {

void check_qubit(const StateVector& state, int qubit, const char* where) {
  if (qubit < 0 || qubit >= state.n_qubits) {
    throw std::out_of_range(std::string(where) + ": qubit index " +
                            std::to_string(qubit) + " out of range for " +
                            std::to_string(state.n_qubits) + " qubits");
  }
}

// Butterfly update over amplitude pairs that differ in the target bit.
void apply_1q(StateVector& s, int target, cdouble u00, cdouble u01, cdouble u10,
              cdouble u11) {
  const std::size_t step = std::size_t{1} << target;
  const std::size_t n = s.amps.size();
  for (std::size_t base = 0; base < n; base += step << 1) {
    for (std::size_t off = 0; off < step; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + step;
      const cdouble a = s.amps[i0];
      const cdouble b = s.amps[i1];
      s.amps[i0] = u00 * a + u01 * b;
      s.amps[i1] = u10 * a + u11 * b;
    }
  }
}

void apply_cx(StateVector& s, int control, int target) {
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  const std::size_t n = s.amps.size();
  for (std::size_t i = 0; i < n; ++i) {
    if ((i & cbit) && !(i & tbit)) {
      std::swap(s.amps[i], s.amps[i | tbit]);
    }
  }
}

}  // namespace

StateVector init_zero(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("init_zero: n_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
  }
  StateVector s;
  s.n_qubits = n_qubits;
  s.amps.assign(std::size_t{1} << n_qubits, cdouble{0.0, 0.0});
  s.amps[0] = cdouble{1.0, 0.0};
  return s;
}

void apply_gate(StateVector& state, const Gate& g) {
  check_qubit(state, g.target, "apply_gate");
  switch (g.kind) {
    case GateKind::H: {
      const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
      apply_1q(state, g.target, inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
      break;
    }
    case GateKind::RY: {
      const double c = std::cos(0.5 * g.angle);
      const double s = std::sin(0.5 * g.angle);
      apply_1q(state, g.target, c, -s, s, c);
      break;
    }
    case GateKind::CX: {
      check_qubit(state, g.control, "apply_gate");
      if (g.control == g.target) {
        throw std::out_of_range("apply_gate: CX control equals target");
      }
      apply_cx(state, g.control, g.target);
      break;
    }
  }
}

void apply_circuit(StateVector& state, std::span<const Gate> gates) {
  for (const Gate& g : gates) {
    apply_gate(state, g);
  }
}

double prob_one(const StateVector& state, int qubit) {
  check_qubit(state, qubit, "prob_one");
  const std::size_t bit = std::size_t{1} << qubit;
  double p = 0.0;
  for (std::size_t i = 0; i < state.amps.size(); ++i) {
    if (i & bit) {
      p += std::norm(state.amps[i]);
    }
  }
  return p;
}

double norm_squared(const StateVector& state) {
  double s = 0.0;
  for (const cdouble& a : state.amps) {
    s += std::norm(a);
  }
  return s;
}

ShotCounts sample_qubit(const StateVector& state, int qubit, long shots, Rng& rng) {
  if (shots < 1) {
    throw std::invalid_argument("sample_qubit: shots must be >= 1");
  }
  const double p1 = prob_one(state, qubit);
  ShotCounts counts;
  counts.qubit = qubit;
  counts.shots = shots;
  for (long i = 0; i < shots; ++i) {
    if (rng.uniform01() < p1) {
      ++counts.ones;
    }
  }
  counts.zeros = counts.shots - counts.ones;
  return counts;
}

}  // namespace qgan
