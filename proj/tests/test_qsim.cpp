#include "qgan/qsim.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"

namespace qgan {
namespace {

constexpr double kTol = 1e-12;

std::vector<Gate> random_circuit(int n_qubits, int n_gates, Rng& rng) {
  std::vector<Gate> gates;
  gates.reserve(static_cast<std::size_t>(n_gates));
  for (int i = 0; i < n_gates; ++i) {
    const int target = static_cast<int>(rng.index(static_cast<std::size_t>(n_qubits)));
    switch (n_qubits >= 2 ? rng.index(3) : rng.index(2)) {
      case 0:
        gates.push_back(Gate::h(target));
        break;
      case 1:
        gates.push_back(Gate::ry(target, rng.uniform(-std::numbers::pi, std::numbers::pi)));
        break;
      default: {
        int control = static_cast<int>(rng.index(static_cast<std::size_t>(n_qubits)));
        while (control == target) {
          control = static_cast<int>(rng.index(static_cast<std::size_t>(n_qubits)));
        }
        gates.push_back(Gate::cx(control, target));
        break;
      }
    }
  }
  return gates;
}

TEST(QsimTest, InitZeroIsBasisStateZero) {
  const StateVector s = init_zero(3);
  ASSERT_EQ(s.n_qubits, 3);
  ASSERT_EQ(s.dim(), 8u);
  EXPECT_EQ(s.amps[0], cdouble(1.0, 0.0));
  for (std::size_t i = 1; i < s.dim(); ++i) {
    EXPECT_EQ(s.amps[i], cdouble(0.0, 0.0));
  }
}

TEST(QsimTest, InitZeroRejectsBadWidth) {
  EXPECT_THROW(init_zero(0), std::invalid_argument);
  EXPECT_THROW(init_zero(kMaxQubits + 1), std::invalid_argument);
  EXPECT_EQ(init_zero(kMaxQubits).dim(), std::size_t{1} << kMaxQubits);
}

TEST(QsimTest, HadamardMakesEqualSuperposition) {
  StateVector s = init_zero(1);
  apply_gate(s, Gate::h(0));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(s.amps[0].real(), inv_sqrt2, kTol);
  EXPECT_NEAR(s.amps[1].real(), inv_sqrt2, kTol);
  EXPECT_NEAR(prob_one(s, 0), 0.5, kTol);
}

// RY(a)|0> = (cos(a/2), sin(a/2)): fixes the sign convention every other
// module (encoding, noise, ansatz parameters) depends on.
TEST(QsimTest, RyConventionOnZeroState) {
  StateVector s = init_zero(1);
  apply_gate(s, Gate::ry(0, std::numbers::pi / 3.0));
  EXPECT_NEAR(s.amps[0].real(), std::sqrt(3.0) / 2.0, kTol);
  EXPECT_NEAR(s.amps[1].real(), 0.5, kTol);

  StateVector flip = init_zero(1);
  apply_gate(flip, Gate::ry(0, std::numbers::pi));
  EXPECT_NEAR(std::abs(flip.amps[0]), 0.0, kTol);
  EXPECT_NEAR(flip.amps[1].real(), 1.0, kTol);
}

TEST(QsimTest, CxTruthTable) {
  // CX(control=0 -> target=1) on 2 qubits permutes basis indices 1 <-> 3.
  const std::size_t expected[] = {0, 3, 2, 1};
  for (std::size_t in = 0; in < 4; ++in) {
    StateVector s = init_zero(2);
    s.amps[0] = 0.0;
    s.amps[in] = 1.0;
    apply_gate(s, Gate::cx(0, 1));
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_NEAR(std::abs(s.amps[i]), i == expected[in] ? 1.0 : 0.0, kTol)
          << "input " << in << " index " << i;
    }
  }
}

TEST(QsimTest, RandomCircuitsMatchDenseOracle) {
  Rng rng(20260823);
  for (int n = 1; n <= 5; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      const std::vector<Gate> gates = random_circuit(n, 60, rng);
      StateVector s = init_zero(n);
      apply_circuit(s, gates);
      const std::vector<cdouble> ref = oracle::run_circuit(n, gates);
      ASSERT_EQ(s.dim(), ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) {
        EXPECT_NEAR(std::abs(s.amps[i] - ref[i]), 0.0, kTol)
            << "n=" << n << " rep=" << rep << " index=" << i;
      }
    }
  }
}

TEST(QsimTest, GatesPreserveNorm) {
  Rng rng(7);
  const std::vector<Gate> gates = random_circuit(8, 200, rng);
  StateVector s = init_zero(8);
  apply_circuit(s, gates);
  EXPECT_NEAR(norm_squared(s), 1.0, kTol);
}

TEST(QsimTest, GatesActLinearly) {
  Rng rng(11);
  const std::vector<Gate> gates = random_circuit(3, 40, rng);
  const cdouble a(0.6, 0.1);
  const cdouble b(-0.3, 0.7);

  StateVector e0 = init_zero(3);
  StateVector e5 = init_zero(3);
  e5.amps[0] = 0.0;
  e5.amps[5] = 1.0;
  StateVector mix = init_zero(3);
  mix.amps[0] = a;
  mix.amps[5] = b;

  apply_circuit(e0, gates);
  apply_circuit(e5, gates);
  apply_circuit(mix, gates);
  for (std::size_t i = 0; i < mix.dim(); ++i) {
    const cdouble combined = a * e0.amps[i] + b * e5.amps[i];
    EXPECT_NEAR(std::abs(mix.amps[i] - combined), 0.0, kTol);
  }
}

TEST(QsimTest, ProbOneMatchesAmplitudeSum) {
  Rng rng(13);
  const std::vector<Gate> gates = random_circuit(4, 80, rng);
  StateVector s = init_zero(4);
  apply_circuit(s, gates);
  std::vector<cdouble> plain(s.amps.begin(), s.amps.end());
  for (int q = 0; q < 4; ++q) {
    EXPECT_NEAR(prob_one(s, q), oracle::prob_one(plain, q), kTol);
  }
}

TEST(QsimTest, SampleQubitIsDeterministicPerSeed) {
  StateVector s = init_zero(2);
  apply_gate(s, Gate::h(0));
  Rng rng_a(42);
  Rng rng_b(42);
  const ShotCounts a = sample_qubit(s, 0, 1024, rng_a);
  const ShotCounts b = sample_qubit(s, 0, 1024, rng_b);
  EXPECT_EQ(a.ones, b.ones);
  EXPECT_EQ(a.zeros, b.zeros);
  EXPECT_EQ(a.zeros + a.ones, a.shots);
  EXPECT_EQ(a.shots, 1024);
  EXPECT_EQ(a.qubit, 0);
}

TEST(QsimTest, SampleQubitTracksProbability) {
  StateVector s = init_zero(1);
  apply_gate(s, Gate::ry(0, 2.0 * std::asin(std::sqrt(0.3))));  // P(|1>) = 0.3
  ASSERT_NEAR(prob_one(s, 0), 0.3, kTol);
  Rng rng(99);
  const ShotCounts c = sample_qubit(s, 0, 20000, rng);
  const double p_hat = static_cast<double>(c.ones) / static_cast<double>(c.shots);
  EXPECT_NEAR(p_hat, 0.3, 0.02);  // ~6 sigma at 20000 shots
}

TEST(QsimTest, RejectsInvalidGateIndices) {
  StateVector s = init_zero(2);
  EXPECT_THROW(apply_gate(s, Gate::h(2)), std::out_of_range);
  EXPECT_THROW(apply_gate(s, Gate::h(-1)), std::out_of_range);
  EXPECT_THROW(apply_gate(s, Gate::cx(0, 0)), std::out_of_range);
  EXPECT_THROW(apply_gate(s, Gate::cx(2, 0)), std::out_of_range);
  Rng rng(1);
  EXPECT_THROW(sample_qubit(s, 0, 0, rng), std::invalid_argument);
  EXPECT_THROW(prob_one(s, 5), std::out_of_range);
}

}  // namespace
}  // namespace qgan
