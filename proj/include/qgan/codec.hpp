#pragma once

#include <cstddef>
#include <numbers>

#include "qgan/qsim.hpp"

namespace qgan {

// Energy <-> angle mapping. theta = 0 is the |+> state on the equator;
// E = 0 maps to -theta_max (the |1> pole) and E = e_max to +theta_max (|0>).
struct EncodingSpec {
  double e_min = 0.0;
  double e_max = 0.6;  // MeV
  double theta_max = std::numbers::pi / 2.0;
};

// Tallies out-of-range inputs that were clamped instead of rejected.
struct ClampCounter {
  std::size_t clamped = 0;
};

/// Pixel energy -> encoding angle: theta = (2*theta_max/e_max)*E - theta_max.
/// Negative energies are rejected; E > e_max clamps to e_max (counted when a
/// counter is supplied, since shot noise in generated images can overshoot).
double encode_energy(double energy, const EncodingSpec& spec = {},
                     ClampCounter* clamps = nullptr);

/// Encoding angle -> RY gate angle under the simulator's RY convention.
/// Returns -theta, so that RY(-theta) after H gives P(|0>) = (1 + sin theta)/2
/// and theta = +theta_max lands exactly on |0>.
double encoding_angle_to_gate(double theta);

/// Fraction of |0> outcomes -> energy: z = 2*f0 - 1 (clamped to [-1,1]),
/// theta = arcsin(z), E = (theta + theta_max)/(2*theta_max) * e_max.
double decode_zero_fraction(double zero_fraction, const EncodingSpec& spec = {});

double decode_counts(const ShotCounts& counts, const EncodingSpec& spec = {});

}  // namespace qgan
