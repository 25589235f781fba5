#include "qgan/codec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qgan {

double encode_energy(double energy, const EncodingSpec& spec, ClampCounter* clamps) {
  if (energy < spec.e_min) {
    throw std::invalid_argument("encode_energy: negative energy " +
                                std::to_string(energy));
  }
  if (energy > spec.e_max) {
    energy = spec.e_max;
    if (clamps != nullptr) {
      ++clamps->clamped;
    }
  }
  return (2.0 * spec.theta_max / spec.e_max) * energy - spec.theta_max;
}

double encoding_angle_to_gate(double theta) { return -theta; }

double decode_zero_fraction(double zero_fraction, const EncodingSpec& spec) {
  const double z = std::clamp(2.0 * zero_fraction - 1.0, -1.0, 1.0);
  const double theta = std::asin(z);
  return (theta + spec.theta_max) / (2.0 * spec.theta_max) * spec.e_max;
}

double decode_counts(const ShotCounts& counts, const EncodingSpec& spec) {
  if (counts.shots < 1) {
    throw std::invalid_argument("decode_counts: shots must be >= 1");
  }
  return decode_zero_fraction(
      static_cast<double>(counts.zeros) / static_cast<double>(counts.shots), spec);
}

}  // namespace qgan
