#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgan/circuits.hpp"
#include "qgan/codec.hpp"

namespace qgan {

// An 8-pixel calorimeter shower slice. Pixels in MeV, clamped to [0, e_max];
// primary particle energy in GeV when known.
struct ShowerImage {
  std::array<double, kPixels> pixels{};
  std::optional<double> primary_energy;
};

struct DatasetStats {
  std::array<double, kPixels> means{};
  std::array<double, kPixels> stds{};
  std::size_t n = 0;
};

// Per-pixel profile for the synthetic dataset: a unimodal longitudinal
// shower shape peaking mid-detector. sigma = 0.15 * mu + 0.005.
struct SynthProfile {
  std::array<double, kPixels> mu = {0.02, 0.10, 0.30, 0.48,
                                    0.42, 0.22, 0.08, 0.02};
  std::array<double, kPixels> sigma = {0.008, 0.020, 0.050, 0.077,
                                       0.068, 0.038, 0.017, 0.008};
  double primary_min_gev = 225.0;
  double primary_max_gev = 275.0;
};

/// n synthetic images, deterministic per seed. Per image: primary energy
/// E_p ~ U[primary_min, primary_max] GeV, scale s = E_p/250, then
/// pixel_i = clamp(s*mu_i + N(0, sigma_i), 0, e_max).
std::vector<ShowerImage> synth_dataset(std::size_t n, std::uint64_t seed,
                                       const SynthProfile& profile = {});

/// CSV reader: 8 energy columns plus an optional 9th primary-energy column,
/// optional header (detected by a non-numeric first row). Malformed rows throw
/// with the line number; out-of-range values clamp and count.
std::vector<ShowerImage> load_csv(const std::string& path,
                                  ClampCounter* clamps = nullptr);

/// Writes images in the load_csv format with a header row.
void write_csv(const std::string& path, std::span<const ShowerImage> images);

/// Per-pixel sample mean and standard deviation (n-1 denominator); needs at
/// least two images.
DatasetStats compute_stats(std::span<const ShowerImage> images);

/// Profile file: two CSV rows of 8 values, mu then sigma.
SynthProfile load_profile_csv(const std::string& path);

}  // namespace qgan
