#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "qgan/data.hpp"

namespace qgan {

// Pixel-wise squared error between two sample averages, in MeV^2:
// mse is the mean and std the sample spread of the 8 per-pixel values.
struct MseResult {
  double mse = 0.0;
  double std = 0.0;
};

using MseCurve = std::vector<MseResult>;

// Aggregation of repeated training trials with identical hyperparameters.
struct TrialStats {
  std::vector<MseCurve> curves;
  std::vector<double> mean_curve;  // per-epoch mean of mse across trials
  std::vector<double> std_band;    // per-epoch sample std across trials
  std::size_t best_trial = 0;      // lowest final-epoch mse, ties -> lowest index
};

std::array<double, kPixels> average_image(std::span<const ShowerImage> images);

/// MSE between the average images of the two samples: per-pixel squared
/// difference of the means, then mean/std over pixels.
MseResult mse_between(std::span<const ShowerImage> gen_sample,
                      std::span<const ShowerImage> ref_sample);

TrialStats aggregate_trials(std::vector<MseCurve> curves);

/// CSV with one row per epoch: epoch, mean_mse, std_mse, best_mse.
void write_aggregate_csv(const std::string& path, const TrialStats& stats);

/// Line-delimited records (one JSON object per line) summarizing the trial
/// statistics for external plotting.
void write_trial_stats_jsonl(const std::string& path, const TrialStats& stats);

}  // namespace qgan
