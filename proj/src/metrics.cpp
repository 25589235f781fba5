#include "qgan/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace qgan {

namespace {

double sample_std(std::span<const double> values, double mean) {
  if (values.size() < 2) {
    return 0.0;
  }
  double ss = 0.0;
  for (double v : values) {
    const double d = v - mean;
    ss += d * d;
  }
  return std::sqrt(ss / (static_cast<double>(values.size()) - 1.0));
}

}  // namespace

std::array<double, kPixels> average_image(std::span<const ShowerImage> images) {
  if (images.empty()) {
    throw std::invalid_argument("average_image: empty image list");
  }
  std::array<double, kPixels> mean{};
  for (const ShowerImage& img : images) {
    for (int p = 0; p < kPixels; ++p) {
      mean[static_cast<std::size_t>(p)] += img.pixels[static_cast<std::size_t>(p)];
    }
  }
  for (double& m : mean) {
    m /= static_cast<double>(images.size());
  }
  return mean;
}

MseResult mse_between(std::span<const ShowerImage> gen_sample,
                      std::span<const ShowerImage> ref_sample) {
  const std::array<double, kPixels> mg = average_image(gen_sample);
  const std::array<double, kPixels> mr = average_image(ref_sample);
  std::array<double, kPixels> sq{};
  double total = 0.0;
  for (std::size_t p = 0; p < static_cast<std::size_t>(kPixels); ++p) {
    const double d = mg[p] - mr[p];
    sq[p] = d * d;
    total += sq[p];
  }
  MseResult result;
  result.mse = total / kPixels;
  result.std = sample_std(sq, result.mse);
  return result;
}

TrialStats aggregate_trials(std::vector<MseCurve> curves) {
  if (curves.empty()) {
    throw std::invalid_argument("aggregate_trials: no curves");
  }
  const std::size_t len = curves.front().size();
  for (const MseCurve& c : curves) {
    if (c.size() != len) {
      throw std::invalid_argument("aggregate_trials: ragged curves");
    }
  }
  if (len == 0) {
    throw std::invalid_argument("aggregate_trials: empty curves");
  }
  TrialStats stats;
  stats.mean_curve.resize(len);
  stats.std_band.resize(len);
  std::vector<double> column(curves.size());
  for (std::size_t e = 0; e < len; ++e) {
    double sum = 0.0;
    for (std::size_t t = 0; t < curves.size(); ++t) {
      column[t] = curves[t][e].mse;
      sum += column[t];
    }
    stats.mean_curve[e] = sum / static_cast<double>(curves.size());
    stats.std_band[e] = sample_std(column, stats.mean_curve[e]);
  }
  stats.best_trial = 0;
  for (std::size_t t = 1; t < curves.size(); ++t) {
    if (curves[t].back().mse < curves[stats.best_trial].back().mse) {
      stats.best_trial = t;
    }
  }
  stats.curves = std::move(curves);
  return stats;
}

void write_aggregate_csv(const std::string& path, const TrialStats& stats) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_aggregate_csv: cannot open " + path);
  }
  out << "epoch,mean_mse,std_mse,best_mse\n";
  char buf[128];
  const MseCurve& best = stats.curves[stats.best_trial];
  for (std::size_t e = 0; e < stats.mean_curve.size(); ++e) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g\n", e,
                  stats.mean_curve[e], stats.std_band[e], best[e].mse);
    out << buf;
  }
  if (!out) {
    throw std::runtime_error("write_aggregate_csv: write failed for " + path);
  }
}

void write_trial_stats_jsonl(const std::string& path, const TrialStats& stats) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_trial_stats_jsonl: cannot open " + path);
  }
  const std::size_t last = stats.mean_curve.size() - 1;
  nlohmann::json summary = {
      {"record", "summary"},
      {"epochs", stats.mean_curve.size()},
      {"trials", stats.curves.size()},
      {"final_mean_mse", stats.mean_curve[last]},
      {"final_std_mse", stats.std_band[last]},
      {"best_trial", stats.best_trial},
      {"best_final_mse", stats.curves[stats.best_trial].back().mse},
  };
  out << summary.dump() << "\n";
  for (std::size_t t = 0; t < stats.curves.size(); ++t) {
    nlohmann::json rec = {
        {"record", "trial_final"},
        {"trial", t},
        {"final_mse", stats.curves[t].back().mse},
        {"final_pixel_std", stats.curves[t].back().std},
    };
    out << rec.dump() << "\n";
  }
  if (!out) {
    throw std::runtime_error("write_trial_stats_jsonl: write failed for " + path);
  }
}

}  // namespace qgan
