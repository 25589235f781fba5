#include "qgan/metrics.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace qgan {
namespace {

namespace fs = std::filesystem;

ShowerImage constant_image(double value) {
  ShowerImage img;
  img.pixels.fill(value);
  return img;
}

TEST(MetricsTest, AverageImageIsPerPixelMean) {
  std::vector<ShowerImage> images = {constant_image(0.1), constant_image(0.3)};
  images[1].pixels[4] = 0.5;
  const std::array<double, kPixels> avg = average_image(images);
  EXPECT_NEAR(avg[0], 0.2, 1e-15);
  EXPECT_NEAR(avg[4], 0.3, 1e-15);
  EXPECT_THROW(average_image(std::vector<ShowerImage>{}), std::invalid_argument);
}

TEST(MetricsTest, MseIsZeroForIdenticalSamples) {
  const std::vector<ShowerImage> sample = {constant_image(0.2), constant_image(0.4)};
  const MseResult r = mse_between(sample, sample);
  EXPECT_EQ(r.mse, 0.0);
  EXPECT_EQ(r.std, 0.0);
}

// Averages are taken first: two samples whose members differ image-by-image
// but share a mean have zero MSE.
TEST(MetricsTest, MseComparesAveragesNotMembers) {
  const std::vector<ShowerImage> a = {constant_image(0.1), constant_image(0.5)};
  const std::vector<ShowerImage> b = {constant_image(0.2), constant_image(0.4)};
  const MseResult r = mse_between(a, b);
  EXPECT_NEAR(r.mse, 0.0, 1e-15);
}

TEST(MetricsTest, MseSinglePixelDifference) {
  std::vector<ShowerImage> a = {constant_image(0.1)};
  std::vector<ShowerImage> b = {constant_image(0.1)};
  b[0].pixels[3] = 0.3;  // one pixel off by 0.2 -> squared 0.04, mean 0.005
  const MseResult r = mse_between(a, b);
  EXPECT_NEAR(r.mse, 0.005, 1e-15);
  // Squared errors are {0.04, 0 x7}: sample std around 0.005.
  const double expect_std =
      std::sqrt((std::pow(0.04 - 0.005, 2) + 7.0 * std::pow(0.005, 2)) / 7.0);
  EXPECT_NEAR(r.std, expect_std, 1e-12);
}

TEST(MetricsTest, MseIsSymmetricInItsArguments) {
  const std::vector<ShowerImage> a = {constant_image(0.1), constant_image(0.2)};
  std::vector<ShowerImage> b = {constant_image(0.4)};
  b[0].pixels[6] = 0.05;
  const MseResult ab = mse_between(a, b);
  const MseResult ba = mse_between(b, a);
  EXPECT_EQ(ab.mse, ba.mse);
  EXPECT_EQ(ab.std, ba.std);
}

TEST(MetricsTest, MseScalesQuadraticallyWithPixelScale) {
  std::vector<ShowerImage> a = {constant_image(0.1)};
  std::vector<ShowerImage> b = {constant_image(0.25)};
  const double base = mse_between(a, b).mse;
  const double k = 2.0;
  for (ShowerImage& img : a) {
    for (double& p : img.pixels) {
      p *= k;
    }
  }
  for (ShowerImage& img : b) {
    for (double& p : img.pixels) {
      p *= k;
    }
  }
  EXPECT_NEAR(mse_between(a, b).mse, k * k * base, 1e-15);
}

TEST(MetricsTest, AggregateComputesMeanBandAndBest) {
  MseCurve c1 = {{1.0, 0.0}, {0.8, 0.0}, {0.5, 0.0}};
  MseCurve c2 = {{3.0, 0.0}, {0.4, 0.0}, {0.7, 0.0}};
  const TrialStats stats = aggregate_trials({c1, c2});
  ASSERT_EQ(stats.mean_curve.size(), 3u);
  EXPECT_NEAR(stats.mean_curve[0], 2.0, 1e-15);
  EXPECT_NEAR(stats.std_band[0], std::sqrt(2.0), 1e-12);  // {1,3}: std = sqrt(2)
  EXPECT_NEAR(stats.mean_curve[2], 0.6, 1e-15);
  EXPECT_EQ(stats.best_trial, 0u);  // 0.5 < 0.7 at the final epoch
}

TEST(MetricsTest, AggregateOfIdenticalCurvesReproducesThem) {
  MseCurve flat = {{0.5, 0.01}, {0.25, 0.02}};
  const TrialStats stats = aggregate_trials({flat, flat, flat});
  EXPECT_EQ(stats.best_trial, 0u);  // ties resolve to the lowest index
  ASSERT_EQ(stats.mean_curve.size(), 2u);
  EXPECT_EQ(stats.mean_curve[0], 0.5);
  EXPECT_EQ(stats.mean_curve[1], 0.25);
  EXPECT_EQ(stats.std_band[0], 0.0);
  EXPECT_EQ(stats.std_band[1], 0.0);
}

TEST(MetricsTest, AggregateSingleTrialHasZeroBand) {
  MseCurve c = {{0.9, 0.0}, {0.2, 0.0}};
  const TrialStats stats = aggregate_trials({c});
  EXPECT_EQ(stats.std_band[0], 0.0);
  EXPECT_EQ(stats.best_trial, 0u);
}

TEST(MetricsTest, AggregateRejectsRaggedOrEmptyInput) {
  EXPECT_THROW(aggregate_trials({}), std::invalid_argument);
  MseCurve c1 = {{1.0, 0.0}, {0.5, 0.0}};
  MseCurve c2 = {{1.0, 0.0}};
  EXPECT_THROW(aggregate_trials({c1, c2}), std::invalid_argument);
  EXPECT_THROW(aggregate_trials({MseCurve{}}), std::invalid_argument);
}

TEST(MetricsTest, AggregateFilesAreWellFormed) {
  const fs::path dir =
      fs::temp_directory_path() / ("qgan_metrics_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  MseCurve c1 = {{1.0, 0.1}, {0.5, 0.05}};
  MseCurve c2 = {{2.0, 0.2}, {0.3, 0.03}};
  const TrialStats stats = aggregate_trials({c1, c2});

  const std::string csv_path = (dir / "agg.csv").string();
  write_aggregate_csv(csv_path, stats);
  std::ifstream csv(csv_path);
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "epoch,mean_mse,std_mse,best_mse");
  std::getline(csv, line);
  EXPECT_EQ(line.substr(0, 2), "0,");
  std::getline(csv, line);
  // Final epoch: mean 0.4, best (trial 1) 0.3.
  std::istringstream row(line);
  std::string field;
  std::getline(row, field, ',');
  EXPECT_EQ(field, "1");
  std::getline(row, field, ',');
  EXPECT_NEAR(std::stod(field), 0.4, 1e-15);
  std::getline(row, field, ',');  // std column
  std::getline(row, field, ',');
  EXPECT_NEAR(std::stod(field), 0.3, 1e-15);

  const std::string jsonl_path = (dir / "agg.jsonl").string();
  write_trial_stats_jsonl(jsonl_path, stats);
  std::ifstream jsonl(jsonl_path);
  std::size_t lines = 0;
  while (std::getline(jsonl, line)) {
    ++lines;
    EXPECT_EQ(line.front(), '{');
    EXPECT_EQ(line.back(), '}');
  }
  EXPECT_EQ(lines, 3u);  // summary + one record per trial
  fs::remove_all(dir);
}

}  // namespace
}  // namespace qgan
