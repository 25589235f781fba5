#include "qgan/data.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

namespace qgan {
namespace {

namespace fs = std::filesystem;

class DataTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qgan_data_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write_file(const std::string& name, const std::string& content) const {
    const std::string p = path(name);
    std::ofstream out(p);
    out << content;
    return p;
  }

  fs::path dir_;
};

TEST_F(DataTest, SynthDatasetIsDeterministicPerSeed) {
  const std::vector<ShowerImage> a = synth_dataset(20, 5);
  const std::vector<ShowerImage> b = synth_dataset(20, 5);
  const std::vector<ShowerImage> c = synth_dataset(20, 6);
  ASSERT_EQ(a.size(), 20u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].pixels, b[i].pixels);
    EXPECT_EQ(a[i].primary_energy, b[i].primary_energy);
  }
  bool any_differ = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    any_differ = any_differ || a[i].pixels != c[i].pixels;
  }
  EXPECT_TRUE(any_differ);
}

TEST_F(DataTest, SynthDatasetRespectsRanges) {
  const SynthProfile profile;
  const EncodingSpec enc;
  for (const ShowerImage& img : synth_dataset(500, 17)) {
    ASSERT_TRUE(img.primary_energy.has_value());
    EXPECT_GE(*img.primary_energy, profile.primary_min_gev);
    EXPECT_LE(*img.primary_energy, profile.primary_max_gev);
    for (const double p : img.pixels) {
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, enc.e_max);
    }
  }
}

TEST_F(DataTest, SynthDatasetTracksProfileShape) {
  const SynthProfile profile;
  const DatasetStats stats = compute_stats(synth_dataset(4000, 29));
  for (std::size_t p = 0; p < static_cast<std::size_t>(kPixels); ++p) {
    // Mean should land near mu (primary-energy scaling averages to ~1).
    EXPECT_NEAR(stats.means[p], profile.mu[p], 0.05 * profile.mu[p] + 0.004)
        << "pixel " << p;
    EXPECT_GT(stats.stds[p], 0.0);
  }
  // The profile peaks at pixel 3 and falls off towards both ends.
  EXPECT_GT(stats.means[3], stats.means[0]);
  EXPECT_GT(stats.means[3], stats.means[7]);
}

TEST_F(DataTest, DistinctSeedsShareNoImages) {
  const std::vector<ShowerImage> train = synth_dataset(100, 1);
  const std::vector<ShowerImage> test = synth_dataset(100, 2);
  for (const ShowerImage& a : train) {
    for (const ShowerImage& b : test) {
      EXPECT_NE(a.pixels, b.pixels);
    }
  }
}

TEST_F(DataTest, CsvRoundTripIsExact) {
  const std::vector<ShowerImage> images = synth_dataset(25, 99);
  const std::string p = path("round.csv");
  write_csv(p, images);
  const std::vector<ShowerImage> loaded = load_csv(p);
  ASSERT_EQ(loaded.size(), images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    EXPECT_EQ(loaded[i].pixels, images[i].pixels) << "image " << i;
    ASSERT_TRUE(loaded[i].primary_energy.has_value());
    EXPECT_EQ(*loaded[i].primary_energy, *images[i].primary_energy);
  }
}

TEST_F(DataTest, LoadCsvAcceptsHeaderlessEightColumnRows) {
  const std::string p = write_file(
      "plain.csv", "0.1,0.2,0.3,0.4,0.5,0.1,0.2,0.3\n0,0,0,0,0,0,0,0\n");
  const std::vector<ShowerImage> images = load_csv(p);
  ASSERT_EQ(images.size(), 2u);
  EXPECT_EQ(images[0].pixels[2], 0.3);
  EXPECT_FALSE(images[0].primary_energy.has_value());
}

TEST_F(DataTest, LoadCsvSkipsHeaderAndBlankLines) {
  const std::string p = write_file(
      "header.csv",
      "p0,p1,p2,p3,p4,p5,p6,p7,primary_gev\n\n0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,250\n");
  const std::vector<ShowerImage> images = load_csv(p);
  ASSERT_EQ(images.size(), 1u);
  ASSERT_TRUE(images[0].primary_energy.has_value());
  EXPECT_EQ(*images[0].primary_energy, 250.0);
}

TEST_F(DataTest, LoadCsvReportsLineNumberForWrongColumnCount) {
  const std::string p = write_file(
      "short.csv", "0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1\n0.1,0.2,0.3,0.4,0.5,0.6,0.7\n");
  try {
    load_csv(p);
    FAIL() << "expected a parse error";
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find(":2:"), std::string::npos) << msg;
    EXPECT_NE(msg.find("7"), std::string::npos) << msg;
  }
}

TEST_F(DataTest, LoadCsvReportsMalformedField) {
  const std::string p =
      write_file("bad.csv", "0.1,0.1,oops,0.1,0.1,0.1,0.1,0.1\n");
  try {
    load_csv(p);
    FAIL() << "expected a parse error";
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find(":1:"), std::string::npos) << msg;
    EXPECT_NE(msg.find("oops"), std::string::npos) << msg;
  }
}

TEST_F(DataTest, LoadCsvClampsOutOfRangeValues) {
  const std::string p = write_file(
      "clamp.csv", "0.7,-0.1,0.3,0.3,0.3,0.3,0.3,0.3,300\n");
  ClampCounter clamps;
  const std::vector<ShowerImage> images = load_csv(p, &clamps);
  ASSERT_EQ(images.size(), 1u);
  EXPECT_EQ(images[0].pixels[0], 0.6);
  EXPECT_EQ(images[0].pixels[1], 0.0);
  EXPECT_EQ(*images[0].primary_energy, 275.0);
  EXPECT_EQ(clamps.clamped, 3u);
}

TEST_F(DataTest, LoadCsvMissingFileThrows) {
  EXPECT_THROW(load_csv(path("absent.csv")), std::runtime_error);
}

TEST_F(DataTest, ComputeStatsMatchesHandValues) {
  std::vector<ShowerImage> images(2);
  images[0].pixels.fill(0.1);
  images[1].pixels.fill(0.1);
  images[1].pixels[0] = 0.7;
  const DatasetStats stats = compute_stats(images);
  EXPECT_EQ(stats.n, 2u);
  EXPECT_NEAR(stats.means[0], 0.4, 1e-15);
  // Two-point sample std: |a-b| / sqrt(2).
  EXPECT_NEAR(stats.stds[0], 0.6 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(stats.means[1], 0.1, 1e-15);
  EXPECT_NEAR(stats.stds[1], 0.0, 1e-15);
}

TEST_F(DataTest, ComputeStatsNeedsTwoImages) {
  std::vector<ShowerImage> one(1);
  EXPECT_THROW(compute_stats(one), std::invalid_argument);
}

TEST_F(DataTest, ProfileFileOverridesShape) {
  const std::string p = write_file(
      "profile.csv",
      "0.01,0.02,0.03,0.04,0.05,0.06,0.07,0.08\n"
      "0.001,0.001,0.001,0.001,0.001,0.001,0.001,0.001\n");
  const SynthProfile profile = load_profile_csv(p);
  EXPECT_EQ(profile.mu[7], 0.08);
  EXPECT_EQ(profile.sigma[0], 0.001);

  EXPECT_THROW(load_profile_csv(write_file("one_row.csv",
                                           "0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1\n")),
               std::runtime_error);
  EXPECT_THROW(
      load_profile_csv(write_file(
          "neg.csv",
          "0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1\n-0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1\n")),
      std::runtime_error);
}

}  // namespace
}  // namespace qgan
