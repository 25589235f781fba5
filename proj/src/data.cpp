#include "qgan/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qgan/rng.hpp"

namespace qgan {

std::vector<ShowerImage> synth_dataset(std::size_t n, std::uint64_t seed,
                                       const SynthProfile& profile) {
  if (n < 1) {
    throw std::invalid_argument("synth_dataset: n must be >= 1");
  }
  const EncodingSpec enc;
  Rng rng(seed);
  std::vector<ShowerImage> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ShowerImage img;
    const double ep = rng.uniform(profile.primary_min_gev, profile.primary_max_gev);
    img.primary_energy = ep;
    const double scale = ep / 250.0;
    for (int p = 0; p < kPixels; ++p) {
      const auto ip = static_cast<std::size_t>(p);
      const double raw = scale * profile.mu[ip] + rng.normal(0.0, profile.sigma[ip]);
      img.pixels[ip] = std::clamp(raw, 0.0, enc.e_max);
    }
    images.push_back(img);
  }
  return images;
}

namespace {

// Splits a CSV line, trimming surrounding whitespace per field.
std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos
                         ? std::string{}
                         : field.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) {
    return false;
  }
  std::size_t pos = 0;
  try {
    out = std::stod(s, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == s.size();
}

}  // namespace

std::vector<ShowerImage> load_csv(const std::string& path, ClampCounter* clamps) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_csv: cannot open " + path);
  }
  const EncodingSpec enc;
  const SynthProfile bounds;  // primary-energy range
  std::vector<ShowerImage> images;
  std::string line;
  std::size_t line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;  // blank line
    }
    const std::vector<std::string> fields = split_fields(line);
    if (first_data_line) {
      first_data_line = false;
      double probe = 0.0;
      if (!parse_double(fields[0], probe)) {
        continue;  // header row
      }
    }
    constexpr std::size_t kCols = static_cast<std::size_t>(kPixels);
    if (fields.size() != kCols && fields.size() != kCols + 1) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected 8 or 9 columns, got " +
                               std::to_string(fields.size()));
    }
    ShowerImage img;
    for (int p = 0; p < kPixels; ++p) {
      const auto ip = static_cast<std::size_t>(p);
      double v = 0.0;
      if (!parse_double(fields[ip], v)) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": malformed value '" + fields[ip] + "'");
      }
      if (v < 0.0 || v > enc.e_max) {
        v = std::clamp(v, 0.0, enc.e_max);
        if (clamps != nullptr) {
          ++clamps->clamped;
        }
      }
      img.pixels[ip] = v;
    }
    if (fields.size() == kCols + 1) {
      double ep = 0.0;
      if (!parse_double(fields[kCols], ep)) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": malformed value '" + fields[kCols] + "'");
      }
      if (ep < bounds.primary_min_gev || ep > bounds.primary_max_gev) {
        ep = std::clamp(ep, bounds.primary_min_gev, bounds.primary_max_gev);
        if (clamps != nullptr) {
          ++clamps->clamped;
        }
      }
      img.primary_energy = ep;
    }
    images.push_back(img);
  }
  return images;
}

void write_csv(const std::string& path, std::span<const ShowerImage> images) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_csv: cannot open " + path + " for writing");
  }
  const bool with_primary = !images.empty() && images.front().primary_energy.has_value();
  out << "p0,p1,p2,p3,p4,p5,p6,p7";
  if (with_primary) {
    out << ",primary_gev";
  }
  out << "\n";
  char buf[32];
  for (const ShowerImage& img : images) {
    for (int p = 0; p < kPixels; ++p) {
      std::snprintf(buf, sizeof(buf), "%.17g", img.pixels[static_cast<std::size_t>(p)]);
      if (p > 0) {
        out << ",";
      }
      out << buf;
    }
    if (img.primary_energy.has_value()) {
      std::snprintf(buf, sizeof(buf), "%.17g", *img.primary_energy);
      out << "," << buf;
    }
    out << "\n";
  }
  if (!out) {
    throw std::runtime_error("write_csv: write failed for " + path);
  }
}

DatasetStats compute_stats(std::span<const ShowerImage> images) {
  if (images.size() < 2) {
    throw std::invalid_argument("compute_stats: need at least 2 images");
  }
  DatasetStats stats;
  stats.n = images.size();
  const double n = static_cast<double>(images.size());
  for (int p = 0; p < kPixels; ++p) {
    const auto ip = static_cast<std::size_t>(p);
    double sum = 0.0;
    for (const ShowerImage& img : images) {
      sum += img.pixels[ip];
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (const ShowerImage& img : images) {
      const double d = img.pixels[ip] - mean;
      ss += d * d;
    }
    stats.means[ip] = mean;
    stats.stds[ip] = std::sqrt(ss / (n - 1.0));
  }
  return stats;
}

SynthProfile load_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_profile_csv: cannot open " + path);
  }
  std::vector<std::array<double, kPixels>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != static_cast<std::size_t>(kPixels)) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected 8 columns, got " +
                               std::to_string(fields.size()));
    }
    std::array<double, kPixels> row{};
    for (std::size_t i = 0; i < static_cast<std::size_t>(kPixels); ++i) {
      if (!parse_double(fields[i], row[i])) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": malformed value '" + fields[i] + "'");
      }
    }
    rows.push_back(row);
  }
  if (rows.size() != 2) {
    throw std::runtime_error("load_profile_csv: expected 2 rows (mu, sigma), got " +
                             std::to_string(rows.size()));
  }
  SynthProfile profile;
  profile.mu = rows[0];
  profile.sigma = rows[1];
  for (double s : profile.sigma) {
    if (s < 0.0) {
      throw std::runtime_error("load_profile_csv: negative sigma");
    }
  }
  return profile;
}

}  // namespace qgan
