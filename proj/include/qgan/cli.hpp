#pragma once

#include <cstdint>
#include <string>

#include "qgan/data.hpp"
#include "qgan/gan.hpp"
#include "qgan/hybrid.hpp"

namespace qgan {

// Command implementations behind the qgan tool. Each returns a process exit
// code (0 on success) and reports failures on stderr with the failing stage.

struct GenDataOptions {
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  std::string out;           // CSV path
  std::string profile_file;  // optional mu/sigma override
};

struct TrainOptions {
  std::string model = "full";  // full | hybrid-s | hybrid-m | hybrid-l
  std::string train_csv;
  int epochs = 1000;
  int trials = 1;
  long shots = 1024;
  bool exact = false;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  int jobs = 0;  // 0 = hardware concurrency
};

struct InferOptions {
  std::string params_file;  // JSON written by cmd_train
  std::size_t n = 1000;
  long shots = 1024;
  bool exact = false;
  std::uint64_t seed = 1;
  std::string out;  // CSV path
};

struct EvalOptions {
  std::string generated_csv;
  std::string reference_csv;
  std::string out_dir = "out";
};

/// Writes n synthetic images as CSV. Byte-identical for identical flags.
int cmd_gen_data(const GenDataOptions& opt);

/// Runs `trials` independent trainings (seeds seed+0 .. seed+trials-1, up to
/// `jobs` in parallel), then writes per-trial curves and parameters, the
/// aggregated statistics, and a run manifest listing every artifact.
int cmd_train(const TrainOptions& opt);

/// Generates images from a trained parameter file (noise scaling comes from
/// the dataset statistics embedded in it).
int cmd_infer(const InferOptions& opt);

/// Compares two image CSVs: MSE result, both average images, and the
/// per-pixel squared-error table.
int cmd_eval(const EvalOptions& opt);

}  // namespace qgan
