#include "qgan/cli.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <json.hpp>

#include "qgan/metrics.hpp"
#include "qgan/version.hpp"

namespace qgan {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

std::string curve_csv(const MseCurve& curve, const std::vector<LossRecord>& losses) {
  std::string out = "epoch,mse,mse_std,gen_loss,disc_true_loss,disc_fake_loss,disc_loss\n";
  char buf[256];
  for (std::size_t e = 0; e < curve.size(); ++e) {
    const LossRecord& l = losses[e];
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", e,
                  curve[e].mse, curve[e].std, l.gen_loss, l.disc_true_loss,
                  l.disc_fake_loss, l.disc_loss);
    out += buf;
  }
  return out;
}

json stats_json(const DatasetStats& stats) {
  return json{{"means", stats.means}, {"stds", stats.stds}, {"n", stats.n}};
}

DatasetStats stats_from_json(const json& j) {
  DatasetStats stats;
  const auto means = j.at("means").get<std::vector<double>>();
  const auto stds = j.at("stds").get<std::vector<double>>();
  if (means.size() != kPixels || stds.size() != kPixels) {
    throw std::runtime_error("parameter file: stats must have 8 entries per pixel");
  }
  std::copy(means.begin(), means.end(), stats.means.begin());
  std::copy(stds.begin(), stds.end(), stats.stds.begin());
  stats.n = j.value("n", std::size_t{0});
  return stats;
}

// Outcome of one training trial, already serialized where file content is
// trial-specific.
struct TrialOutcome {
  bool ok = false;
  std::string error;
  MseCurve curve;
  std::vector<LossRecord> losses;
  json params;
};

void run_trials(int jobs, int trials, const std::function<void(int)>& body) {
  if (jobs <= 0) {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) {
      jobs = 1;
    }
  }
  jobs = std::min(jobs, trials);
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(jobs));
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (int i = next.fetch_add(1); i < trials; i = next.fetch_add(1)) {
        body(i);
      }
    });
  }
  for (std::thread& t : workers) {
    t.join();
  }
}

std::string trial_file(const char* stem, int trial, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%03d%s", stem, trial, ext);
  return buf;
}

}  // namespace

int cmd_gen_data(const GenDataOptions& opt) {
  try {
    if (opt.out.empty()) {
      throw std::invalid_argument("gen-data: --out is required");
    }
    SynthProfile profile;
    if (!opt.profile_file.empty()) {
      profile = load_profile_csv(opt.profile_file);
    }
    const std::vector<ShowerImage> images = synth_dataset(opt.n, opt.seed, profile);
    write_csv(opt.out, images);
    std::cout << "wrote " << images.size() << " images to " << opt.out << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "qgan gen-data: " << e.what() << "\n";
    return 1;
  }
}

int cmd_train(const TrainOptions& opt) {
  try {
    if (opt.train_csv.empty()) {
      throw std::invalid_argument("train: --train-csv is required");
    }
    const bool is_full = opt.model == "full";
    HybridSize hybrid_size = HybridSize::M;
    if (!is_full) {
      if (opt.model == "hybrid-s") {
        hybrid_size = HybridSize::S;
      } else if (opt.model == "hybrid-m") {
        hybrid_size = HybridSize::M;
      } else if (opt.model == "hybrid-l") {
        hybrid_size = HybridSize::L;
      } else {
        throw std::invalid_argument("train: unknown model '" + opt.model +
                                    "' (expected full|hybrid-s|hybrid-m|hybrid-l)");
      }
    }

    ClampCounter clamps;
    const std::vector<ShowerImage> train_set = load_csv(opt.train_csv, &clamps);
    if (clamps.clamped > 0) {
      std::cerr << "warning: clamped " << clamps.clamped
                << " out-of-range values in " << opt.train_csv << "\n";
    }
    const DatasetStats stats = compute_stats(train_set);

    fs::create_directories(opt.out_dir);
    const fs::path out_dir(opt.out_dir);

    json config;
    if (is_full) {
      TrainConfig cfg;
      config = {{"model", opt.model},       {"gen_lr", cfg.gen_lr},
                {"disc_lr", cfg.disc_lr},   {"gen_decay", cfg.gen_decay},
                {"disc_decay", cfg.disc_decay},
                {"epochs", opt.epochs},     {"steps_per_epoch", cfg.steps_per_epoch},
                {"batch_size", cfg.batch_size},
                {"disc_steps_per_gen_step", cfg.disc_steps_per_gen_step},
                {"shots", opt.shots},       {"label_true", cfg.label_true},
                {"label_fake", cfg.label_fake},
                {"exact", opt.exact},       {"seed", opt.seed},
                {"trials", opt.trials}};
    } else {
      HybridConfig cfg;
      config = {{"model", opt.model},       {"gen_lr", cfg.gen_lr},
                {"disc_lr", cfg.disc_lr},   {"joint_decay", cfg.joint_decay},
                {"epochs", opt.epochs},     {"steps_per_epoch", cfg.steps_per_epoch},
                {"batch_size", cfg.batch_size},
                {"shots", opt.shots},       {"label_true", cfg.label_true},
                {"label_fake", cfg.label_fake},
                {"exact", opt.exact},       {"seed", opt.seed},
                {"trials", opt.trials}};
    }

    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(opt.trials));
    run_trials(opt.jobs, opt.trials, [&](int trial) {
      TrialOutcome& outcome = outcomes[static_cast<std::size_t>(trial)];
      const std::uint64_t trial_seed = opt.seed + static_cast<std::uint64_t>(trial);
      try {
        if (is_full) {
          TrainConfig cfg;
          cfg.epochs = opt.epochs;
          cfg.shots = opt.shots;
          cfg.exact_mode = opt.exact;
          cfg.seed = trial_seed;
          TrainResult r = train_full_qgan(train_set, cfg);
          outcome.curve = std::move(r.mse_curve);
          outcome.losses = std::move(r.losses);
          outcome.params = {{"model", opt.model},
                            {"gen", r.params.gen},
                            {"disc", r.params.disc},
                            {"stats", stats_json(stats)},
                            {"seed", trial_seed},
                            {"epochs", opt.epochs}};
        } else {
          HybridConfig cfg;
          cfg.epochs = opt.epochs;
          cfg.shots = opt.shots;
          cfg.exact_mode = opt.exact;
          cfg.seed = trial_seed;
          HybridResult r = train_hybrid(train_set, hybrid_size, cfg);
          outcome.curve = std::move(r.mse_curve);
          outcome.losses = std::move(r.losses);
          outcome.params = {{"model", opt.model},
                            {"gen", r.gen},
                            {"mlp", r.mlp},
                            {"mlp_widths", mlp_spec_for(hybrid_size).layer_widths},
                            {"stats", stats_json(stats)},
                            {"seed", trial_seed},
                            {"epochs", opt.epochs}};
        }
        outcome.ok = true;
      } catch (const std::exception& e) {
        outcome.ok = false;
        outcome.error = e.what();
      }
    });

    // All file writes happen here, after the workers have finished.
    std::string manifest;
    json run_record = {{"record", "run"},
                       {"command", "train"},
                       {"build", kBuildId},
                       {"train_csv", opt.train_csv},
                       {"config", config}};
    manifest += run_record.dump() + "\n";

    std::vector<MseCurve> ok_curves;
    for (int trial = 0; trial < opt.trials; ++trial) {
      const TrialOutcome& outcome = outcomes[static_cast<std::size_t>(trial)];
      json rec = {{"record", "trial"},
                  {"index", trial},
                  {"seed", opt.seed + static_cast<std::uint64_t>(trial)}};
      if (outcome.ok) {
        const std::string curve_name = trial_file("trial", trial, "_curve.csv");
        const std::string params_name = trial_file("trial", trial, "_params.json");
        write_text(out_dir / curve_name, curve_csv(outcome.curve, outcome.losses));
        write_text(out_dir / params_name, outcome.params.dump(2) + "\n");
        rec["status"] = "ok";
        rec["curve"] = curve_name;
        rec["params"] = params_name;
        ok_curves.push_back(outcome.curve);
      } else {
        rec["status"] = "aborted";
        rec["error"] = outcome.error;
        std::cerr << "warning: trial " << trial << " aborted: " << outcome.error
                  << "\n";
      }
      manifest += rec.dump() + "\n";
    }
    if (ok_curves.empty()) {
      throw std::runtime_error("train: all trials aborted");
    }

    const TrialStats stats_agg = aggregate_trials(std::move(ok_curves));
    write_aggregate_csv((out_dir / "aggregate_curve.csv").string(), stats_agg);
    write_trial_stats_jsonl((out_dir / "metrics.jsonl").string(), stats_agg);
    for (const char* name : {"aggregate_curve.csv", "metrics.jsonl"}) {
      manifest += json{{"record", "artifact"}, {"path", name}}.dump() + "\n";
    }
    write_text(out_dir / "manifest.jsonl", manifest);

    const std::size_t last = stats_agg.mean_curve.size() - 1;
    std::cout << "trained " << opt.model << ": final mean mse "
              << stats_agg.mean_curve[last] << " (std " << stats_agg.std_band[last]
              << ", best trial " << stats_agg.best_trial << ")\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "qgan train: " << e.what() << "\n";
    return 1;
  }
}

int cmd_infer(const InferOptions& opt) {
  try {
    if (opt.params_file.empty() || opt.out.empty()) {
      throw std::invalid_argument("infer: --params and --out are required");
    }
    std::ifstream in(opt.params_file);
    if (!in) {
      throw std::runtime_error("infer: cannot open " + opt.params_file);
    }
    json params_json;
    try {
      in >> params_json;
    } catch (const json::exception& e) {
      throw std::runtime_error("infer: malformed parameter file " +
                               opt.params_file + ": " + e.what());
    }
    const auto gen = params_json.at("gen").get<std::vector<double>>();
    if (gen.size() != kMeraParams) {
      throw std::runtime_error("infer: parameter file must carry 20 generator angles");
    }
    const DatasetStats stats = stats_from_json(params_json.at("stats"));

    Rng rng(opt.seed);
    const std::vector<ShowerImage> images =
        generate_images(gen, opt.n, stats, opt.shots, opt.exact, rng);
    write_csv(opt.out, images);
    std::cout << "wrote " << images.size() << " generated images to " << opt.out
              << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "qgan infer: " << e.what() << "\n";
    return 1;
  }
}

int cmd_eval(const EvalOptions& opt) {
  try {
    if (opt.generated_csv.empty() || opt.reference_csv.empty()) {
      throw std::invalid_argument("eval: --generated-csv and --reference-csv are required");
    }
    const std::vector<ShowerImage> gen = load_csv(opt.generated_csv);
    const std::vector<ShowerImage> ref = load_csv(opt.reference_csv);
    if (gen.empty() || ref.empty()) {
      throw std::runtime_error("eval: empty image file");
    }
    const MseResult result = mse_between(gen, ref);
    const std::array<double, kPixels> avg_gen = average_image(gen);
    const std::array<double, kPixels> avg_ref = average_image(ref);

    fs::create_directories(opt.out_dir);
    const fs::path out_dir(opt.out_dir);

    std::string pixels = "pixel,mean_generated,mean_reference,squared_error\n";
    char buf[128];
    for (int p = 0; p < kPixels; ++p) {
      const auto ip = static_cast<std::size_t>(p);
      const double d = avg_gen[ip] - avg_ref[ip];
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", p, avg_gen[ip],
                    avg_ref[ip], d * d);
      pixels += buf;
    }
    write_text(out_dir / "pixels.csv", pixels);

    std::string report;
    report += json{{"record", "mse"}, {"mse", result.mse}, {"std", result.std}}
                  .dump() + "\n";
    report += json{{"record", "average_image"},
                   {"which", "generated"},
                   {"pixels", avg_gen}}.dump() + "\n";
    report += json{{"record", "average_image"},
                   {"which", "reference"},
                   {"pixels", avg_ref}}.dump() + "\n";
    write_text(out_dir / "report.jsonl", report);

    std::cout << "mse " << result.mse << " (pixel std " << result.std << ")\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "qgan eval: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qgan
