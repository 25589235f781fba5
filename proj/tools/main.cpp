// Command line front end for the qgan library.
//
// Subcommands:
//   gen-data   sample a synthetic shower dataset and write it as CSV
//   train      train the full or hybrid model, writing curves/params/manifest
//   infer      generate images from a saved parameter file
//   eval       compare two image files via average-image MSE
//
// A config file can supply any option as key=value lines grouped under a
// [subcommand] section, e.g.
//
//   [train]
//   model=hybrid-m
//   epochs=300
//
// passed as `qgan --config FILE <subcommand>`. Precedence is command line >
// environment > config file > built-in default.

#include <CLI11.hpp>

#include "qgan/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quantum GAN for calorimeter shower images"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Key=value file with per-subcommand [sections]");

  qgan::GenDataOptions gen_opt;
  CLI::App* gen = app.add_subcommand("gen-data", "Write a synthetic dataset as CSV");
  gen->add_option("--n", gen_opt.n, "Number of images")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_opt.seed, "Random seed");
  gen->add_option("--out", gen_opt.out, "Output CSV path")->required();
  gen->add_option("--profile", gen_opt.profile_file,
                  "CSV with two rows (means, stds) overriding the built-in shape");

  qgan::TrainOptions train_opt;
  CLI::App* train = app.add_subcommand("train", "Train a model");
  train->add_option("--model", train_opt.model, "full|hybrid-s|hybrid-m|hybrid-l")
      ->check(CLI::IsMember({"full", "hybrid-s", "hybrid-m", "hybrid-l"}));
  train->add_option("--train-csv", train_opt.train_csv, "Training images CSV")
      ->required();
  train->add_option("--epochs", train_opt.epochs)->check(CLI::PositiveNumber);
  train->add_option("--trials", train_opt.trials, "Independent repetitions")
      ->check(CLI::PositiveNumber);
  train->add_option("--shots", train_opt.shots, "Measurement shots per circuit")
      ->check(CLI::PositiveNumber);
  train->add_flag("--exact", train_opt.exact,
                  "Use exact probabilities instead of sampled shots");
  train->add_option("--seed", train_opt.seed, "Base seed; trial i uses seed+i");
  train->add_option("--out-dir", train_opt.out_dir, "Output directory")
      ->envname("QGAN_OUT_DIR");
  train->add_option("--jobs", train_opt.jobs,
                    "Concurrent trials (0 = hardware threads)");

  qgan::InferOptions infer_opt;
  CLI::App* infer = app.add_subcommand("infer", "Generate images from saved params");
  infer->add_option("--params", infer_opt.params_file, "Parameter JSON from train")
      ->required();
  infer->add_option("--n", infer_opt.n, "Number of images")->check(CLI::PositiveNumber);
  infer->add_option("--shots", infer_opt.shots)->check(CLI::PositiveNumber);
  infer->add_flag("--exact", infer_opt.exact,
                  "Use exact probabilities instead of sampled shots");
  infer->add_option("--seed", infer_opt.seed, "Random seed");
  infer->add_option("--out", infer_opt.out, "Output CSV path")->required();

  qgan::EvalOptions eval_opt;
  CLI::App* eval = app.add_subcommand("eval", "Compare generated vs reference images");
  eval->add_option("--generated-csv", eval_opt.generated_csv)->required();
  eval->add_option("--reference-csv", eval_opt.reference_csv)->required();
  eval->add_option("--out-dir", eval_opt.out_dir, "Output directory")
      ->envname("QGAN_OUT_DIR");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    return qgan::cmd_gen_data(gen_opt);
  }
  if (train->parsed()) {
    return qgan::cmd_train(train_opt);
  }
  if (infer->parsed()) {
    return qgan::cmd_infer(infer_opt);
  }
  if (eval->parsed()) {
    return qgan::cmd_eval(eval_opt);
  }
  return 0;  // unreachable with require_subcommand(1)
}
