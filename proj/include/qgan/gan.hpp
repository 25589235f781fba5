#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qgan/circuits.hpp"
#include "qgan/data.hpp"
#include "qgan/metrics.hpp"
#include "qgan/spsa.hpp"

namespace qgan {

// Full quantum GAN hyperparameters. Defaults are the published training
// protocol; exact_mode replaces shot sampling with exact probabilities.
struct TrainConfig {
  double gen_lr = 0.02;
  double disc_lr = 0.04;
  double gen_decay = 0.006;
  double disc_decay = 0.007;
  int epochs = 1000;
  int steps_per_epoch = 8;
  int batch_size = 8;
  int disc_steps_per_gen_step = 5;
  long shots = 1024;
  double label_true = 0.9;
  double label_fake = 0.1;
  bool exact_mode = false;
  std::uint64_t seed = 0;
  int eval_images = 50;  // sample size per side of the per-epoch MSE probe
};

struct GanParams {
  std::vector<double> gen;   // 20 angles
  std::vector<double> disc;  // 20 angles

  static GanParams zeros();
};

// Per-epoch loss snapshot (generator, discriminator-true, discriminator-fake,
// summed discriminator).
struct LossRecord {
  double gen_loss = 0.0;
  double disc_true_loss = 0.0;
  double disc_fake_loss = 0.0;
  double disc_loss = 0.0;
};

struct TrainResult {
  GanParams params;
  std::vector<LossRecord> losses;  // one per epoch
  MseCurve mse_curve;              // one per epoch
  long spsa_steps = 0;
  long spsa_loss_evals = 0;
};

/// True/Fake probability of a fully bound 8-qubit pass: P(|1>) on the
/// discriminator output qubit, exact or estimated from `shots` samples.
double discriminator_output(const CircuitSpec& circuit, long shots, bool exact,
                            Rng& rng);

/// Binary cross entropy -[label*ln(d) + (1-label)*ln(1-d)] with d clamped to
/// [1e-7, 1-1e-7].
double bce_loss(double d_out, double label);

/// Mean over the batch of bce(D(true_i), label_true) + bce(D(fake_i), label_fake).
double batch_loss_disc(const GanParams& params, std::span<const ShowerImage> batch,
                       std::span<const NoiseVector> noise, const TrainConfig& cfg,
                       Rng& rng);

/// Mean over the batch of bce(D(fake_i), label_true): fake passes scored
/// against the true label to train the generator.
double batch_loss_gen(const GanParams& params, std::span<const NoiseVector> noise,
                      const TrainConfig& cfg, Rng& rng);

/// Adversarial training: per optimization step, disc_steps_per_gen_step SPSA
/// discriminator updates on fresh batches, then one generator update.
/// Parameters start at zero. Records losses and a generated-vs-training MSE
/// probe every epoch.
TrainResult train_full_qgan(std::span<const ShowerImage> train_set,
                            const TrainConfig& cfg, const SpsaConfig& spsa = {});

/// Decodes one generated image from a noise vector: runs H + noise + MERA-up
/// and converts each qubit's |0> fraction back to a pixel energy.
ShowerImage generate_one(std::span<const double> gen_params,
                         const NoiseVector& noise, long shots, bool exact,
                         Rng& rng);

/// n generated images with fresh noise drawn from the dataset's pixel
/// standard deviations.
std::vector<ShowerImage> generate_images(std::span<const double> gen_params,
                                         std::size_t n, const DatasetStats& stats,
                                         long shots, bool exact, Rng& rng);

}  // namespace qgan
