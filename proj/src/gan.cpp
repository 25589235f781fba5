#include "qgan/gan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qgan {

namespace {

constexpr double kProbEps = 1e-7;

std::array<double, kPixels> image_thetas(const ShowerImage& img) {
  std::array<double, kPixels> thetas{};
  for (int p = 0; p < kPixels; ++p) {
    thetas[static_cast<std::size_t>(p)] =
        encode_energy(img.pixels[static_cast<std::size_t>(p)]);
  }
  return thetas;
}

void check_cfg(const TrainConfig& cfg) {
  if (cfg.gen_lr <= 0.0 || cfg.disc_lr <= 0.0 || cfg.gen_decay <= 0.0 ||
      cfg.disc_decay <= 0.0) {
    throw std::invalid_argument("TrainConfig: rates must be > 0");
  }
  if (cfg.label_true <= 0.0 || cfg.label_true >= 1.0 || cfg.label_fake <= 0.0 ||
      cfg.label_fake >= 1.0) {
    throw std::invalid_argument("TrainConfig: labels must lie in (0, 1)");
  }
  if (cfg.batch_size < 1 || cfg.epochs < 1 || cfg.steps_per_epoch < 1 ||
      cfg.disc_steps_per_gen_step < 1 || cfg.shots < 1 || cfg.eval_images < 1) {
    throw std::invalid_argument("TrainConfig: counts must be >= 1");
  }
}

// Epoch-scoped shuffled index pool: batches draw without replacement until the
// pool runs dry, then it reshuffles.
class Deck {
 public:
  explicit Deck(std::size_t n) : order_(n) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    pos_ = n;
  }

  void reshuffle(Rng& rng) {
    rng.shuffle(order_);
    pos_ = 0;
  }

  std::size_t next(Rng& rng) {
    if (pos_ == order_.size()) {
      reshuffle(rng);
    }
    return order_[pos_++];
  }

 private:
  std::vector<std::size_t> order_;
  std::size_t pos_ = 0;
};

}  // namespace

GanParams GanParams::zeros() {
  GanParams p;
  p.gen.assign(kMeraParams, 0.0);
  p.disc.assign(kMeraParams, 0.0);
  return p;
}

double discriminator_output(const CircuitSpec& circuit, long shots, bool exact,
                            Rng& rng) {
  if (!circuit.fully_bound()) {
    throw std::invalid_argument("discriminator_output: unbound parameter slots");
  }
  StateVector state = init_zero(circuit.n_qubits);
  const std::vector<Gate> gates = circuit.gates();
  apply_circuit(state, gates);
  const int out_qubit = mera_down_layout().output_qubit;
  if (exact) {
    return prob_one(state, out_qubit);
  }
  const ShotCounts counts = sample_qubit(state, out_qubit, shots, rng);
  return static_cast<double>(counts.ones) / static_cast<double>(counts.shots);
}

double bce_loss(double d_out, double label) {
  const double d = std::clamp(d_out, kProbEps, 1.0 - kProbEps);
  return -(label * std::log(d) + (1.0 - label) * std::log(1.0 - d));
}

double batch_loss_disc(const GanParams& params, std::span<const ShowerImage> batch,
                       std::span<const NoiseVector> noise, const TrainConfig& cfg,
                       Rng& rng) {
  if (batch.empty() || batch.size() != noise.size()) {
    throw std::invalid_argument("batch_loss_disc: batch and noise sizes must match and be non-empty");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const CircuitSpec true_pass =
        assemble_true_pass(image_thetas(batch[i]), params.disc);
    const CircuitSpec fake_pass =
        assemble_fake_pass(noise[i], params.gen, params.disc);
    const double d_true =
        discriminator_output(true_pass, cfg.shots, cfg.exact_mode, rng);
    const double d_fake =
        discriminator_output(fake_pass, cfg.shots, cfg.exact_mode, rng);
    total += bce_loss(d_true, cfg.label_true) + bce_loss(d_fake, cfg.label_fake);
  }
  return total / static_cast<double>(batch.size());
}

double batch_loss_gen(const GanParams& params, std::span<const NoiseVector> noise,
                      const TrainConfig& cfg, Rng& rng) {
  if (noise.empty()) {
    throw std::invalid_argument("batch_loss_gen: empty noise batch");
  }
  double total = 0.0;
  for (const NoiseVector& nv : noise) {
    const CircuitSpec fake_pass = assemble_fake_pass(nv, params.gen, params.disc);
    const double d_fake =
        discriminator_output(fake_pass, cfg.shots, cfg.exact_mode, rng);
    // Labels swapped: the generator is rewarded when fakes read as true.
    total += bce_loss(d_fake, cfg.label_true);
  }
  return total / static_cast<double>(noise.size());
}

ShowerImage generate_one(std::span<const double> gen_params,
                         const NoiseVector& noise, long shots, bool exact,
                         Rng& rng) {
  const CircuitSpec circuit = assemble_generator_pass(noise, gen_params);
  StateVector state = init_zero(circuit.n_qubits);
  const std::vector<Gate> gates = circuit.gates();
  apply_circuit(state, gates);
  ShowerImage img;
  for (int q = 0; q < kPixels; ++q) {
    double zero_fraction = 0.0;
    if (exact) {
      zero_fraction = 1.0 - prob_one(state, q);
    } else {
      const ShotCounts counts = sample_qubit(state, q, shots, rng);
      zero_fraction =
          static_cast<double>(counts.zeros) / static_cast<double>(counts.shots);
    }
    img.pixels[static_cast<std::size_t>(q)] = decode_zero_fraction(zero_fraction);
  }
  return img;
}

std::vector<ShowerImage> generate_images(std::span<const double> gen_params,
                                         std::size_t n, const DatasetStats& stats,
                                         long shots, bool exact, Rng& rng) {
  if (n < 1) {
    throw std::invalid_argument("generate_images: n must be >= 1");
  }
  std::vector<ShowerImage> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const NoiseVector noise = build_noise_layer(stats.stds, rng);
    images.push_back(generate_one(gen_params, noise, shots, exact, rng));
  }
  return images;
}

TrainResult train_full_qgan(std::span<const ShowerImage> train_set,
                            const TrainConfig& cfg, const SpsaConfig& spsa) {
  check_cfg(cfg);
  if (train_set.empty()) {
    throw std::invalid_argument("train_full_qgan: empty training set");
  }
  const DatasetStats stats = compute_stats(train_set);
  Rng rng(cfg.seed);
  Deck deck(train_set.size());

  TrainResult result;
  result.params = GanParams::zeros();
  result.losses.reserve(static_cast<std::size_t>(cfg.epochs));
  result.mse_curve.reserve(static_cast<std::size_t>(cfg.epochs));
  GanParams& params = result.params;

  const auto batch_sz = static_cast<std::size_t>(cfg.batch_size);
  std::vector<ShowerImage> batch(batch_sz);
  std::vector<NoiseVector> noise(batch_sz);
  const auto draw_batch = [&] {
    for (std::size_t i = 0; i < batch_sz; ++i) {
      batch[i] = train_set[deck.next(rng)];
    }
  };
  const auto draw_noise = [&] {
    for (std::size_t i = 0; i < batch_sz; ++i) {
      noise[i] = build_noise_layer(stats.stds, rng);
    }
  };

  long k_disc = 0;
  long k_gen = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double lr_disc = decay_lr(cfg.disc_lr, cfg.disc_decay, epoch);
    const double lr_gen = decay_lr(cfg.gen_lr, cfg.gen_decay, epoch);
    deck.reshuffle(rng);
    for (int step = 0; step < cfg.steps_per_epoch; ++step) {
      for (int d = 0; d < cfg.disc_steps_per_gen_step; ++d) {
        draw_batch();
        draw_noise();
        const LossFn disc_loss = [&](std::span<const double> disc_params) {
          ++result.spsa_loss_evals;
          GanParams probe{params.gen,
                          {disc_params.begin(), disc_params.end()}};
          return batch_loss_disc(probe, batch, noise, cfg, rng);
        };
        params.disc = spsa_step(disc_loss, params.disc, lr_disc, spsa, k_disc++, rng);
        ++result.spsa_steps;
      }
      draw_noise();
      const LossFn gen_loss = [&](std::span<const double> gen_params) {
        ++result.spsa_loss_evals;
        GanParams probe{{gen_params.begin(), gen_params.end()}, params.disc};
        return batch_loss_gen(probe, noise, cfg, rng);
      };
      params.gen = spsa_step(gen_loss, params.gen, lr_gen, spsa, k_gen++, rng);
      ++result.spsa_steps;
    }

    // Epoch record: loss snapshot on a fresh probe batch, then the MSE probe
    // between freshly generated images and a random training subsample.
    draw_batch();
    draw_noise();
    double true_term = 0.0;
    double fake_term = 0.0;
    double gen_term = 0.0;
    for (std::size_t i = 0; i < batch_sz; ++i) {
      const double d_true = discriminator_output(
          assemble_true_pass(image_thetas(batch[i]), params.disc), cfg.shots,
          cfg.exact_mode, rng);
      const double d_fake = discriminator_output(
          assemble_fake_pass(noise[i], params.gen, params.disc), cfg.shots,
          cfg.exact_mode, rng);
      true_term += bce_loss(d_true, cfg.label_true);
      fake_term += bce_loss(d_fake, cfg.label_fake);
      gen_term += bce_loss(d_fake, cfg.label_true);
    }
    LossRecord record;
    record.disc_true_loss = true_term / static_cast<double>(batch_sz);
    record.disc_fake_loss = fake_term / static_cast<double>(batch_sz);
    record.disc_loss = record.disc_true_loss + record.disc_fake_loss;
    record.gen_loss = gen_term / static_cast<double>(batch_sz);
    result.losses.push_back(record);

    const std::vector<ShowerImage> gen_sample =
        generate_images(params.gen, static_cast<std::size_t>(cfg.eval_images),
                        stats, cfg.shots, cfg.exact_mode, rng);
    std::vector<ShowerImage> ref_sample(static_cast<std::size_t>(cfg.eval_images));
    for (ShowerImage& img : ref_sample) {
      img = train_set[rng.index(train_set.size())];
    }
    result.mse_curve.push_back(mse_between(gen_sample, ref_sample));
  }
  return result;
}

}  // namespace qgan
