#include "qgan/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgan {

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void check_weights(const MlpSpec& spec, std::span<const double> weights,
                   const char* who) {
  if (static_cast<int>(weights.size()) != spec.param_count()) {
    throw std::invalid_argument(std::string(who) + ": expected " +
                                std::to_string(spec.param_count()) +
                                " weights, got " + std::to_string(weights.size()));
  }
}

// Forward pass keeping pre-activations per layer for backpropagation.
struct Trace {
  std::vector<std::vector<double>> acts;  // acts[0] is the input image
  std::vector<std::vector<double>> zs;    // zs[l] pre-activation of layer l
};

double forward_trace(const MlpSpec& spec, std::span<const double> weights,
                     const std::array<double, kPixels>& image, Trace* trace) {
  std::vector<double> act(image.begin(), image.end());
  if (trace != nullptr) {
    trace->acts.push_back(act);
  }
  std::size_t offset = 0;
  const int layers = spec.layer_count();
  for (int l = 0; l < layers; ++l) {
    const auto in_w = static_cast<std::size_t>(spec.layer_widths[static_cast<std::size_t>(l)]);
    const auto out_w = static_cast<std::size_t>(spec.layer_widths[static_cast<std::size_t>(l) + 1]);
    std::vector<double> z(out_w);
    for (std::size_t o = 0; o < out_w; ++o) {
      double sum = weights[offset + in_w * out_w + o];  // bias
      const std::size_t row = offset + o * in_w;
      for (std::size_t i = 0; i < in_w; ++i) {
        sum += weights[row + i] * act[i];
      }
      z[o] = sum;
    }
    offset += in_w * out_w + out_w;
    std::vector<double> next(out_w);
    if (l + 1 == layers) {
      next[0] = logistic(z[0]);
    } else {
      for (std::size_t o = 0; o < out_w; ++o) {
        next[o] = z[o] > 0.0 ? z[o] : spec.leak * z[o];
      }
    }
    if (trace != nullptr) {
      trace->zs.push_back(std::move(z));
      trace->acts.push_back(next);
    }
    act = std::move(next);
  }
  return act[0];
}

}  // namespace

int MlpSpec::param_count() const {
  int count = 0;
  for (int l = 0; l < layer_count(); ++l) {
    const int in_w = layer_widths[static_cast<std::size_t>(l)];
    const int out_w = layer_widths[static_cast<std::size_t>(l) + 1];
    count += in_w * out_w + out_w;
  }
  return count;
}

MlpSpec mlp_spec_for(HybridSize size) {
  MlpSpec spec;
  switch (size) {
    case HybridSize::S:
      spec.layer_widths = {8, 8, 8, 1};
      break;
    case HybridSize::M:
      spec.layer_widths = {8, 16, 16, 1};
      break;
    case HybridSize::L:
      spec.layer_widths = {8, 32, 32, 16, 1};
      break;
  }
  return spec;
}

const char* hybrid_size_name(HybridSize size) {
  switch (size) {
    case HybridSize::S:
      return "S";
    case HybridSize::M:
      return "M";
    case HybridSize::L:
      return "L";
  }
  return "?";
}

double mlp_forward(const MlpSpec& spec, std::span<const double> weights,
                   const std::array<double, kPixels>& image) {
  check_weights(spec, weights, "mlp_forward");
  return forward_trace(spec, weights, image, nullptr);
}

std::vector<double> mlp_backward(const MlpSpec& spec, std::span<const double> weights,
                                 const std::array<double, kPixels>& image,
                                 double label) {
  check_weights(spec, weights, "mlp_backward");
  Trace trace;
  const double out = forward_trace(spec, weights, image, &trace);

  std::vector<double> grad(weights.size(), 0.0);
  const int layers = spec.layer_count();
  // Logistic output with BCE: dL/dz = out - label.
  std::vector<double> dz = {out - label};

  // Per-layer weight offsets, front to back.
  std::vector<std::size_t> offsets(static_cast<std::size_t>(layers));
  std::size_t offset = 0;
  for (int l = 0; l < layers; ++l) {
    offsets[static_cast<std::size_t>(l)] = offset;
    const auto in_w = static_cast<std::size_t>(spec.layer_widths[static_cast<std::size_t>(l)]);
    const auto out_w = static_cast<std::size_t>(spec.layer_widths[static_cast<std::size_t>(l) + 1]);
    offset += in_w * out_w + out_w;
  }

  for (int l = layers - 1; l >= 0; --l) {
    const auto in_w = static_cast<std::size_t>(spec.layer_widths[static_cast<std::size_t>(l)]);
    const auto out_w = static_cast<std::size_t>(spec.layer_widths[static_cast<std::size_t>(l) + 1]);
    const std::size_t base = offsets[static_cast<std::size_t>(l)];
    const std::vector<double>& act_in = trace.acts[static_cast<std::size_t>(l)];
    for (std::size_t o = 0; o < out_w; ++o) {
      const std::size_t row = base + o * in_w;
      for (std::size_t i = 0; i < in_w; ++i) {
        grad[row + i] = dz[o] * act_in[i];
      }
      grad[base + in_w * out_w + o] = dz[o];  // bias
    }
    if (l == 0) {
      break;
    }
    // Propagate through the previous layer's leaky rectifier.
    const std::vector<double>& z_prev = trace.zs[static_cast<std::size_t>(l) - 1];
    std::vector<double> dz_prev(in_w, 0.0);
    for (std::size_t i = 0; i < in_w; ++i) {
      double sum = 0.0;
      for (std::size_t o = 0; o < out_w; ++o) {
        sum += weights[base + o * in_w + i] * dz[o];
      }
      dz_prev[i] = sum * (z_prev[i] > 0.0 ? 1.0 : spec.leak);
    }
    dz = std::move(dz_prev);
  }
  return grad;
}

namespace {

// Gradient descent with first/second-moment adaptation.
class MomentOptimizer {
 public:
  explicit MomentOptimizer(std::size_t dim) : m_(dim, 0.0), v_(dim, 0.0) {}

  void step(std::vector<double>& weights, std::span<const double> grad, double lr) {
    ++t_;
    const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
    for (std::size_t j = 0; j < weights.size(); ++j) {
      m_[j] = kBeta1 * m_[j] + (1.0 - kBeta1) * grad[j];
      v_[j] = kBeta2 * v_[j] + (1.0 - kBeta2) * grad[j] * grad[j];
      const double mhat = m_[j] / bc1;
      const double vhat = v_[j] / bc2;
      weights[j] -= lr * mhat / (std::sqrt(vhat) + kEps);
    }
  }

 private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;
  std::vector<double> m_;
  std::vector<double> v_;
  long t_ = 0;
};

std::vector<double> glorot_init(const MlpSpec& spec, Rng& rng) {
  std::vector<double> weights(static_cast<std::size_t>(spec.param_count()), 0.0);
  std::size_t offset = 0;
  for (int l = 0; l < spec.layer_count(); ++l) {
    const auto in_w = static_cast<std::size_t>(spec.layer_widths[static_cast<std::size_t>(l)]);
    const auto out_w = static_cast<std::size_t>(spec.layer_widths[static_cast<std::size_t>(l) + 1]);
    const double limit = std::sqrt(6.0 / static_cast<double>(in_w + out_w));
    for (std::size_t j = 0; j < in_w * out_w; ++j) {
      weights[offset + j] = rng.uniform(-limit, limit);
    }
    offset += in_w * out_w + out_w;  // biases stay zero
  }
  return weights;
}

void check_hybrid_cfg(const HybridConfig& cfg) {
  if (cfg.gen_lr <= 0.0 || cfg.disc_lr <= 0.0 || cfg.joint_decay <= 0.0) {
    throw std::invalid_argument("HybridConfig: rates must be > 0");
  }
  if (cfg.batch_size < 1 || cfg.epochs < 1 || cfg.steps_per_epoch < 1 ||
      cfg.shots < 1 || cfg.eval_images < 1) {
    throw std::invalid_argument("HybridConfig: counts must be >= 1");
  }
}

}  // namespace

HybridResult train_hybrid(std::span<const ShowerImage> train_set, HybridSize size,
                          const HybridConfig& cfg, const SpsaConfig& spsa) {
  check_hybrid_cfg(cfg);
  if (train_set.empty()) {
    throw std::invalid_argument("train_hybrid: empty training set");
  }
  const DatasetStats stats = compute_stats(train_set);
  const MlpSpec spec = mlp_spec_for(size);
  Rng rng(cfg.seed);

  HybridResult result;
  result.gen.assign(kMeraParams, 0.0);
  result.mlp = glorot_init(spec, rng);
  MomentOptimizer opt(result.mlp.size());

  const auto batch_sz = static_cast<std::size_t>(cfg.batch_size);
  std::vector<std::size_t> order(train_set.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::size_t deck_pos = order.size();
  const auto next_index = [&] {
    if (deck_pos == order.size()) {
      rng.shuffle(order);
      deck_pos = 0;
    }
    return order[deck_pos++];
  };

  std::vector<NoiseVector> noise(batch_sz);
  const auto draw_noise = [&] {
    for (NoiseVector& nv : noise) {
      nv = build_noise_layer(stats.stds, rng);
    }
  };

  long k_gen = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double lr_disc = decay_lr(cfg.disc_lr, cfg.joint_decay, epoch);
    const double lr_gen = decay_lr(cfg.gen_lr, cfg.joint_decay, epoch);
    for (int step = 0; step < cfg.steps_per_epoch; ++step) {
      // Discriminator: one moment-adapted gradient step on a true+fake batch.
      draw_noise();
      std::vector<double> grad(result.mlp.size(), 0.0);
      for (std::size_t i = 0; i < batch_sz; ++i) {
        const ShowerImage& true_img = train_set[next_index()];
        const ShowerImage fake_img = generate_one(result.gen, noise[i], cfg.shots,
                                                  cfg.exact_mode, rng);
        const std::vector<double> g_true =
            mlp_backward(spec, result.mlp, true_img.pixels, cfg.label_true);
        const std::vector<double> g_fake =
            mlp_backward(spec, result.mlp, fake_img.pixels, cfg.label_fake);
        for (std::size_t j = 0; j < grad.size(); ++j) {
          grad[j] += (g_true[j] + g_fake[j]) / static_cast<double>(batch_sz);
        }
      }
      opt.step(result.mlp, grad, lr_disc);

      // Generator: one SPSA step against the frozen discriminator.
      draw_noise();
      const LossFn gen_loss = [&](std::span<const double> gen_params) {
        double total = 0.0;
        for (const NoiseVector& nv : noise) {
          const ShowerImage fake =
              generate_one(gen_params, nv, cfg.shots, cfg.exact_mode, rng);
          total += bce_loss(mlp_forward(spec, result.mlp, fake.pixels),
                            cfg.label_true);
        }
        return total / static_cast<double>(noise.size());
      };
      result.gen = spsa_step(gen_loss, result.gen, lr_gen, spsa, k_gen++, rng);
      ++result.spsa_steps;
    }

    // Epoch record, mirroring the full model's bookkeeping.
    draw_noise();
    double true_term = 0.0;
    double fake_term = 0.0;
    double gen_term = 0.0;
    for (std::size_t i = 0; i < batch_sz; ++i) {
      const ShowerImage& true_img = train_set[rng.index(train_set.size())];
      const ShowerImage fake_img =
          generate_one(result.gen, noise[i], cfg.shots, cfg.exact_mode, rng);
      const double d_true = mlp_forward(spec, result.mlp, true_img.pixels);
      const double d_fake = mlp_forward(spec, result.mlp, fake_img.pixels);
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
        generate_images(result.gen, static_cast<std::size_t>(cfg.eval_images),
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
