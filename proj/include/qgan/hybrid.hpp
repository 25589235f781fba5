#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qgan/gan.hpp"

namespace qgan {

enum class HybridSize { S, M, L };

// Fully connected discriminator shape. Hidden layers use a leaky rectifier
// (slope 0.2), the single output unit a logistic. Weight vector layout per
// layer: row-major weights [out][in], then biases [out].
struct MlpSpec {
  std::vector<int> layer_widths;  // input width first, output width (1) last
  double leak = 0.2;

  int param_count() const;
  int layer_count() const { return static_cast<int>(layer_widths.size()) - 1; }
};

/// S: 8-8-8-1 (153 parameters), M: 8-16-16-1 (433), L: 8-32-32-16-1 (1889).
MlpSpec mlp_spec_for(HybridSize size);

const char* hybrid_size_name(HybridSize size);

/// Forward pass; returns the True probability in (0, 1).
double mlp_forward(const MlpSpec& spec, std::span<const double> weights,
                   const std::array<double, kPixels>& image);

/// Exact gradient of bce_loss(mlp_forward(image), label) with respect to all
/// weights, by backpropagation.
std::vector<double> mlp_backward(const MlpSpec& spec, std::span<const double> weights,
                                 const std::array<double, kPixels>& image,
                                 double label);

// Hybrid protocol: one generator and one discriminator update per step, one
// step per epoch, joint exponential decay on both rates.
struct HybridConfig {
  double gen_lr = 0.01;
  double disc_lr = 0.006;
  double joint_decay = 0.006;
  int epochs = 1000;
  int steps_per_epoch = 1;
  int batch_size = 8;
  long shots = 1024;
  double label_true = 0.9;
  double label_fake = 0.1;
  bool exact_mode = false;
  std::uint64_t seed = 0;
  int eval_images = 50;
};

struct HybridResult {
  std::vector<double> gen;  // 20 angles
  std::vector<double> mlp;  // discriminator weights
  std::vector<LossRecord> losses;
  MseCurve mse_curve;
  long spsa_steps = 0;
};

/// Quantum MERA-up generator (SPSA, zero-initialized) against a classical MLP
/// discriminator (backpropagation + moment-adapted gradient descent). The
/// discriminator sees decoded 8-pixel images for both true and fake inputs.
HybridResult train_hybrid(std::span<const ShowerImage> train_set, HybridSize size,
                          const HybridConfig& cfg, const SpsaConfig& spsa = {});

}  // namespace qgan
