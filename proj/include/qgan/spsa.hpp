#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qgan/rng.hpp"

namespace qgan {

// Simultaneous-perturbation coefficients. The gain a_k is supplied by the
// caller as the current learning rate (exponentially decayed per epoch via
// decay_lr); only the perturbation magnitude decays internally:
// c_k = c0 / (k+1)^gamma.
struct SpsaConfig {
  double c0 = 0.1;
  double gamma = 0.101;
};

/// lr0 * exp(-decay * epoch).
double decay_lr(double lr0, double decay, int epoch);

using LossFn = std::function<double(std::span<const double>)>;

/// One SPSA update: draws a Rademacher perturbation, evaluates `loss` exactly
/// twice (at params +/- c_k * delta), and returns params - lr * g_hat.
/// Throws std::runtime_error when either evaluation is non-finite.
std::vector<double> spsa_step(const LossFn& loss, std::span<const double> params,
                              double lr, const SpsaConfig& spsa, long k, Rng& rng);

}  // namespace qgan
