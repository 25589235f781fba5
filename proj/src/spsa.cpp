#include "qgan/spsa.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qgan {

double decay_lr(double lr0, double decay, int epoch) {
  if (epoch < 0) {
    throw std::invalid_argument("decay_lr: negative epoch");
  }
  return lr0 * std::exp(-decay * static_cast<double>(epoch));
}

std::vector<double> spsa_step(const LossFn& loss, std::span<const double> params,
                              double lr, const SpsaConfig& spsa, long k, Rng& rng) {
  if (lr <= 0.0) {
    throw std::invalid_argument("spsa_step: learning rate must be > 0");
  }
  const std::size_t dim = params.size();
  std::vector<double> delta(dim);
  for (double& d : delta) {
    d = rng.rademacher();
  }
  const double ck = spsa.c0 / std::pow(static_cast<double>(k) + 1.0, spsa.gamma);

  std::vector<double> probe(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    probe[j] = params[j] + ck * delta[j];
  }
  const double loss_plus = loss(probe);
  for (std::size_t j = 0; j < dim; ++j) {
    probe[j] = params[j] - ck * delta[j];
  }
  const double loss_minus = loss(probe);
  if (!std::isfinite(loss_plus) || !std::isfinite(loss_minus)) {
    throw std::runtime_error("spsa_step: non-finite loss at iteration " +
                             std::to_string(k) + " (L+=" + std::to_string(loss_plus) +
                             ", L-=" + std::to_string(loss_minus) + ")");
  }

  const double diff = (loss_plus - loss_minus) / (2.0 * ck);
  std::vector<double> updated(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    // delta[j] is +/-1, so dividing by it equals multiplying.
    updated[j] = params[j] - lr * diff * delta[j];
  }
  return updated;
}

}  // namespace qgan
