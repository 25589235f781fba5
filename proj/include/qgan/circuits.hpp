#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "qgan/codec.hpp"
#include "qgan/qsim.hpp"
#include "qgan/rng.hpp"

namespace qgan {

// One qubit per image pixel.
inline constexpr int kPixels = 8;
// Trainable RY angles per MERA circuit (10 two-qubit blocks, 2 each).
inline constexpr int kMeraParams = 20;

// One circuit entry: a fixed gate, or an RY slot bound later from a parameter
// vector (param_id >= 0, gate angle ignored until bound).
struct CircuitSlot {
  Gate gate;
  int param_id = -1;

  bool is_param() const { return param_id >= 0; }
};

struct CircuitSpec {
  int n_qubits = 0;
  std::vector<CircuitSlot> slots;

  int n_params() const;
  bool fully_bound() const;

  /// Concrete gate list with parameter slots filled from `params`
  /// (params.size() must equal n_params()).
  std::vector<Gate> bind(std::span<const double> params) const;

  /// Gate list of a fully bound spec.
  std::vector<Gate> gates() const;
};

struct MeraBlock {
  int qubit_a = 0;
  int qubit_b = 0;
};

struct MeraLayout {
  enum class Direction { up, down };
  Direction direction = Direction::down;
  std::vector<MeraBlock> blocks;
  int output_qubit = -1;  // down only
};

/// Downsampling layout on 8 qubits: level-1 disentanglers (1,2) (3,4) (5,6),
/// level-1 isometries (0,1) (2,3) (4,5) (6,7), level-2 (1,3) (5,7),
/// level-3 (3,7). Information is compressed into qubit 7.
MeraLayout mera_down_layout();

/// Mirror of the down layout: reversed block order.
MeraLayout mera_up_layout();

/// Discriminator ansatz. Per block (a,b): RY slot on a, RY slot on b,
/// CX(a -> b). 20 parameter slots, ids in gate order.
CircuitSpec build_mera_down();

/// Generator ansatz, the operational mirror of build_mera_down: reversed block
/// order and reversed intra-block gate order (CX, RY on b, RY on a).
CircuitSpec build_mera_up();

// Per-image noise angles applied after the H layer:
//   omega_i = u_i * (2*theta_max/e_max) * sigma_i + shift
// with u_i ~ U[-1, 1] per qubit and shift ~ U[-1/4, 1/4] shared across the
// image (a common energy-scale jitter).
struct NoiseVector {
  std::array<double, kPixels> omegas{};
  double shared_shift = 0.0;
};

/// Deterministic composition step; raw_draws are the u_i in [-1, 1].
NoiseVector compose_noise(const std::array<double, kPixels>& raw_draws,
                          double shared_shift,
                          const std::array<double, kPixels>& pixel_stds,
                          const EncodingSpec& enc = {});

/// Draws u_0..u_7 then the shared shift from `rng`. Negative stds are rejected.
NoiseVector build_noise_layer(const std::array<double, kPixels>& pixel_stds,
                              Rng& rng, const EncodingSpec& enc = {});

/// Combined training circuit for fake images: H on all qubits, RY(omega_i)
/// noise, generator MERA-up, discriminator MERA-down. Fully bound.
CircuitSpec assemble_fake_pass(const NoiseVector& noise,
                               std::span<const double> gen_params,
                               std::span<const double> disc_params);

/// Generator-only circuit (H, noise, MERA-up) for inference-time sampling.
CircuitSpec assemble_generator_pass(const NoiseVector& noise,
                                    std::span<const double> gen_params);

/// Discriminator circuit for true images: H per qubit, encoding RY per qubit
/// (image_thetas come from encode_energy; the gate-convention sign flip is
/// applied here), then MERA-down.
CircuitSpec assemble_true_pass(const std::array<double, kPixels>& image_thetas,
                               std::span<const double> disc_params);

/// Plain-text gate list, one gate per line: KIND target [control] [angle].
/// Unbound RY slots print the parameter slot id in place of the angle.
std::string format_gate_list(const CircuitSpec& spec);

}  // namespace qgan
