#include "qgan/circuits.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace qgan {

int CircuitSpec::n_params() const {
  int n = 0;
  for (const CircuitSlot& s : slots) {
    if (s.is_param()) {
      ++n;
    }
  }
  return n;
}

bool CircuitSpec::fully_bound() const {
  return std::none_of(slots.begin(), slots.end(),
                      [](const CircuitSlot& s) { return s.is_param(); });
}

std::vector<Gate> CircuitSpec::bind(std::span<const double> params) const {
  if (static_cast<int>(params.size()) != n_params()) {
    throw std::invalid_argument("CircuitSpec::bind: expected " +
                                std::to_string(n_params()) + " parameters, got " +
                                std::to_string(params.size()));
  }
  std::vector<Gate> out;
  out.reserve(slots.size());
  for (const CircuitSlot& s : slots) {
    Gate g = s.gate;
    if (s.is_param()) {
      g.angle = params[static_cast<std::size_t>(s.param_id)];
    }
    out.push_back(g);
  }
  return out;
}

std::vector<Gate> CircuitSpec::gates() const { return bind({}); }

MeraLayout mera_down_layout() {
  MeraLayout layout;
  layout.direction = MeraLayout::Direction::down;
  layout.blocks = {{1, 2}, {3, 4}, {5, 6},          // level-1 disentanglers
                   {0, 1}, {2, 3}, {4, 5}, {6, 7},  // level-1 isometries
                   {1, 3}, {5, 7},                  // level-2 isometries
                   {3, 7}};                         // level-3 isometry
  layout.output_qubit = 7;
  return layout;
}

MeraLayout mera_up_layout() {
  MeraLayout layout = mera_down_layout();
  layout.direction = MeraLayout::Direction::up;
  std::reverse(layout.blocks.begin(), layout.blocks.end());
  layout.output_qubit = -1;
  return layout;
}

CircuitSpec build_mera_down() {
  CircuitSpec spec;
  spec.n_qubits = kPixels;
  int pid = 0;
  for (const MeraBlock& b : mera_down_layout().blocks) {
    spec.slots.push_back({Gate::ry(b.qubit_a, 0.0), pid++});
    spec.slots.push_back({Gate::ry(b.qubit_b, 0.0), pid++});
    spec.slots.push_back({Gate::cx(b.qubit_a, b.qubit_b), -1});
  }
  return spec;
}

CircuitSpec build_mera_up() {
  CircuitSpec spec;
  spec.n_qubits = kPixels;
  int pid = 0;
  for (const MeraBlock& b : mera_up_layout().blocks) {
    spec.slots.push_back({Gate::cx(b.qubit_a, b.qubit_b), -1});
    spec.slots.push_back({Gate::ry(b.qubit_b, 0.0), pid++});
    spec.slots.push_back({Gate::ry(b.qubit_a, 0.0), pid++});
  }
  return spec;
}

NoiseVector compose_noise(const std::array<double, kPixels>& raw_draws,
                          double shared_shift,
                          const std::array<double, kPixels>& pixel_stds,
                          const EncodingSpec& enc) {
  const double slope = 2.0 * enc.theta_max / enc.e_max;  // angle per MeV
  NoiseVector noise;
  noise.shared_shift = shared_shift;
  for (int i = 0; i < kPixels; ++i) {
    if (pixel_stds[static_cast<std::size_t>(i)] < 0.0) {
      throw std::invalid_argument("compose_noise: negative pixel std at index " +
                                  std::to_string(i));
    }
    noise.omegas[static_cast<std::size_t>(i)] =
        raw_draws[static_cast<std::size_t>(i)] * slope *
            pixel_stds[static_cast<std::size_t>(i)] +
        shared_shift;
  }
  return noise;
}

NoiseVector build_noise_layer(const std::array<double, kPixels>& pixel_stds,
                              Rng& rng, const EncodingSpec& enc) {
  std::array<double, kPixels> u{};
  for (double& v : u) {
    v = rng.uniform(-1.0, 1.0);
  }
  const double shift = rng.uniform(-0.25, 0.25);
  return compose_noise(u, shift, pixel_stds, enc);
}

namespace {

void check_param_count(std::span<const double> params, const char* who) {
  if (static_cast<int>(params.size()) != kMeraParams) {
    throw std::invalid_argument(std::string(who) + ": expected " +
                                std::to_string(kMeraParams) + " parameters, got " +
                                std::to_string(params.size()));
  }
}

void append_bound(CircuitSpec& out, const CircuitSpec& spec,
                  std::span<const double> params) {
  for (const Gate& g : spec.bind(params)) {
    out.slots.push_back({g, -1});
  }
}

void append_prefix(CircuitSpec& out, const std::array<double, kPixels>& ry_angles) {
  for (int q = 0; q < kPixels; ++q) {
    out.slots.push_back({Gate::h(q), -1});
  }
  for (int q = 0; q < kPixels; ++q) {
    out.slots.push_back({Gate::ry(q, ry_angles[static_cast<std::size_t>(q)]), -1});
  }
}

}  // namespace

CircuitSpec assemble_fake_pass(const NoiseVector& noise,
                               std::span<const double> gen_params,
                               std::span<const double> disc_params) {
  check_param_count(gen_params, "assemble_fake_pass(gen)");
  check_param_count(disc_params, "assemble_fake_pass(disc)");
  static const CircuitSpec up = build_mera_up();
  static const CircuitSpec down = build_mera_down();
  CircuitSpec out;
  out.n_qubits = kPixels;
  append_prefix(out, noise.omegas);
  append_bound(out, up, gen_params);
  append_bound(out, down, disc_params);
  return out;
}

CircuitSpec assemble_generator_pass(const NoiseVector& noise,
                                    std::span<const double> gen_params) {
  check_param_count(gen_params, "assemble_generator_pass");
  static const CircuitSpec up = build_mera_up();
  CircuitSpec out;
  out.n_qubits = kPixels;
  append_prefix(out, noise.omegas);
  append_bound(out, up, gen_params);
  return out;
}

CircuitSpec assemble_true_pass(const std::array<double, kPixels>& image_thetas,
                               std::span<const double> disc_params) {
  check_param_count(disc_params, "assemble_true_pass");
  static const CircuitSpec down = build_mera_down();
  std::array<double, kPixels> gate_angles{};
  for (int q = 0; q < kPixels; ++q) {
    gate_angles[static_cast<std::size_t>(q)] =
        encoding_angle_to_gate(image_thetas[static_cast<std::size_t>(q)]);
  }
  CircuitSpec out;
  out.n_qubits = kPixels;
  append_prefix(out, gate_angles);
  append_bound(out, down, disc_params);
  return out;
}

std::string format_gate_list(const CircuitSpec& spec) {
  std::string out;
  char buf[64];
  for (const CircuitSlot& s : spec.slots) {
    switch (s.gate.kind) {
      case GateKind::H:
        std::snprintf(buf, sizeof(buf), "H %d\n", s.gate.target);
        break;
      case GateKind::RY:
        if (s.is_param()) {
          std::snprintf(buf, sizeof(buf), "RY %d theta[%d]\n", s.gate.target,
                        s.param_id);
        } else {
          std::snprintf(buf, sizeof(buf), "RY %d %.17g\n", s.gate.target,
                        s.gate.angle);
        }
        break;
      case GateKind::CX:
        std::snprintf(buf, sizeof(buf), "CX %d %d\n", s.gate.target,
                      s.gate.control);
        break;
    }
    out += buf;
  }
  return out;
}

}  // namespace qgan
