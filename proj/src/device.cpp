// Copyright 2026 The holosim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "holosim/device.hpp"

#include <cmath>
#include <stdexcept>

namespace holosim {

void DeviceParams::validate() const {
  if (space.subsystem_count() != 3)
    throw std::invalid_argument("DeviceParams: expected qubit-qubit-resonator space");
  for (int i = 0; i < 2; ++i) {
    if (alpha[i] >= 0.0) throw std::invalid_argument("DeviceParams: alpha must be negative");
    if (t1_q[i] <= 0.0) throw std::invalid_argument("DeviceParams: qubit T1 must be positive");
    if (g[i] <= 0.0) throw std::invalid_argument("DeviceParams: coupling must be positive");
    if (std::abs(delta(i)) <= 5.0 * g[i])
      throw std::invalid_argument("DeviceParams: outside the dispersive regime |delta| > 5 g");
  }
  if (t1_r <= 0.0) throw std::invalid_argument("DeviceParams: resonator T1 must be positive");
}

DeviceParams DeviceParams::from_config(const KeyValueConfig& cfg) {
  DeviceParams p;
  p.omega_r = ghz_to_rad(cfg.get_double("omega_r_ghz"));
  p.omega = {ghz_to_rad(cfg.get_double("omega1_ghz")), ghz_to_rad(cfg.get_double("omega2_ghz"))};
  p.alpha = {ghz_to_rad(cfg.get_double("alpha1_ghz")), ghz_to_rad(cfg.get_double("alpha2_ghz"))};
  p.g = {ghz_to_rad(cfg.get_double("g1_ghz")), ghz_to_rad(cfg.get_double("g2_ghz"))};
  p.t1_q = {us_to_s(cfg.get_double("t1_q1_us")), us_to_s(cfg.get_double("t1_q2_us"))};
  p.t1_r = us_to_s(cfg.get_double("t1_r_us"));
  p.space = HilbertSpace({cfg.get_int("qubit1_levels", 4), cfg.get_int("qubit2_levels", 4),
                          cfg.get_int("resonator_levels", 3)});
  p.validate();
  return p;
}

DeviceParams DeviceParams::from_config_file(const std::string& path) {
  return from_config(KeyValueConfig::from_file(path));
}

DeviceParams DeviceParams::paper_device() {
  DeviceParams p;
  p.omega_r = ghz_to_rad(6.272);
  p.omega = {ghz_to_rad(4.896), ghz_to_rad(4.689)};
  p.alpha = {ghz_to_rad(-0.330), ghz_to_rad(-0.333)};
  p.g = {ghz_to_rad(0.156), ghz_to_rad(0.196)};
  p.t1_q = {us_to_s(42.0), us_to_s(56.0)};
  p.t1_r = us_to_s(7.0);
  p.space = HilbertSpace::qubit_qubit_resonator();
  p.validate();
  return p;
}

void DrivePulse::validate(const DeviceParams& params) const {
  if (qubit < 0 || qubit >= 2) throw std::out_of_range("DrivePulse: invalid qubit index");
  (void)params;
  envelope.validate();
  if (std::abs(scale) > 1.0 + 1e-12)
    throw std::invalid_argument("DrivePulse: |scale| must be <= 1");
}

Complex DrivePulse::complex_drive(double t) const {
  const double eta = envelope_value(envelope, t);
  if (eta == 0.0) return {0.0, 0.0};
  return scale * eta * std::exp(-kImag * (drive_freq * t + phase));
}

void PulseSchedule::validate() const {
  if (total_duration <= 0.0) throw std::invalid_argument("PulseSchedule: empty schedule");
  for (const auto& [start, pulse] : pulses) {
    if (start < 0.0 || start + pulse.envelope.duration > total_duration + 1e-15)
      throw std::invalid_argument("PulseSchedule: pulse outside total duration");
  }
}

PulseSchedule PulseSchedule::simultaneous(std::span<const DrivePulse> drives) {
  PulseSchedule schedule;
  for (const auto& d : drives) {
    schedule.pulses.emplace_back(0.0, d);
    schedule.total_duration = std::max(schedule.total_duration, d.envelope.duration);
  }
  return schedule;
}

Operator static_hamiltonian(const DeviceParams& params) {
  const auto& space = params.space;
  const int n = space.total_dim();
  Matrix h = Matrix::Zero(n, n);

  const Matrix a = lowering_operator(space, 2).matrix;
  h += params.omega_r * (a.adjoint() * a);

  for (int i = 0; i < 2; ++i) {
    const Matrix b = lowering_operator(space, i).matrix;
    const Matrix bd = b.adjoint();
    h += params.omega[i] * (bd * b);
    h += 0.5 * params.alpha[i] * (bd * bd * b * b);
    h += params.g[i] * (bd * a + b * a.adjoint());
  }
  return Operator(space, std::move(h));
}

Operator hamiltonian(const DeviceParams& params, std::span<const DrivePulse> drives, double t) {
  Matrix h = static_hamiltonian(params).matrix;
  for (const auto& d : drives) {
    d.validate(params);
    const double omega_drive = d.complex_drive(t).real();
    if (omega_drive != 0.0) {
      const Matrix b = lowering_operator(params.space, d.qubit).matrix;
      h += omega_drive * (b + b.adjoint());
    }
  }
  return Operator(params.space, std::move(h));
}

Complex effective_coupling(const DeviceParams& params, int qubit, Complex lambda, double eta) {
  const double delta = params.delta(qubit);
  const double alpha = params.alpha.at(qubit);
  if (delta == 0.0 || delta + alpha == 0.0)
    throw std::invalid_argument("effective_coupling: singular at Delta = 0 or Delta + alpha = 0");
  return params.g[qubit] * alpha * lambda * eta / (std::sqrt(2.0) * delta * (delta + alpha));
}

double EffectiveParams::equal_rate_violation(Complex g1, Complex lambda1, Complex g2,
                                             Complex lambda2) {
  const Complex r1 = g1 / lambda1;
  const Complex r2 = g2 / lambda2;
  return std::abs(r1 - r2) / std::abs(r1);
}

Matrix effective_hamiltonian(const EffectiveParams& eff) {
  Matrix h = Matrix::Zero(3, 3);
  h(0, 0) = eff.delta_fg0;
  h(1, 1) = eff.delta_gf0;
  h(0, 2) = eff.gtilde[0];
  h(2, 0) = std::conj(eff.gtilde[0]);
  h(1, 2) = eff.gtilde[1];
  h(2, 1) = std::conj(eff.gtilde[1]);
  return h;
}

std::vector<Operator> collapse_operators(const DeviceParams& params) {
  std::vector<Operator> ops;
  for (int i = 0; i < 2; ++i) {
    Operator b = lowering_operator(params.space, i);
    b.matrix *= std::sqrt(1.0 / params.t1_q[i]);
    ops.push_back(std::move(b));
  }
  Operator a = lowering_operator(params.space, 2);
  a.matrix *= std::sqrt(1.0 / params.t1_r);
  ops.push_back(std::move(a));
  return ops;
}

}  // namespace holosim
