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

#pragma once

#include <array>
#include <span>
#include <vector>

#include "holosim/common.hpp"
#include "holosim/config.hpp"
#include "holosim/core.hpp"
#include "holosim/pulse.hpp"

namespace holosim {

// Static device constants. All frequencies in rad/s, times in seconds.
// Qubit index 0 is Q1, index 1 is Q2; the resonator is the last subsystem.
struct DeviceParams {
  double omega_r = 0.0;                  // resonator frequency
  std::array<double, 2> omega{};         // qubit frequencies
  std::array<double, 2> alpha{};         // anharmonicities (negative)
  std::array<double, 2> g{};             // qubit-resonator couplings
  std::array<double, 2> t1_q{};          // qubit relaxation times
  double t1_r = 0.0;                     // resonator relaxation time
  HilbertSpace space = HilbertSpace::qubit_qubit_resonator();

  double delta(int qubit) const { return omega.at(qubit) - omega_r; }

  // Bare |f0> <-> |g1> drive frequency 2*omega_i + alpha_i - omega_r, before
  // any dressing or Stark corrections.
  double bare_f0g1_freq(int qubit) const {
    return 2.0 * omega.at(qubit) + alpha.at(qubit) - omega_r;
  }

  // Throws if the dispersive condition |delta_i| > 5 g_i, negative
  // anharmonicity or positive T1 requirements are violated.
  void validate() const;

  // Reads GHz / microsecond valued keys (omega_r_ghz, omega1_ghz, alpha1_ghz,
  // g1_ghz, t1_q1_us, t1_r_us, dims, ...) and converts to internal units.
  static DeviceParams from_config(const KeyValueConfig& cfg);
  static DeviceParams from_config_file(const std::string& path);

  // Device of the reference experiment.
  static DeviceParams paper_device();
};

// One microwave tone applied to a qubit charge line:
//   Omega(t) = Re{ scale * eta(t) * exp(-i (drive_freq * t + phase)) }.
// For a real scale this is |scale| eta(t) cos(drive_freq t + phase).
struct DrivePulse {
  int qubit = 0;
  EnvelopeSpec envelope;
  double drive_freq = 0.0;  // rad/s
  double phase = 0.0;       // rad
  Complex scale{1.0, 0.0};  // |scale| <= 1

  void validate(const DeviceParams& params) const;

  // Complex drive coefficient scale*eta(t)*exp(-i(w t + phase)); the physical
  // drive amplitude is its real part.
  Complex complex_drive(double t) const;
};

// Time-ordered drive schedule. Pulse times are offsets from schedule start.
struct PulseSchedule {
  std::vector<std::pair<double, DrivePulse>> pulses;  // (start time, pulse)
  double total_duration = 0.0;

  void validate() const;
  static PulseSchedule simultaneous(std::span<const DrivePulse> drives);
};

// Full lab-frame Hamiltonian of Eq-style transmon-resonator model at time t:
// resonator + anharmonic qubits + exchange coupling + real cosine drives.
// No rotating-wave approximation is applied at this level.
Operator hamiltonian(const DeviceParams& params, std::span<const DrivePulse> drives, double t);

// Undriven part of the lab-frame Hamiltonian.
Operator static_hamiltonian(const DeviceParams& params);

// Effective |f0> <-> |g1> coupling activated by a drive on `qubit`:
//   g_i alpha_i lambda eta / (sqrt(2) Delta_i (Delta_i + alpha_i)).
// Linear in both lambda and eta. Throws on the singular resonance conditions
// Delta_i = 0 or Delta_i + alpha_i = 0.
Complex effective_coupling(const DeviceParams& params, int qubit, Complex lambda, double eta);

// Parameters of the driven three-level Lambda system.
struct EffectiveParams {
  std::array<Complex, 2> gtilde{};  // couplings of |fg0>, |gf0> to |gg1>
  double delta_fg0 = 0.0;           // cross ac-Stark shift of |fg0>
  double delta_gf0 = 0.0;           // cross ac-Stark shift of |gf0>

  // Relative violation of the equal-rate condition gtilde_i/lambda_i equal
  // across drives.
  static double equal_rate_violation(Complex g1, Complex lambda1, Complex g2, Complex lambda2);
};

// 3x3 effective Hamiltonian in the ordered basis (|fg0>, |gf0>, |gg1>):
// diagonal (delta_fg0, delta_gf0, 0) with couplings gtilde_i to |gg1>.
Matrix effective_hamiltonian(const EffectiveParams& eff);

// Lindblad collapse operators: sqrt(1/T1) times the lowering operator of each
// qubit and of the resonator. Multi-level ladder decay inherits the sqrt(n)
// matrix elements, so |f> decays at rate 2/T1 under this convention.
std::vector<Operator> collapse_operators(const DeviceParams& params);

}  // namespace holosim
