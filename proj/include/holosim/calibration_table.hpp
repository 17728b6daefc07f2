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
#include <string>

#include "holosim/common.hpp"

namespace holosim {

// Drive amplitudes are expressed as a voltage-like unit V mapped linearly to
// the envelope peak eta. The hardware V-to-field conversion is not
// recoverable, so the mapping is a convention stored with the table.
inline constexpr double kDefaultEtaPerVolt = kTwoPi * 1.0e9;  // rad/s per V

// Fitted Stark-shift corrections produced by the calibration protocol and
// consumed by drive synthesis. Frequencies in GHz, curvatures in GHz/V^2,
// matching the conventions of the device datasheets.
struct CalibrationTable {
  // Per-qubit single-tone fit: f0g1 frequency (GHz) = a V^2 + b.
  std::array<double, 2> stark_a{};  // GHz/V^2
  std::array<double, 2> stark_b{};  // GHz

  // Per-drive quadratic-in-theta fit of the compensated two-tone drive
  // frequency (GHz): c0 + c1*theta + c2*theta^2.
  std::array<std::array<double, 3>, 2> cross_stark{};
  bool has_cross_stark = false;

  // Amplitude (V) at which the fitted single-tone population-oscillation
  // frequency equals rabi_rate_mhz.
  std::array<double, 2> rabi_amp{};
  double rabi_rate_mhz = 0.0;

  double eta_per_volt = kDefaultEtaPerVolt;

  // Single-tone corrected drive frequency at amplitude V (GHz).
  double single_tone_freq_ghz(int qubit, double v) const {
    return stark_a.at(qubit) * v * v + stark_b.at(qubit);
  }

  // Two-tone compensated drive frequency at rotation angle theta (GHz).
  double cross_freq_ghz(int drive, double theta) const {
    const auto& c = cross_stark.at(drive);
    return c[0] + c[1] * theta + c[2] * theta * theta;
  }

  // Per-unit-lambda Hamiltonian coupling slope d g~ / d eta (unitless), from
  // the Rabi calibration point. The fitted oscillation frequency f relates to
  // the Hamiltonian coupling as g~ = pi f.
  double coupling_slope(int qubit) const;

  void save(const std::string& path) const;
  static CalibrationTable load(const std::string& path);
};

}  // namespace holosim
