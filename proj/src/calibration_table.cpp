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

#include "holosim/calibration_table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "holosim/config.hpp"

namespace holosim {

double CalibrationTable::coupling_slope(int qubit) const {
  if (rabi_rate_mhz <= 0.0 || rabi_amp.at(qubit) <= 0.0)
    throw std::runtime_error("CalibrationTable: Rabi calibration missing");
  // Fitted oscillation frequency f maps to the Hamiltonian coupling pi*f.
  const double g_ham = kPi * rabi_rate_mhz * 1e6;  // rad/s
  const double eta = rabi_amp[qubit] * eta_per_volt;
  return g_ham / eta;
}

void CalibrationTable::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("CalibrationTable: cannot write " + path);
  char buf[64];
  auto emit = [&](const char* key, double value) {
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    out << key << " = " << buf << "\n";
  };
  out << "# ac-Stark calibration: f0g1 drive frequency (GHz) = a V^2 + b\n";
  emit("stark_a1_ghz_per_v2", stark_a[0]);
  emit("stark_b1_ghz", stark_b[0]);
  emit("stark_a2_ghz_per_v2", stark_a[1]);
  emit("stark_b2_ghz", stark_b[1]);
  out << "# Rabi-rate calibration point\n";
  emit("rabi_amp1_v", rabi_amp[0]);
  emit("rabi_amp2_v", rabi_amp[1]);
  emit("rabi_rate_mhz", rabi_rate_mhz);
  emit("eta_per_volt_rad_s", eta_per_volt);
  out << "# two-tone drive frequency (GHz) = c0 + c1 theta + c2 theta^2\n";
  out << "has_cross_stark = " << (has_cross_stark ? "true" : "false") << "\n";
  if (has_cross_stark) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) {
        const std::string key =
            "cross_c" + std::to_string(j) + "_drive" + std::to_string(i + 1);
        emit(key.c_str(), cross_stark[i][j]);
      }
  }
}

CalibrationTable CalibrationTable::load(const std::string& path) {
  const KeyValueConfig cfg = KeyValueConfig::from_file(path);
  CalibrationTable t;
  t.stark_a = {cfg.get_double("stark_a1_ghz_per_v2"), cfg.get_double("stark_a2_ghz_per_v2")};
  t.stark_b = {cfg.get_double("stark_b1_ghz"), cfg.get_double("stark_b2_ghz")};
  t.rabi_amp = {cfg.get_double("rabi_amp1_v"), cfg.get_double("rabi_amp2_v")};
  t.rabi_rate_mhz = cfg.get_double("rabi_rate_mhz");
  t.eta_per_volt = cfg.get_double("eta_per_volt_rad_s", kDefaultEtaPerVolt);
  t.has_cross_stark = cfg.get_bool("has_cross_stark", false);
  if (t.has_cross_stark) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j)
        t.cross_stark[i][j] = cfg.get_double("cross_c" + std::to_string(j) + "_drive" +
                                             std::to_string(i + 1));
  }
  return t;
}

}  // namespace holosim
