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

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace holosim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kImag{0.0, 1.0};

// Frequencies are stored internally in angular units (rad/s); configs and
// reports use ordinary frequency in GHz/MHz as in the device datasheets.
inline constexpr double ghz_to_rad(double f_ghz) { return kTwoPi * f_ghz * 1e9; }
inline constexpr double rad_to_ghz(double w) { return w / (kTwoPi * 1e9); }
inline constexpr double mhz_to_rad(double f_mhz) { return kTwoPi * f_mhz * 1e6; }
inline constexpr double rad_to_mhz(double w) { return w / (kTwoPi * 1e6); }

inline constexpr double ns_to_s(double t_ns) { return t_ns * 1e-9; }
inline constexpr double s_to_ns(double t_s) { return t_s * 1e9; }
inline constexpr double us_to_s(double t_us) { return t_us * 1e-6; }

}  // namespace holosim
