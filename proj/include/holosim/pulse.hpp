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

#include <string>

#include "holosim/common.hpp"

namespace holosim {

enum class EnvelopeShape { square, flat_top_gaussian };

// Drive envelope eta(t) in angular units. The flat-top Gaussian rises and
// falls with Gaussian edges truncated at 2*sigma from the flat region and
// rescaled to reach zero at the support boundary, so the envelope is
// continuous everywhere and hits the full amplitude exactly at the top.
struct EnvelopeSpec {
  EnvelopeShape shape = EnvelopeShape::square;
  double amplitude = 0.0;    // peak eta (rad/s)
  double duration = 0.0;     // total support (s)
  double sigma = 0.0;        // Gaussian edge width (s), flat-top only
  double flat_length = 0.0;  // top duration (s), flat-top only

  static EnvelopeSpec square_pulse(double amplitude, double duration);
  // duration = flat_length + 4*sigma
  static EnvelopeSpec flat_top(double amplitude, double flat_length, double sigma);

  void validate() const;
};

// Envelope value at time t; zero outside [0, duration].
double envelope_value(const EnvelopeSpec& spec, double t);

// Integral of the envelope over its support (rad). Analytic for both shapes.
double envelope_area(const EnvelopeSpec& spec);

// Amplitude such that envelope_area equals target_area. The area is linear in
// amplitude, so this is a single division.
double solve_amplitude_for_area(const EnvelopeSpec& spec_without_amplitude, double target_area);

std::string to_string(EnvelopeShape shape);
EnvelopeShape envelope_shape_from_string(const std::string& name);

}  // namespace holosim
