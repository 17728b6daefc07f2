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

#include "holosim/pulse.hpp"

#include <cmath>
#include <stdexcept>

namespace holosim {

EnvelopeSpec EnvelopeSpec::square_pulse(double amplitude, double duration) {
  EnvelopeSpec spec;
  spec.shape = EnvelopeShape::square;
  spec.amplitude = amplitude;
  spec.duration = duration;
  spec.validate();
  return spec;
}

EnvelopeSpec EnvelopeSpec::flat_top(double amplitude, double flat_length, double sigma) {
  EnvelopeSpec spec;
  spec.shape = EnvelopeShape::flat_top_gaussian;
  spec.amplitude = amplitude;
  spec.flat_length = flat_length;
  spec.sigma = sigma;
  spec.duration = flat_length + 4.0 * sigma;
  spec.validate();
  return spec;
}

void EnvelopeSpec::validate() const {
  if (amplitude < 0.0) throw std::invalid_argument("EnvelopeSpec: amplitude < 0");
  if (duration <= 0.0) throw std::invalid_argument("EnvelopeSpec: duration <= 0");
  if (shape == EnvelopeShape::flat_top_gaussian) {
    if (sigma < 0.0 || flat_length < 0.0)
      throw std::invalid_argument("EnvelopeSpec: negative flat-top parameters");
    if (duration + 1e-15 < flat_length)
      throw std::invalid_argument("EnvelopeSpec: duration < flat_length");
  }
}

namespace {

// Rising edge profile on [0, 2*sigma]: truncated Gaussian rescaled so the
// value is 0 at s=0 and 1 at s=2*sigma.
double edge_profile(double s, double sigma) {
  const double g = std::exp(-0.5 * std::pow((s - 2.0 * sigma) / sigma, 2));
  const double g0 = std::exp(-2.0);
  return (g - g0) / (1.0 - g0);
}

// Integral of edge_profile over [0, 2*sigma].
double edge_area(double sigma) {
  // erf form of the truncated, rescaled Gaussian integral
  const double g0 = std::exp(-2.0);
  const double gauss_part = sigma * std::sqrt(kPi / 2.0) * std::erf(std::sqrt(2.0));
  return (gauss_part - 2.0 * sigma * g0) / (1.0 - g0);
}

}  // namespace

double envelope_value(const EnvelopeSpec& spec, double t) {
  if (t < 0.0 || t > spec.duration) return 0.0;
  switch (spec.shape) {
    case EnvelopeShape::square:
      return spec.amplitude;
    case EnvelopeShape::flat_top_gaussian: {
      const double rise = 2.0 * spec.sigma;
      const double top_end = rise + spec.flat_length;
      const double fall_end = top_end + rise;
      if (spec.sigma == 0.0) return t <= spec.flat_length ? spec.amplitude : 0.0;
      if (t < rise) return spec.amplitude * edge_profile(t, spec.sigma);
      if (t <= top_end) return spec.amplitude;
      if (t < fall_end) return spec.amplitude * edge_profile(fall_end - t, spec.sigma);
      return 0.0;
    }
  }
  return 0.0;
}

double envelope_area(const EnvelopeSpec& spec) {
  switch (spec.shape) {
    case EnvelopeShape::square:
      return spec.amplitude * spec.duration;
    case EnvelopeShape::flat_top_gaussian:
      return spec.amplitude * (spec.flat_length + 2.0 * edge_area(spec.sigma));
  }
  return 0.0;
}

double solve_amplitude_for_area(const EnvelopeSpec& spec_without_amplitude, double target_area) {
  if (target_area <= 0.0)
    throw std::invalid_argument("solve_amplitude_for_area: target area must be positive");
  EnvelopeSpec unit = spec_without_amplitude;
  unit.amplitude = 1.0;
  unit.validate();
  const double unit_area = envelope_area(unit);
  if (unit_area <= 0.0)
    throw std::invalid_argument("solve_amplitude_for_area: envelope has zero area");
  return target_area / unit_area;
}

std::string to_string(EnvelopeShape shape) {
  return shape == EnvelopeShape::square ? "square" : "flat_top_gaussian";
}

EnvelopeShape envelope_shape_from_string(const std::string& name) {
  if (name == "square") return EnvelopeShape::square;
  if (name == "flat_top_gaussian" || name == "flat_top") return EnvelopeShape::flat_top_gaussian;
  throw std::invalid_argument("unknown envelope shape: " + name);
}

}  // namespace holosim
