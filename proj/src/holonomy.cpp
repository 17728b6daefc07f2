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

#include "holosim/holonomy.hpp"

#include <cmath>
#include <stdexcept>

#include "holosim/pulse.hpp"

namespace holosim {

void HolonomyParams::validate(double tol) const {
  const double norm = std::norm(lambda1) + std::norm(lambda2);
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("HolonomyParams: |lambda1|^2 + |lambda2|^2 != 1");
  if (theta < -tol || theta > kPi + tol)
    throw std::invalid_argument("HolonomyParams: theta outside [0, pi]");
  if (std::abs(lambda2) > tol) {
    const Complex expected = -std::polar(std::tan(theta / 2.0), phi);
    if (std::abs(lambda1 / lambda2 - expected) > tol * (1.0 + std::abs(expected)))
      throw std::invalid_argument("HolonomyParams: lambda ratio inconsistent with (theta, phi)");
  }
}

HolonomyParams params_from_theta_phi(double theta, double phi) {
  if (theta < 0.0 || theta > kPi)
    throw std::invalid_argument("params_from_theta_phi: theta outside [0, pi]");
  HolonomyParams p;
  p.theta = theta;
  p.phi = std::fmod(phi, kTwoPi);
  if (p.phi < 0.0) p.phi += kTwoPi;
  // lambda2 real nonnegative gauge; at theta = pi the pair degenerates to a
  // pure phase on lambda1.
  p.lambda1 = -std::polar(std::sin(theta / 2.0), p.phi);
  p.lambda2 = Complex{std::cos(theta / 2.0), 0.0};
  return p;
}

std::pair<double, double> theta_phi_from_params(const HolonomyParams& params) {
  const double theta = 2.0 * std::atan2(std::abs(params.lambda1), std::abs(params.lambda2));
  double phi;
  if (std::abs(params.lambda2) > 1e-12) {
    phi = std::arg(-params.lambda1 / params.lambda2);
  } else {
    phi = std::arg(-params.lambda1);
  }
  if (phi < 0.0) phi += kTwoPi;
  if (std::abs(params.lambda1) < 1e-15) phi = 0.0;  // theta = 0: phase unphysical
  return {theta, phi};
}

void HolonomicGate::validate(double tol) const {
  if (matrix.rows() != 2 || matrix.cols() != 2)
    throw std::invalid_argument("HolonomicGate: expected a 2x2 matrix");
  const Matrix id = Matrix::Identity(2, 2);
  if ((matrix * matrix.adjoint() - id).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("HolonomicGate: not unitary");
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("HolonomicGate: not Hermitian");
  if ((matrix * matrix - id).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("HolonomicGate: not involutive");
  const Complex det = matrix(0, 0) * matrix(1, 1) - matrix(0, 1) * matrix(1, 0);
  if (std::abs(det + 1.0) > tol)
    throw std::invalid_argument("HolonomicGate: determinant != -1");
}

HolonomicGate gate_matrix(const HolonomyParams& params) {
  params.validate();
  Matrix u(2, 2);
  u(0, 0) = std::cos(params.theta);
  u(0, 1) = std::polar(std::sin(params.theta), params.phi);
  u(1, 0) = std::polar(std::sin(params.theta), -params.phi);
  u(1, 1) = -std::cos(params.theta);
  return HolonomicGate{std::move(u)};
}

Matrix a_matrix(const HolonomyParams& params) {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 1) = params.lambda1;
  a(1, 0) = std::conj(params.lambda1);
  a(1, 2) = params.lambda2;
  a(2, 1) = std::conj(params.lambda2);
  return a;
}

Matrix closed_form_propagator(const HolonomyParams& params, double g_area) {
  const Matrix a = a_matrix(params);
  const Matrix a2 = a * a;
  return Matrix::Identity(3, 3) + a2 * (std::cos(g_area) - 1.0) -
         kImag * a * std::sin(g_area);
}

double verify_parallel_transport(const HolonomyParams& params, std::span<const double> g_grid,
                                 Complex alpha, Complex beta) {
  const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (norm <= 0.0) throw std::invalid_argument("verify_parallel_transport: zero basis vector");
  alpha /= norm;
  beta /= norm;

  const Matrix a = a_matrix(params);
  Vector psi1(3), psi2(3);
  psi1 << alpha, 0.0, beta;
  psi2 << std::conj(beta), 0.0, -std::conj(alpha);

  double worst = 0.0;
  for (double g : g_grid) {
    const Matrix u = closed_form_propagator(params, g);
    const Vector v1 = u * psi1;
    const Vector v2 = u * psi2;
    const Vector av1 = a * v1;
    const Vector av2 = a * v2;
    worst = std::max(worst, std::abs(v1.dot(av1)));
    worst = std::max(worst, std::abs(v1.dot(av2)));
    worst = std::max(worst, std::abs(v2.dot(av1)));
    worst = std::max(worst, std::abs(v2.dot(av2)));
  }
  return worst;
}

double subspace_leakage(const HolonomyParams& params, double g_area) {
  const Matrix u = closed_form_propagator(params, g_area);
  // |gg1> components picked up by the qubit-subspace basis vectors.
  return std::max(std::abs(u(1, 0)), std::abs(u(1, 2)));
}

CyclicityReport verify_cyclicity(const HolonomyParams& params, double tol) {
  CyclicityReport report;
  report.leakage = subspace_leakage(params, kPi);
  report.cyclic = report.leakage < tol;
  return report;
}

std::pair<DrivePulse, DrivePulse> synthesize_drives(const HolonomyParams& params,
                                                    const DeviceParams& device,
                                                    const CalibrationTable& table,
                                                    const SynthesisOptions& options) {
  params.validate();
  if (table.rabi_rate_mhz <= 0.0 || table.rabi_amp[0] <= 0.0 || table.rabi_amp[1] <= 0.0)
    throw std::invalid_argument("synthesize_drives: calibration table lacks Rabi amplitudes");

  EnvelopeSpec envelope;
  switch (options.shape) {
    case EnvelopeShape::square:
      envelope = EnvelopeSpec::square_pulse(1.0, options.total_duration);
      break;
    case EnvelopeShape::flat_top_gaussian:
      envelope = EnvelopeSpec::flat_top(1.0, options.flat_length, options.sigma);
      break;
  }

  // Cyclic evolution: the per-unit-lambda coupling integrates to pi.
  const double unit_area = envelope_area(envelope);  // seconds at unit amplitude
  const double g_peak = kPi / unit_area;             // rad/s

  std::array<DrivePulse, 2> drives;
  const std::array<Complex, 2> lambdas{params.lambda1, params.lambda2};
  for (int i = 0; i < 2; ++i) {
    const double slope = table.coupling_slope(i);
    const double eta_peak = g_peak / slope;  // per-unit-lambda envelope peak
    if (eta_peak * std::abs(lambdas[i]) > options.amplitude_ceiling)
      throw std::runtime_error("synthesize_drives: amplitude exceeds the configured ceiling");

    DrivePulse d;
    d.qubit = i;
    d.envelope = envelope;
    d.envelope.amplitude = eta_peak;
    d.scale = std::abs(lambdas[i]);
    d.phase = i == 0 ? 0.0 : -params.phi;

    const double v = eta_peak * std::abs(lambdas[i]) / table.eta_per_volt;
    const double freq_ghz = table.has_cross_stark ? table.cross_freq_ghz(i, params.theta)
                                                  : table.single_tone_freq_ghz(i, v);
    d.drive_freq = ghz_to_rad(freq_ghz);
    drives[i] = std::move(d);
  }
  (void)device;
  return {drives[0], drives[1]};
}

}  // namespace holosim
