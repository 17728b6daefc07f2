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

#include <span>
#include <utility>

#include "holosim/calibration_table.hpp"
#include "holosim/common.hpp"
#include "holosim/device.hpp"

namespace holosim {

// Scaling pair (lambda1, lambda2) of the two-tone drive together with the
// rotation angles it realizes:
//   -e^{i phi} tan(theta/2) = lambda1 / lambda2,  |lambda1|^2 + |lambda2|^2 = 1.
// Gauge: lambda2 real nonnegative.
struct HolonomyParams {
  Complex lambda1{0.0, 0.0};
  Complex lambda2{1.0, 0.0};
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  void validate(double tol = 1e-9) const;
};

HolonomyParams params_from_theta_phi(double theta, double phi);
// Inverse of params_from_theta_phi. For theta = pi (lambda2 = 0) the phase is
// recovered from lambda1 alone.
std::pair<double, double> theta_phi_from_params(const HolonomyParams& params);

// The two-qubit operation on the ordered basis (|fg>, |gf>):
//   ( cos theta              e^{i phi} sin theta )
//   ( e^{-i phi} sin theta  -cos theta           )
// Unitary, Hermitian and involutive with determinant -1.
struct HolonomicGate {
  Matrix matrix;  // 2x2
  void validate(double tol = 1e-12) const;
};

HolonomicGate gate_matrix(const HolonomyParams& params);

// Coupling-structure matrix A on the ordered basis (|fg0>, |gg1>, |gf0>);
// satisfies A^3 = A because |lambda1|^2 + |lambda2|^2 = 1.
Matrix a_matrix(const HolonomyParams& params);

// Exact propagator exp(-i G A) = I + A^2 (cos G - 1) - i A sin G for the
// accumulated pulse area G. At G = pi this reduces to I - 2 A^2.
Matrix closed_form_propagator(const HolonomyParams& params, double g_area);

// Max |<psi_j(G)| A |psi_k(G)>| over the G grid, starting from the
// orthonormal pair alpha|fg0> + beta|gf0> and beta*|fg0> - alpha*|gf0>.
// Exactly zero in exact arithmetic for any valid params.
double verify_parallel_transport(const HolonomyParams& params, std::span<const double> g_grid,
                                 Complex alpha = {1.0, 0.0}, Complex beta = {0.0, 0.0});

// Largest |gg1> amplitude left after applying the propagator at area G to the
// qubit-subspace basis vectors.
double subspace_leakage(const HolonomyParams& params, double g_area);

struct CyclicityReport {
  bool cyclic = false;
  double leakage = 0.0;  // |gg1> amplitude magnitude after a G = pi pulse
};

// Checks that the G = pi propagator maps span{|fg0>, |gf0>} to itself.
CyclicityReport verify_cyclicity(const HolonomyParams& params, double tol = 1e-12);

struct SynthesisOptions {
  double total_duration = 213e-9;          // pulse length (s)
  EnvelopeShape shape = EnvelopeShape::square;
  double flat_length = 0.0;                // flat-top only (s)
  double sigma = 0.0;                      // flat-top only (s)
  double amplitude_ceiling = kTwoPi * 2.0e9;  // max envelope peak (rad/s)
};

// Builds the two-tone drive realizing the target operation on the calibrated
// device: amplitudes scaled by |lambda_i| with the per-unit-lambda pulse area
// set to pi, frequencies from the calibration table (cross-Stark polynomials
// when available, single-tone curves otherwise), phases phi_1 = 0 and
// phi_2 = -phi. Throws if an amplitude would exceed the ceiling.
std::pair<DrivePulse, DrivePulse> synthesize_drives(const HolonomyParams& params,
                                                    const DeviceParams& device,
                                                    const CalibrationTable& table,
                                                    const SynthesisOptions& options);

}  // namespace holosim
