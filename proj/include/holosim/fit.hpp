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

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "holosim/common.hpp"

namespace holosim {

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FitResult {
  Eigen::VectorXd params;
  Eigen::MatrixXd covariance;
  double residual_norm = 0.0;
};

// model(params, x, value&, gradient&): y(x) and dy/dparams at one point.
using FitModel =
    std::function<void(const Eigen::VectorXd&, double, double&, Eigen::VectorXd&)>;

// Damped least squares (Levenberg-Marquardt) with analytic Jacobians.
// Throws FitError after max_iterations without convergence.
FitResult levenberg_marquardt(const FitModel& model, std::span<const double> x,
                              std::span<const double> y, Eigen::VectorXd initial,
                              int max_iterations = 200, double tol = 1e-12);

// Lorentzian o + A / (1 + ((x-x0)/w)^2); params (A, x0, w, o), w = HWHM.
// Initialization from the extremum; throws FitError when the signal has no
// discernible peak or dip.
FitResult fit_lorentzian(std::span<const double> freqs, std::span<const double> signal);

// o + A exp(-r t) cos(2 pi f t + p); params (A, f, p, r, o).
FitResult fit_decaying_sinusoid(std::span<const double> times, std::span<const double> signal,
                                double freq_guess = 0.0);

// o + A exp(-(x-x0)^2/(2 sx^2) - (y-y0)^2/(2 sy^2)) on the tensor grid
// grid_x (x) grid_y; signal in row-major order (x slowest). Params
// (A, x0, y0, sx, sy, o). Requires at least a 6x6 grid.
FitResult fit_gaussian_2d(std::span<const double> grid_x, std::span<const double> grid_y,
                          std::span<const double> signal);

// Ordinary least squares for a polynomial of the given degree; returns
// coefficients (c0, c1, ..., c_degree).
FitResult fit_polynomial(std::span<const double> x, std::span<const double> y, int degree);

}  // namespace holosim
