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

#include "holosim/fit.hpp"

#include <algorithm>
#include <cmath>

namespace holosim {

FitResult levenberg_marquardt(const FitModel& model, std::span<const double> x,
                              std::span<const double> y, Eigen::VectorXd initial,
                              int max_iterations, double tol) {
  if (x.size() != y.size()) throw std::invalid_argument("levenberg_marquardt: size mismatch");
  const int n = static_cast<int>(x.size());
  const int p = static_cast<int>(initial.size());
  if (n < p) throw FitError("levenberg_marquardt: fewer points than parameters");

  Eigen::VectorXd params = std::move(initial);
  Eigen::VectorXd residual(n), grad(p), value_grad(p);
  Eigen::MatrixXd jacobian(n, p);

  auto evaluate = [&](const Eigen::VectorXd& q, Eigen::VectorXd& res, Eigen::MatrixXd* jac) {
    for (int i = 0; i < n; ++i) {
      double value;
      model(q, x[i], value, value_grad);
      res(i) = value - y[i];
      if (jac) jac->row(i) = value_grad;
    }
    return 0.5 * res.squaredNorm();
  };

  double cost = evaluate(params, residual, &jacobian);
  double mu = 1e-3;
  bool converged = false;

  for (int iter = 0; iter < max_iterations && !converged; ++iter) {
    const Eigen::MatrixXd jtj = jacobian.transpose() * jacobian;
    grad = jacobian.transpose() * residual;
    if (grad.lpNorm<Eigen::Infinity>() < tol * (1.0 + cost)) {
      converged = true;
      break;
    }

    bool stepped = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal() += mu * jtj.diagonal().cwiseMax(1e-12);
      const Eigen::VectorXd step = damped.ldlt().solve(-grad);
      if (!step.allFinite()) {
        mu *= 3.0;
        continue;
      }
      Eigen::VectorXd trial = params + step;
      Eigen::VectorXd trial_residual(n);
      const double trial_cost = evaluate(trial, trial_residual, nullptr);
      if (trial_cost <= cost) {
        const double rel_step = step.norm() / (params.norm() + 1e-300);
        params = std::move(trial);
        evaluate(params, residual, &jacobian);
        const double improvement = cost - trial_cost;
        cost = trial_cost;
        mu = std::max(mu / 3.0, 1e-14);
        stepped = true;
        if (rel_step < tol || improvement < tol * (1.0 + cost)) converged = true;
        break;
      }
      mu *= 3.0;
    }
    if (!stepped && !converged) throw FitError("levenberg_marquardt: damping exhausted");
  }
  if (!converged) throw FitError("levenberg_marquardt: no convergence");

  FitResult result;
  result.params = params;
  result.residual_norm = std::sqrt(2.0 * cost);
  const Eigen::MatrixXd jtj = jacobian.transpose() * jacobian;
  const double dof = std::max(1, n - p);
  const double sigma2 = 2.0 * cost / dof;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
  result.covariance = lu.isInvertible()
                          ? Eigen::MatrixXd(sigma2 * lu.inverse())
                          : Eigen::MatrixXd::Constant(p, p, std::numeric_limits<double>::infinity());
  return result;
}

FitResult fit_lorentzian(std::span<const double> freqs, std::span<const double> signal) {
  if (freqs.size() < 5) throw std::invalid_argument("fit_lorentzian: need at least 5 points");
  const auto [min_it, max_it] = std::minmax_element(signal.begin(), signal.end());
  const double span = *max_it - *min_it;
  const double scale = std::max(std::abs(*max_it), std::abs(*min_it));
  if (span <= 1e-12 * std::max(1.0, scale))
    throw FitError("fit_lorentzian: signal has no discernible extremum");

  // Decide between a peak and a dip by comparing extrema against the edges.
  const double edge = 0.5 * (signal.front() + signal.back());
  const bool is_peak = (*max_it - edge) >= (edge - *min_it);
  const size_t ext_idx = is_peak ? std::distance(signal.begin(), max_it)
                                 : std::distance(signal.begin(), min_it);

  const double width_guess =
      std::max(std::abs(freqs.back() - freqs.front()) / 10.0, 1e-12);
  Eigen::VectorXd initial(4);
  initial << (is_peak ? span : -span), freqs[ext_idx], width_guess, edge;

  auto model = [](const Eigen::VectorXd& q, double x, double& value, Eigen::VectorXd& grad) {
    const double amp = q(0), x0 = q(1), w = q(2), offset = q(3);
    const double u = (x - x0) / w;
    const double denom = 1.0 + u * u;
    value = offset + amp / denom;
    grad.resize(4);
    grad(0) = 1.0 / denom;
    grad(1) = amp * 2.0 * u / (w * denom * denom);
    grad(2) = amp * 2.0 * u * u / (w * denom * denom);
    grad(3) = 1.0;
  };
  FitResult result = levenberg_marquardt(model, freqs, signal, initial);
  result.params(2) = std::abs(result.params(2));  // width sign is a gauge
  if (result.params(1) < std::min(freqs.front(), freqs.back()) ||
      result.params(1) > std::max(freqs.front(), freqs.back()))
    throw FitError("fit_lorentzian: fitted center outside the scan range");
  return result;
}

namespace {

// Dominant nonzero frequency of the signal by coarse DFT, used to seed the
// sinusoid fit.
double dominant_frequency(std::span<const double> t, std::span<const double> y) {
  const int n = static_cast<int>(t.size());
  const double duration = t.back() - t.front();
  if (duration <= 0.0) return 0.0;
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= n;

  double best_f = 0.0, best_power = -1.0;
  const int bins = 4 * n;
  const double f_max = 0.5 * n / duration;  // Nyquist for roughly uniform sampling
  for (int k = 1; k <= bins; ++k) {
    const double f = f_max * k / bins;
    Complex acc{0.0, 0.0};
    for (int i = 0; i < n; ++i)
      acc += (y[i] - mean) * std::polar(1.0, -kTwoPi * f * t[i]);
    const double power = std::norm(acc);
    if (power > best_power) {
      best_power = power;
      best_f = f;
    }
  }
  return best_f;
}

}  // namespace

FitResult fit_decaying_sinusoid(std::span<const double> times, std::span<const double> signal,
                                double freq_guess) {
  if (times.size() < 6)
    throw std::invalid_argument("fit_decaying_sinusoid: need at least 6 points");
  double mean = 0.0;
  for (double v : signal) mean += v;
  mean /= signal.size();
  double amp = 0.0;
  for (double v : signal) amp = std::max(amp, std::abs(v - mean));
  if (freq_guess <= 0.0) freq_guess = dominant_frequency(times, signal);
  if (freq_guess <= 0.0) throw FitError("fit_decaying_sinusoid: no oscillation detected");

  Eigen::VectorXd initial(5);
  initial << amp, freq_guess, 0.0, 0.0, mean;

  auto model = [](const Eigen::VectorXd& q, double t, double& value, Eigen::VectorXd& grad) {
    const double amp = q(0), f = q(1), ph = q(2), rate = q(3), offset = q(4);
    const double damp = std::exp(-rate * t);
    const double arg = kTwoPi * f * t + ph;
    const double c = std::cos(arg), s = std::sin(arg);
    value = offset + amp * damp * c;
    grad.resize(5);
    grad(0) = damp * c;
    grad(1) = -amp * damp * s * kTwoPi * t;
    grad(2) = -amp * damp * s;
    grad(3) = -amp * t * damp * c;
    grad(4) = 1.0;
  };
  FitResult result = levenberg_marquardt(model, times, signal, initial);
  if (result.params(0) < 0.0) {  // canonical amplitude sign
    result.params(0) = -result.params(0);
    result.params(2) += kPi;
  }
  result.params(1) = std::abs(result.params(1));
  return result;
}

FitResult fit_gaussian_2d(std::span<const double> grid_x, std::span<const double> grid_y,
                          std::span<const double> signal) {
  const int nx = static_cast<int>(grid_x.size());
  const int ny = static_cast<int>(grid_y.size());
  if (nx < 6 || ny < 6) throw std::invalid_argument("fit_gaussian_2d: need at least a 6x6 grid");
  if (static_cast<int>(signal.size()) != nx * ny)
    throw std::invalid_argument("fit_gaussian_2d: signal size mismatch");

  // Flatten to 1-D sample list; x is recovered from the flat index.
  std::vector<double> idx(signal.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);

  const auto [min_it, max_it] = std::minmax_element(signal.begin(), signal.end());
  if (*max_it - *min_it <= 0.0) throw FitError("fit_gaussian_2d: flat signal");
  const size_t peak = std::distance(signal.begin(), max_it);
  const int px = static_cast<int>(peak) / ny;
  const int py = static_cast<int>(peak) % ny;

  Eigen::VectorXd initial(6);
  initial << *max_it - *min_it, grid_x[px], grid_y[py],
      std::abs(grid_x[nx - 1] - grid_x[0]) / 4.0, std::abs(grid_y[ny - 1] - grid_y[0]) / 4.0,
      *min_it;

  auto model = [&](const Eigen::VectorXd& q, double flat, double& value, Eigen::VectorXd& grad) {
    const int i = static_cast<int>(flat) / ny;
    const int j = static_cast<int>(flat) % ny;
    const double amp = q(0), x0 = q(1), y0 = q(2), sx = q(3), sy = q(4), offset = q(5);
    const double dx = (grid_x[i] - x0) / sx;
    const double dy = (grid_y[j] - y0) / sy;
    const double e = std::exp(-0.5 * (dx * dx + dy * dy));
    value = offset + amp * e;
    grad.resize(6);
    grad(0) = e;
    grad(1) = amp * e * dx / sx;
    grad(2) = amp * e * dy / sy;
    grad(3) = amp * e * dx * dx / sx;
    grad(4) = amp * e * dy * dy / sy;
    grad(5) = 1.0;
  };
  FitResult result = levenberg_marquardt(model, idx, signal, initial);
  result.params(3) = std::abs(result.params(3));
  result.params(4) = std::abs(result.params(4));
  if (result.params(1) < std::min(grid_x.front(), grid_x.back()) ||
      result.params(1) > std::max(grid_x.front(), grid_x.back()) ||
      result.params(2) < std::min(grid_y.front(), grid_y.back()) ||
      result.params(2) > std::max(grid_y.front(), grid_y.back()))
    throw FitError("fit_gaussian_2d: fitted center outside the grid");
  return result;
}

FitResult fit_polynomial(std::span<const double> x, std::span<const double> y, int degree) {
  if (degree < 0) throw std::invalid_argument("fit_polynomial: negative degree");
  const int n = static_cast<int>(x.size());
  const int p = degree + 1;
  if (n < p) throw FitError("fit_polynomial: fewer points than coefficients");
  Eigen::MatrixXd vand(n, p);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    double pw = 1.0;
    for (int j = 0; j < p; ++j) {
      vand(i, j) = pw;
      pw *= x[i];
    }
    rhs(i) = y[i];
  }
  FitResult result;
  result.params = vand.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXd residual = vand * result.params - rhs;
  result.residual_norm = residual.norm();
  const double dof = std::max(1, n - p);
  const double sigma2 = residual.squaredNorm() / dof;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(vand.transpose() * vand);
  result.covariance = lu.isInvertible()
                          ? Eigen::MatrixXd(sigma2 * lu.inverse())
                          : Eigen::MatrixXd::Constant(p, p, std::numeric_limits<double>::infinity());
  return result;
}

}  // namespace holosim
