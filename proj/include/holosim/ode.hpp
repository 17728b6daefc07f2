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

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>

#include "holosim/common.hpp"

namespace holosim::ode {

enum class StepMode { adaptive, fixed };

struct Options {
  StepMode mode = StepMode::adaptive;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step = 0.0;  // 0 = unrestricted (adaptive); step size (fixed)
  long max_steps = 50'000'000;
};

struct Stats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evals = 0;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat (5th order minus embedded 4th order) for the error estimate.
inline constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                        e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                        e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

template <typename State>
double error_norm(const State& err, const State& y0, const State& y1, double abs_tol,
                  double rel_tol) {
  const auto scale =
      (abs_tol + rel_tol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array()).matrix();
  const double rms = std::sqrt(
      (err.cwiseAbs().array() / scale.array()).square().sum() / static_cast<double>(err.size()));
  return rms;
}

// Cubic Hermite interpolation between accepted steps (dense output).
template <typename State>
State hermite(double theta, double h, const State& y0, const State& f0, const State& y1,
              const State& f1) {
  const double t2 = theta * theta;
  const double t3 = t2 * theta;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + theta;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * y0 + (h10 * h) * f0 + h01 * y1 + (h11 * h) * f1;
}

}  // namespace detail

// Integrates y' = rhs(t, y) from t0 to t1 with the Dormand-Prince 5(4)
// embedded pair (adaptive) or classic RK4 on a uniform grid (fixed mode).
// `on_sample(t, y)` is invoked for every entry of `sample_times` (ascending,
// within [t0, t1]); values between accepted steps come from cubic Hermite
// interpolation, the endpoint from the integration itself. Throws
// std::runtime_error on step-size underflow or step-budget exhaustion.
template <typename State, typename Rhs, typename SampleFn>
Stats integrate(Rhs&& rhs, State y, double t0, double t1, const Options& opt,
                std::span<const double> sample_times, SampleFn&& on_sample) {
  Stats stats;
  if (t1 <= t0) throw std::invalid_argument("ode::integrate: t1 must exceed t0");

  size_t next_sample = 0;
  auto emit_through = [&](double ta, const State& ya, const State& fa, double tb, const State& yb,
                          const State& fb) {
    while (next_sample < sample_times.size() && sample_times[next_sample] <= tb + 1e-18) {
      const double ts = sample_times[next_sample];
      if (ts >= tb - 1e-18) {
        on_sample(tb, yb);
      } else if (ts <= ta + 1e-18) {
        on_sample(ta, ya);
      } else {
        const double theta = (ts - ta) / (tb - ta);
        const State yi = detail::hermite(theta, tb - ta, ya, fa, yb, fb);
        on_sample(ts, yi);
      }
      ++next_sample;
    }
  };

  State f0 = rhs(t0, y);
  ++stats.rhs_evals;
  if (next_sample < sample_times.size() && sample_times[next_sample] <= t0 + 1e-18) {
    on_sample(t0, y);
    ++next_sample;
  }

  if (opt.mode == StepMode::fixed) {
    if (opt.max_step <= 0.0)
      throw std::invalid_argument("ode::integrate: fixed mode requires max_step");
    const long n = std::max<long>(1, static_cast<long>(std::ceil((t1 - t0) / opt.max_step)));
    const double h = (t1 - t0) / static_cast<double>(n);
    for (long i = 0; i < n; ++i) {
      const double t = t0 + h * static_cast<double>(i);
      const State k1 = f0;
      const State k2 = rhs(t + 0.5 * h, y + (0.5 * h) * k1);
      const State k3 = rhs(t + 0.5 * h, y + (0.5 * h) * k2);
      const State k4 = rhs(t + h, y + h * k3);
      State y1 = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const double t_new = (i + 1 == n) ? t1 : t + h;
      State f1 = rhs(t_new, y1);
      stats.rhs_evals += 4;
      ++stats.accepted;
      emit_through(t, y, f0, t_new, y1, f1);
      y.swap(y1);
      f0.swap(f1);
    }
    return stats;
  }

  double t = t0;
  double h = (t1 - t0) / 100.0;
  if (opt.max_step > 0.0) h = std::min(h, opt.max_step);

  while (t < t1) {
    if (stats.accepted + stats.rejected > opt.max_steps)
      throw std::runtime_error("ode::integrate: step budget exhausted");
    if (h < 1e-16 * std::max(1.0, std::abs(t)))
      throw std::runtime_error("ode::integrate: step size underflow");
    if (t + h > t1) h = t1 - t;

    using namespace detail;
    const State& k1 = f0;
    const State k2 = rhs(t + c2 * h, y + (a21 * h) * k1);
    const State k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const State k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const State k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const State k6 =
        rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    State y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    State f1 = rhs(t + h, y1);  // FSAL stage
    stats.rhs_evals += 6;

    const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * f1);
    const double err_norm = error_norm(err, y, y1, opt.abs_tol, opt.rel_tol);

    if (err_norm <= 1.0) {
      const double t_new = t + h;
      ++stats.accepted;
      emit_through(t, y, f0, t_new, y1, f1);
      t = t_new;
      y.swap(y1);
      f0.swap(f1);
    } else {
      ++stats.rejected;
    }

    const double factor =
        std::clamp(0.9 * std::pow(std::max(err_norm, 1e-10), -0.2), 0.2, 5.0);
    h *= factor;
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
  }

  // Flush samples that coincide with t1 up to roundoff.
  while (next_sample < sample_times.size()) {
    on_sample(t1, y);
    ++next_sample;
  }
  return stats;
}

// Convenience overload: integrate to t1 and return the final state.
template <typename State, typename Rhs>
State integrate_to(Rhs&& rhs, State y0, double t0, double t1, const Options& opt,
                   Stats* stats_out = nullptr) {
  State result = y0;
  const double samples[1] = {t1};
  auto stats = integrate(std::forward<Rhs>(rhs), std::move(y0), t0, t1, opt,
                         std::span<const double>(samples, 1),
                         [&](double, const State& y) { result = y; });
  if (stats_out) *stats_out = stats;
  return result;
}

}  // namespace holosim::ode
