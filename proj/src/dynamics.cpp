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

#include "holosim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace holosim {

std::string to_string(Frame frame) { return frame == Frame::lab ? "lab" : "rwa"; }

Frame frame_from_string(const std::string& name) {
  if (name == "lab") return Frame::lab;
  if (name == "rwa") return Frame::rwa;
  throw std::invalid_argument("unknown frame: " + name);
}

namespace {

std::vector<double> uniform_samples(double duration, int count) {
  if (count < 2) count = 2;
  std::vector<double> times(count);
  for (int i = 0; i < count; ++i)
    times[i] = duration * static_cast<double>(i) / static_cast<double>(count - 1);
  return times;
}

Vector phase_vector(const Eigen::VectorXd& freqs, double t) {
  Vector u(freqs.size());
  for (Eigen::Index i = 0; i < freqs.size(); ++i) u(i) = std::polar(1.0, freqs(i) * t);
  return u;
}

void check_norm(double value, double t, const char* what) {
  if (std::abs(value - 1.0) > 1e-4) {
    std::ostringstream msg;
    msg << what << " drifted to " << value << " at t = " << t * 1e9
        << " ns; integration aborted (tolerances too loose?)";
    throw std::runtime_error(msg.str());
  }
}

}  // namespace

std::string EvolutionResult::to_csv() const {
  std::ostringstream out;
  out << "time_ns";
  for (const auto& [label, series] : populations) out << ",p_" << label;
  out << "\n";
  char buf[32];
  for (size_t i = 0; i < times.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.9g", times[i] * 1e9);
    out << buf;
    for (const auto& [label, series] : populations) {
      std::snprintf(buf, sizeof(buf), "%.10g", series.at(i));
      out << ',' << buf;
    }
    out << "\n";
  }
  return out.str();
}

const std::vector<double>& population_timeseries(const EvolutionResult& result,
                                                 const std::string& label) {
  const auto it = result.populations.find(label);
  if (it == result.populations.end())
    throw std::invalid_argument("population_timeseries: label not sampled: " + label);
  return it->second;
}

EvolutionResult evolve_schrodinger(const HamiltonianFn& h, const QuantumState& psi0,
                                   double duration, const IntegratorConfig& cfg,
                                   int sample_count) {
  const int n = psi0.space.total_dim();
  EvolutionResult result;
  const auto samples = uniform_samples(duration, sample_count);
  for (int i = 0; i < n; ++i) result.populations[std::to_string(i)] = {};

  ode::Options opt{cfg.method, cfg.rel_tol, cfg.abs_tol, cfg.max_step};
  auto rhs = [&h](double t, const Vector& y) -> Vector { return -kImag * (h(t) * y); };

  Vector final_state = psi0.amplitudes;
  ode::integrate<Vector>(rhs, psi0.amplitudes, 0.0, duration, opt, samples,
                         [&](double t, const Vector& y) {
                           check_norm(y.norm(), t, "state norm");
                           result.times.push_back(t);
                           result.norm_trace.push_back(y.norm());
                           for (int i = 0; i < n; ++i)
                             result.populations[std::to_string(i)].push_back(std::norm(y(i)));
                           final_state = y;
                         });
  result.final_state = std::move(final_state);
  return result;
}

EvolutionResult evolve_lindblad(const HamiltonianFn& h, const DensityMatrix& rho0,
                                const std::vector<Matrix>& collapse, double duration,
                                const IntegratorConfig& cfg, int sample_count) {
  const int n = rho0.space.total_dim();
  EvolutionResult result;
  result.is_density = true;
  const auto samples = uniform_samples(duration, sample_count);
  for (int i = 0; i < n; ++i) result.populations[std::to_string(i)] = {};

  Matrix ksum = Matrix::Zero(n, n);
  for (const auto& l : collapse) ksum += l.adjoint() * l;

  ode::Options opt{cfg.method, cfg.rel_tol, cfg.abs_tol, cfg.max_step};
  auto rhs = [&](double t, const Matrix& rho) -> Matrix {
    const Matrix g = h(t) - 0.5 * kImag * ksum;
    Matrix x = g * rho;
    Matrix out = -kImag * (x - x.adjoint());
    for (const auto& l : collapse) out += l * rho * l.adjoint();
    return out;
  };

  Matrix final_density = rho0.matrix;
  ode::integrate<Matrix>(rhs, rho0.matrix, 0.0, duration, opt, samples,
                         [&](double t, const Matrix& rho) {
                           check_norm(rho.trace().real(), t, "density trace");
                           result.times.push_back(t);
                           result.norm_trace.push_back(rho.trace().real());
                           for (int i = 0; i < n; ++i)
                             result.populations[std::to_string(i)].push_back(rho(i, i).real());
                           final_density = rho;
                         });
  result.final_density = std::move(final_density);
  return result;
}

DeviceEvolution::DeviceEvolution(DeviceParams params, Frame frame)
    : params_(std::move(params)), frame_(frame) {
  params_.validate();
  nu_ = params_.omega_r;
  const auto& space = params_.space;
  const int n = space.total_dim();

  const Matrix h0 = static_hamiltonian(params_).matrix;

  excitation_.resize(n);
  std::map<int, std::vector<int>> sectors;
  for (int b = 0; b < n; ++b) {
    const auto labels = space.labels_of(b);
    int exc = 0;
    for (int l : labels) exc += l;
    excitation_(b) = exc;
    sectors[exc].push_back(b);
  }

  // The undriven Hamiltonian conserves total excitation, so diagonalize per
  // sector and match each dressed state to the bare state it overlaps most.
  w_ = Matrix::Zero(n, n);
  energy_.resize(n);
  frame_energy_.resize(n);
  for (const auto& [exc, indices] : sectors) {
    const int m = static_cast<int>(indices.size());
    Matrix block(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) block(r, c) = h0(indices[r], indices[c]);
    Eigen::SelfAdjointEigenSolver<Matrix> es(block);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("DeviceEvolution: eigensolver failed");

    struct Pair {
      double overlap;
      int row, col;
    };
    std::vector<Pair> pairs;
    pairs.reserve(m * m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        pairs.push_back({std::norm(es.eigenvectors()(r, c)), r, c});
    std::sort(pairs.begin(), pairs.end(),
              [](const Pair& a, const Pair& b) { return a.overlap > b.overlap; });

    std::vector<bool> row_used(m, false), col_used(m, false);
    int assigned = 0;
    for (const auto& p : pairs) {
      if (row_used[p.row] || col_used[p.col]) continue;
      row_used[p.row] = col_used[p.col] = true;
      ++assigned;
      worst_overlap_ = std::min(worst_overlap_, p.overlap);
      const int bare = indices[p.row];
      for (int r = 0; r < m; ++r) w_(indices[r], bare) = es.eigenvectors()(r, p.col);
      // Gauge: make the dominant (bare) component real positive.
      const Complex lead = w_(bare, bare);
      if (std::abs(lead) > 0.0) w_.col(bare) *= std::conj(lead) / std::abs(lead);
      energy_(bare) = es.eigenvalues()(p.col);
      if (assigned == m) break;
    }
  }
  if (worst_overlap_ < 0.5)
    throw std::runtime_error(
        "DeviceEvolution: dressed-bare matching ambiguous (overlap^2 < 0.5); "
        "device is outside the dispersive regime");

  for (int b = 0; b < n; ++b)
    frame_energy_(b) = frame_ == Frame::rwa ? energy_(b) - nu_ * excitation_(b) : energy_(b);

  for (int i = 0; i < 2; ++i) {
    const Matrix b = lowering_operator(space, i).matrix;
    lower_dressed_.push_back(w_.adjoint() * b * w_);
  }
  collapse_ksum_ = Matrix::Zero(n, n);
  for (const auto& op : collapse_operators(params_)) {
    Matrix l = w_.adjoint() * op.matrix * w_;
    collapse_ksum_ += l.adjoint() * l;
    collapse_dressed_.push_back(std::move(l));
  }
}

int DeviceEvolution::label_index(const std::string& label) const {
  const auto labels = parse_state_label(label, params_.space);
  return params_.space.index_of(labels);
}

QuantumState DeviceEvolution::dressed_state(const std::string& label) const {
  return QuantumState(params_.space, w_.col(label_index(label)));
}

double DeviceEvolution::dressed_energy(const std::string& label) const {
  return energy_(label_index(label));
}

double DeviceEvolution::transition_freq(const std::string& upper, const std::string& lower) const {
  return dressed_energy(upper) - dressed_energy(lower);
}

Matrix DeviceEvolution::to_dressed(const Matrix& rho_bare) const {
  return w_.adjoint() * rho_bare * w_;
}

Matrix DeviceEvolution::to_bare(const Matrix& rho_dressed) const {
  return w_ * rho_dressed * w_.adjoint();
}

Vector DeviceEvolution::initial_vector(const Request& req) const {
  const int n = params_.space.total_dim();
  if (req.initial) {
    if (req.initial->size() != n)
      throw std::invalid_argument("DeviceEvolution: initial vector dimension mismatch");
    return *req.initial;
  }
  const int idx = label_index(req.initial_label);
  if (req.initial_bare) return w_.adjoint().col(idx);
  Vector y = Vector::Zero(n);
  y(idx) = 1.0;
  return y;
}

std::vector<DeviceEvolution::ToneTerm> DeviceEvolution::build_terms(
    std::span<const DrivePulse> drives) const {
  std::vector<ToneTerm> terms;
  for (const auto& d : drives) {
    d.validate(params_);
    if (std::abs(d.scale) == 0.0 || d.envelope.amplitude == 0.0) continue;
    ToneTerm term;
    term.op = lower_dressed_[d.qubit];
    term.weight = d.scale;
    term.rot_freq = frame_ == Frame::rwa ? d.drive_freq - nu_ : d.drive_freq;
    term.phase = d.phase;
    term.envelope = &d.envelope;
    term.start = 0.0;
    terms.push_back(std::move(term));
  }
  return terms;
}

void DeviceEvolution::sample_populations(EvolutionResult& result, const Request& req,
                                         const std::vector<std::string>& labels, double t,
                                         const Vector* psi, const Matrix* rho) const {
  result.times.push_back(t);
  Vector bare_amps;
  Matrix bare_rho;
  if (req.bare_populations) {
    const Vector v = phase_vector(frame_energy_, -t);
    if (psi) bare_amps = w_ * v.cwiseProduct(*psi);
    if (rho) bare_rho = w_ * (v.asDiagonal() * (*rho) * v.conjugate().asDiagonal()) * w_.adjoint();
  }
  for (const auto& label : labels) {
    const int idx = label_index(label);
    double p = 0.0;
    if (psi) p = req.bare_populations ? std::norm(bare_amps(idx)) : std::norm((*psi)(idx));
    if (rho) p = req.bare_populations ? bare_rho(idx, idx).real() : (*rho)(idx, idx).real();
    result.populations[label].push_back(p);
  }
  if (psi) {
    check_norm(psi->norm(), t, "state norm");
    result.norm_trace.push_back(psi->norm());
  }
  if (rho) {
    check_norm(rho->trace().real(), t, "density trace");
    result.norm_trace.push_back(rho->trace().real());
  }
}

EvolutionResult DeviceEvolution::evolve(const Request& req) const {
  if (req.duration <= 0.0) throw std::invalid_argument("DeviceEvolution: duration must be > 0");
  const int n = params_.space.total_dim();
  const auto terms = build_terms(req.drives);

  std::vector<std::string> labels = req.population_labels;
  if (labels.empty()) labels = {"fg0", "gf0", "gg1", "gg0", "eg0", "ge0"};

  EvolutionResult result;
  for (const auto& label : labels) result.populations[label] = {};
  const auto samples = uniform_samples(req.duration, req.sample_count);

  ode::Options opt{req.integrator.method, req.integrator.rel_tol, req.integrator.abs_tol,
                   req.integrator.max_step};
  if (frame_ == Frame::lab) {
    // Resolve the drive carriers even if the error estimate would allow more.
    double max_freq = 0.0;
    for (const auto& term : terms) max_freq = std::max(max_freq, std::abs(term.rot_freq));
    if (max_freq > 0.0) {
      const double cap = kTwoPi / (20.0 * max_freq);
      opt.max_step = opt.max_step > 0.0 ? std::min(opt.max_step, cap) : cap;
    }
  }

  auto coeff = [this](const ToneTerm& term, double t) -> Complex {
    const double eta = envelope_value(*term.envelope, t - term.start);
    if (eta == 0.0) return {0.0, 0.0};
    const Complex rot = std::polar(1.0, -(term.rot_freq * t + term.phase));
    if (frame_ == Frame::rwa) return 0.5 * term.weight * eta * rot;
    return Complex((term.weight * eta * rot).real(), 0.0);
  };

  if (!req.lindblad) {
    Vector y0 = initial_vector(req);
    auto rhs = [&](double t, const Vector& y) -> Vector {
      const Vector u = phase_vector(frame_energy_, t);
      const Vector yt = u.conjugate().cwiseProduct(y);
      Vector acc = Vector::Zero(n);
      for (const auto& term : terms) {
        const Complex c = coeff(term, t);
        if (c == Complex{0.0, 0.0}) continue;
        acc.noalias() += c * (term.op.adjoint() * yt);
        acc.noalias() += std::conj(c) * (term.op * yt);
      }
      return -kImag * u.cwiseProduct(acc);
    };
    Vector y_final = y0;
    ode::integrate<Vector>(rhs, std::move(y0), 0.0, req.duration, opt, samples,
                           [&](double t, const Vector& y) {
                             sample_populations(result, req, labels, t, &y, nullptr);
                             y_final = y;
                           });
    // Dressed-basis coefficients including the frame phases.
    result.final_state =
        phase_vector(frame_energy_, -req.duration).cwiseProduct(y_final);
    return result;
  }

  // Lindblad path.
  result.is_density = true;
  const Vector y0 = initial_vector(req);
  Matrix rho0 = y0 * y0.adjoint();
  auto rhs = [&](double t, const Matrix& rho) -> Matrix {
    const Vector u = phase_vector(frame_energy_, t);
    const auto ud = u.asDiagonal();
    const auto ucd = u.conjugate().asDiagonal();
    const Matrix rho_t = ucd * rho * ud;
    Matrix v = Matrix::Zero(n, n);
    for (const auto& term : terms) {
      const Complex c = coeff(term, t);
      if (c == Complex{0.0, 0.0}) continue;
      v.noalias() += c * term.op.adjoint();
      v.noalias() += std::conj(c) * term.op;
    }
    v -= 0.5 * kImag * collapse_ksum_;
    Matrix x = v * rho_t;
    Matrix inner = -kImag * (x - x.adjoint());
    for (const auto& l : collapse_dressed_) inner.noalias() += l * rho_t * l.adjoint();
    return ud * inner * ucd;
  };
  Matrix rho_final = rho0;
  ode::integrate<Matrix>(rhs, std::move(rho0), 0.0, req.duration, opt, samples,
                         [&](double t, const Matrix& rho) {
                           sample_populations(result, req, labels, t, nullptr, &rho);
                           rho_final = rho;
                         });
  // Positivity is monitored at the end of the run, not silently enforced.
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_final, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-6)
      throw std::runtime_error("DeviceEvolution: density matrix lost positivity beyond -1e-6");
  }
  const Vector v = phase_vector(frame_energy_, -req.duration);
  result.final_density = v.asDiagonal() * rho_final * v.conjugate().asDiagonal();
  return result;
}

std::vector<double> DeviceEvolution::static_tone_populations(
    const DrivePulse& tone, const std::string& initial_label,
    const std::string& population_label, std::span<const double> times) const {
  const int idx = label_index(population_label);
  const int n = params_.space.total_dim();

  // Static RWA Hamiltonian in the frame rotating at the drive frequency.
  Matrix h = static_hamiltonian(params_).matrix;
  for (int b = 0; b < n; ++b) h(b, b) -= tone.drive_freq * excitation_(b);
  const Matrix b_op = lowering_operator(params_.space, tone.qubit).matrix;
  const Complex c = 0.5 * tone.scale * tone.envelope.amplitude * std::polar(1.0, -tone.phase);
  h += c * b_op.adjoint() + std::conj(c) * b_op;

  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("static_tone_populations: eigensolver failed");

  const Vector psi0 = w_.col(label_index(initial_label));
  const Vector coeffs = es.eigenvectors().adjoint() * psi0;
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    Vector evolved(n);
    for (int k = 0; k < n; ++k)
      evolved(k) = coeffs(k) * std::polar(1.0, -es.eigenvalues()(k) * t);
    const Vector psi = es.eigenvectors() * evolved;
    const Complex amp = w_.col(idx).adjoint() * psi;
    out.push_back(std::norm(amp));
  }
  return out;
}

std::vector<double> DeviceEvolution::static_tone_qubit_populations(
    const DrivePulse& tone, const std::string& initial_label, int qubit, int level,
    std::span<const double> times) const {
  const auto& space = params_.space;
  const int n = space.total_dim();

  Matrix h = static_hamiltonian(params_).matrix;
  for (int b = 0; b < n; ++b) h(b, b) -= tone.drive_freq * excitation_(b);
  const Matrix b_op = lowering_operator(space, tone.qubit).matrix;
  const Complex c = 0.5 * tone.scale * tone.envelope.amplitude * std::polar(1.0, -tone.phase);
  h += c * b_op.adjoint() + std::conj(c) * b_op;

  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("static_tone_qubit_populations: eigensolver failed");

  std::vector<int> level_indices;
  for (int b = 0; b < n; ++b)
    if (space.labels_of(b)[qubit] == level) level_indices.push_back(b);

  const Vector psi0 = w_.col(label_index(initial_label));
  const Vector coeffs = es.eigenvectors().adjoint() * psi0;
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    Vector evolved(n);
    for (int k = 0; k < n; ++k)
      evolved(k) = coeffs(k) * std::polar(1.0, -es.eigenvalues()(k) * t);
    const Vector psi = es.eigenvectors() * evolved;
    const Vector dressed = w_.adjoint() * psi;
    double p = 0.0;
    for (int b : level_indices) p += std::norm(dressed(b));
    out.push_back(p);
  }
  return out;
}

}  // namespace holosim
