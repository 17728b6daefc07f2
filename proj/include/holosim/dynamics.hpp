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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holosim/common.hpp"
#include "holosim/core.hpp"
#include "holosim/device.hpp"
#include "holosim/ode.hpp"

namespace holosim {

// Integration frame. The lab frame keeps the real cosine drives of the full
// Hamiltonian; the rwa frame rotates all modes at the resonator frequency and
// keeps only the co-rotating drive terms, which removes the GHz carriers and
// makes parameter sweeps tractable.
enum class Frame { lab, rwa };

std::string to_string(Frame frame);
Frame frame_from_string(const std::string& name);

struct IntegratorConfig {
  ode::StepMode method = ode::StepMode::adaptive;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step = 0.0;  // 0 = automatic
  Frame frame = Frame::rwa;
};

// Sampled time evolution. Populations are keyed by basis-state label and the
// final state is reported in the basis the evolution was set up with.
struct EvolutionResult {
  std::vector<double> times;                             // seconds
  std::map<std::string, std::vector<double>> populations;
  std::vector<double> norm_trace;                        // |psi| or tr(rho) per sample
  Vector final_state;                                    // pure path
  Matrix final_density;                                  // density path
  bool is_density = false;

  // CSV with a time_ns column plus one column per population label.
  std::string to_csv() const;
};

// Per-label series lookup; throws if a label was not sampled.
const std::vector<double>& population_timeseries(const EvolutionResult& result,
                                                 const std::string& label);

using HamiltonianFn = std::function<Matrix(double)>;

// Direct integration of i psi' = H(t) psi for an arbitrary Hamiltonian
// callback. Populations are keyed by flat basis index ("0", "1", ...).
// Norm drift beyond 1e-4 aborts with a diagnostic.
EvolutionResult evolve_schrodinger(const HamiltonianFn& h, const QuantumState& psi0,
                                   double duration, const IntegratorConfig& cfg,
                                   int sample_count = 2);

// Direct integration of the Lindblad master equation for an arbitrary
// Hamiltonian callback and collapse operator set. Trace drift beyond 1e-4
// aborts with a diagnostic.
EvolutionResult evolve_lindblad(const HamiltonianFn& h, const DensityMatrix& rho0,
                                const std::vector<Matrix>& collapse, double duration,
                                const IntegratorConfig& cfg, int sample_count = 2);

// Time-evolution engine for the full device model. Diagonalizes the undriven
// Hamiltonian once (block-wise per excitation number, so every dressed state
// carries an exact excitation count), matches dressed states to bare labels
// by overlap, and integrates drive dynamics in the interaction picture of the
// dressed spectrum. State preparation and population readout default to the
// dressed basis, which is what the experiment addresses.
class DeviceEvolution {
 public:
  DeviceEvolution(DeviceParams params, Frame frame);

  const DeviceParams& device() const { return params_; }
  Frame frame() const { return frame_; }
  double rotation_freq() const { return nu_; }

  // Dressed state matched to a bare label, as amplitudes in the bare basis.
  QuantumState dressed_state(const std::string& label) const;
  // Lab-frame energy of the dressed state matched to a bare label.
  double dressed_energy(const std::string& label) const;
  // Lab-frame dressed transition frequency E(a) - E(b).
  double transition_freq(const std::string& upper, const std::string& lower) const;
  // Smallest bare-to-dressed overlap^2 across the matching; diagnostics.
  double worst_match_overlap() const { return worst_overlap_; }

  struct Request {
    std::vector<DrivePulse> drives;
    double duration = 0.0;
    std::string initial_label = "fg0";
    bool initial_bare = false;        // prepare the bare state instead of the dressed one
    std::optional<Vector> initial;    // explicit dressed-coefficient vector
    bool lindblad = false;            // include the device collapse operators
    IntegratorConfig integrator;
    int sample_count = 2;
    std::vector<std::string> population_labels;  // default: standard transfer set
    bool bare_populations = false;    // report bare-basis populations instead
  };

  // Final state is reported as dressed-basis coefficients (label-indexed).
  EvolutionResult evolve(const Request& req) const;

  // Exact propagation under one constant-amplitude tone: in the frame
  // rotating at the drive frequency the RWA Hamiltonian is static, so the
  // propagator is a single matrix exponential. `amplitude` overrides the
  // envelope peak. Returns dressed-label populations of `population_label`
  // at the requested times, starting from the dressed `initial_label`.
  std::vector<double> static_tone_populations(const DrivePulse& tone,
                                              const std::string& initial_label,
                                              const std::string& population_label,
                                              std::span<const double> times) const;

  // Population of one qubit level (summed over all other labels) from the
  // same static-tone propagation.
  std::vector<double> static_tone_qubit_populations(const DrivePulse& tone,
                                                    const std::string& initial_label,
                                                    int qubit, int level,
                                                    std::span<const double> times) const;

  // Dressed-coefficient matrix of a density operator given in bare basis and
  // vice versa.
  Matrix to_dressed(const Matrix& rho_bare) const;
  Matrix to_bare(const Matrix& rho_dressed) const;

  int label_index(const std::string& label) const;

 private:
  struct ToneTerm {
    Matrix op;        // dressed-basis lowering operator of the driven qubit
    Complex weight;   // scale * amplitude prefactor
    double rot_freq;  // coefficient rotation frequency in the chosen frame
    double phase;
    const EnvelopeSpec* envelope;
    double start;
  };

  Vector initial_vector(const Request& req) const;
  std::vector<ToneTerm> build_terms(std::span<const DrivePulse> drives) const;
  void sample_populations(EvolutionResult& result, const Request& req,
                          const std::vector<std::string>& labels, double t,
                          const Vector* psi, const Matrix* rho) const;

  DeviceParams params_;
  Frame frame_;
  double nu_ = 0.0;           // common rotation frequency (rwa frame)
  Matrix w_;                  // columns: dressed states by bare label index
  Eigen::VectorXd energy_;    // lab-frame dressed energies by bare label index
  Eigen::VectorXd frame_energy_;  // energies minus nu * excitation (rwa)
  Eigen::VectorXi excitation_;
  double worst_overlap_ = 1.0;
  std::vector<Matrix> lower_dressed_;     // dressed-basis qubit lowering ops
  std::vector<Matrix> collapse_dressed_;  // dressed-basis collapse operators
  Matrix collapse_ksum_;                  // sum of L^dag L, dressed basis
};

}  // namespace holosim
