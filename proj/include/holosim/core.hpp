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
#include <string>
#include <vector>

#include "holosim/common.hpp"

namespace holosim {

// Composite Hilbert space of a qubit-qubit-resonator stack. Subsystem order is
// fixed project-wide: qubit 1, qubit 2, resonator. Tensor indices are
// row-major with the first subsystem slowest and the last fastest.
class HilbertSpace {
 public:
  explicit HilbertSpace(std::vector<int> dims);

  // Default system of the device model: two anharmonic four-level transmons
  // and a harmonic three-level resonator.
  static HilbertSpace qubit_qubit_resonator() { return HilbertSpace({4, 4, 3}); }

  int subsystem_count() const { return static_cast<int>(dims_.size()); }
  int dim(int subsystem) const;
  const std::vector<int>& dims() const { return dims_; }
  int total_dim() const { return total_; }

  // Flat row-major index of a per-subsystem label tuple.
  int index_of(std::span<const int> labels) const;
  std::vector<int> labels_of(int index) const;

  bool operator==(const HilbertSpace& other) const { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  int total_ = 0;
};

// Dense operator on a HilbertSpace. Entries carry angular-frequency units for
// Hamiltonians and are unitless for unitaries and projectors.
struct Operator {
  HilbertSpace space;
  Matrix matrix;

  Operator(HilbertSpace s, Matrix m);
  Operator adjoint() const { return Operator(space, matrix.adjoint()); }
  bool is_hermitian(double tol = 1e-9) const;
};

// Pure state; amplitudes normalized to unity.
struct QuantumState {
  HilbertSpace space;
  Vector amplitudes;

  QuantumState(HilbertSpace s, Vector amps);
  double norm() const { return amplitudes.norm(); }
};

// Mixed state; Hermitian, unit trace, positive semidefinite within tolerance.
struct DensityMatrix {
  HilbertSpace space;
  Matrix matrix;

  DensityMatrix(HilbertSpace s, Matrix m);

  // Throws std::invalid_argument if Hermiticity, trace or positivity is
  // violated beyond `tol`.
  void validate(double tol = 1e-9) const;
};

// Truncated annihilation operator of one subsystem, identity elsewhere.
// <n-1|b|n> = sqrt(n).
Operator lowering_operator(const HilbertSpace& space, int subsystem);

Operator identity_operator(const HilbertSpace& space);

// Number operator of one subsystem, identity elsewhere.
Operator number_operator(const HilbertSpace& space, int subsystem);

// Total excitation number across all subsystems.
Operator total_number_operator(const HilbertSpace& space);

// Unit vector for the given per-subsystem level labels.
QuantumState basis_state(const HilbertSpace& space, std::span<const int> labels);
QuantumState basis_state(const HilbertSpace& space, std::initializer_list<int> labels);

DensityMatrix pure_density(const QuantumState& psi);

// Reduced density matrix on the kept subsystems (indices ascending in the
// result). Trace is preserved.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

// Uhlmann state fidelity Tr sqrt(sqrt(rho_T) rho_M sqrt(rho_T)), as written
// (no outer square). Equals sqrt(<psi|rho_M|psi>) for pure rho_T.
double fidelity(const DensityMatrix& rho_t, const DensityMatrix& rho_m);

// Hermitian square root with negative eigenvalues clamped to zero. Eigenvalues
// below -tol raise std::invalid_argument.
Matrix psd_sqrt(const Matrix& m, double tol = 1e-9);

// Qubit level letters g,e,f,h and resonator digits, e.g. "fg0" -> {2,0,0}.
std::vector<int> parse_state_label(const std::string& label, const HilbertSpace& space);
std::string format_state_label(std::span<const int> labels, const HilbertSpace& space);

}  // namespace holosim
