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

#include "holosim/core.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace holosim {

HilbertSpace::HilbertSpace(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("HilbertSpace: no subsystems");
  total_ = 1;
  for (int d : dims_) {
    if (d < 2) throw std::invalid_argument("HilbertSpace: every dim must be >= 2");
    total_ *= d;
  }
}

int HilbertSpace::dim(int subsystem) const {
  if (subsystem < 0 || subsystem >= subsystem_count())
    throw std::out_of_range("HilbertSpace: invalid subsystem index");
  return dims_[subsystem];
}

int HilbertSpace::index_of(std::span<const int> labels) const {
  if (static_cast<int>(labels.size()) != subsystem_count())
    throw std::invalid_argument("HilbertSpace: label count mismatch");
  int idx = 0;
  for (int s = 0; s < subsystem_count(); ++s) {
    if (labels[s] < 0 || labels[s] >= dims_[s])
      throw std::out_of_range("HilbertSpace: label out of range");
    idx = idx * dims_[s] + labels[s];
  }
  return idx;
}

std::vector<int> HilbertSpace::labels_of(int index) const {
  if (index < 0 || index >= total_) throw std::out_of_range("HilbertSpace: index out of range");
  std::vector<int> labels(subsystem_count());
  for (int s = subsystem_count() - 1; s >= 0; --s) {
    labels[s] = index % dims_[s];
    index /= dims_[s];
  }
  return labels;
}

Operator::Operator(HilbertSpace s, Matrix m) : space(std::move(s)), matrix(std::move(m)) {
  if (matrix.rows() != matrix.cols() || matrix.rows() != space.total_dim())
    throw std::invalid_argument("Operator: matrix does not match space");
}

bool Operator::is_hermitian(double tol) const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

QuantumState::QuantumState(HilbertSpace s, Vector amps)
    : space(std::move(s)), amplitudes(std::move(amps)) {
  if (amplitudes.size() != space.total_dim())
    throw std::invalid_argument("QuantumState: amplitude count mismatch");
  if (std::abs(amplitudes.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("QuantumState: not normalized");
}

DensityMatrix::DensityMatrix(HilbertSpace s, Matrix m)
    : space(std::move(s)), matrix(std::move(m)) {
  if (matrix.rows() != matrix.cols() || matrix.rows() != space.total_dim())
    throw std::invalid_argument("DensityMatrix: matrix does not match space");
}

void DensityMatrix::validate(double tol) const {
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(matrix.trace().real() - 1.0) > tol || std::abs(matrix.trace().imag()) > tol)
    throw std::invalid_argument("DensityMatrix: trace != 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
}

namespace {

// Single-subsystem matrix tensored with identities on the rest.
Matrix embed(const HilbertSpace& space, int subsystem, const Matrix& local) {
  const int n = space.total_dim();
  const int d = space.dim(subsystem);
  Matrix out = Matrix::Zero(n, n);
  // Stride of the subsystem index in the flat row-major layout.
  int stride = 1;
  for (int s = space.subsystem_count() - 1; s > subsystem; --s) stride *= space.dim(s);
  for (int i = 0; i < n; ++i) {
    const int level = (i / stride) % d;
    const int base = i - level * stride;
    for (int k = 0; k < d; ++k) {
      const Complex v = local(k, level);
      if (v != Complex{0.0, 0.0}) out(base + k * stride, i) += v;
    }
  }
  return out;
}

}  // namespace

Operator lowering_operator(const HilbertSpace& space, int subsystem) {
  const int d = space.dim(subsystem);  // validates the index
  Matrix local = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) local(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(space, embed(space, subsystem, local));
}

Operator identity_operator(const HilbertSpace& space) {
  return Operator(space, Matrix::Identity(space.total_dim(), space.total_dim()));
}

Operator number_operator(const HilbertSpace& space, int subsystem) {
  const int d = space.dim(subsystem);
  Matrix local = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) local(n, n) = static_cast<double>(n);
  return Operator(space, embed(space, subsystem, local));
}

Operator total_number_operator(const HilbertSpace& space) {
  Matrix m = Matrix::Zero(space.total_dim(), space.total_dim());
  for (int s = 0; s < space.subsystem_count(); ++s)
    m += number_operator(space, s).matrix;
  return Operator(space, std::move(m));
}

QuantumState basis_state(const HilbertSpace& space, std::span<const int> labels) {
  Vector amps = Vector::Zero(space.total_dim());
  amps(space.index_of(labels)) = 1.0;
  return QuantumState(space, std::move(amps));
}

QuantumState basis_state(const HilbertSpace& space, std::initializer_list<int> labels) {
  return basis_state(space, std::span<const int>(labels.begin(), labels.size()));
}

DensityMatrix pure_density(const QuantumState& psi) {
  return DensityMatrix(psi.space, psi.amplitudes * psi.amplitudes.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const auto& space = rho.space;
  const int ns = space.subsystem_count();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set empty");
  std::vector<bool> kept(ns, false);
  for (int s : keep) {
    if (s < 0 || s >= ns) throw std::out_of_range("partial_trace: invalid subsystem index");
    if (kept[s]) throw std::invalid_argument("partial_trace: duplicate subsystem index");
    kept[s] = true;
  }

  std::vector<int> keep_sorted, traced;
  std::vector<int> out_dims;
  for (int s = 0; s < ns; ++s) {
    if (kept[s]) {
      keep_sorted.push_back(s);
      out_dims.push_back(space.dim(s));
    } else {
      traced.push_back(s);
    }
  }
  HilbertSpace out_space(out_dims);
  const int m = out_space.total_dim();
  Matrix out = Matrix::Zero(m, m);

  int traced_total = 1;
  for (int s : traced) traced_total *= space.dim(s);

  std::vector<int> row_labels(ns), col_labels(ns);
  for (int i = 0; i < m; ++i) {
    const auto ik = out_space.labels_of(i);
    for (int j = 0; j < m; ++j) {
      const auto jk = out_space.labels_of(j);
      Complex sum{0.0, 0.0};
      for (int t = 0; t < traced_total; ++t) {
        int rem = t;
        for (int u = static_cast<int>(traced.size()) - 1; u >= 0; --u) {
          const int s = traced[u];
          row_labels[s] = col_labels[s] = rem % space.dim(s);
          rem /= space.dim(s);
        }
        for (size_t u = 0; u < keep_sorted.size(); ++u) {
          row_labels[keep_sorted[u]] = ik[u];
          col_labels[keep_sorted[u]] = jk[u];
        }
        sum += rho.matrix(space.index_of(row_labels), space.index_of(col_labels));
      }
      out(i, j) = sum;
    }
  }
  return DensityMatrix(out_space, std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

Matrix psd_sqrt(const Matrix& m, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("psd_sqrt: eigensolver failed");
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("psd_sqrt: matrix not PSD within tolerance");
  Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const DensityMatrix& rho_t, const DensityMatrix& rho_m) {
  if (!(rho_t.space == rho_m.space))
    throw std::invalid_argument("fidelity: dimension mismatch");
  const Matrix sqrt_t = psd_sqrt(rho_t.matrix);
  const Matrix inner = sqrt_t * rho_m.matrix * sqrt_t;
  Eigen::SelfAdjointEigenSolver<Matrix> es(inner, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw std::invalid_argument("fidelity: inner product matrix not PSD");
  const double f = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(f, 0.0, 1.0);
}

std::vector<int> parse_state_label(const std::string& label, const HilbertSpace& space) {
  if (static_cast<int>(label.size()) != space.subsystem_count())
    throw std::invalid_argument("parse_state_label: wrong label length: " + label);
  static const std::string letters = "gefh";
  std::vector<int> out(label.size());
  for (size_t i = 0; i < label.size(); ++i) {
    const char c = label[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      out[i] = c - '0';
    } else {
      const auto pos = letters.find(c);
      if (pos == std::string::npos)
        throw std::invalid_argument("parse_state_label: bad character in " + label);
      out[i] = static_cast<int>(pos);
    }
    if (out[i] >= space.dim(static_cast<int>(i)))
      throw std::out_of_range("parse_state_label: level exceeds dim in " + label);
  }
  return out;
}

std::string format_state_label(std::span<const int> labels, const HilbertSpace& space) {
  static const std::string letters = "gefh";
  if (static_cast<int>(labels.size()) != space.subsystem_count())
    throw std::invalid_argument("format_state_label: label count mismatch");
  std::string out;
  // Qubits by letter, the (last, harmonic) subsystem by digit.
  for (size_t i = 0; i < labels.size(); ++i) {
    if (i + 1 == labels.size())
      out += static_cast<char>('0' + labels[i]);
    else
      out += letters.at(labels[i]);
  }
  return out;
}

}  // namespace holosim
