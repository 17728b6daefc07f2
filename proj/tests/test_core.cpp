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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "holosim/core.hpp"
#include "holosim/rng.hpp"

using namespace holosim;

namespace {

DensityMatrix random_density(const HilbertSpace& space, Rng& rng) {
  const int n = space.total_dim();
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex{rng.normal(), rng.normal()};
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(space, std::move(rho));
}

QuantumState random_pure(const HilbertSpace& space, Rng& rng) {
  Vector v(space.total_dim());
  for (int i = 0; i < space.total_dim(); ++i) v(i) = Complex{rng.normal(), rng.normal()};
  v /= v.norm();
  return QuantumState(space, std::move(v));
}

}  // namespace

TEST_CASE("tensor indexing is row-major with the first subsystem slowest") {
  const HilbertSpace space({4, 4, 3});
  CHECK(space.total_dim() == 48);
  CHECK(space.index_of(std::vector<int>{2, 0, 0}) == 24);  // |fg0>
  CHECK(space.index_of(std::vector<int>{0, 0, 1}) == 1);   // |gg1>
  CHECK(space.index_of(std::vector<int>{0, 2, 0}) == 6);   // |gf0>
  CHECK(space.labels_of(24) == std::vector<int>{2, 0, 0});
  CHECK_THROWS_AS(space.index_of(std::vector<int>{4, 0, 0}), std::out_of_range);
  CHECK_THROWS_AS(HilbertSpace({1, 2}), std::invalid_argument);
}

TEST_CASE("state labels parse and format") {
  const HilbertSpace space({4, 4, 3});
  CHECK(parse_state_label("fg0", space) == std::vector<int>{2, 0, 0});
  CHECK(parse_state_label("ge2", space) == std::vector<int>{0, 1, 2});
  CHECK(format_state_label(std::vector<int>{2, 0, 0}, space) == "fg0");
  CHECK_THROWS(parse_state_label("xy0", space));
}

TEST_CASE("lowering operator on a single qubit") {
  const HilbertSpace space({2});
  const auto b = lowering_operator(space, 0);
  CHECK(b.matrix(0, 1) == Complex{1.0, 0.0});
  CHECK(b.matrix(0, 0) == Complex{0.0, 0.0});
  CHECK(b.matrix(1, 0) == Complex{0.0, 0.0});
  CHECK(b.matrix(1, 1) == Complex{0.0, 0.0});
}

TEST_CASE("lowering operator ladder elements") {
  const HilbertSpace space({3});
  const auto b = lowering_operator(space, 0);
  CHECK(b.matrix(0, 1).real() == doctest::Approx(1.0));
  CHECK(b.matrix(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(b.matrix.cwiseAbs().sum() == doctest::Approx(1.0 + std::sqrt(2.0)));
}

TEST_CASE("resonator commutator [a, a+] = I - d P_top on the truncated space") {
  const HilbertSpace space({4, 4, 3});
  const auto a = lowering_operator(space, 2);
  const Matrix comm = a.matrix * a.matrix.adjoint() - a.matrix.adjoint() * a.matrix;

  // Brute-force expectation: identity except -(d-1) on the top ladder level.
  Matrix expected = Matrix::Identity(48, 48);
  for (int i = 0; i < 48; ++i)
    if (space.labels_of(i)[2] == 2) expected(i, i) = -2.0;
  CHECK((comm - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("adjoint of a generated lowering operator is its conjugate transpose exactly") {
  const HilbertSpace space({4, 4, 3});
  for (int s = 0; s < 3; ++s) {
    const auto b = lowering_operator(space, s);
    CHECK((b.adjoint().matrix - b.matrix.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK_THROWS_AS(lowering_operator(space, 3), std::out_of_range);
}

TEST_CASE("basis states are unit vectors at the expected index") {
  const HilbertSpace qubit({2});
  const auto ground = basis_state(qubit, {0});
  CHECK(ground.amplitudes(0) == Complex{1.0, 0.0});
  CHECK(ground.amplitudes(1) == Complex{0.0, 0.0});

  const HilbertSpace space({4, 4, 3});
  const auto fg0 = basis_state(space, {2, 0, 0});
  CHECK(std::norm(fg0.amplitudes(24)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(basis_state(space, {0, 0, 3}), std::out_of_range);
}

TEST_CASE("basis states are orthonormal over all label pairs") {
  const HilbertSpace space({4, 4, 3});
  std::vector<QuantumState> states;
  for (int i = 0; i < space.total_dim(); ++i)
    states.push_back(basis_state(space, space.labels_of(i)));
  for (int i = 0; i < space.total_dim(); ++i)
    for (int j = 0; j < space.total_dim(); ++j) {
      const Complex overlap = states[i].amplitudes.dot(states[j].amplitudes);
      CHECK(std::abs(overlap - (i == j ? 1.0 : 0.0)) < 1e-15);
    }
}

TEST_CASE("partial trace of a product state keeps the qubit factor") {
  const HilbertSpace space({4, 4, 3});
  const auto rho = pure_density(basis_state(space, {0, 0, 1}));  // |gg1>
  const auto reduced = partial_trace(rho, {0, 1});
  CHECK(reduced.space.total_dim() == 16);
  CHECK(reduced.matrix(0, 0).real() == doctest::Approx(1.0));
  CHECK(reduced.matrix.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("partial trace of an entangled state is maximally mixed") {
  const HilbertSpace space({3, 3, 2});
  Vector amps = Vector::Zero(space.total_dim());
  amps(space.index_of(std::vector<int>{2, 0, 0})) = 1.0 / std::sqrt(2.0);  // |fg> x |0>
  amps(space.index_of(std::vector<int>{0, 2, 0})) = 1.0 / std::sqrt(2.0);  // |gf> x |0>
  const auto rho = pure_density(QuantumState(space, amps));
  const auto q1 = partial_trace(rho, {0});
  CHECK(q1.matrix(0, 0).real() == doctest::Approx(0.5));  // g
  CHECK(q1.matrix(2, 2).real() == doctest::Approx(0.5));  // f
  CHECK(std::abs(q1.matrix(0, 2)) < 1e-14);
  CHECK_THROWS(partial_trace(rho, {3}));
}

TEST_CASE("partial trace preserves trace and matches direct index summation") {
  Rng rng(11);
  const HilbertSpace space({4, 4, 3});
  const auto rho = pure_density(random_pure(space, rng));
  const auto reduced = partial_trace(rho, {0, 1});
  CHECK(std::abs(reduced.matrix.trace().real() - 1.0) < 1e-12);

  // Independent oracle: explicit summation over the resonator index.
  const HilbertSpace out({4, 4});
  for (int i = 0; i < out.total_dim(); ++i) {
    for (int j = 0; j < out.total_dim(); ++j) {
      const auto li = out.labels_of(i);
      const auto lj = out.labels_of(j);
      Complex sum{0.0, 0.0};
      for (int r = 0; r < 3; ++r) {
        const int row = space.index_of(std::vector<int>{li[0], li[1], r});
        const int col = space.index_of(std::vector<int>{lj[0], lj[1], r});
        sum += rho.matrix(row, col);
      }
      CHECK(std::abs(reduced.matrix(i, j) - sum) < 1e-14);
    }
  }
}

TEST_CASE("tracing out subsystems one at a time equals tracing jointly") {
  Rng rng(7);
  const HilbertSpace space({4, 4, 3});
  const auto rho = random_density(space, rng);
  const auto joint = partial_trace(rho, {0});
  const auto step1 = partial_trace(rho, {0, 2});
  const auto step2 = partial_trace(step1, {0});
  CHECK((joint.matrix - step2.matrix).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fidelity identities") {
  Rng rng(3);
  const HilbertSpace qubit({2});

  SUBCASE("F(rho, rho) = 1") {
    for (int k = 0; k < 5; ++k) {
      const auto rho = random_density(qubit, rng);
      CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  SUBCASE("orthogonal pure states have zero fidelity") {
    const auto zero = pure_density(basis_state(qubit, {0}));
    const auto one = pure_density(basis_state(qubit, {1}));
    CHECK(fidelity(zero, one) == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("pure target against the maximally mixed state gives 1/sqrt(2)") {
    const auto zero = pure_density(basis_state(qubit, {0}));
    const DensityMatrix mixed(qubit, Matrix::Identity(2, 2) * 0.5);
    CHECK(fidelity(zero, mixed) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  }

  SUBCASE("dimension mismatch is rejected") {
    const auto rho2 = random_density(qubit, rng);
    const auto rho3 = random_density(HilbertSpace({3}), rng);
    CHECK_THROWS_AS(fidelity(rho2, rho3), std::invalid_argument);
  }
}

TEST_CASE("fidelity stays in [0,1] and is symmetric for random pairs") {
  Rng rng(1234);
  const HilbertSpace space({4});
  for (int k = 0; k < 100; ++k) {
    const auto a = random_density(space, rng);
    const auto b = random_density(space, rng);
    const double f_ab = fidelity(a, b);
    const double f_ba = fidelity(b, a);
    CHECK(f_ab >= 0.0);
    CHECK(f_ab <= 1.0);
    CHECK(f_ab == doctest::Approx(f_ba).epsilon(1e-8));
  }
}

TEST_CASE("density matrix validation catches invalid inputs") {
  const HilbertSpace qubit({2});
  Matrix bad(2, 2);
  bad << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityMatrix(qubit, bad).validate(), std::invalid_argument);

  Matrix ok(2, 2);
  ok << 0.5, 0.25, 0.25, 0.5;
  CHECK_NOTHROW(DensityMatrix(qubit, ok).validate());
}
