// Copyright 2026 The seqrand Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "seqrand/linalg.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "seqrand/noise.h"
#include "seqrand/tqsm.h"

namespace seqrand {
namespace {

CMatrix random_density(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  CMatrix a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
  }
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

CVector random_ket(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(g(rng), g(rng));
  return v.normalized();
}

TEST(Tensor, IdentityTimesIdentity) {
  EXPECT_TRUE(tensor(identity(2), identity(2)).isApprox(identity(4)));
}

TEST(Tensor, ZZOnZeroZeroHasEigenvalueOne) {
  const CVector v = basis_vector(4, 0);
  const CVector w = tensor(pauli_z(), pauli_z()) * v;
  EXPECT_TRUE(w.isApprox(v));
}

TEST(Tensor, ProductOfBasisProjectors) {
  const CMatrix p = tensor(projector(basis_vector(2, 0)), projector(basis_vector(2, 1)));
  EXPECT_TRUE(p.isApprox(projector(basis_vector(4, 1))));
  EXPECT_NEAR(p.trace().real(), 1.0, 1e-15);
}

TEST(Tensor, VectorsMatchMatrixKron) {
  std::mt19937_64 rng(7);
  const CVector a = random_ket(rng, 2), b = random_ket(rng, 3);
  const CMatrix m = tensor(CMatrix(a), CMatrix(b));
  EXPECT_TRUE(CVector(m.col(0)).isApprox(tensor(a, b)));
}

TEST(PartialTrace, MaximallyEntangledMarginal) {
  const CMatrix phi = bell_state(Bell::kPhiPlus);
  EXPECT_TRUE(partial_trace(phi, {2, 2}, {0}).isApprox(identity(2) / 2.0));
  EXPECT_TRUE(partial_trace(phi, {2, 2}, {1}).isApprox(identity(2) / 2.0));
}

TEST(PartialTrace, ProductInput) {
  std::mt19937_64 rng(1);
  const CMatrix ra = random_density(rng, 2);
  CMatrix rb = random_density(rng, 3) * 0.7;
  EXPECT_TRUE(partial_trace(tensor(ra, rb), {2, 3}, {0}).isApprox(ra * 0.7, 1e-12));
}

TEST(PartialTrace, SchmidtMarginal) {
  const double z = M_PI / 8;
  const CMatrix rho = canonical_state(z).density();
  const CMatrix ra = partial_trace(rho, {2, 2}, {0});
  EXPECT_NEAR(ra(0, 0).real(), std::pow(std::cos(z), 2), 1e-15);
  EXPECT_NEAR(ra(1, 1).real(), std::pow(std::sin(z), 2), 1e-15);
  EXPECT_NEAR(std::abs(ra(0, 1)), 0.0, 1e-15);
}

TEST(PartialTrace, OrderOfTracesDoesNotMatter) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix rho = random_density(rng, 12);
    const std::vector<int> dims = {2, 3, 2};
    const CMatrix a = partial_trace(partial_trace(rho, dims, {0, 2}), {2, 2}, {0});
    const CMatrix b = partial_trace(partial_trace(rho, dims, {0, 1}), {2, 3}, {0});
    EXPECT_TRUE(a.isApprox(b, 1e-12));
    EXPECT_NEAR(partial_trace(rho, dims, {}).trace().real(), 1.0, 1e-12);
  }
}

TEST(PartialTrace, KeepsSubsystemOrder) {
  std::mt19937_64 rng(5);
  const CMatrix a = random_density(rng, 2), b = random_density(rng, 3),
                c = random_density(rng, 2);
  const CMatrix rho = tensor(tensor(a, b), c);
  EXPECT_TRUE(partial_trace(rho, {2, 3, 2}, {0, 2}).isApprox(tensor(a, c), 1e-12));
}

TEST(Schmidt, ProductState) {
  const SchmidtDecomposition sd = schmidt_decompose(PureState(basis_vector(4, 0), {2, 2}));
  EXPECT_NEAR(sd.coeffs(0), 1.0, 1e-15);
  EXPECT_NEAR(sd.coeffs(1), 0.0, 1e-15);
}

TEST(Schmidt, MaximallyEntangled) {
  const SchmidtDecomposition sd =
      schmidt_decompose(PureState(bell_vector(Bell::kPhiPlus), {2, 2}));
  EXPECT_NEAR(sd.coeffs(0), M_SQRT1_2, 1e-14);
  EXPECT_NEAR(sd.coeffs(1), M_SQRT1_2, 1e-14);
}

TEST(Schmidt, CanonicalForm) {
  const SchmidtDecomposition sd = schmidt_decompose(canonical_state(M_PI / 8));
  EXPECT_NEAR(sd.coeffs(0), std::cos(M_PI / 8), 1e-15);
  EXPECT_NEAR(sd.coeffs(1), std::sin(M_PI / 8), 1e-15);
}

TEST(Schmidt, ReconstructsRandomStates) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int da = 2 + trial % 2, db = 2 + trial % 3;
    const CVector v = random_ket(rng, da * db);
    const SchmidtDecomposition sd = schmidt_decompose(PureState(v, {da, db}));
    EXPECT_LT((schmidt_reconstruct(sd) - v).norm(), 1e-10);
    for (int k = 1; k < sd.coeffs.size(); ++k) EXPECT_GE(sd.coeffs(k - 1), sd.coeffs(k));
  }
}

TEST(Schmidt, DegenerateCoefficientsAreDeterministic) {
  // Phi+ written in the X basis has the same decomposition output.
  const CVector v = bell_vector(Bell::kPhiPlus);
  const CMatrix hh = tensor(hadamard(), hadamard());
  const SchmidtDecomposition a = schmidt_decompose(PureState(v, {2, 2}));
  const SchmidtDecomposition b = schmidt_decompose(PureState(hh * v, {2, 2}));
  EXPECT_TRUE(a.basis_a.isApprox(b.basis_a, 1e-12));
  EXPECT_TRUE(a.basis_b.isApprox(b.basis_b, 1e-12));
}

TEST(Fidelity, IdenticalStates) {
  std::mt19937_64 rng(2);
  const CMatrix rho = random_density(rng, 4);
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-7);
}

TEST(Fidelity, OrthogonalBellStates) {
  EXPECT_NEAR(fidelity(bell_state(Bell::kPhiPlus), bell_state(Bell::kPsiMinus)), 0.0, 1e-7);
}

TEST(Fidelity, DepolarizedAgainstPhiPlus) {
  const CMatrix rho = depolarized_bell(0.15);
  EXPECT_NEAR(fidelity(rho, bell_state(Bell::kPhiPlus)), std::sqrt(0.85), 1e-7);
  EXPECT_NEAR(fidelity_squared(rho, bell_state(Bell::kPhiPlus)), 0.85, 1e-7);
}

TEST(Fidelity, SymmetricAndOverlapOnPureStates) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const CMatrix a = random_density(rng, 3), b = random_density(rng, 3);
    EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-8);
    const CVector u = random_ket(rng, 4), v = random_ket(rng, 4);
    EXPECT_NEAR(fidelity(projector(u), projector(v)), std::abs(u.dot(v)), 1e-7);
  }
}

TEST(Eigvalsh, PauliZ) {
  const RVector e = eigvalsh(pauli_z());
  EXPECT_DOUBLE_EQ(e(0), -1.0);
  EXPECT_DOUBLE_EQ(e(1), 1.0);
}

TEST(Eigvalsh, MaximallyMixed) {
  const RVector e = eigvalsh(identity(2) / 2.0);
  EXPECT_DOUBLE_EQ(e(0), 0.5);
  EXPECT_DOUBLE_EQ(e(1), 0.5);
}

TEST(Eigvalsh, RejectsNonHermitian) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eigvalsh(m), std::invalid_argument);
}

TEST(Predicates, HermitianPsdUnitary) {
  EXPECT_TRUE(is_hermitian(pauli_y()));
  EXPECT_TRUE(is_unitary(hadamard()));
  EXPECT_FALSE(is_psd(pauli_x()));
  EXPECT_TRUE(is_psd(identity(3)));
  CMatrix almost = projector(basis_vector(2, 0));
  almost(1, 1) = -1e-12;
  EXPECT_TRUE(is_psd(almost));
  almost(1, 1) = -1e-6;
  EXPECT_FALSE(is_psd(almost));
}

TEST(Sqrtm, SquaresBackAndClampsNegatives) {
  std::mt19937_64 rng(9);
  const CMatrix rho = random_density(rng, 4);
  const CMatrix r = sqrtm_psd(rho);
  EXPECT_TRUE((r * r).isApprox(rho, 1e-10));
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 4.0;
  m(1, 1) = -1e-14;
  const CMatrix s = sqrtm_psd(m);
  EXPECT_NEAR(s(0, 0).real(), 2.0, 1e-12);
  EXPECT_NEAR(std::abs(s(1, 1)), 0.0, 1e-12);
}

TEST(FixPhase, FirstLargeEntryBecomesRealPositive) {
  CVector v(3);
  v << 0.0, cplx(0.0, -0.6), cplx(0.8, 0.0);
  const cplx removed = fix_phase(v);
  EXPECT_NEAR(v(1).real(), 0.6, 1e-15);
  EXPECT_NEAR(v(1).imag(), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(removed), 1.0, 1e-15);
  EXPECT_NEAR(v(2).imag(), 0.8, 1e-15);
}

TEST(CompleteBasis, ProducesUnitary) {
  CMatrix cols(3, 1);
  cols << cplx(0.6, 0), 0.0, cplx(0, 0.8);
  const CMatrix u = complete_basis(cols, 3);
  EXPECT_TRUE(is_unitary(u));
  EXPECT_TRUE(CVector(u.col(0)).isApprox(CVector(cols.col(0))));
}

}  // namespace
}  // namespace seqrand
