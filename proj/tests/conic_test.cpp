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

#include "seqrand/conic.h"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <sstream>

namespace seqrand {
namespace {

RMatrix random_symmetric(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  RMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  }
  return (a + a.transpose()) / 2.0;
}

void add_dense_objective(ConicProblem& p, int block, const RMatrix& c) {
  for (int i = 0; i < c.rows(); ++i) {
    for (int j = i; j < c.cols(); ++j) p.add_objective(block, i, j, c(i, j));
  }
}

// min <C, X> subject to tr X = 1.
ConicProblem min_eigenvalue_problem(const RMatrix& c) {
  ConicProblem p;
  const int k = p.add_block(static_cast<int>(c.rows()));
  add_dense_objective(p, k, c);
  const int row = p.add_constraint(1.0);
  for (int i = 0; i < c.rows(); ++i) p.add_coefficient(row, k, i, i, 1.0);
  return p;
}

TEST(Conic, TwoVariableLp) {
  ConicProblem p;
  const int x1 = p.add_block(1), x2 = p.add_block(1);
  p.add_objective(x1, 0, 0, 1.0);
  p.add_objective(x2, 0, 0, 2.0);
  const int row = p.add_constraint(1.0);
  p.add_coefficient(row, x1, 0, 0, 1.0);
  p.add_coefficient(row, x2, 0, 0, 1.0);
  const ConicSolution s = solve_conic(p);
  ASSERT_TRUE(s.optimal()) << s.message;
  EXPECT_NEAR(s.primal_objective, 1.0, 1e-8);
  EXPECT_NEAR(s.dual_objective, 1.0, 1e-8);
  EXPECT_NEAR(s.x[x1](0, 0), 1.0, 1e-7);
  EXPECT_NEAR(s.x[x2](0, 0), 0.0, 1e-7);
}

TEST(Conic, MinimumEigenvalueMatchesEigen) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 5;
    const RMatrix c = random_symmetric(rng, n);
    const double expect = Eigen::SelfAdjointEigenSolver<RMatrix>(c).eigenvalues()(0);
    const ConicSolution s = solve_conic(min_eigenvalue_problem(c));
    ASSERT_TRUE(s.optimal()) << s.message;
    EXPECT_NEAR(s.primal_objective, expect, 1e-7);
    EXPECT_NEAR(s.y(0), expect, 1e-7);
  }
}

TEST(Conic, LovaszThetaOfPentagon) {
  // theta(C5) = sqrt(5): max <J, X> with tr X = 1 and X_ij = 0 on edges.
  ConicProblem p;
  const int k = p.add_block(5);
  for (int i = 0; i < 5; ++i) {
    for (int j = i; j < 5; ++j) p.add_objective(k, i, j, -1.0);
  }
  const int tr = p.add_constraint(1.0);
  for (int i = 0; i < 5; ++i) p.add_coefficient(tr, k, i, i, 1.0);
  for (int i = 0; i < 5; ++i) {
    const int row = p.add_constraint(0.0);
    p.add_coefficient(row, k, i, (i + 1) % 5, 1.0);
  }
  const ConicSolution s = solve_conic(p);
  ASSERT_TRUE(s.optimal()) << s.message;
  EXPECT_NEAR(-s.primal_objective, std::sqrt(5.0), 1e-7);
}

TEST(Conic, MixedScalarAndMatrixBlocks) {
  // X = [[a, c], [c, a]] with c = 1 and a slack forcing a >= 2.
  ConicProblem p;
  const int m = p.add_block(2), sl = p.add_block(1);
  p.add_objective(m, 0, 0, 0.5);
  p.add_objective(m, 1, 1, 0.5);
  int row = p.add_constraint(0.0);
  p.add_coefficient(row, m, 0, 0, 1.0);
  p.add_coefficient(row, m, 1, 1, -1.0);
  row = p.add_constraint(2.0);
  p.add_coefficient(row, m, 0, 1, 1.0);
  row = p.add_constraint(2.0);
  p.add_coefficient(row, m, 0, 0, 1.0);
  p.add_coefficient(row, sl, 0, 0, -1.0);
  const ConicSolution s = solve_conic(p);
  ASSERT_TRUE(s.optimal()) << s.message;
  // An off-diagonal coefficient counts both triangles, so 2c = 2.
  EXPECT_NEAR(s.primal_objective, 2.0, 1e-7);
  EXPECT_NEAR(s.x[m](0, 1), 1.0, 1e-7);
}

TEST(Conic, InfeasibleScalar) {
  ConicProblem p;
  const int k = p.add_block(1);
  p.add_objective(k, 0, 0, 1.0);
  const int row = p.add_constraint(-1.0);
  p.add_coefficient(row, k, 0, 0, 1.0);
  EXPECT_EQ(solve_conic(p).status, ConicStatus::kPrimalInfeasible);
}

TEST(Conic, InconsistentDuplicateRow) {
  ConicProblem p = min_eigenvalue_problem(RMatrix::Identity(2, 2));
  const int row = p.add_constraint(2.0);
  p.add_coefficient(row, 0, 0, 0, 1.0);
  p.add_coefficient(row, 0, 1, 1, 1.0);
  const ConicSolution s = solve_conic(p);
  EXPECT_EQ(s.status, ConicStatus::kPrimalInfeasible);
  EXPECT_NE(s.message.find("inconsistent"), std::string::npos);
}

TEST(Conic, RedundantRowIsDropped) {
  const RMatrix c = RMatrix::Identity(3, 3) * 2.0;
  ConicProblem p = min_eigenvalue_problem(c);
  const int row = p.add_constraint(3.0);
  for (int i = 0; i < 3; ++i) p.add_coefficient(row, 0, i, i, 3.0);
  const ConicSolution s = solve_conic(p);
  ASSERT_TRUE(s.usable()) << s.message;
  EXPECT_EQ(s.dropped_rows, 1);
  EXPECT_NEAR(s.primal_objective, 2.0, 1e-7);
}

TEST(Conic, UnboundedIsDualInfeasible) {
  ConicProblem p;
  const int k = p.add_block(2);
  p.add_objective(k, 0, 0, -1.0);
  const int row = p.add_constraint(1.0);
  p.add_coefficient(row, k, 1, 1, 1.0);
  EXPECT_EQ(solve_conic(p).status, ConicStatus::kDualInfeasible);
}

TEST(Conic, RandomFeasibleProblemsCloseTheGap) {
  // b = A(X0) and C = Z0 + A^T y0 with X0, Z0 positive definite guarantee
  // strict feasibility on both sides.
  std::mt19937_64 rng(29);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 15; ++trial) {
    const int n1 = 3, n2 = 2, m = 4 + trial % 3;
    ConicProblem p;
    const int k1 = p.add_block(n1), k2 = p.add_block(n2), k3 = p.add_block(1);
    std::vector<RMatrix> a1(m), a2(m);
    std::vector<double> a3(m);
    RMatrix c1 = RMatrix::Identity(n1, n1), c2 = RMatrix::Identity(n2, n2);
    double c3 = 1.0;
    for (int i = 0; i < m; ++i) {
      a1[i] = random_symmetric(rng, n1);
      a2[i] = random_symmetric(rng, n2);
      a3[i] = g(rng);
      const double yi = g(rng);
      c1 += yi * a1[i];
      c2 += yi * a2[i];
      c3 += yi * a3[i];
      const int row = p.add_constraint(a1[i].trace() + a2[i].trace() + a3[i]);
      for (int r = 0; r < n1; ++r) {
        for (int c = r; c < n1; ++c) p.add_coefficient(row, k1, r, c, a1[i](r, c));
      }
      for (int r = 0; r < n2; ++r) {
        for (int c = r; c < n2; ++c) p.add_coefficient(row, k2, r, c, a2[i](r, c));
      }
      p.add_coefficient(row, k3, 0, 0, a3[i]);
    }
    add_dense_objective(p, k1, c1);
    add_dense_objective(p, k2, c2);
    p.add_objective(k3, 0, 0, c3);
    const ConicSolution s = solve_conic(p);
    ASSERT_TRUE(s.optimal()) << s.message;
    EXPECT_LT(s.gap, 1e-8);
    EXPECT_NEAR(s.primal_objective, s.dual_objective, 1e-7 * (1 + std::abs(s.primal_objective)));
    for (int i = 0; i < m; ++i) {
      const double ax = (a1[i].cwiseProduct(s.x[k1])).sum() +
                        (a2[i].cwiseProduct(s.x[k2])).sum() + a3[i] * s.x[k3](0, 0);
      EXPECT_NEAR(ax, p.rhs[i], 1e-7 * (1 + std::abs(p.rhs[i])));
    }
    for (int k : {k1, k2}) {
      EXPECT_GT(Eigen::SelfAdjointEigenSolver<RMatrix>(s.x[k]).eigenvalues()(0), -1e-9);
      EXPECT_GT(Eigen::SelfAdjointEigenSolver<RMatrix>(s.z[k]).eigenvalues()(0), -1e-9);
    }
  }
}

TEST(Conic, SerializationRoundTrip) {
  std::mt19937_64 rng(31);
  const ConicProblem p = min_eigenvalue_problem(random_symmetric(rng, 3));
  std::stringstream ss;
  write_conic(ss, p);
  const ConicProblem q = read_conic(ss);
  EXPECT_EQ(q.blocks, p.blocks);
  EXPECT_EQ(q.rhs, p.rhs);
  EXPECT_NEAR(solve_conic(q).primal_objective, solve_conic(p).primal_objective, 1e-12);
}

TEST(Conic, ReadRejectsGarbage) {
  std::stringstream ss("not a problem");
  EXPECT_ANY_THROW(read_conic(ss));
}

TEST(Conic, ValidateRejectsBadBlock) {
  ConicProblem p;
  p.add_block(2);
  p.add_objective(3, 0, 0, 1.0);
  EXPECT_ANY_THROW(p.validate());
}

TEST(Conic, WorseStatusOrdering) {
  EXPECT_EQ(worse_status(ConicStatus::kOptimal, ConicStatus::kOptimalInaccurate),
            ConicStatus::kOptimalInaccurate);
  EXPECT_EQ(worse_status(ConicStatus::kNumericalLimit, ConicStatus::kPrimalInfeasible),
            ConicStatus::kPrimalInfeasible);
  EXPECT_EQ(worse_status(ConicStatus::kOptimal, ConicStatus::kOptimal), ConicStatus::kOptimal);
  EXPECT_EQ(status_name(ConicStatus::kOptimalInaccurate), "optimal-inaccurate");
}

}  // namespace
}  // namespace seqrand
