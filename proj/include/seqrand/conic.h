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

// Small dense semidefinite programs in standard primal form
//
//   minimize  <C, X>  subject to  <A_i, X> = b_i,  X = diag(X_1..X_k) >= 0,
//
// and their duals
//
//   maximize  b'y  subject to  C - sum_i y_i A_i = Z >= 0.
//
// A block of size 1 is a nonnegative scalar. Matrices are given as
// coordinate entries (block, row, col, value) with row <= col; an
// off-diagonal entry stands for both (row, col) and (col, row).

#ifndef SEQRAND_CONIC_H_
#define SEQRAND_CONIC_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "seqrand/linalg.h"

namespace seqrand {

struct ConicEntry {
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0.0;
};

struct ConicProblem {
  std::vector<int> blocks;
  std::vector<ConicEntry> objective;
  // One entry list per equality constraint.
  std::vector<std::vector<ConicEntry>> constraints;
  std::vector<double> rhs;

  int num_constraints() const { return static_cast<int>(constraints.size()); }
  int add_block(int size);
  int add_constraint(double rhs_value);
  // Adds value to the symmetric coefficient at (row, col); callers may pass
  // either triangle.
  void add_coefficient(int con, int block, int row, int col, double value);
  void add_objective(int block, int row, int col, double value);
  void validate() const;
};

enum class ConicStatus {
  kOptimal,
  // Stalled before tol but every measure is below inaccurate_tol. Typical
  // when the primal feasible set has no interior.
  kOptimalInaccurate,
  kPrimalInfeasible,
  kDualInfeasible,
  kNumericalLimit,
};

std::string status_name(ConicStatus s);
// The less successful of two statuses.
ConicStatus worse_status(ConicStatus a, ConicStatus b);

struct ConicOptions {
  double tol = 1e-9;
  double inaccurate_tol = 1e-5;
  int max_iterations = 120;
  // Stop after this many iterations without improving the best iterate.
  int stall_iterations = 30;
  bool verbose = false;
};

struct ConicSolution {
  ConicStatus status = ConicStatus::kNumericalLimit;
  std::vector<RMatrix> x;
  std::vector<RMatrix> z;
  RVector y;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;              // relative duality gap
  double primal_residual = 0.0;  // relative
  double dual_residual = 0.0;    // relative
  int iterations = 0;
  int dropped_rows = 0;
  std::string message;

  bool optimal() const { return status == ConicStatus::kOptimal; }
  bool usable() const {
    return status == ConicStatus::kOptimal ||
           status == ConicStatus::kOptimalInaccurate;
  }
};

ConicSolution solve_conic(const ConicProblem& p,
                          const ConicOptions& opts = ConicOptions());

// Plain-text serialization for cross-checks with external solvers.
void write_conic(std::ostream& os, const ConicProblem& p);
ConicProblem read_conic(std::istream& is);

}  // namespace seqrand

#endif  // SEQRAND_CONIC_H_
