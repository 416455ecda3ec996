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

// Steering weight, steering functionals and guessing-probability programs
// for sequential assemblages.

#ifndef SEQRAND_STEERING_H_
#define SEQRAND_STEERING_H_

#include <cstddef>
#include <string>
#include <vector>

#include "seqrand/conic.h"
#include "seqrand/linalg.h"
#include "seqrand/tqsm.h"

namespace seqrand {

inline constexpr std::size_t kDefaultStrategyCap = 1000000;
inline constexpr double kDefaultAlpha = 100.0;

struct DeterministicStrategy {
  int rounds = 1;
  bool causal = false;
  // table[y] is the output history for input history y.
  std::vector<int> table;

  int output(int y) const { return table[y]; }
};

// All deterministic strategies for `rounds` rounds of binary inputs and
// outputs. Throws std::length_error when the count exceeds cap.
std::vector<DeterministicStrategy> enumerate_strategies(
    int rounds, bool causal, std::size_t cap = kDefaultStrategyCap);

// Number of strategies without building them (saturates at SIZE_MAX).
std::size_t strategy_count(int rounds, bool causal);

bool is_prefix_consistent(const DeterministicStrategy& s);

struct SteeringFunctional {
  int round = 0;
  std::vector<CMatrix> f;  // indexed like Assemblage::elements
  double violation = 0.0;
  std::vector<int> skipped;  // elements replaced by alpha*I

  int histories() const { return 1 << round; }
  const CMatrix& at(int b, int y) const {
    return f[static_cast<std::size_t>(y) * histories() + b];
  }
};

// Complex-to-real embedding [[Re, -Im], [Im, Re]] and its left inverse.
RMatrix realify(const CMatrix& h);
CMatrix derealify(const RMatrix& x);

// Orthogonal basis of d x d Hermitian matrices.
std::vector<CMatrix> hermitian_basis(int d);

struct SteeringWeightResult {
  double sw = 0.0;
  std::vector<CMatrix> lhs;  // sigma_lambda, one per strategy
  std::vector<DeterministicStrategy> strategies;
  ConicSolution solver;
};

SteeringWeightResult steering_weight(const Assemblage& a, bool causal,
                                     const ConicOptions& opts = {});

struct SteeringInequalityResult {
  SteeringFunctional functional;
  double sw = 0.0;               // 1 - optimal value
  double min_f_eigenvalue = 0.0;   // min over b,y of lambda_min(F)
  double min_lhs_eigenvalue = 0.0;  // min over lambda of lambda_min(sum DF - I)
  ConicSolution solver;
};

SteeringInequalityResult steering_inequality(const Assemblage& a, bool causal,
                                             const ConicOptions& opts = {});

// Smallest eigenvalue of sum_y F_{lambda(y)|y} - I over all strategies.
double lhs_margin(const SteeringFunctional& f, bool causal);

SteeringFunctional projective_functional(const Assemblage& a,
                                         double alpha = kDefaultAlpha,
                                         double threshold = 1e-12);

double violation(const SteeringFunctional& f, const Assemblage& a);

enum class Normalization {
  kTrace,         // tr sum_b sigma_{b|y1} = 1 plus no-signalling
  kReducedState,  // sum_b sigma_{b|y1} = rho_A
};

std::string normalization_name(Normalization n);
Normalization parse_normalization(const std::string& s);

struct GuessOptions {
  Normalization anchor = Normalization::kTrace;
  ConicOptions conic;
};

struct CertificationReport {
  int rounds = 0;
  double p_guess = 1.0;
  double h_min = 0.0;
  std::vector<double> violations;
  std::vector<double> steering_weights;  // per round; NaN when not computed
  std::vector<double> per_outcome;       // optimum for each final string b
  int best_outcome = 0;
  ConicStatus status = ConicStatus::kOptimal;
  int iterations = 0;
  double max_gap = 0.0;
  std::string message;
};

CertificationReport guess_prob_single(const SteeringFunctional& f, double v,
                                      const CMatrix& rho_a, int y_star,
                                      const GuessOptions& opts = {});

CertificationReport guess_prob_sequential(
    const std::vector<SteeringFunctional>& functionals,
    const std::vector<double>& violations, const CMatrix& rho_a,
    const std::vector<int>& y_star, int n, const GuessOptions& opts = {});

// The guessing program as a conic problem; exposed for serialization.
ConicProblem build_guess_problem(
    const std::vector<SteeringFunctional>& functionals,
    const std::vector<double>& violations, const CMatrix& rho_a,
    const std::vector<int>& y_star, int n, int target_b,
    Normalization anchor, std::vector<std::string>* row_families = nullptr);

struct PipelineOptions {
  bool causal = true;
  double alpha = kDefaultAlpha;
  GuessOptions guess;
  // Use the explicit functional for a projective last round when n >= 2.
  bool projective_last_round = true;
};

// Honest assemblages -> per-round functionals -> guessing program.
CertificationReport certify_assemblages(const std::vector<Assemblage>& rounds,
                                        const std::vector<int>& y_star,
                                        bool last_round_projective,
                                        const PipelineOptions& opts = {});

CertificationReport certify_state(const CMatrix& rho,
                                  const MeasurementPlan& plan,
                                  const std::vector<int>& y_star,
                                  const PipelineOptions& opts = {});

}  // namespace seqrand

#endif  // SEQRAND_STEERING_H_
