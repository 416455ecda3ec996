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

// Analytic certification from the sequential steering criteria (SSC):
// criteria evaluation, guessing-probability and min-entropy bounds, and a
// numerical harness for the one-sided self-testing statements behind them.

#ifndef SEQRAND_SELFTEST_H_
#define SEQRAND_SELFTEST_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "seqrand/linalg.h"
#include "seqrand/tqsm.h"

namespace seqrand {

struct SscRound {
  int round = 0;  // 1-based
  double eps1 = 0.0;
  double eps2 = 0.0;
  double zeta = 0.0;  // target angle of the state entering this round
  bool rejected = false;  // zeta outside ]0, pi/4]
  bool pass = false;
};

struct SscReport {
  std::vector<SscRound> rounds;
  bool all_pass() const;
};

// eps1 = max(|<ZZ> - 1|, |<Z> - cos 2 zeta|), eps2 = |<XX> - sin 2 zeta|.
SscRound ssc_round(const SscStatistics& st, int round, double eps1_max,
                   double eps2_max);

SscReport ssc_evaluate(const std::vector<SscStatistics>& stats,
                       double eps1_max, double eps2_max);

// Statistics for rounds 1..n along one history (round i conditions on the
// first i-1 entries).
std::vector<SscStatistics> collect_ssc(const CMatrix& initial,
                                       const MeasurementPlan& plan,
                                       const std::vector<int>& b_hist,
                                       const std::vector<int>& y_hist);

struct BoundResult {
  double raw = 0.0;      // unclamped value
  double value = 0.0;    // clamped
  bool vacuous = false;  // raw >= 1 or zeta -> 0
  std::vector<double> factors;  // per-round factors (product bounds)
};

// One factor 1/2 + sqrt(e1)(3 sqrt2 + 2 + 5/(2 sin z))
//            + 3 sqrt(e1 + e2)(1/(sqrt2 sin z) + 1).
double round_factor(double eps1, double eps2, double zeta);

// Product over rounds, clamped to <= 1.
BoundResult theorem1_bound(const SscReport& report);

// Single round, clamped to [1/2, 1].
BoundResult corollary_bounds(double eps1, double eps2, double zeta);

struct MinEntropySchedule {
  int n = 0;
  double c = 0.0;
  double d = 0.0;                 // c ln2 / (12 sqrt2)
  std::vector<double> log_theta;  // natural log of theta_i
  std::vector<double> theta;      // may underflow to 0 for large i
  std::vector<double> log_zeta;   // ln zeta entering round i
  double bound = 0.0;             // lower bound on H_min in bits
  double target = 0.0;            // (1 - c) n
};

// theta_i = d * zeta_{i-1} along the honest trajectory starting at zeta0.
// Angles collapse doubly exponentially, so the recursion runs on logs.
MinEntropySchedule theorem2_minentropy(int n, double c,
                                       double zeta0 = 0.7853981633974483);

// The six successive lower bounds of the min-entropy argument evaluated at
// given angles (theta_i, zeta_{i-1}); each should dominate the next.
std::array<double, 6> theorem2_proof_lines(const std::vector<double>& theta,
                                           const std::vector<double>& zeta);

// Honest update sin 2 zeta' = sin 2 zeta * sin 2 theta.
double next_zeta(double zeta, double theta);

// Alice (qubit) x Bob (dim db) x Eve (dim de), Alice most significant.
struct SelfTestInstance {
  CVector psi;
  int db = 2;
  int de = 1;
  CMatrix x_b;
  CMatrix z_b;
  double zeta = 0.0;

  void validate(double tol = 1e-9) const;
};

struct CritEpsilons {
  double eps1 = 0.0;
  double eps2 = 0.0;
};

CritEpsilons crit_epsilons(const SelfTestInstance& inst);

// Applies the swap-type isometry to v (a vector on ABE) and returns a vector
// on ABE x B' with B' least significant.
CVector isometry_phi(const SelfTestInstance& inst, const CVector& v);

struct SelfTestDistances {
  double lhs1 = 0.0, rhs1 = 0.0;
  double lhs2 = 0.0, rhs2 = 0.0;
  CritEpsilons eps;
};

SelfTestDistances selftest_distances(const SelfTestInstance& inst);

struct NormCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds(double slack = 1e-12) const { return lhs <= rhs + slack; }
};

// All norm inequalities of lemma 1..4.
std::vector<NormCheck> lemma_norms(const SelfTestInstance& inst, int lemma);

struct NaimarkDilation {
  CMatrix unitary;                   // on qubit x ancilla
  std::array<CMatrix, 2> projectors;  // P_b = U^dag (I x |b><b|) U
  CMatrix observable() const { return projectors[0] - projectors[1]; }
};

NaimarkDilation naimark_dilate(const RotatedMeasurement& m);

// Honest single-round instance: |zeta> on Alice and Bob's qubit, Bob's
// ancilla in |0>, trivial Eve, dilated observables.
SelfTestInstance tqsm_instance(double zeta, double theta, double phi = 0.0);

// Perturbed instance for the randomized harness.
SelfTestInstance random_instance(std::uint64_t seed);

struct HarnessRow {
  std::uint64_t seed = 0;
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin() const { return rhs - lhs; }
};

std::vector<HarnessRow> run_selftest_harness(int instances,
                                             std::uint64_t seed);
void write_harness_csv(std::ostream& os, const std::vector<HarnessRow>& rows);

}  // namespace seqrand

#endif  // SEQRAND_SELFTEST_H_
