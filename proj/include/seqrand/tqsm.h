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

// Sequential two-outcome measurements on Bob's half of a two-qubit state.
//
// Histories of length n are packed into integers with the first round in the
// most significant bit, so the prefix of length n-1 is idx >> 1 and the last
// bit is idx & 1.

#ifndef SEQRAND_TQSM_H_
#define SEQRAND_TQSM_H_

#include <string>
#include <vector>

#include "seqrand/linalg.h"

namespace seqrand {

enum class Basis { kZ, kX };

std::string basis_name(Basis b);
Basis parse_basis(const std::string& s);

struct RotatedMeasurement {
  Basis basis = Basis::kZ;
  double angle = 0.0;  // radians in [0, pi/4]

  bool projective() const { return angle == 0.0; }
};

// Settings of one round: measurement for y_i = 0 and for y_i = 1.
struct RoundSettings {
  RotatedMeasurement y0{Basis::kZ, 0.0};
  RotatedMeasurement y1{Basis::kX, 0.0};

  const RotatedMeasurement& for_input(int y) const { return y == 0 ? y0 : y1; }
};

struct MeasurementPlan {
  std::vector<RoundSettings> rounds;
  // When set, a projective measurement ends Bob's sequence: later rounds are
  // skipped and report outcome 0 with certainty.
  bool stop_after_projective = false;

  int size() const { return static_cast<int>(rounds.size()); }
  void validate() const;
};

// Builds the plan used by the numerical figures: round 1 is (Z_phi1, X_theta1)
// and later rounds use the given (y0, y1) settings.
MeasurementPlan alternating_plan(const std::vector<RoundSettings>& rounds);

struct Assemblage {
  int round = 0;
  CMatrix rho_a;
  // Indexed [y * 2^round + b]; each entry is a 2x2 PSD matrix.
  std::vector<CMatrix> elements;

  int histories() const { return 1 << round; }
  const CMatrix& at(int b, int y) const {
    return elements[static_cast<size_t>(y) * histories() + b];
  }
  CMatrix& at(int b, int y) {
    return elements[static_cast<size_t>(y) * histories() + b];
  }
  double prob(int b, int y) const { return at(b, y).trace().real(); }

  double psd_violation() const;
  double no_signalling_residual() const;
  // Max deviation of the marginal over the last outcome from prev.
  double causality_residual(const Assemblage& prev) const;
  // Throws std::runtime_error naming the violated family.
  void check(double tol, const Assemblage* prev = nullptr) const;
};

struct CorrectionEntry {
  CMatrix u_a;
  CMatrix u_b;
  double zeta = 0.0;
};

struct MeasurementResult {
  double prob = 0.0;
  bool defined = false;  // false when prob is zero
  CMatrix post;          // normalized post-measurement density matrix
  CVector post_pure;     // filled for pure inputs
};

struct HistoryOutcome {
  std::vector<int> b;
  double prob = 0.0;
  bool defined = false;
  CMatrix state;  // conditional two-qubit state after the last round
  std::vector<CorrectionEntry> corrections;  // one per round when requested
};

// Kraus operator for outcome b of a rotated measurement.
CMatrix kraus(const RotatedMeasurement& m, int outcome);
CMatrix povm(const RotatedMeasurement& m, int outcome);
// M_0 - M_1.
CMatrix observable(const RotatedMeasurement& m);

MeasurementResult apply_measurement(const CMatrix& rho,
                                    const RotatedMeasurement& m, int outcome);
MeasurementResult apply_measurement(const PureState& psi,
                                    const RotatedMeasurement& m, int outcome);

CorrectionEntry corrective_unitary(const PureState& post,
                                   double tol = kDefaultTol);

// Canonical state cos(z)|00> + sin(z)|11>.
PureState canonical_state(double zeta);

std::vector<HistoryOutcome> run_sequence(const CMatrix& initial,
                                         const MeasurementPlan& plan,
                                         const std::vector<int>& y,
                                         bool apply_corrections);

Assemblage assemblage_at_round(const CMatrix& initial,
                               const MeasurementPlan& plan, int round,
                               bool apply_corrections = false);

struct SscStatistics {
  double zz = 0.0;  // <U tZ U^dag (x) Z_B>
  double xx = 0.0;  // <U tX U^dag (x) X_B>
  double z = 0.0;   // <U tZ U^dag>
  double zeta = 0.0;
  double prob = 0.0;  // probability of the conditioning history
  CMatrix u_a;
};

// Statistics for the round following the given history (length i < n).
// The reference corrections come from the principal eigenvector of the
// initial state; Bob's correction is applied to the actual state.
SscStatistics ssc_statistics(const CMatrix& initial,
                             const MeasurementPlan& plan,
                             const std::vector<int>& b_hist,
                             const std::vector<int>& y_hist);

// History helpers.
std::vector<int> unpack_bits(int idx, int n);
int pack_bits(const std::vector<int>& bits);
std::string bits_string(const std::vector<int>& bits);

}  // namespace seqrand

#endif  // SEQRAND_TQSM_H_
