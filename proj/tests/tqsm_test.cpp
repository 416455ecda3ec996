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

#include "seqrand/tqsm.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "seqrand/noise.h"

namespace seqrand {
namespace {

const RotatedMeasurement kZ0{Basis::kZ, 0.0};
const RotatedMeasurement kX0{Basis::kX, 0.0};

CVector plus() { return (basis_vector(2, 0) + basis_vector(2, 1)) / std::sqrt(2.0); }
CVector minus() { return (basis_vector(2, 0) - basis_vector(2, 1)) / std::sqrt(2.0); }

MeasurementPlan uniform_plan(int n, double theta, double phi = 0.0) {
  MeasurementPlan plan;
  for (int i = 0; i < n; ++i) plan.rounds.push_back({{Basis::kZ, phi}, {Basis::kX, theta}});
  return plan;
}

CMatrix pure_density(double alpha_angle) { return canonical_state(alpha_angle).density(); }

TEST(Kraus, ProjectiveXIsPlusProjector) {
  EXPECT_TRUE(kraus(kX0, 0).isApprox(projector(plus())));
  EXPECT_TRUE(kraus(kX0, 1).isApprox(projector(minus())));
}

TEST(Kraus, ProjectiveZOutcomeOne) {
  EXPECT_TRUE(kraus(kZ0, 1).isApprox(projector(basis_vector(2, 1))));
}

TEST(Kraus, RotatedXAtPiOverEight) {
  const double t = M_PI / 8;
  const CMatrix expect = std::cos(t) * projector(plus()) + std::sin(t) * projector(minus());
  EXPECT_TRUE(kraus({Basis::kX, t}, 0).isApprox(expect, 1e-15));
}

TEST(Kraus, CompletenessOnAngleGrid) {
  for (Basis b : {Basis::kZ, Basis::kX}) {
    for (int k = 0; k <= 8; ++k) {
      const RotatedMeasurement m{b, k * M_PI / 32};
      EXPECT_TRUE((povm(m, 0) + povm(m, 1)).isApprox(identity(2), 1e-14));
      EXPECT_TRUE(observable(m).isApprox(povm(m, 0) - povm(m, 1), 1e-14));
    }
  }
}

TEST(Kraus, TrivialAtPiOverFour) {
  const RotatedMeasurement m{Basis::kX, M_PI / 4};
  EXPECT_TRUE(povm(m, 0).isApprox(identity(2) / 2.0, 1e-14));
}

TEST(Plan, RejectsAnglesOutsideRange) {
  MeasurementPlan p = uniform_plan(1, 1.0);
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = uniform_plan(1, -0.1);
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(ApplyMeasurement, RotatedXOnSchmidtStateIsFair) {
  for (double a : {0.1, M_PI / 8, M_PI / 4}) {
    for (double t : {0.0, 0.2, M_PI / 8, M_PI / 4}) {
      for (int b : {0, 1}) {
        EXPECT_NEAR(apply_measurement(pure_density(a), {Basis::kX, t}, b).prob, 0.5, 1e-12);
      }
    }
  }
}

TEST(ApplyMeasurement, EigenstateOfZ) {
  const PureState s(basis_vector(4, 0), {2, 2});
  const MeasurementResult r = apply_measurement(s, kZ0, 0);
  EXPECT_NEAR(r.prob, 1.0, 1e-15);
  EXPECT_TRUE(r.post_pure.isApprox(basis_vector(4, 0)));
  const MeasurementResult r1 = apply_measurement(s, kZ0, 1);
  EXPECT_NEAR(r1.prob, 0.0, 1e-15);
  EXPECT_FALSE(r1.defined);
}

TEST(ApplyMeasurement, JointProbabilityOfTwoRotatedX) {
  const RotatedMeasurement m{Basis::kX, M_PI / 8};
  const CMatrix phi = bell_state(Bell::kPhiPlus);
  for (int b1 : {0, 1}) {
    const MeasurementResult r1 = apply_measurement(phi, m, b1);
    for (int b2 : {0, 1}) {
      const double direct = 0.5 * (povm(m, b1) * povm(m, b2)).trace().real();
      EXPECT_NEAR(r1.prob * apply_measurement(r1.post, m, b2).prob, direct, 1e-12);
    }
  }
}

TEST(ApplyMeasurement, PurityPreservedOnSchmidtStates) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ang(0.0, M_PI / 4);
  for (int trial = 0; trial < 40; ++trial) {
    const PureState s = canonical_state(ang(rng));
    const RotatedMeasurement m{trial % 2 ? Basis::kX : Basis::kZ, ang(rng)};
    for (int b : {0, 1}) {
      const MeasurementResult r = apply_measurement(s.density(), m, b);
      if (!r.defined) continue;
      EXPECT_NEAR((r.post * r.post).trace().real(), 1.0, 1e-9);
    }
  }
}

TEST(Correction, CanonicalStateNeedsNone) {
  const CorrectionEntry c = corrective_unitary(canonical_state(M_PI / 8));
  EXPECT_TRUE(c.u_a.isApprox(identity(2), 1e-12));
  EXPECT_TRUE(c.u_b.isApprox(identity(2), 1e-12));
  EXPECT_NEAR(c.zeta, M_PI / 8, 1e-12);
}

TEST(Correction, ProductZeroOne) {
  const CorrectionEntry c = corrective_unitary(PureState(basis_vector(4, 1), {2, 2}));
  EXPECT_NEAR(c.zeta, 0.0, 1e-12);
  // U_B sends |0> to |1>, so its adjoint maps |1> back to |0>.
  EXPECT_NEAR(std::abs((c.u_b.adjoint() * basis_vector(2, 1))(0)), 1.0, 1e-12);
}

TEST(Correction, ReconstructsPostMeasurementState) {
  const PureState phi(bell_vector(Bell::kPhiPlus), {2, 2});
  const MeasurementResult r = apply_measurement(phi, {Basis::kX, M_PI / 8}, 0);
  const CorrectionEntry c = corrective_unitary(PureState(r.post_pure, {2, 2}));
  const CVector rebuilt = tensor(c.u_a, c.u_b) * canonical_state(c.zeta).amps;
  EXPECT_NEAR(std::abs(rebuilt.dot(r.post_pure)), 1.0, 1e-12);
  EXPECT_GT(c.zeta, 0.0);
  EXPECT_LE(c.zeta, M_PI / 4 + 1e-12);
}

TEST(RunSequence, UncorrectedXSequenceMatchesPovmProduct) {
  // Same-basis POVMs commute, so p(b) = tr(M_b1 ... M_bn) / 2 on Phi+.
  for (int n = 1; n <= 6; ++n) {
    const MeasurementPlan plan = uniform_plan(n, 0.05);
    const auto out = run_sequence(bell_state(Bell::kPhiPlus), plan, std::vector<int>(n, 1), false);
    ASSERT_EQ(static_cast<int>(out.size()), 1 << n);
    for (const HistoryOutcome& h : out) {
      CMatrix prod = identity(2);
      for (int b : h.b) prod = prod * povm(plan.rounds[0].y1, b);
      EXPECT_NEAR(h.prob, 0.5 * prod.trace().real(), 1e-12);
    }
  }
}

TEST(RunSequence, HonestSchemeIsPerfectlyRandomForAnyState) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> za(0.01, M_PI / 4), th(0.0, M_PI / 4);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 6;
    MeasurementPlan plan;
    for (int i = 0; i < n; ++i) plan.rounds.push_back({{Basis::kZ, 0.0}, {Basis::kX, th(rng)}});
    const auto out = run_sequence(pure_density(za(rng)), plan, std::vector<int>(n, 1), true);
    for (const HistoryOutcome& h : out) EXPECT_NEAR(h.prob, std::ldexp(1.0, -n), 1e-9);
  }
}

TEST(RunSequence, ProductStateProjectiveZIsDeterministic) {
  const CMatrix rho = projector(basis_vector(4, 0));
  const auto out = run_sequence(rho, uniform_plan(3, 0.3), {0, 0, 0}, false);
  int nonzero = 0;
  for (const HistoryOutcome& h : out) {
    if (h.prob > 1e-12) {
      ++nonzero;
      EXPECT_NEAR(h.prob, 1.0, 1e-12);
      EXPECT_EQ(pack_bits(h.b), 0);
    }
  }
  EXPECT_EQ(nonzero, 1);
}

TEST(RunSequence, DepolarizedSingleRoundMatchesDirectArithmetic) {
  const CMatrix rho = depolarized_bell(0.15);
  const RotatedMeasurement m{Basis::kX, 0.3};
  const auto out = run_sequence(rho, uniform_plan(1, 0.3), {1}, false);
  for (int b : {0, 1}) {
    const double direct = (tensor(identity(2), povm(m, b)) * rho).trace().real();
    EXPECT_NEAR(out[b].prob, direct, 1e-14);
  }
}

TEST(RunSequence, StopAfterProjective) {
  MeasurementPlan plan = uniform_plan(2, 0.2);
  plan.stop_after_projective = true;
  const auto out = run_sequence(bell_state(Bell::kPhiPlus), plan, {0, 1}, false);
  // Round 1 is projective Z, so round 2 always reports 0.
  for (const HistoryOutcome& h : out) {
    if (h.b[1] == 1) {
      EXPECT_NEAR(h.prob, 0.0, 1e-15);
    }
  }
}

TEST(Assemblage, PhiPlusProjectiveMatchesTransposedProjectors) {
  const Assemblage a = assemblage_at_round(bell_state(Bell::kPhiPlus), uniform_plan(1, 0.0), 1);
  EXPECT_TRUE(a.at(0, 0).isApprox(projector(basis_vector(2, 0)) / 2.0, 1e-14));
  EXPECT_TRUE(a.at(1, 1).isApprox(CMatrix(projector(minus()).transpose()) / 2.0, 1e-14));
}

TEST(Assemblage, ElementsMatchPartialTraceOracle) {
  const CMatrix rho = depolarized_bell(0.1);
  const MeasurementPlan plan = uniform_plan(1, 0.4, 0.1);
  const Assemblage a = assemblage_at_round(rho, plan, 1);
  for (int y : {0, 1}) {
    for (int b : {0, 1}) {
      const CMatrix op = tensor(identity(2), povm(plan.rounds[0].for_input(y), b));
      EXPECT_TRUE(a.at(b, y).isApprox(partial_trace(op * rho, {2, 2}, {0}), 1e-13));
    }
  }
}

TEST(Assemblage, InvariantsOnRandomStatesAndPlans) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> ang(0.0, M_PI / 4), eps(0.0, 0.75);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix rho = trial % 2 ? depolarized_bell(eps(rng)) : pure_density(ang(rng));
    MeasurementPlan plan;
    for (int i = 0; i < 3; ++i) plan.rounds.push_back({{Basis::kZ, ang(rng)}, {Basis::kX, ang(rng)}});
    const Assemblage a1 = assemblage_at_round(rho, plan, 1);
    const Assemblage a2 = assemblage_at_round(rho, plan, 2);
    const Assemblage a3 = assemblage_at_round(rho, plan, 3);
    EXPECT_LT(a3.psd_violation(), 1e-9);
    EXPECT_LT(a3.no_signalling_residual(), 1e-9);
    EXPECT_LT(a3.causality_residual(a2), 1e-9);
    EXPECT_LT(a2.causality_residual(a1), 1e-9);
    EXPECT_NO_THROW(a3.check(1e-9, &a2));
    CMatrix sum = CMatrix::Zero(2, 2);
    for (int b = 0; b < 8; ++b) sum += a3.at(b, 5);
    EXPECT_TRUE(sum.isApprox(partial_trace(rho, {2, 2}, {0}), 1e-12));
  }
}

TEST(Ssc, IdealSchemeHasZeroFirstAndThirdDeviation) {
  const double theta = 0.2;
  const MeasurementPlan plan = uniform_plan(3, theta);
  const CMatrix rho = pure_density(M_PI / 4);
  for (int len = 0; len < 3; ++len) {
    const std::vector<int> b(len, 0), y(len, 1);
    const SscStatistics st = ssc_statistics(rho, plan, b, y);
    EXPECT_NEAR(st.zz, 1.0, 1e-9);
    EXPECT_NEAR(st.z, std::cos(2 * st.zeta), 1e-9);
    EXPECT_LE(std::abs(st.xx - std::sin(2 * st.zeta)), 2 * std::pow(std::sin(theta), 2) + 1e-12);
  }
}

TEST(Ssc, PhiPlusProjective) {
  const SscStatistics st = ssc_statistics(bell_state(Bell::kPhiPlus), uniform_plan(1, 0.0), {}, {});
  EXPECT_NEAR(st.zz, 1.0, 1e-12);
  EXPECT_NEAR(st.xx, 1.0, 1e-12);
  EXPECT_NEAR(st.z, 0.0, 1e-12);
}

TEST(Bits, PackUnpackRoundTrip) {
  for (int n = 1; n <= 5; ++n) {
    for (int i = 0; i < (1 << n); ++i) EXPECT_EQ(pack_bits(unpack_bits(i, n)), i);
  }
  // Round 1 is the most significant bit.
  EXPECT_EQ(unpack_bits(4, 3), (std::vector<int>{1, 0, 0}));
  EXPECT_EQ(bits_string({1, 0, 1}), "101");
}

}  // namespace
}  // namespace seqrand
