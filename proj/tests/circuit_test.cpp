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

#include "seqrand/circuit.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "seqrand/noise.h"

namespace seqrand {
namespace {

MeasurementPlan plan_of(const std::vector<std::pair<double, double>>& phi_theta) {
  MeasurementPlan plan;
  for (auto [phi, theta] : phi_theta) {
    plan.rounds.push_back({{Basis::kZ, phi}, {Basis::kX, theta}});
  }
  return plan;
}

double max_diff(const Assemblage& a, const Assemblage& b) {
  double d = 0.0;
  for (size_t k = 0; k < a.elements.size(); ++k) {
    d = std::max(d, (a.elements[k] - b.elements[k]).cwiseAbs().maxCoeff());
  }
  return d;
}

TEST(Gates, MatricesAreUnitary) {
  for (GateKind k : {GateKind::kH, GateKind::kX, GateKind::kZ, GateKind::kCnot, GateKind::kCz,
                     GateKind::kSwap, GateKind::kCswap, GateKind::kRy}) {
    Gate g;
    g.kind = k;
    g.wires.resize(gate_arity(k));
    for (int i = 0; i < gate_arity(k); ++i) g.wires[i] = i;
    g.angle = 0.7;
    EXPECT_TRUE(is_unitary(gate_matrix(g))) << gate_name(k);
    EXPECT_EQ(parse_gate(gate_name(k)), k);
  }
}

TEST(Gates, CnotControlIsFirstWire) {
  Gate g{GateKind::kCnot, {0, 1}};
  const CMatrix m = gate_matrix(g);
  EXPECT_TRUE((m * basis_vector(4, 2)).isApprox(basis_vector(4, 3)));
  EXPECT_TRUE((m * basis_vector(4, 1)).isApprox(basis_vector(4, 1)));
}

TEST(Gates, RyRotation) {
  Gate g{GateKind::kRy, {0}, 0.6};
  const CVector v = gate_matrix(g) * basis_vector(2, 0);
  EXPECT_NEAR(v(0).real(), std::cos(0.3), 1e-15);
  EXPECT_NEAR(v(1).real(), std::sin(0.3), 1e-15);
}

TEST(Gadget, InstrumentsMatchKrausOnAngleGrid) {
  for (Basis basis : {Basis::kZ, Basis::kX}) {
    for (int k = 0; k <= 8; ++k) {
      const RotatedMeasurement m{basis, k * M_PI / 32};
      const auto inst = gadget_instrument(basis, m.angle);
      for (int b : {0, 1}) {
        EXPECT_LT((inst[b] - kraus(m, b)).cwiseAbs().maxCoeff(), 1e-10)
            << basis_name(basis) << " " << m.angle << " " << b;
      }
    }
  }
}

TEST(Gadget, ProjectiveZOnOneIsCertain) {
  const Circuit g = build_measurement_gadget(Basis::kZ, 0.0);
  const CVector out = run_circuit(g, tensor(basis_vector(2, 0), basis_vector(2, 1)), {});
  // Ancilla is wire 0, the most significant qubit.
  EXPECT_NEAR(std::norm(out(2)) + std::norm(out(3)), 1.0, 1e-14);
}

TEST(Gadget, GoldenGateList) {
  std::ostringstream os;
  write_circuit(os, build_measurement_gadget(Basis::kX, 0.25));
  EXPECT_EQ(os.str(),
            "qubits 2\n"
            "inputs 0\n"
            "ry 0 0.5 -\n"
            "h 0 - -\n"
            "cx 0,1 - -\n"
            "h 0 - -\n"
            "measure 0 1 -\n");
}

TEST(Sequence, GoldenTwoRoundLayout) {
  const Circuit c = build_sequence_circuit(plan_of({{0.0, 0.2}, {0.1, 0.3}}));
  EXPECT_EQ(c.qubits, 4);
  EXPECT_EQ(c.input_bits, 2);
  EXPECT_EQ(c.rounds(), 2);
  ASSERT_EQ(c.gates.size(), 16u);
  EXPECT_EQ(c.gates[2].kind, GateKind::kCz);
  EXPECT_EQ(c.gates[2].wires, (std::vector<int>{2, 1}));
  EXPECT_EQ(c.gates[4].kind, GateKind::kRy);
  EXPECT_NEAR(c.gates[4].angle, 0.4, 1e-15);
  EXPECT_EQ(c.gates[4].input_bit, 0);
  EXPECT_EQ(c.gates[4].input_value, 1);
  EXPECT_EQ(c.measurements[1].wire, 3);
  EXPECT_EQ(c.measurements[1].round, 2);
}

TEST(Sequence, TooManyRoundsRejected) {
  const MeasurementPlan p = plan_of({{0, 0.1}, {0, 0.1}, {0, 0.1}, {0, 0.1}});
  EXPECT_THROW(build_sequence_circuit(p), std::invalid_argument);
}

TEST(Sequence, CircuitAssemblageMatchesExact) {
  const CMatrix states[] = {bell_state(Bell::kPhiPlus), canonical_state(0.5).density(),
                            depolarized_bell(0.1)};
  for (const CMatrix& rho : states) {
    for (const MeasurementPlan& plan :
         {plan_of({{0.0, 0.2}}), plan_of({{0.0, 0.2}, {0.1, 0.3}}),
          plan_of({{0.05, M_PI / 8}, {0.0, 0.0}})}) {
      const Assemblage want = assemblage_at_round(rho, plan, plan.size());
      const Assemblage got = circuit_assemblage(build_sequence_circuit(plan), rho);
      EXPECT_LT(max_diff(want, got), 1e-10);
    }
  }
}

TEST(Sequence, ProjectiveXOnPhiPlusLeavesMixedMarginal) {
  const Assemblage a =
      circuit_assemblage(build_sequence_circuit(plan_of({{0.0, 0.0}})), bell_state(Bell::kPhiPlus));
  EXPECT_TRUE((a.at(0, 1) + a.at(1, 1)).isApprox(identity(2) / 2.0, 1e-12));
  EXPECT_NEAR(a.prob(0, 1), 0.5, 1e-12);
}

TEST(QuantumControlled, MatchesClassicalControl) {
  const MeasurementPlan plan = plan_of({{0.1, 0.2}});
  const Circuit q = build_quantum_controlled_circuit(plan);
  EXPECT_LE(q.qubits, kMaxQubits);
  const CMatrix rho = canonical_state(0.6).density();
  EXPECT_LT(max_diff(circuit_assemblage(q, rho), assemblage_at_round(rho, plan, 1)), 1e-10);
}

TEST(Circuit, ValidateRejectsBadWires) {
  Circuit c;
  c.qubits = 2;
  c.add(GateKind::kCnot, {0, 0});
  EXPECT_THROW(c.validate(), std::invalid_argument);
  Circuit d;
  d.qubits = 2;
  d.add(GateKind::kH, {0, 1});
  EXPECT_THROW(d.validate(), std::invalid_argument);
  Circuit e;
  e.qubits = kMaxQubits + 1;
  EXPECT_THROW(e.validate(), std::invalid_argument);
}

TEST(Circuit, TextRoundTrip) {
  const Circuit c = build_quantum_controlled_circuit(plan_of({{0.1, 0.2}}));
  std::stringstream ss;
  write_circuit(ss, c);
  const Circuit r = read_circuit(ss);
  std::ostringstream again;
  write_circuit(again, r);
  EXPECT_EQ(again.str(), ss.str());
  const CMatrix rho = depolarized_bell(0.05);
  EXPECT_LT(max_diff(circuit_assemblage(r, rho), circuit_assemblage(c, rho)), 1e-14);
}

TEST(Circuit, ReadRejectsUnknownGate) {
  std::istringstream is("qubits 2\ninputs 0\nfoo 0 - -\n");
  EXPECT_ANY_THROW(read_circuit(is));
}

TEST(Circuit, EmbedPair) {
  const CVector v = embed_pair(bell_vector(Bell::kPhiPlus), 3);
  EXPECT_EQ(v.size(), 8);
  EXPECT_NEAR(v(0).real(), M_SQRT1_2, 1e-15);
  EXPECT_NEAR(v(6).real(), M_SQRT1_2, 1e-15);
}

TEST(Shots, ExactModeRecoversStatesExactly) {
  const MeasurementPlan plan = plan_of({{0.0, 0.3}});
  const CMatrix rho = canonical_state(0.5).density();
  const ShotRecord rec = sample_shots(build_sequence_circuit(plan), rho,
                                      parse_paulis("XYZ"), 0, 1);
  EXPECT_TRUE(rec.exact);
  const Assemblage want = assemblage_at_round(rho, plan, 1);
  for (int y : {0, 1}) {
    for (int b : {0, 1}) {
      const TomographyResult t = direct_inversion(rec, b, y);
      EXPECT_FALSE(t.omitted);
      EXPECT_LT((t.element - want.at(b, y)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Shots, ZZCorrelationConcentrates) {
  const long n = 4000;
  const ShotRecord rec = sample_shots(build_sequence_circuit(plan_of({{0.0, 0.0}})),
                                      bell_state(Bell::kPhiPlus), parse_paulis("Z"), n, 5);
  // Under y = 0 Bob measures Z; Alice's Z outcome agrees with b.
  const double agree = rec.at(0, 0, 0)[0] + rec.at(0, 0, 1)[1];
  const double zz = (2 * agree - n) / n;
  EXPECT_NEAR(zz, 1.0, 4 / std::sqrt(static_cast<double>(n)));
}

TEST(Shots, SeededAndReproducible) {
  const Circuit c = build_sequence_circuit(plan_of({{0.0, 0.2}}));
  const CMatrix rho = depolarized_bell(0.1);
  const ShotRecord a = sample_shots(c, rho, parse_paulis("XZ"), 500, 99);
  const ShotRecord b = sample_shots(c, rho, parse_paulis("XZ"), 500, 99);
  const ShotRecord d = sample_shots(c, rho, parse_paulis("XZ"), 500, 100);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_NE(a.counts, d.counts);
  for (int y : {0, 1}) {
    double total = 0.0;
    for (int b2 : {0, 1}) total += a.history_total(y, b2);
    EXPECT_DOUBLE_EQ(total, 1000.0);
  }
}

TEST(Tomography, RescalesLongBlochVector) {
  ShotRecord rec;
  rec.rounds = 1;
  rec.bases = {Pauli::kX, Pauli::kZ};
  rec.shots = 100;
  rec.counts.assign(2 * 2 * 2, {0.0, 0.0});
  // History b = 0 under y = 0: <X> = <Z> = 0.8.
  rec.counts[rec.index(0, 0, 0)] = {90, 10};
  rec.counts[rec.index(0, 1, 0)] = {90, 10};
  const TomographyResult t = direct_inversion(rec, 0, 0);
  EXPECT_NEAR(t.raw[0], 0.8, 1e-15);
  EXPECT_NEAR(t.raw[1], 0.0, 1e-15);
  EXPECT_TRUE(t.rescaled);
  EXPECT_NEAR((t.rho * t.rho).trace().real(), 1.0, 1e-12);
  EXPECT_TRUE(direct_inversion(rec, 1, 0).omitted);
}

TEST(Tomography, ProjectionRestoresConstraints) {
  const MeasurementPlan plan = plan_of({{0.0, 0.2}, {0.1, 0.3}});
  const ShotRecord rec = sample_shots(build_sequence_circuit(plan), depolarized_bell(0.05),
                                      parse_paulis("XYZ"), 300, 3);
  const EstimatedAssemblage est = estimate_assemblage(rec, true);
  ASSERT_EQ(est.rounds.size(), 2u);
  EXPECT_LT(est.rounds[1].psd_violation(), 1e-10);
  EXPECT_LT(est.rounds[1].no_signalling_residual(), 1e-10);
  EXPECT_LT(est.rounds[1].causality_residual(est.rounds[0]), 1e-10);
  EXPECT_GT(est.projection_distance, 0.0);
  EXPECT_GE(est.mixing, 0.0);
}

TEST(Tomography, ExactRecordNeedsNoProjection) {
  const MeasurementPlan plan = plan_of({{0.0, 0.2}, {0.1, 0.3}});
  const CMatrix rho = canonical_state(0.7).density();
  const ShotRecord rec =
      sample_shots(build_sequence_circuit(plan), rho, parse_paulis("XYZ"), 0, 0);
  const EstimatedAssemblage est = estimate_assemblage(rec, true);
  EXPECT_LT(est.projection_distance, 1e-10);
  EXPECT_LT(est.mixing, 1e-10);
  EXPECT_LT(max_diff(est.rounds[1], assemblage_at_round(rho, plan, 2)), 1e-10);
}

TEST(Paulis, Parse) {
  const auto p = parse_paulis("ZX");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(pauli_char(p[0]), 'Z');
  EXPECT_THROW(parse_paulis("XQ"), std::invalid_argument);
}

}  // namespace
}  // namespace seqrand
