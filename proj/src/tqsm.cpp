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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace seqrand {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kProbFloor = 1e-14;

CVector plus_state() {
  CVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

CVector minus_state() {
  CVector v(2);
  v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return v;
}

CVector principal_eigenvector(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(rho));
  CVector v = es.eigenvectors().col(rho.rows() - 1);
  fix_phase(v);
  return v;
}

// Tracks Bob's accumulated operator along one history, optionally together
// with the pure reference trajectory that defines the corrections.
struct Chain {
  CMatrix bob = CMatrix::Identity(2, 2);
  bool stopped = false;
  bool stop_after_projective = false;
  bool track_reference = false;
  CVector ref;  // 4-dim reference state, normalized
  bool ref_defined = true;
  std::vector<CorrectionEntry> corrections;

  void correct_reference() {
    if (!ref_defined) {
      corrections.push_back({identity(2), identity(2), 0.0});
      return;
    }
    CorrectionEntry c = corrective_unitary(PureState(ref, {2, 2}));
    const CMatrix ub_dag = c.u_b.adjoint();
    ref = tensor(identity(2), ub_dag) * ref;
    bob = ub_dag * bob;
    corrections.push_back(c);
  }

  void step(const RotatedMeasurement& m, int outcome) {
    CMatrix k;
    if (stopped) {
      k = outcome == 0 ? identity(2) : CMatrix::Zero(2, 2);
    } else {
      k = kraus(m, outcome);
      if (stop_after_projective && m.projective()) stopped = true;
    }
    bob = k * bob;
    if (track_reference) {
      if (ref_defined) {
        CVector next = tensor(identity(2), k) * ref;
        const double nrm = next.norm();
        if (nrm * nrm < kProbFloor) {
          ref_defined = false;
        } else {
          ref = next / nrm;
        }
      }
      correct_reference();
    }
  }
};

Chain start_chain(const CMatrix& initial, const MeasurementPlan& plan,
                  bool corrections) {
  Chain ch;
  ch.stop_after_projective = plan.stop_after_projective;
  ch.track_reference = corrections;
  if (corrections) {
    ch.ref = principal_eigenvector(initial);
    ch.correct_reference();
  }
  return ch;
}

CMatrix conjugate_bob(const CMatrix& rho, const CMatrix& bob) {
  const CMatrix k = tensor(identity(2), bob);
  return k * rho * k.adjoint();
}

}  // namespace

std::string basis_name(Basis b) { return b == Basis::kZ ? "Z" : "X"; }

Basis parse_basis(const std::string& s) {
  if (s == "Z" || s == "z") return Basis::kZ;
  if (s == "X" || s == "x") return Basis::kX;
  throw std::invalid_argument("unknown basis '" + s + "'");
}

void MeasurementPlan::validate() const {
  if (rounds.empty()) throw std::invalid_argument("plan has no rounds");
  for (const RoundSettings& r : rounds) {
    for (const RotatedMeasurement* m : {&r.y0, &r.y1}) {
      if (!(m->angle >= 0.0 && m->angle <= kQuarterPi + 1e-12)) {
        throw std::invalid_argument("measurement angle outside [0, pi/4]");
      }
    }
  }
}

MeasurementPlan alternating_plan(const std::vector<RoundSettings>& rounds) {
  MeasurementPlan p;
  p.rounds = rounds;
  p.validate();
  return p;
}

CMatrix kraus(const RotatedMeasurement& m, int outcome) {
  if (!(m.angle >= 0.0 && m.angle <= kQuarterPi + 1e-12)) {
    throw std::invalid_argument("kraus: angle outside [0, pi/4]");
  }
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("kraus: outcome must be 0 or 1");
  }
  CMatrix p0, p1;
  if (m.basis == Basis::kZ) {
    p0 = projector(basis_vector(2, 0));
    p1 = projector(basis_vector(2, 1));
  } else {
    p0 = projector(plus_state());
    p1 = projector(minus_state());
  }
  const double c = std::cos(m.angle);
  const double s = std::sin(m.angle);
  return outcome == 0 ? CMatrix(c * p0 + s * p1) : CMatrix(c * p1 + s * p0);
}

CMatrix povm(const RotatedMeasurement& m, int outcome) {
  const CMatrix k = kraus(m, outcome);
  return k.adjoint() * k;
}

CMatrix observable(const RotatedMeasurement& m) {
  return povm(m, 0) - povm(m, 1);
}

MeasurementResult apply_measurement(const CMatrix& rho,
                                    const RotatedMeasurement& m, int outcome) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw std::invalid_argument("apply_measurement: expected a 4x4 state");
  }
  MeasurementResult r;
  const CMatrix un = conjugate_bob(rho, kraus(m, outcome));
  r.prob = std::max(0.0, un.trace().real());
  r.defined = r.prob > kProbFloor;
  r.post = r.defined ? CMatrix(un / r.prob) : CMatrix(CMatrix::Zero(4, 4));
  return r;
}

MeasurementResult apply_measurement(const PureState& psi,
                                    const RotatedMeasurement& m, int outcome) {
  if (psi.size() != 4) {
    throw std::invalid_argument("apply_measurement: expected a two-qubit state");
  }
  MeasurementResult r;
  const CVector v = tensor(identity(2), kraus(m, outcome)) * psi.amps;
  r.prob = v.squaredNorm();
  r.defined = r.prob > kProbFloor;
  r.post_pure = r.defined ? CVector(v / std::sqrt(r.prob)) : CVector::Zero(4);
  r.post = r.post_pure * r.post_pure.adjoint();
  return r;
}

CorrectionEntry corrective_unitary(const PureState& post, double tol) {
  if (post.size() != 4) {
    throw std::invalid_argument("corrective_unitary: expected two qubits");
  }
  const SchmidtDecomposition sd = schmidt_decompose(
      PureState(post.amps / post.amps.norm(), {2, 2}), tol);
  CorrectionEntry c;
  c.u_a = sd.basis_a;
  c.u_b = sd.basis_b;
  c.zeta = std::atan2(sd.coeffs(1), sd.coeffs(0));
  return c;
}

PureState canonical_state(double zeta) {
  CVector v = CVector::Zero(4);
  v(0) = std::cos(zeta);
  v(3) = std::sin(zeta);
  return PureState(v, {2, 2});
}

std::vector<HistoryOutcome> run_sequence(const CMatrix& initial,
                                         const MeasurementPlan& plan,
                                         const std::vector<int>& y,
                                         bool apply_corrections) {
  plan.validate();
  const int n = static_cast<int>(y.size());
  if (n > plan.size()) {
    throw std::invalid_argument("run_sequence: input longer than plan");
  }
  std::vector<HistoryOutcome> out;
  for (int idx = 0; idx < (1 << n); ++idx) {
    HistoryOutcome h;
    h.b = unpack_bits(idx, n);
    Chain ch = start_chain(initial, plan, apply_corrections);
    for (int k = 0; k < n; ++k) {
      ch.step(plan.rounds[k].for_input(y[k]), h.b[k]);
    }
    const CMatrix un = conjugate_bob(initial, ch.bob);
    h.prob = std::max(0.0, un.trace().real());
    h.defined = h.prob > kProbFloor;
    h.state = h.defined ? CMatrix(un / h.prob) : CMatrix(CMatrix::Zero(4, 4));
    h.corrections = std::move(ch.corrections);
    out.push_back(std::move(h));
  }
  return out;
}

Assemblage assemblage_at_round(const CMatrix& initial,
                               const MeasurementPlan& plan, int round,
                               bool apply_corrections) {
  plan.validate();
  if (round < 1 || round > plan.size()) {
    throw std::invalid_argument("assemblage_at_round: round out of range");
  }
  if (initial.rows() != 4 || initial.cols() != 4) {
    throw std::invalid_argument("assemblage_at_round: expected a 4x4 state");
  }
  Assemblage a;
  a.round = round;
  a.rho_a = partial_trace(initial, {2, 2}, {0});
  const int h = 1 << round;
  a.elements.assign(static_cast<size_t>(h) * h, CMatrix::Zero(2, 2));
  for (int yi = 0; yi < h; ++yi) {
    const std::vector<int> ys = unpack_bits(yi, round);
    for (int bi = 0; bi < h; ++bi) {
      const std::vector<int> bs = unpack_bits(bi, round);
      Chain ch = start_chain(initial, plan, apply_corrections);
      for (int k = 0; k < round; ++k) {
        ch.step(plan.rounds[k].for_input(ys[k]), bs[k]);
      }
      a.at(bi, yi) = hermitian_part(
          partial_trace(conjugate_bob(initial, ch.bob), {2, 2}, {0}));
    }
  }
  return a;
}

double Assemblage::psd_violation() const {
  double worst = 0.0;
  for (const CMatrix& e : elements) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(e),
                                              Eigen::EigenvaluesOnly);
    worst = std::max(worst, -es.eigenvalues().minCoeff());
  }
  return worst;
}

double Assemblage::no_signalling_residual() const {
  double worst = 0.0;
  const int h = histories();
  for (int y = 0; y < h; ++y) {
    CMatrix s = CMatrix::Zero(2, 2);
    for (int b = 0; b < h; ++b) s += at(b, y);
    worst = std::max(worst, (s - rho_a).cwiseAbs().maxCoeff());
  }
  return worst;
}

double Assemblage::causality_residual(const Assemblage& prev) const {
  if (prev.round + 1 != round) {
    throw std::invalid_argument("causality_residual: rounds are not adjacent");
  }
  double worst = 0.0;
  const int h = histories();
  for (int y = 0; y < h; ++y) {
    for (int b = 0; b < h; b += 2) {
      const CMatrix s = at(b, y) + at(b + 1, y);
      worst = std::max(worst,
                       (s - prev.at(b >> 1, y >> 1)).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

void Assemblage::check(double tol, const Assemblage* prev) const {
  if (psd_violation() > tol) {
    throw std::runtime_error("assemblage: element is not PSD");
  }
  if (no_signalling_residual() > tol) {
    throw std::runtime_error("assemblage: no-signalling violated");
  }
  if (prev != nullptr && causality_residual(*prev) > tol) {
    throw std::runtime_error("assemblage: causality violated");
  }
}

SscStatistics ssc_statistics(const CMatrix& initial,
                             const MeasurementPlan& plan,
                             const std::vector<int>& b_hist,
                             const std::vector<int>& y_hist) {
  plan.validate();
  const int i = static_cast<int>(b_hist.size());
  if (y_hist.size() != b_hist.size()) {
    throw std::invalid_argument("ssc_statistics: history length mismatch");
  }
  if (i >= plan.size()) {
    throw std::invalid_argument("ssc_statistics: no round after history");
  }
  Chain ch = start_chain(initial, plan, true);
  for (int k = 0; k < i; ++k) {
    ch.step(plan.rounds[k].for_input(y_hist[k]), b_hist[k]);
  }
  SscStatistics st;
  const CMatrix un = conjugate_bob(initial, ch.bob);
  st.prob = std::max(0.0, un.trace().real());
  if (st.prob <= kProbFloor) {
    throw std::runtime_error("ssc_statistics: history has zero probability");
  }
  const CMatrix rho = un / st.prob;
  const CorrectionEntry& c = ch.corrections.back();
  st.zeta = c.zeta;
  st.u_a = c.u_a;
  const CMatrix uz = c.u_a * pauli_z() * c.u_a.adjoint();
  const CMatrix ux = c.u_a * pauli_x() * c.u_a.adjoint();
  const RoundSettings& next = plan.rounds[i];
  st.zz = (rho * tensor(uz, observable(next.y0))).trace().real();
  st.xx = (rho * tensor(ux, observable(next.y1))).trace().real();
  st.z = (rho * tensor(uz, identity(2))).trace().real();
  return st;
}

std::vector<int> unpack_bits(int idx, int n) {
  std::vector<int> bits(n);
  for (int k = 0; k < n; ++k) bits[k] = (idx >> (n - 1 - k)) & 1;
  return bits;
}

int pack_bits(const std::vector<int>& bits) {
  int idx = 0;
  for (int b : bits) idx = (idx << 1) | (b & 1);
  return idx;
}

std::string bits_string(const std::vector<int>& bits) {
  std::string s;
  for (int b : bits) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace seqrand
