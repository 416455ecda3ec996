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

#include "seqrand/selftest.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

namespace seqrand {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool zeta_ok(double z) { return z > 0.0 && z <= kQuarterPi + 1e-12; }

// Operators on the A x B x E space of an instance.
struct Ops {
  int db, de;
  CMatrix on_a(const CMatrix& m) const {
    return tensor(m, identity(db * de));
  }
  CMatrix on_b(const CMatrix& m) const {
    return tensor(identity(2), tensor(m, identity(de)));
  }
};

CMatrix unit(int r, int c) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(r, c) = 1.0;
  return m;
}

double expect(const CVector& v, const CMatrix& op) {
  return v.dot(op * v).real();
}

CMatrix random_hermitian(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = cplx(g(rng), g(rng));
  }
  m = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
  return m / scale;
}

CMatrix expi(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  CVector phases(h.rows());
  for (int i = 0; i < h.rows(); ++i) {
    phases(i) = std::exp(cplx(0.0, t * es.eigenvalues()(i)));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

bool SscReport::all_pass() const {
  return std::all_of(rounds.begin(), rounds.end(),
                     [](const SscRound& r) { return r.pass; });
}

SscRound ssc_round(const SscStatistics& st, int round, double eps1_max,
                   double eps2_max) {
  SscRound r;
  r.round = round;
  r.zeta = st.zeta;
  r.eps1 = std::max(std::abs(st.zz - 1.0), std::abs(st.z - std::cos(2 * st.zeta)));
  r.eps2 = std::abs(st.xx - std::sin(2 * st.zeta));
  r.rejected = !zeta_ok(st.zeta);
  r.pass = !r.rejected && r.eps1 <= eps1_max && r.eps2 <= eps2_max;
  return r;
}

SscReport ssc_evaluate(const std::vector<SscStatistics>& stats,
                       double eps1_max, double eps2_max) {
  SscReport rep;
  for (size_t i = 0; i < stats.size(); ++i) {
    rep.rounds.push_back(
        ssc_round(stats[i], static_cast<int>(i) + 1, eps1_max, eps2_max));
  }
  return rep;
}

std::vector<SscStatistics> collect_ssc(const CMatrix& initial,
                                       const MeasurementPlan& plan,
                                       const std::vector<int>& b_hist,
                                       const std::vector<int>& y_hist) {
  if (b_hist.size() != y_hist.size()) {
    throw std::invalid_argument("collect_ssc: history length mismatch");
  }
  std::vector<SscStatistics> out;
  for (size_t i = 0; i < y_hist.size(); ++i) {
    const std::vector<int> b(b_hist.begin(), b_hist.begin() + i);
    const std::vector<int> y(y_hist.begin(), y_hist.begin() + i);
    out.push_back(ssc_statistics(initial, plan, b, y));
  }
  return out;
}

double round_factor(double eps1, double eps2, double zeta) {
  if (zeta <= 0.0) return kInf;
  const double s = std::sin(zeta);
  return 0.5 + std::sqrt(eps1) * (3 * kSqrt2 + 2 + 5 / (2 * s)) +
         3 * std::sqrt(eps1 + eps2) * (1 / (kSqrt2 * s) + 1);
}

BoundResult theorem1_bound(const SscReport& report) {
  BoundResult b;
  b.raw = 1.0;
  for (const SscRound& r : report.rounds) {
    const double f = r.rejected ? kInf : round_factor(r.eps1, r.eps2, r.zeta);
    b.factors.push_back(f);
    b.raw *= f;
  }
  b.value = std::min(b.raw, 1.0);
  b.vacuous = b.raw >= 1.0;
  return b;
}

BoundResult corollary_bounds(double eps1, double eps2, double zeta) {
  BoundResult b;
  b.raw = round_factor(eps1, eps2, zeta);
  b.factors = {b.raw};
  b.value = std::clamp(b.raw, 0.5, 1.0);
  b.vacuous = b.raw >= 1.0;
  return b;
}

double next_zeta(double zeta, double theta) {
  return 0.5 * std::asin(std::sin(2 * zeta) * std::sin(2 * theta));
}

MinEntropySchedule theorem2_minentropy(int n, double c, double zeta0) {
  if (!(c > 0.0 && c < 1.0)) {
    throw std::invalid_argument("theorem2: c must lie in ]0, 1[");
  }
  if (n < 1) throw std::invalid_argument("theorem2: n must be >= 1");
  if (!zeta_ok(zeta0)) {
    throw std::invalid_argument("theorem2: zeta0 must lie in ]0, pi/4]");
  }
  MinEntropySchedule s;
  s.n = n;
  s.c = c;
  s.d = c * std::numbers::ln2 / (12 * kSqrt2);
  s.target = (1.0 - c) * n;
  const double log_d = std::log(s.d);
  double lz = std::log(zeta0);
  double l_sin2z = std::log(std::sin(2 * zeta0));
  for (int i = 0; i < n; ++i) {
    const double zeta = std::exp(lz);
    const double lt = log_d + lz;
    const double theta = std::exp(lt);
    if (!std::isfinite(lt) || !(theta < kQuarterPi)) {
      throw std::runtime_error("theorem2: schedule left ]0, pi/4[");
    }
    s.log_zeta.push_back(lz);
    s.log_theta.push_back(lt);
    s.theta.push_back(theta);
    // sin(theta)/sin(zeta) -> d as zeta -> 0.
    const double ratio = zeta > 1e-6 ? std::sin(theta) / std::sin(zeta) : s.d;
    const double factor = 0.5 + 3 * ratio + 3 * kSqrt2 * std::sin(theta);
    s.bound -= std::log2(factor);
    const double l_sin2t =
        theta > 1e-6 ? std::log(std::sin(2 * theta)) : std::log(2.0) + lt;
    l_sin2z += l_sin2t;
    lz = l_sin2z > std::log(1e-6) ? std::log(0.5 * std::asin(std::exp(l_sin2z)))
                                  : l_sin2z - std::log(2.0);
  }
  return s;
}

std::array<double, 6> theorem2_proof_lines(const std::vector<double>& theta,
                                           const std::vector<double>& zeta) {
  if (theta.size() != zeta.size()) {
    throw std::invalid_argument("theorem2_proof_lines: length mismatch");
  }
  const double n = static_cast<double>(theta.size());
  const double ln2 = std::numbers::ln2;
  std::array<double, 6> l{0.0, n, n, n, n, n};
  for (size_t i = 0; i < theta.size(); ++i) {
    const double t = theta[i], z = zeta[i];
    const double se2 = kSqrt2 * std::sin(t);  // sqrt(eps2) with eps2 = 2 sin^2 t
    const double k = 1 / (kSqrt2 * std::sin(z)) + 1;
    l[0] -= std::log2(0.5 + 3 * se2 * k);
    l[1] -= std::log2(1 + 6 * se2 * k);
    l[2] -= 6 / ln2 * se2 * k;
    l[3] -= 6 / ln2 * std::sin(t) * (1 / std::sin(z) + kSqrt2);
    l[4] -= 6 * kSqrt2 / ln2 * t * (1 / z + 1);
    l[5] -= 12 * kSqrt2 / ln2 * t / z;
  }
  return l;
}

void SelfTestInstance::validate(double tol) const {
  const int dim = 2 * db * de;
  if (psi.size() != dim) {
    throw std::invalid_argument("self-test instance: state has wrong dimension");
  }
  if (std::abs(psi.norm() - 1.0) > tol) {
    throw std::invalid_argument("self-test instance: state is not normalized");
  }
  for (const CMatrix* m : {&x_b, &z_b}) {
    if (m->rows() != db || m->cols() != db) {
      throw std::invalid_argument("self-test instance: observable dimension");
    }
    if (!is_hermitian(*m, tol) || !is_unitary(*m, tol)) {
      throw std::invalid_argument(
          "self-test instance: observables must be Hermitian with square I");
    }
  }
}

CritEpsilons crit_epsilons(const SelfTestInstance& inst) {
  const Ops o{inst.db, inst.de};
  const double zz = expect(inst.psi, o.on_a(pauli_z()) * o.on_b(inst.z_b));
  const double xx = expect(inst.psi, o.on_a(pauli_x()) * o.on_b(inst.x_b));
  const double z = expect(inst.psi, o.on_a(pauli_z()));
  CritEpsilons e;
  e.eps1 = std::max(std::abs(zz - 1.0), std::abs(z - std::cos(2 * inst.zeta)));
  e.eps2 = std::abs(xx - std::sin(2 * inst.zeta));
  return e;
}

CVector isometry_phi(const SelfTestInstance& inst, const CVector& v) {
  inst.validate();
  const Ops o{inst.db, inst.de};
  const CMatrix zb = o.on_b(inst.z_b);
  const CMatrix xb = o.on_b(inst.x_b);
  const double h = 1.0 / std::sqrt(2.0);
  // Components of the B' qubit, starting from |+>.
  CVector c0 = h * v, c1 = h * v;
  c1 = zb * c1;  // controlled-Z_B
  const CVector s0 = h * (c0 + c1), s1 = h * (c0 - c1);  // Hadamard on B'
  c0 = s0;
  c1 = xb * s1;  // controlled-X_B
  CVector out(2 * v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out(2 * k) = c0(k);
    out(2 * k + 1) = c1(k);
  }
  return out;
}

SelfTestDistances selftest_distances(const SelfTestInstance& inst) {
  inst.validate();
  if (!zeta_ok(inst.zeta)) {
    throw std::invalid_argument("selftest_distances: zeta outside ]0, pi/4]");
  }
  SelfTestDistances d;
  d.eps = crit_epsilons(inst);
  const int rest = inst.db * inst.de;
  // |anc> from the |0>_A branch of psi.
  CVector anc = inst.psi.head(rest);
  const double alpha = anc.norm();
  if (alpha > 0.0) anc /= alpha;
  const double c = std::cos(inst.zeta), s = std::sin(inst.zeta);
  CVector t1 = CVector::Zero(4 * rest), t2 = CVector::Zero(4 * rest);
  for (int k = 0; k < rest; ++k) {
    // index (a * rest + k) * 2 + b'
    t1(2 * k + 0) = c * anc(k);              // |0>_A |0>_B'
    t1(2 * (rest + k) + 1) = s * anc(k);     // |1>_A |1>_B'
    t2(2 * k + 1) = c * anc(k);              // tau_X on B'
    t2(2 * (rest + k) + 0) = s * anc(k);
  }
  const Ops o{inst.db, inst.de};
  d.lhs1 = (isometry_phi(inst, inst.psi) - t1).norm();
  d.lhs2 = (isometry_phi(inst, o.on_b(inst.x_b) * inst.psi) - t2).norm();
  const double e1 = d.eps.eps1, e = d.eps.eps1 + d.eps.eps2;
  d.rhs1 = std::sqrt(e1) * (kSqrt2 + 1) + std::sqrt(e);
  d.rhs2 = std::sqrt(e1) * (2 * kSqrt2 + 1 + 5 / (2 * s)) +
           std::sqrt(e) * (3 / (kSqrt2 * s) + 2);
  return d;
}

std::vector<NormCheck> lemma_norms(const SelfTestInstance& inst, int lemma) {
  inst.validate();
  if (!zeta_ok(inst.zeta)) {
    throw std::invalid_argument("lemma_norms: zeta outside ]0, pi/4]");
  }
  const Ops o{inst.db, inst.de};
  const CritEpsilons ce = crit_epsilons(inst);
  const double e1 = ce.eps1, e = ce.eps1 + ce.eps2;
  const double c = std::cos(inst.zeta), s = std::sin(inst.zeta);
  const double tn = s / c, ct = c / s;
  const CMatrix id_b = identity(inst.db);
  const CMatrix xb = o.on_b(inst.x_b);
  const CMatrix pi0 = o.on_b(0.5 * (id_b + inst.z_b));
  const CMatrix pi1 = o.on_b(0.5 * (id_b - inst.z_b));
  const CMatrix a00 = o.on_a(unit(0, 0)), a11 = o.on_a(unit(1, 1));
  const CMatrix a10 = o.on_a(unit(1, 0)), a01 = o.on_a(unit(0, 1));
  auto nrm = [&](const CMatrix& op) { return (op * inst.psi).norm(); };
  std::vector<NormCheck> out;
  switch (lemma) {
    case 1:
      out.push_back({"lemma1.x0", nrm(a00 - pi0), std::sqrt(e1 / 2)});
      out.push_back({"lemma1.x1", nrm(a11 - pi1), std::sqrt(e1 / 2)});
      break;
    case 2:
      out.push_back({"lemma2.a", nrm(s * a10 - c * a11 * xb), std::sqrt(e / 2)});
      out.push_back({"lemma2.b", nrm(c * a01 - s * a00 * xb), std::sqrt(e / 2)});
      break;
    case 3:
      out.push_back({"lemma3.a", nrm(s * a10 - c * xb * pi1),
                     std::sqrt(e / 2) + c * std::sqrt(e1 / 2)});
      out.push_back({"lemma3.b", nrm(c * a01 - s * xb * pi0),
                     std::sqrt(e / 2) + s * std::sqrt(e1 / 2)});
      out.push_back({"lemma3.c", nrm(xb - tn * a10 - ct * a01),
                     std::sqrt(2 * e1) + std::sqrt(e / 2) * (1 / s + 1 / c)});
      break;
    case 4: {
      const double r = std::sqrt(2 * e1) * (1 + 1 / std::sin(2 * inst.zeta)) +
                       std::sqrt(e / 2) * (1 / s + 1 / c);
      out.push_back({"lemma4.a", nrm(tn * a10 - pi0 * xb), r});
      out.push_back({"lemma4.b", nrm(ct * a01 - pi1 * xb), r});
      out.push_back(
          {"lemma4.c", nrm(a00 - xb * pi1 * xb),
           std::sqrt(e1 / 2) * (ct + 2 * (1 + 1 / std::sin(2 * inst.zeta))) +
               std::sqrt(e / 2) * (2 / s + 1 / c)});
      break;
    }
    default:
      throw std::invalid_argument("lemma_norms: lemma must be 1..4");
  }
  return out;
}

NaimarkDilation naimark_dilate(const RotatedMeasurement& m) {
  const CMatrix k0 = kraus(m, 0), k1 = kraus(m, 1);
  // The two Kraus operators commute and satisfy K0^2 + K1^2 = I, so
  // K0 x I + K1 x (|1><0| - |0><1|) is unitary and sends |psi,0> to
  // K0 psi |0> + K1 psi |1>.
  const CMatrix j = unit(1, 0) - unit(0, 1);
  NaimarkDilation d;
  d.unitary = tensor(k0, identity(2)) + tensor(k1, j);
  for (int b = 0; b < 2; ++b) {
    d.projectors[b] =
        d.unitary.adjoint() * tensor(identity(2), unit(b, b)) * d.unitary;
  }
  return d;
}

SelfTestInstance tqsm_instance(double zeta, double theta, double phi) {
  SelfTestInstance inst;
  inst.db = 4;
  inst.de = 1;
  inst.zeta = zeta;
  inst.psi = CVector::Zero(8);
  inst.psi(0) = std::cos(zeta);  // |0>_A |0>_q |0>_anc
  inst.psi(6) = std::sin(zeta);  // |1>_A |1>_q |0>_anc
  inst.z_b = naimark_dilate({Basis::kZ, phi}).observable();
  inst.x_b = naimark_dilate({Basis::kX, theta}).observable();
  return inst;
}

SelfTestInstance random_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double zeta = std::numbers::pi / 16 + u(rng) * (3 * std::numbers::pi / 16);
  const double theta = 0.3 * u(rng);
  const double phi = 0.1 * u(rng);
  const double delta = 0.1 * u(rng);
  const double drift = 0.1 * u(rng);
  SelfTestInstance base = tqsm_instance(zeta, theta, phi);
  SelfTestInstance inst;
  inst.db = 4;
  inst.de = 2;
  inst.zeta = zeta;
  CVector e0 = CVector::Zero(2);
  e0(0) = 1.0;
  inst.psi = tensor(base.psi, e0);
  std::normal_distribution<double> g(0.0, 1.0);
  CVector noise(inst.psi.size());
  for (Eigen::Index k = 0; k < noise.size(); ++k) noise(k) = cplx(g(rng), g(rng));
  inst.psi += delta * noise / noise.norm();
  inst.psi /= inst.psi.norm();
  const CMatrix wz = expi(random_hermitian(rng, 4), drift);
  const CMatrix wx = expi(random_hermitian(rng, 4), drift);
  inst.z_b = hermitian_part(wz * base.z_b * wz.adjoint());
  inst.x_b = hermitian_part(wx * base.x_b * wx.adjoint());
  return inst;
}

std::vector<HarnessRow> run_selftest_harness(int instances,
                                             std::uint64_t seed) {
  std::vector<HarnessRow> rows;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    const SelfTestInstance inst = random_instance(s);
    for (int lemma = 1; lemma <= 4; ++lemma) {
      for (const NormCheck& c : lemma_norms(inst, lemma)) {
        rows.push_back({s, c.name, c.lhs, c.rhs});
      }
    }
    const SelfTestDistances d = selftest_distances(inst);
    rows.push_back({s, "selftest.state", d.lhs1, d.rhs1});
    rows.push_back({s, "selftest.x", d.lhs2, d.rhs2});
  }
  return rows;
}

void write_harness_csv(std::ostream& os, const std::vector<HarnessRow>& rows) {
  os << "seed,check,lhs,rhs,margin\n";
  os << std::setprecision(12);
  for (const HarnessRow& r : rows) {
    os << r.seed << ',' << r.check << ',' << r.lhs << ',' << r.rhs << ','
       << r.margin() << '\n';
  }
}

}  // namespace seqrand
