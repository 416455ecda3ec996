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

#include "seqrand/steering.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace seqrand {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Hermitian d x d variables embedded as real 2d x 2d PSD blocks.
class HermitianBuilder {
 public:
  HermitianBuilder(ConicProblem& p, int d)
      : p_(p), d_(d), basis_(hermitian_basis(d)) {}

  // A d x d Hermitian PSD variable.
  int variable() { return restricted(CMatrix::Identity(d_, d_)); }

  // A variable confined to the column span of v: X = v S v^dag with S PSD.
  // A v with no columns pins the variable to zero.
  int restricted(const CMatrix& v) {
    const int block = v.cols() > 0 ? p_.add_block(2 * static_cast<int>(v.cols())) : -1;
    vars_.push_back({block, v});
    return static_cast<int>(vars_.size()) - 1;
  }

  // Adds tr(P H(X_var)) to row con.
  void add_linear(int con, int var, const CMatrix& pm) {
    const Var& x = vars_[var];
    if (x.block < 0) return;
    const RMatrix r = 0.5 * realify(x.v.adjoint() * pm * x.v);
    for (int i = 0; i < r.rows(); ++i) {
      for (int j = i; j < r.cols(); ++j) {
        if (r(i, j) != 0.0) p_.add_coefficient(con, x.block, i, j, r(i, j));
      }
    }
  }

  void add_objective(int var, const CMatrix& pm) {
    const Var& x = vars_[var];
    if (x.block < 0) return;
    const RMatrix r = 0.5 * realify(x.v.adjoint() * pm * x.v);
    for (int i = 0; i < r.rows(); ++i) {
      for (int j = i; j < r.cols(); ++j) {
        if (r(i, j) != 0.0) p_.add_objective(x.block, i, j, r(i, j));
      }
    }
  }

  // sum_t coeff_t H(X_t) = rhs as one real row per Hermitian basis element.
  void equate(const std::vector<std::pair<int, double>>& terms,
              const CMatrix& rhs, const std::string& family,
              std::vector<std::string>* families) {
    for (const CMatrix& bk : basis_) {
      const int con = p_.add_constraint((bk * rhs).trace().real());
      for (const auto& [var, coeff] : terms) {
        add_linear(con, var, coeff * bk);
      }
      if (families != nullptr) families->push_back(family);
    }
  }

  CMatrix value(const ConicSolution& s, int var) const {
    const Var& x = vars_[var];
    if (x.block < 0) return CMatrix::Zero(d_, d_);
    const CMatrix inner = hermitian_part(derealify(s.x[x.block]));
    return x.v * inner * x.v.adjoint();
  }

 private:
  struct Var {
    int block;
    CMatrix v;
  };
  ConicProblem& p_;
  int d_;
  std::vector<CMatrix> basis_;
  std::vector<Var> vars_;
};

constexpr double kFaceTol = 1e-14;
// Eigenvalues of F below this fraction of the largest count as kernel. Extra
// directions only relax the program.
constexpr double kKernelTol = 1e-6;
constexpr double kRangeTol = 1e-3;

// Orthonormal basis of the numerical kernel of a PSD matrix.
CMatrix kernel_basis(const CMatrix& f, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(f));
  const double top = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
  int r = 0;
  while (r < es.eigenvalues().size() && es.eigenvalues()(r) <= rel_tol * top) ++r;
  return es.eigenvectors().leftCols(r);
}

double min_eigenvalue(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}


}  // namespace

std::size_t strategy_count(int rounds, bool causal) {
  if (rounds < 1) return 0;
  const std::size_t sat = std::numeric_limits<std::size_t>::max();
  if (causal) {
    // One free bit per input prefix of every length.
    std::size_t bits = 0;
    for (int k = 1; k <= rounds; ++k) bits += std::size_t{1} << k;
    return bits >= 63 ? sat : (std::size_t{1} << bits);
  }
  // (2^n)^(2^n).
  const std::size_t h = std::size_t{1} << rounds;
  const std::size_t bits = static_cast<std::size_t>(rounds) * h;
  return bits >= 63 ? sat : (std::size_t{1} << bits);
}

bool is_prefix_consistent(const DeterministicStrategy& s) {
  const int n = s.rounds;
  const int h = 1 << n;
  for (int k = 1; k < n; ++k) {
    const int shift = n - k;
    for (int y = 0; y < h; ++y) {
      for (int y2 = 0; y2 < h; ++y2) {
        if ((y >> shift) == (y2 >> shift) &&
            (s.table[y] >> shift) != (s.table[y2] >> shift)) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<DeterministicStrategy> enumerate_strategies(int rounds, bool causal,
                                                        std::size_t cap) {
  if (rounds < 1) throw std::invalid_argument("enumerate_strategies: rounds");
  const std::size_t count = strategy_count(rounds, causal);
  if (count > cap) {
    throw std::length_error("enumerate_strategies: " + std::to_string(count) +
                            " strategies exceed the cap of " +
                            std::to_string(cap));
  }
  const int h = 1 << rounds;
  std::vector<DeterministicStrategy> out;
  out.reserve(count);
  for (std::size_t lam = 0; lam < count; ++lam) {
    DeterministicStrategy s;
    s.rounds = rounds;
    s.causal = causal;
    s.table.assign(h, 0);
    if (causal) {
      // Bit layout: prefixes of length 1 first, then length 2, ...; within a
      // length, ordered by prefix value.
      std::size_t offset = 0;
      for (int k = 1; k <= rounds; ++k) {
        for (int y = 0; y < h; ++y) {
          const int prefix = y >> (rounds - k);
          const int bit = static_cast<int>((lam >> (offset + prefix)) & 1U);
          s.table[y] |= bit << (rounds - k);
        }
        offset += std::size_t{1} << k;
      }
    } else {
      std::size_t rest = lam;
      for (int y = 0; y < h; ++y) {
        s.table[y] = static_cast<int>(rest % h);
        rest /= h;
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

RMatrix realify(const CMatrix& h) {
  const Eigen::Index d = h.rows();
  RMatrix r(2 * d, 2 * d);
  r.topLeftCorner(d, d) = h.real();
  r.topRightCorner(d, d) = -h.imag();
  r.bottomLeftCorner(d, d) = h.imag();
  r.bottomRightCorner(d, d) = h.real();
  return r;
}

CMatrix derealify(const RMatrix& x) {
  const Eigen::Index d = x.rows() / 2;
  const RMatrix re = 0.5 * (x.topLeftCorner(d, d) + x.bottomRightCorner(d, d));
  const RMatrix im = 0.5 * (x.bottomLeftCorner(d, d) - x.topRightCorner(d, d));
  CMatrix out(d, d);
  out.real() = re;
  out.imag() = im;
  return out;
}

std::vector<CMatrix> hermitian_basis(int d) {
  std::vector<CMatrix> out;
  for (int j = 0; j < d; ++j) {
    CMatrix m = CMatrix::Zero(d, d);
    m(j, j) = 1.0;
    out.push_back(m);
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      CMatrix re = CMatrix::Zero(d, d);
      re(j, k) = re(k, j) = 1.0;
      out.push_back(re);
      CMatrix im = CMatrix::Zero(d, d);
      im(j, k) = cplx(0, -1);
      im(k, j) = cplx(0, 1);
      out.push_back(im);
    }
  }
  return out;
}

SteeringWeightResult steering_weight(const Assemblage& a, bool causal,
                                     const ConicOptions& opts) {
  SteeringWeightResult res;
  res.strategies = enumerate_strategies(a.round, causal);
  const int h = a.histories();
  ConicProblem p;
  HermitianBuilder hb(p, 2);
  std::vector<int> lam_block;
  for (size_t l = 0; l < res.strategies.size(); ++l) {
    lam_block.push_back(hb.variable());
    hb.add_objective(lam_block.back(), -identity(2));
  }
  for (int y = 0; y < h; ++y) {
    for (int b = 0; b < h; ++b) {
      std::vector<std::pair<int, double>> terms;
      terms.emplace_back(hb.variable(), 1.0);
      for (size_t l = 0; l < res.strategies.size(); ++l) {
        if (res.strategies[l].output(y) == b) terms.emplace_back(lam_block[l], 1.0);
      }
      hb.equate(terms, a.at(b, y), "assemblage", nullptr);
    }
  }
  res.solver = solve_conic(p, opts);
  if (res.solver.x.empty()) {
    throw std::runtime_error("steering_weight: " + res.solver.message);
  }
  res.sw = 1.0 + res.solver.primal_objective;
  for (int blk : lam_block) res.lhs.push_back(hb.value(res.solver, blk));
  return res;
}

double lhs_margin(const SteeringFunctional& f, bool causal) {
  const auto strategies = enumerate_strategies(f.round, causal);
  double worst = std::numeric_limits<double>::infinity();
  const int h = f.histories();
  for (const DeterministicStrategy& s : strategies) {
    CMatrix sum = -identity(2);
    for (int y = 0; y < h; ++y) sum += f.at(s.output(y), y);
    worst = std::min(worst, min_eigenvalue(sum));
  }
  return worst;
}

SteeringInequalityResult steering_inequality(const Assemblage& a, bool causal,
                                             const ConicOptions& opts) {
  SteeringInequalityResult res;
  const auto strategies = enumerate_strategies(a.round, causal);
  const int h = a.histories();
  ConicProblem p;
  HermitianBuilder hb(p, 2);
  std::vector<int> f_block(static_cast<size_t>(h) * h);
  for (int y = 0; y < h; ++y) {
    for (int b = 0; b < h; ++b) {
      const int blk = hb.variable();
      f_block[static_cast<size_t>(y) * h + b] = blk;
      hb.add_objective(blk, a.at(b, y));
    }
  }
  for (const DeterministicStrategy& s : strategies) {
    std::vector<std::pair<int, double>> terms;
    for (int y = 0; y < h; ++y) {
      terms.emplace_back(f_block[static_cast<size_t>(y) * h + s.output(y)], 1.0);
    }
    terms.emplace_back(hb.variable(), -1.0);
    hb.equate(terms, identity(2), "strategy", nullptr);
  }
  res.solver = solve_conic(p, opts);
  if (res.solver.x.empty()) {
    throw std::runtime_error("steering_inequality: " + res.solver.message);
  }
  SteeringFunctional& f = res.functional;
  f.round = a.round;
  f.f.resize(f_block.size());
  res.min_f_eigenvalue = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < f_block.size(); ++k) {
    f.f[k] = hb.value(res.solver, f_block[k]);
    res.min_f_eigenvalue = std::min(res.min_f_eigenvalue, min_eigenvalue(f.f[k]));
  }
  f.violation = violation(f, a);
  res.sw = 1.0 - f.violation;
  res.min_lhs_eigenvalue = lhs_margin(f, causal);
  return res;
}

SteeringFunctional projective_functional(const Assemblage& a, double alpha,
                                         double threshold) {
  SteeringFunctional f;
  f.round = a.round;
  f.f.resize(a.elements.size());
  for (size_t k = 0; k < a.elements.size(); ++k) {
    const CMatrix& s = a.elements[k];
    const double t = s.trace().real();
    if (t < threshold) {
      f.f[k] = alpha * identity(2);
      f.skipped.push_back(static_cast<int>(k));
    } else {
      f.f[k] = alpha * (identity(2) - hermitian_part(s) / t);
    }
  }
  f.violation = violation(f, a);
  return f;
}

double violation(const SteeringFunctional& f, const Assemblage& a) {
  if (f.f.size() != a.elements.size() || f.round != a.round) {
    throw std::invalid_argument("violation: alphabet mismatch");
  }
  double v = 0.0;
  for (size_t k = 0; k < f.f.size(); ++k) {
    v += (f.f[k] * a.elements[k]).trace().real();
  }
  return v;
}

std::string normalization_name(Normalization n) {
  return n == Normalization::kTrace ? "trace" : "rho";
}

Normalization parse_normalization(const std::string& s) {
  if (s == "trace") return Normalization::kTrace;
  if (s == "rho" || s == "reduced-state") return Normalization::kReducedState;
  throw std::invalid_argument("unknown normalization '" + s + "'");
}

ConicProblem build_guess_problem(
    const std::vector<SteeringFunctional>& functionals,
    const std::vector<double>& violations, const CMatrix& rho_a,
    const std::vector<int>& y_star, int n, int target_b, Normalization anchor,
    std::vector<std::string>* row_families) {
  if (n < 1) throw std::invalid_argument("guess program: n must be >= 1");
  if (static_cast<int>(functionals.size()) != n ||
      static_cast<int>(violations.size()) != n ||
      static_cast<int>(y_star.size()) != n) {
    throw std::invalid_argument("guess program: per-round inputs must have length n");
  }
  for (int i = 0; i < n; ++i) {
    if (functionals[i].round != i + 1 ||
        static_cast<int>(functionals[i].f.size()) != (1 << (2 * (i + 1)))) {
      throw std::invalid_argument("guess program: functional alphabet mismatch");
    }
  }
  if (target_b < 0 || target_b >= (1 << n)) {
    throw std::invalid_argument("guess program: outcome string out of range");
  }
  ConicProblem p;
  HermitianBuilder hb(p, 2);
  // A PSD functional with zero observed value confines every element to the
  // kernel of its F. Imposing that directly removes a face without interior.
  std::vector<bool> reduced(n, false);
  for (int i = 0; i < n; ++i) {
    std::vector<double> eig;
    for (const CMatrix& fk : functionals[i].f) {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(fk), Eigen::EigenvaluesOnly);
      for (double e : es.eigenvalues()) eig.push_back(e);
    }
    const double top = *std::max_element(eig.begin(), eig.end());
    // Only a clean split into kernel and range makes the face well defined.
    bool split = top > 0.0;
    for (double e : eig) {
      split = split && e >= -kFaceTol * top &&
              (e <= kKernelTol * top || e >= kRangeTol * top);
    }
    reduced[i] = split && std::abs(violations[i]) <= kFaceTol * top;
  }
  // blocks[i][y*h+b] for round i+1.
  std::vector<std::vector<int>> blocks(n);
  for (int i = 0; i < n; ++i) {
    const int h = 1 << (i + 1);
    blocks[i].resize(static_cast<size_t>(h) * h);
    for (size_t k = 0; k < blocks[i].size(); ++k) {
      blocks[i][k] = reduced[i]
                         ? hb.restricted(kernel_basis(functionals[i].f[k], kKernelTol))
                         : hb.variable();
    }
  }
  auto var = [&](int i, int b, int y) {
    const int h = 1 << (i + 1);
    return blocks[i][static_cast<size_t>(y) * h + b];
  };

  // Observed violations.
  for (int i = 0; i < n; ++i) {
    if (reduced[i]) continue;
    const int h = 1 << (i + 1);
    const int con = p.add_constraint(violations[i]);
    for (int y = 0; y < h; ++y) {
      for (int b = 0; b < h; ++b) {
        hb.add_linear(con, var(i, b, y), functionals[i].at(b, y));
      }
    }
    if (row_families) row_families->push_back("violation-" + std::to_string(i + 1));
  }
  // Causality between consecutive rounds.
  for (int i = 1; i < n; ++i) {
    const int h = 1 << (i + 1);
    for (int y = 0; y < h; ++y) {
      for (int bp = 0; bp < h / 2; ++bp) {
        hb.equate({{var(i, 2 * bp, y), 1.0},
                   {var(i, 2 * bp + 1, y), 1.0},
                   {var(i - 1, bp, y >> 1), -1.0}},
                  CMatrix::Zero(2, 2), "causality-" + std::to_string(i + 1),
                  row_families);
      }
    }
  }
  // No-signalling at every round: each input's marginal equals input 0's.
  for (int i = 0; i < n; ++i) {
    const int h = 1 << (i + 1);
    for (int y = 1; y < h; ++y) {
      std::vector<std::pair<int, double>> terms;
      for (int b = 0; b < h; ++b) {
        terms.emplace_back(var(i, b, y), 1.0);
        terms.emplace_back(var(i, b, 0), -1.0);
      }
      hb.equate(terms, CMatrix::Zero(2, 2),
                "no-signalling-" + std::to_string(i + 1), row_families);
    }
  }
  // Scale anchor on the first round.
  if (anchor == Normalization::kReducedState) {
    for (int y = 0; y < 2; ++y) {
      hb.equate({{var(0, 0, y), 1.0}, {var(0, 1, y), 1.0}}, rho_a, "anchor",
                row_families);
    }
  } else {
    const int con = p.add_constraint(1.0);
    hb.add_linear(con, var(0, 0, 0), identity(2));
    hb.add_linear(con, var(0, 1, 0), identity(2));
    if (row_families) row_families->push_back("anchor");
  }
  hb.add_objective(var(n - 1, target_b, pack_bits(y_star)), -identity(2));
  return p;
}

CertificationReport guess_prob_sequential(
    const std::vector<SteeringFunctional>& functionals,
    const std::vector<double>& violations, const CMatrix& rho_a,
    const std::vector<int>& y_star, int n, const GuessOptions& opts) {
  CertificationReport rep;
  rep.rounds = n;
  rep.violations = violations;
  rep.steering_weights.assign(n, kNaN);
  for (int y : y_star) {
    if (y != 0 && y != 1) throw std::invalid_argument("y* entries must be bits");
  }
  const int outcomes = 1 << n;
  rep.per_outcome.assign(outcomes, kNaN);
  std::ostringstream msg;
  for (int b = 0; b < outcomes; ++b) {
    std::vector<std::string> families;
    const ConicProblem p = build_guess_problem(
        functionals, violations, rho_a, y_star, n, b, opts.anchor, &families);
    const ConicSolution s = solve_conic(p, opts.conic);
    rep.iterations += s.iterations;
    rep.status = worse_status(rep.status, s.status);
    if (s.status == ConicStatus::kPrimalInfeasible) {
      // Name the family: the preprocessing message carries a row index.
      std::string family = "violation";
      const auto pos = s.message.find("constraint ");
      if (pos != std::string::npos) {
        const int row = std::stoi(s.message.substr(pos + 11));
        if (row >= 0 && row < static_cast<int>(families.size())) {
          family = families[row];
        }
      }
      msg << "b=" << bits_string(unpack_bits(b, n)) << ": infeasible ("
          << family << " constraints); ";
      continue;
    }
    if (s.x.empty()) continue;
    // The dual value bounds the optimum from above; keep the larger of the
    // two so a slightly infeasible primal iterate cannot understate p_guess.
    rep.per_outcome[b] = std::max(-s.primal_objective, -s.dual_objective);
    rep.max_gap = std::max(rep.max_gap, s.gap);
    if (!s.usable()) {
      msg << "b=" << bits_string(unpack_bits(b, n)) << ": " << s.message
          << "; ";
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  for (int b = 0; b < outcomes; ++b) {
    if (std::isnan(rep.per_outcome[b])) continue;
    best = std::max(best, rep.per_outcome[b]);
  }
  rep.best_outcome = 0;
  for (int b = 0; b < outcomes; ++b) {
    if (!std::isnan(rep.per_outcome[b]) && rep.per_outcome[b] >= best - 1e-9) {
      rep.best_outcome = b;
      break;
    }
  }
  if (std::isfinite(best)) {
    rep.p_guess = best;
    rep.h_min = -std::log2(best);
  } else {
    rep.p_guess = kNaN;
    rep.h_min = kNaN;
  }
  rep.message = msg.str();
  return rep;
}

CertificationReport guess_prob_single(const SteeringFunctional& f, double v,
                                      const CMatrix& rho_a, int y_star,
                                      const GuessOptions& opts) {
  return guess_prob_sequential({f}, {v}, rho_a, {y_star}, 1, opts);
}

CertificationReport certify_assemblages(const std::vector<Assemblage>& rounds,
                                        const std::vector<int>& y_star,
                                        bool last_round_projective,
                                        const PipelineOptions& opts) {
  const int n = static_cast<int>(rounds.size());
  if (n < 1) throw std::invalid_argument("certify: no rounds");
  std::vector<SteeringFunctional> fs;
  std::vector<double> vs, sws;
  std::ostringstream msg;
  ConicStatus status = ConicStatus::kOptimal;
  for (int i = 0; i < n; ++i) {
    if (rounds[i].round != i + 1) {
      throw std::invalid_argument("certify: assemblages must be rounds 1..n");
    }
    if (i == n - 1 && n >= 2 && last_round_projective &&
        opts.projective_last_round) {
      fs.push_back(projective_functional(rounds[i], opts.alpha));
      sws.push_back(kNaN);
      if (!fs.back().skipped.empty()) {
        msg << "round " << n << ": " << fs.back().skipped.size()
            << " zero-trace elements given alpha*I; ";
      }
    } else {
      SteeringInequalityResult r =
          steering_inequality(rounds[i], opts.causal, opts.guess.conic);
      status = worse_status(status, r.solver.status);
      if (!r.solver.usable()) {
        msg << "round " << i + 1 << " steering weight: " << r.solver.message
            << "; ";
      }
      fs.push_back(std::move(r.functional));
      sws.push_back(r.sw);
    }
    vs.push_back(violation(fs.back(), rounds[i]));
  }
  CertificationReport rep =
      guess_prob_sequential(fs, vs, rounds[0].rho_a, y_star, n, opts.guess);
  rep.steering_weights = sws;
  rep.status = worse_status(rep.status, status);
  rep.message = msg.str() + rep.message;
  return rep;
}

CertificationReport certify_state(const CMatrix& rho,
                                  const MeasurementPlan& plan,
                                  const std::vector<int>& y_star,
                                  const PipelineOptions& opts) {
  const int n = static_cast<int>(y_star.size());
  if (n < 1 || n > plan.size()) {
    throw std::invalid_argument("certify: y* length must be in [1, plan rounds]");
  }
  std::vector<Assemblage> rounds;
  for (int i = 1; i <= n; ++i) rounds.push_back(assemblage_at_round(rho, plan, i));
  const RoundSettings& last = plan.rounds[n - 1];
  const bool proj = last.y0.projective() && last.y1.projective();
  return certify_assemblages(rounds, y_star, proj, opts);
}

}  // namespace seqrand
