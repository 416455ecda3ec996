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

// Infeasible-start primal-dual path following with the HKM search direction
// and Mehrotra's predictor-corrector heuristic.

#include "seqrand/conic.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace seqrand {

int ConicProblem::add_block(int size) {
  if (size <= 0) throw std::invalid_argument("conic: block size must be > 0");
  blocks.push_back(size);
  return static_cast<int>(blocks.size()) - 1;
}

int ConicProblem::add_constraint(double rhs_value) {
  constraints.emplace_back();
  rhs.push_back(rhs_value);
  return static_cast<int>(constraints.size()) - 1;
}

void ConicProblem::add_coefficient(int con, int block, int row, int col,
                                   double value) {
  if (row > col) std::swap(row, col);
  constraints.at(con).push_back({block, row, col, value});
}

void ConicProblem::add_objective(int block, int row, int col, double value) {
  if (row > col) std::swap(row, col);
  objective.push_back({block, row, col, value});
}

void ConicProblem::validate() const {
  if (blocks.empty()) throw std::invalid_argument("conic: no blocks");
  for (int s : blocks) {
    if (s <= 0) throw std::invalid_argument("conic: block size must be > 0");
  }
  if (rhs.size() != constraints.size()) {
    throw std::invalid_argument("conic: rhs size does not match constraints");
  }
  auto check = [&](const ConicEntry& e) {
    if (e.block < 0 || e.block >= static_cast<int>(blocks.size())) {
      throw std::invalid_argument("conic: block index out of range");
    }
    const int s = blocks[e.block];
    if (e.row < 0 || e.col < 0 || e.row >= s || e.col >= s) {
      throw std::invalid_argument("conic: entry index out of range");
    }
    if (!std::isfinite(e.value)) {
      throw std::invalid_argument("conic: non-finite coefficient");
    }
  };
  for (const ConicEntry& e : objective) check(e);
  for (const auto& con : constraints) {
    for (const ConicEntry& e : con) check(e);
  }
  for (double v : rhs) {
    if (!std::isfinite(v)) throw std::invalid_argument("conic: non-finite rhs");
  }
}

ConicStatus worse_status(ConicStatus a, ConicStatus b) {
  auto rank = [](ConicStatus s) {
    switch (s) {
      case ConicStatus::kOptimal:
        return 0;
      case ConicStatus::kOptimalInaccurate:
        return 1;
      case ConicStatus::kNumericalLimit:
        return 2;
      case ConicStatus::kDualInfeasible:
        return 3;
      case ConicStatus::kPrimalInfeasible:
        return 4;
    }
    return 4;
  };
  return rank(a) >= rank(b) ? a : b;
}

std::string status_name(ConicStatus s) {
  switch (s) {
    case ConicStatus::kOptimal:
      return "optimal";
    case ConicStatus::kOptimalInaccurate:
      return "optimal-inaccurate";
    case ConicStatus::kPrimalInfeasible:
      return "infeasible";
    case ConicStatus::kDualInfeasible:
      return "dual-infeasible";
    case ConicStatus::kNumericalLimit:
      return "numerical-limit";
  }
  return "unknown";
}

namespace {

using Blocks = std::vector<RMatrix>;

struct Term {
  int con;
  RMatrix mat;
};

// Dense working copy of a problem.
struct Dense {
  std::vector<int> sizes;
  Blocks c;
  std::vector<std::vector<Term>> by_block;  // block -> constraint terms
  RVector b;
  int m = 0;
  int n_total = 0;
};

void add_entry(RMatrix& m, const ConicEntry& e) {
  m(e.row, e.col) += e.value;
  if (e.row != e.col) m(e.col, e.row) += e.value;
}

double dot(const RMatrix& a, const RMatrix& b) { return a.cwiseProduct(b).sum(); }

double dot(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += dot(a[k], b[k]);
  return s;
}

double frob(const Blocks& a) { return std::sqrt(dot(a, a)); }

RMatrix sym(const RMatrix& a) { return 0.5 * (a + a.transpose()); }

Blocks zeros_like(const std::vector<int>& sizes) {
  Blocks out;
  for (int s : sizes) out.push_back(RMatrix::Zero(s, s));
  return out;
}

RVector apply_a(const Dense& d, const Blocks& x) {
  RVector out = RVector::Zero(d.m);
  for (size_t k = 0; k < d.sizes.size(); ++k) {
    for (const Term& t : d.by_block[k]) out(t.con) += dot(t.mat, x[k]);
  }
  return out;
}

Blocks apply_at(const Dense& d, const RVector& y) {
  Blocks out = zeros_like(d.sizes);
  for (size_t k = 0; k < d.sizes.size(); ++k) {
    for (const Term& t : d.by_block[k]) out[k].noalias() += y(t.con) * t.mat;
  }
  return out;
}

// Largest step a with x + a*dx PSD (infinity when unrestricted).
double max_step(const RMatrix& x, const RMatrix& dx) {
  const double inf = std::numeric_limits<double>::infinity();
  if (x.rows() == 1) return dx(0, 0) < 0.0 ? -x(0, 0) / dx(0, 0) : inf;
  Eigen::LLT<RMatrix> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  const RMatrix l = llt.matrixL();
  RMatrix t = l.triangularView<Eigen::Lower>().solve(dx);
  RMatrix w = l.triangularView<Eigen::Lower>().solve(t.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym(w), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  return lmin < 0.0 ? -1.0 / lmin : inf;
}

double max_step(const Blocks& x, const Blocks& dx) {
  double a = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < x.size(); ++k) a = std::min(a, max_step(x[k], dx[k]));
  return a;
}

bool invert_pd(const RMatrix& z, RMatrix& out) {
  Eigen::LLT<RMatrix> llt(z);
  if (llt.info() != Eigen::Success) return false;
  out = llt.solve(RMatrix::Identity(z.rows(), z.cols()));
  out = sym(out);
  return true;
}

// Greedy pivoted Cholesky on a Gram matrix; returns indices of independent
// rows.
std::vector<int> independent_rows(const RMatrix& gram, double rel_tol) {
  const int m = static_cast<int>(gram.rows());
  std::vector<int> chosen;
  if (m == 0) return chosen;
  RVector diag = gram.diagonal();
  const double scale = std::max(diag.maxCoeff(), 1e-300);
  RMatrix l = RMatrix::Zero(m, m);
  std::vector<bool> used(m, false);
  for (int r = 0; r < m; ++r) {
    int p = -1;
    double best = rel_tol * scale;
    for (int i = 0; i < m; ++i) {
      if (!used[i] && diag(i) > best) {
        best = diag(i);
        p = i;
      }
    }
    if (p < 0) break;
    used[p] = true;
    chosen.push_back(p);
    const double piv = std::sqrt(diag(p));
    for (int i = 0; i < m; ++i) {
      if (used[i]) continue;
      double v = gram(i, p);
      for (int q = 0; q < r; ++q) v -= l(i, q) * l(p, q);
      l(i, r) = v / piv;
      diag(i) -= l(i, r) * l(i, r);
    }
    l(p, r) = piv;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

ConicSolution solve_conic(const ConicProblem& p, const ConicOptions& opts) {
  p.validate();
  ConicSolution sol;
  const int nb = static_cast<int>(p.blocks.size());
  const int m_all = p.num_constraints();

  // Dense blocks for every constraint.
  std::vector<std::vector<std::pair<int, RMatrix>>> con_blocks(m_all);
  for (int i = 0; i < m_all; ++i) {
    std::vector<int> slot(nb, -1);
    for (const ConicEntry& e : p.constraints[i]) {
      if (slot[e.block] < 0) {
        slot[e.block] = static_cast<int>(con_blocks[i].size());
        const int s = p.blocks[e.block];
        con_blocks[i].emplace_back(e.block, RMatrix::Zero(s, s));
      }
      add_entry(con_blocks[i][slot[e.block]].second, e);
    }
  }
  Blocks c_full = zeros_like(p.blocks);
  for (const ConicEntry& e : p.objective) add_entry(c_full[e.block], e);

  // Row scaling.
  RVector b_all = Eigen::Map<const RVector>(p.rhs.data(), m_all);
  RVector row_scale = RVector::Ones(m_all);
  std::vector<int> nonzero;
  for (int i = 0; i < m_all; ++i) {
    double nrm2 = 0.0;
    for (const auto& [k, mat] : con_blocks[i]) nrm2 += dot(mat, mat);
    const double nrm = std::sqrt(nrm2);
    if (nrm < 1e-14) {
      if (std::abs(b_all(i)) > opts.tol * (1.0 + b_all.norm())) {
        sol.status = ConicStatus::kPrimalInfeasible;
        sol.message = "constraint " + std::to_string(i) +
                      " has no coefficients but a nonzero right-hand side";
        return sol;
      }
      continue;
    }
    row_scale(i) = nrm;
    for (auto& [k, mat] : con_blocks[i]) mat /= nrm;
    b_all(i) /= nrm;
    nonzero.push_back(i);
  }

  // Gram matrix of the nonzero rows, accumulated per block.
  const int mn = static_cast<int>(nonzero.size());
  std::vector<std::vector<std::pair<int, const RMatrix*>>> touch(nb);
  for (int r = 0; r < mn; ++r) {
    for (const auto& [k, mat] : con_blocks[nonzero[r]]) {
      touch[k].emplace_back(r, &mat);
    }
  }
  RMatrix gram = RMatrix::Zero(mn, mn);
  for (int k = 0; k < nb; ++k) {
    for (size_t u = 0; u < touch[k].size(); ++u) {
      for (size_t v = u; v < touch[k].size(); ++v) {
        const double g = dot(*touch[k][u].second, *touch[k][v].second);
        gram(touch[k][u].first, touch[k][v].first) += g;
        if (u != v) gram(touch[k][v].first, touch[k][u].first) += g;
      }
    }
  }
  const std::vector<int> keep_local = independent_rows(gram, 1e-10);
  {
    // Dropped rows must be consistent with the kept ones.
    std::vector<bool> kept(mn, false);
    for (int r : keep_local) kept[r] = true;
    const int r_k = static_cast<int>(keep_local.size());
    RMatrix gkk(r_k, r_k);
    RVector bk(r_k);
    for (int u = 0; u < r_k; ++u) {
      bk(u) = b_all(nonzero[keep_local[u]]);
      for (int v = 0; v < r_k; ++v) {
        gkk(u, v) = gram(keep_local[u], keep_local[v]);
      }
    }
    Eigen::LDLT<RMatrix> ldlt(gkk);
    for (int r = 0; r < mn; ++r) {
      if (kept[r]) continue;
      RVector g(r_k);
      for (int u = 0; u < r_k; ++u) g(u) = gram(keep_local[u], r);
      const RVector w = ldlt.solve(g);
      const double pred = w.dot(bk);
      const double actual = b_all(nonzero[r]);
      if (std::abs(pred - actual) > 1e-7 * (1.0 + std::abs(actual))) {
        sol.status = ConicStatus::kPrimalInfeasible;
        sol.message = "constraint " + std::to_string(nonzero[r]) +
                      " is inconsistent with the others";
        return sol;
      }
    }
  }

  Dense d;
  d.sizes = p.blocks;
  d.m = static_cast<int>(keep_local.size());
  d.by_block.resize(nb);
  d.b = RVector(d.m);
  std::vector<int> orig_index(d.m);
  for (int r = 0; r < d.m; ++r) {
    const int i = nonzero[keep_local[r]];
    orig_index[r] = i;
    d.b(r) = b_all(i);
    for (const auto& [k, mat] : con_blocks[i]) d.by_block[k].push_back({r, mat});
  }
  sol.dropped_rows = m_all - d.m;
  for (int s : d.sizes) d.n_total += s;

  // Objective and rhs scaling.
  const double c_scale = std::max(1.0, frob(c_full));
  const double b_scale = std::max(1.0, d.m > 0 ? d.b.norm() : 0.0);
  d.c = c_full;
  for (RMatrix& ck : d.c) ck /= c_scale;
  if (d.m > 0) d.b /= b_scale;

  // Starting point.
  Blocks x = zeros_like(d.sizes), z = zeros_like(d.sizes);
  for (int k = 0; k < nb; ++k) {
    const double nk = d.sizes[k];
    double amax = 0.0, ratio = 0.0;
    for (const Term& t : d.by_block[k]) {
      const double an = std::sqrt(dot(t.mat, t.mat));
      amax = std::max(amax, an);
      ratio = std::max(ratio, (1.0 + std::abs(d.b(t.con))) / (1.0 + an));
    }
    const double cn = std::sqrt(dot(d.c[k], d.c[k]));
    const double xi = std::max({10.0, std::sqrt(nk), nk * ratio});
    const double eta = std::max({10.0, std::sqrt(nk), 1.0 + std::max(cn, amax)});
    x[k] = xi * RMatrix::Identity(d.sizes[k], d.sizes[k]);
    z[k] = eta * RMatrix::Identity(d.sizes[k], d.sizes[k]);
  }
  RVector y = RVector::Zero(d.m);

  const double b_norm = d.m > 0 ? d.b.norm() : 0.0;
  const double c_norm = frob(d.c);
  ConicStatus status = ConicStatus::kNumericalLimit;
  int iter = 0;
  double pinf = 0.0, dinf = 0.0, relgap = 0.0, pobj = 0.0, dobj = 0.0;
  int stall = 0;

  // Best iterate seen, used if the method stalls.
  double best_merit = std::numeric_limits<double>::infinity();
  Blocks best_x = x, best_z = z;
  RVector best_y = y;
  int best_iter = 0;

  for (iter = 0; iter <= opts.max_iterations; ++iter) {
    const RVector rp = d.b - apply_a(d, x);
    Blocks rd = d.c;
    {
      const Blocks aty = apply_at(d, y);
      for (int k = 0; k < nb; ++k) rd[k] -= z[k] + aty[k];
    }
    pobj = dot(d.c, x);
    dobj = d.m > 0 ? d.b.dot(y) : 0.0;
    const double xz = dot(x, z);
    const double mu = xz / d.n_total;
    pinf = (d.m > 0 ? rp.norm() : 0.0) / (1.0 + b_norm);
    dinf = frob(rd) / (1.0 + c_norm);
    relgap = std::max(std::abs(pobj - dobj), xz) /
             (1.0 + std::abs(pobj) + std::abs(dobj));
    if (opts.verbose) {
      std::cerr << "iter " << iter << " pobj " << pobj << " dobj " << dobj
                << " pinf " << pinf << " dinf " << dinf << " gap " << relgap
                << "\n";
    }
    const double merit = std::max({pinf, dinf, relgap});
    if (merit < best_merit) {
      best_merit = merit;
      best_x = x;
      best_z = z;
      best_y = y;
      best_iter = iter;
    } else if (iter - best_iter >= opts.stall_iterations) {
      break;
    }
    if (pinf <= opts.tol && dinf <= opts.tol && relgap <= opts.tol) {
      status = ConicStatus::kOptimal;
      break;
    }
    // Certificates of infeasibility.
    if (d.m > 0 && dobj > 0.0) {
      const Blocks aty = apply_at(d, y);
      Blocks ray = aty;
      for (int k = 0; k < nb; ++k) ray[k] += z[k];
      if (frob(ray) / dobj < opts.tol && dobj > 1e6) {
        status = ConicStatus::kPrimalInfeasible;
        break;
      }
    }
    if (pobj < 0.0) {
      const double axn = d.m > 0 ? apply_a(d, x).norm() : 0.0;
      if (axn / -pobj < opts.tol && -pobj > 1e6) {
        status = ConicStatus::kDualInfeasible;
        break;
      }
    }
    if (iter == opts.max_iterations) break;

    // Schur complement.
    Blocks zinv(nb);
    bool ok = true;
    for (int k = 0; k < nb; ++k) ok = ok && invert_pd(z[k], zinv[k]);
    if (!ok) break;
    RMatrix schur = RMatrix::Zero(d.m, d.m);
    for (int k = 0; k < nb; ++k) {
      const auto& terms = d.by_block[k];
      if (terms.empty()) continue;
      for (size_t v = 0; v < terms.size(); ++v) {
        const RMatrix g = x[k] * terms[v].mat * zinv[k];
        for (size_t u = 0; u <= v; ++u) {
          const double val = terms[u].mat.cwiseProduct(g.transpose()).sum();
          schur(terms[u].con, terms[v].con) += val;
          if (u != v) schur(terms[v].con, terms[u].con) += val;
        }
      }
    }
    schur = sym(schur);
    Eigen::LLT<RMatrix> chol;
    double reg = 0.0;
    const double diag_max =
        d.m > 0 ? std::max(schur.diagonal().cwiseAbs().maxCoeff(), 1e-300) : 1.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
      RMatrix mreg = schur;
      if (reg > 0.0) mreg.diagonal().array() += reg;
      chol.compute(mreg);
      if (chol.info() == Eigen::Success) break;
      reg = reg == 0.0 ? 1e-14 * diag_max : reg * 100.0;
    }
    if (d.m > 0 && chol.info() != Eigen::Success) break;

    Blocks x_rd_zinv(nb);
    for (int k = 0; k < nb; ++k) x_rd_zinv[k] = x[k] * rd[k] * zinv[k];
    const RVector a_xrz = apply_a(d, x_rd_zinv);

    auto direction = [&](const Blocks& rc, Blocks& dx, RVector& dy,
                         Blocks& dz) {
      RVector rhs = rp - apply_a(d, rc) + a_xrz;
      dy = d.m > 0 ? RVector(chol.solve(rhs)) : RVector();
      const Blocks aty = apply_at(d, dy);
      dz.resize(nb);
      dx.resize(nb);
      for (int k = 0; k < nb; ++k) {
        dz[k] = rd[k] - aty[k];
        dx[k] = sym(rc[k] - x[k] * dz[k] * zinv[k]);
      }
    };

    // Predictor.
    Blocks rc(nb);
    for (int k = 0; k < nb; ++k) rc[k] = -x[k];
    Blocks dxa, dza;
    RVector dya;
    direction(rc, dxa, dya, dza);
    const double ap_a = std::min(1.0, max_step(x, dxa));
    const double ad_a = std::min(1.0, max_step(z, dza));
    Blocks xa = x, za = z;
    for (int k = 0; k < nb; ++k) {
      xa[k] += ap_a * dxa[k];
      za[k] += ad_a * dza[k];
    }
    const double mu_aff = dot(xa, za) / d.n_total;
    const double ratio = std::max(0.0, mu_aff / mu);
    const double expon = std::min(ap_a, ad_a) > 0.1 ? 3.0 : 2.0;
    const double sigma = std::clamp(std::pow(ratio, expon), 0.0, 1.0);

    // Corrector.
    for (int k = 0; k < nb; ++k) {
      rc[k] = sigma * mu * zinv[k] - x[k] - sym(dxa[k] * dza[k] * zinv[k]);
    }
    Blocks dx, dz;
    RVector dy;
    direction(rc, dx, dy, dz);
    const double ap_max = max_step(x, dx);
    const double ad_max = max_step(z, dz);
    const double gamma = 0.9 + 0.09 * std::min(ap_a, ad_a);
    const double ap = std::min(1.0, gamma * ap_max);
    const double ad = std::min(1.0, gamma * ad_max);
    for (int k = 0; k < nb; ++k) {
      x[k] = sym(x[k] + ap * dx[k]);
      z[k] = sym(z[k] + ad * dz[k]);
    }
    if (d.m > 0) y += ad * dy;
    if (ap < 1e-10 && ad < 1e-10) {
      if (++stall >= 3) break;
    } else {
      stall = 0;
    }
  }

  if (status == ConicStatus::kNumericalLimit) {
    x = best_x;
    z = best_z;
    y = best_y;
    if (best_merit <= opts.inaccurate_tol) {
      status = ConicStatus::kOptimalInaccurate;
    }
  }

  // Undo scalings.
  sol.status = status;
  sol.iterations = iter;
  sol.x.resize(nb);
  sol.z.resize(nb);
  for (int k = 0; k < nb; ++k) {
    sol.x[k] = x[k] * b_scale;
    sol.z[k] = z[k] * c_scale;
  }
  sol.y = RVector::Zero(m_all);
  for (int r = 0; r < d.m; ++r) {
    sol.y(orig_index[r]) = y(r) * c_scale / row_scale(orig_index[r]);
  }
  sol.primal_objective = 0.0;
  for (int k = 0; k < nb; ++k) sol.primal_objective += dot(c_full[k], sol.x[k]);
  sol.dual_objective = 0.0;
  for (int i = 0; i < m_all; ++i) sol.dual_objective += p.rhs[i] * sol.y(i);

  // Residuals on the original data.
  {
    RVector ax = RVector::Zero(m_all);
    for (int i = 0; i < m_all; ++i) {
      for (const auto& [k, mat] : con_blocks[i]) {
        ax(i) += dot(mat, sol.x[k]) * row_scale(i);
      }
    }
    const RVector bo = Eigen::Map<const RVector>(p.rhs.data(), m_all);
    sol.primal_residual =
        m_all > 0 ? (bo - ax).norm() / (1.0 + bo.norm()) : 0.0;
    Blocks r = c_full;
    for (int i = 0; i < m_all; ++i) {
      for (const auto& [k, mat] : con_blocks[i]) {
        r[k] -= sol.y(i) * row_scale(i) * mat;
      }
    }
    for (int k = 0; k < nb; ++k) r[k] -= sol.z[k];
    sol.dual_residual = frob(r) / (1.0 + frob(c_full));
  }
  sol.gap = std::abs(sol.primal_objective - sol.dual_objective) /
            (1.0 + std::abs(sol.primal_objective) +
             std::abs(sol.dual_objective));
  if (sol.message.empty()) {
    std::ostringstream os;
    os << status_name(status) << " after " << iter << " iterations";
    sol.message = os.str();
  }
  return sol;
}

void write_conic(std::ostream& os, const ConicProblem& p) {
  p.validate();
  os << "seqrand-conic 1\n";
  os << "blocks " << p.blocks.size();
  for (int s : p.blocks) os << ' ' << s;
  os << "\nconstraints " << p.constraints.size() << "\n";
  os << std::setprecision(17);
  os << "rhs";
  for (double v : p.rhs) os << ' ' << v;
  os << "\nobjective " << p.objective.size() << "\n";
  for (const ConicEntry& e : p.objective) {
    os << e.block << ' ' << e.row << ' ' << e.col << ' ' << e.value << "\n";
  }
  size_t total = 0;
  for (const auto& c : p.constraints) total += c.size();
  os << "entries " << total << "\n";
  for (size_t i = 0; i < p.constraints.size(); ++i) {
    for (const ConicEntry& e : p.constraints[i]) {
      os << i << ' ' << e.block << ' ' << e.row << ' ' << e.col << ' '
         << e.value << "\n";
    }
  }
}

ConicProblem read_conic(std::istream& is) {
  auto expect = [&](const std::string& word) {
    std::string w;
    if (!(is >> w) || w != word) {
      throw std::runtime_error("read_conic: expected '" + word + "'");
    }
  };
  ConicProblem p;
  expect("seqrand-conic");
  int version = 0;
  if (!(is >> version) || version != 1) {
    throw std::runtime_error("read_conic: unsupported version");
  }
  expect("blocks");
  size_t nb = 0;
  is >> nb;
  for (size_t k = 0; k < nb; ++k) {
    int s = 0;
    is >> s;
    p.blocks.push_back(s);
  }
  expect("constraints");
  size_t m = 0;
  is >> m;
  expect("rhs");
  p.constraints.resize(m);
  p.rhs.resize(m);
  for (size_t i = 0; i < m; ++i) is >> p.rhs[i];
  expect("objective");
  size_t no = 0;
  is >> no;
  for (size_t t = 0; t < no; ++t) {
    ConicEntry e;
    is >> e.block >> e.row >> e.col >> e.value;
    p.objective.push_back(e);
  }
  expect("entries");
  size_t ne = 0;
  is >> ne;
  for (size_t t = 0; t < ne; ++t) {
    size_t con = 0;
    ConicEntry e;
    is >> con >> e.block >> e.row >> e.col >> e.value;
    if (con >= m) throw std::runtime_error("read_conic: constraint index");
    p.constraints[con].push_back(e);
  }
  if (!is) throw std::runtime_error("read_conic: truncated input");
  p.validate();
  return p;
}

}  // namespace seqrand
