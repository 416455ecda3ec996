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

#include "seqrand/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace seqrand {

PureState::PureState(CVector a, std::vector<int> d)
    : amps(std::move(a)), dims(std::move(d)) {
  int prod = 1;
  for (int x : dims) {
    if (x <= 0) throw std::invalid_argument("PureState: nonpositive dimension");
    prod *= x;
  }
  if (prod != amps.size()) {
    throw std::invalid_argument("PureState: dims do not match vector length");
  }
}

CMatrix identity(int d) { return CMatrix::Identity(d, d); }

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix hadamard() {
  CMatrix m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

CMatrix ket_bra(const CVector& ket, const CVector& bra) {
  return ket * bra.adjoint();
}

CMatrix projector(const CVector& v) { return v * v.adjoint(); }

CVector basis_vector(int d, int k) {
  CVector v = CVector::Zero(d);
  v(k) = 1.0;
  return v;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector tensor(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep) {
  const int nsys = static_cast<int>(dims.size());
  int total = 1;
  for (int d : dims) total *= d;
  if (m.rows() != total || m.cols() != total) {
    throw std::invalid_argument("partial_trace: dimension mismatch");
  }
  std::vector<bool> kept(nsys, false);
  for (int k : keep) {
    if (k < 0 || k >= nsys) {
      throw std::invalid_argument("partial_trace: subsystem index out of range");
    }
    kept[k] = true;
  }
  // Strides of the full index and of the kept-only index.
  std::vector<int> stride(nsys, 1);
  for (int s = nsys - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];
  std::vector<int> kstride(nsys, 0);
  int kdim = 1;
  for (int s = nsys - 1; s >= 0; --s) {
    if (kept[s]) {
      kstride[s] = kdim;
      kdim *= dims[s];
    }
  }
  std::vector<int> kidx(total, 0), tidx(total, 0);
  for (int i = 0; i < total; ++i) {
    int ki = 0, ti = 0, tmul = 1;
    for (int s = nsys - 1; s >= 0; --s) {
      const int digit = (i / stride[s]) % dims[s];
      if (kept[s]) {
        ki += digit * kstride[s];
      } else {
        ti += digit * tmul;
        tmul *= dims[s];
      }
    }
    kidx[i] = ki;
    tidx[i] = ti;
  }
  CMatrix out = CMatrix::Zero(kdim, kdim);
  for (int i = 0; i < total; ++i) {
    for (int j = 0; j < total; ++j) {
      if (tidx[i] == tidx[j]) out(kidx[i], kidx[j]) += m(i, j);
    }
  }
  return out;
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

RVector eigvalsh(const CMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) {
    throw std::invalid_argument("eigvalsh: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

bool is_psd(const CMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  return eigvalsh(m, tol).minCoeff() >= -tol;
}

bool is_unitary(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

CMatrix sqrtm_psd(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  RVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const CMatrix& rho, const CMatrix& sigma, double tol) {
  if (!is_psd(rho, tol) || !is_psd(sigma, tol)) {
    throw std::invalid_argument("fidelity: input is not PSD");
  }
  const CMatrix sr = sqrtm_psd(rho);
  const CMatrix inner = sr * hermitian_part(sigma) * sr;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(inner),
                                            Eigen::EigenvaluesOnly);
  const double f = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(f, 0.0, 1.0);
}

double fidelity_squared(const CMatrix& rho, const CMatrix& sigma, double tol) {
  const double f = fidelity(rho, sigma, tol);
  return f * f;
}

cplx fix_phase(CVector& v, double tol) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > tol) {
      const cplx ph = v(i) / std::abs(v(i));
      v /= ph;
      return ph;
    }
  }
  return cplx(1.0, 0.0);
}

CMatrix complete_basis(const CMatrix& cols, int d, double tol) {
  std::vector<CVector> out;
  for (Eigen::Index k = 0; k < cols.cols(); ++k) out.push_back(cols.col(k));
  for (int k = 0; k < d && static_cast<int>(out.size()) < d; ++k) {
    CVector v = basis_vector(d, k);
    for (const CVector& u : out) v -= u.dot(v) * u;
    for (const CVector& u : out) v -= u.dot(v) * u;
    const double nv = v.norm();
    if (nv > tol) {
      v /= nv;
      fix_phase(v);
      out.push_back(v);
    }
  }
  CMatrix m(d, static_cast<Eigen::Index>(out.size()));
  for (size_t k = 0; k < out.size(); ++k) m.col(k) = out[k];
  return m;
}

namespace {

// Orthonormal basis of span(w) chosen deterministically: project the
// computational basis vectors onto the subspace in order and keep the first
// independent ones.
CMatrix canonical_subspace_basis(const CMatrix& w, double tol) {
  const int d = static_cast<int>(w.rows());
  const int r = static_cast<int>(w.cols());
  const CMatrix proj = w * w.adjoint();
  std::vector<CVector> out;
  for (int k = 0; k < d && static_cast<int>(out.size()) < r; ++k) {
    CVector v = proj * basis_vector(d, k);
    for (const CVector& u : out) v -= u.dot(v) * u;
    for (const CVector& u : out) v -= u.dot(v) * u;
    const double nv = v.norm();
    if (nv > std::sqrt(tol)) out.push_back(v / nv);
  }
  CMatrix m(d, r);
  for (int k = 0; k < r; ++k) m.col(k) = out[k];
  return m;
}

}  // namespace

SchmidtDecomposition schmidt_decompose(const PureState& s, double tol) {
  if (s.dims.size() != 2) {
    throw std::invalid_argument("schmidt_decompose: need two subsystems");
  }
  const int da = s.dims[0];
  const int db = s.dims[1];
  CMatrix c(da, db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < db; ++j) c(i, j) = s.amps(i * db + j);
  }
  Eigen::JacobiSVD<CMatrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector sv = svd.singularValues();
  const int r = static_cast<int>(sv.size());
  CMatrix wa = svd.matrixU();
  const double group_tol = std::max(1e-9, std::sqrt(tol));

  // Canonicalize degenerate groups of nonzero singular values.
  int start = 0;
  while (start < r) {
    int end = start + 1;
    while (end < r && std::abs(sv(end) - sv(start)) <= group_tol) ++end;
    if (end - start > 1 && sv(start) > group_tol) {
      wa.block(0, start, da, end - start) =
          canonical_subspace_basis(wa.block(0, start, da, end - start), tol);
    }
    start = end;
  }

  SchmidtDecomposition out;
  out.coeffs = RVector::Zero(r);
  std::vector<CVector> avec, bvec;
  for (int k = 0; k < r; ++k) {
    if (sv(k) <= group_tol) break;
    CVector a = wa.col(k);
    fix_phase(a);
    // b_k = (a_k^dagger (x) I) psi / s_k.
    CVector b = c.transpose() * a.conjugate();
    const double nb = b.norm();
    out.coeffs(k) = nb;
    avec.push_back(a);
    bvec.push_back(b / nb);
  }
  CMatrix a_cols(da, static_cast<Eigen::Index>(avec.size()));
  CMatrix b_cols(db, static_cast<Eigen::Index>(bvec.size()));
  for (size_t k = 0; k < avec.size(); ++k) {
    a_cols.col(k) = avec[k];
    b_cols.col(k) = bvec[k];
  }
  out.basis_a = complete_basis(a_cols, da);
  out.basis_b = complete_basis(b_cols, db);
  return out;
}

CVector schmidt_reconstruct(const SchmidtDecomposition& sd) {
  const Eigen::Index da = sd.basis_a.rows();
  const Eigen::Index db = sd.basis_b.rows();
  CVector v = CVector::Zero(da * db);
  for (Eigen::Index k = 0; k < sd.coeffs.size(); ++k) {
    if (sd.coeffs(k) == 0.0) continue;
    v += sd.coeffs(k) * tensor(CVector(sd.basis_a.col(k)),
                               CVector(sd.basis_b.col(k)));
  }
  return v;
}

}  // namespace seqrand
