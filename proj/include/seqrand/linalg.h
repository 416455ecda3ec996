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

#ifndef SEQRAND_LINALG_H_
#define SEQRAND_LINALG_H_

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace seqrand {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

// State vector together with its subsystem layout. The first subsystem is
// the most significant index.
struct PureState {
  CVector amps;
  std::vector<int> dims;

  PureState() = default;
  PureState(CVector a, std::vector<int> d);

  int size() const { return static_cast<int>(amps.size()); }
  CMatrix density() const { return amps * amps.adjoint(); }
};

struct SchmidtDecomposition {
  RVector coeffs;   // descending, nonnegative
  CMatrix basis_a;  // columns are orthonormal vectors of subsystem A
  CMatrix basis_b;  // columns are orthonormal vectors of subsystem B
};

// Pauli matrices and small helpers.
CMatrix identity(int d);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix hadamard();
CMatrix ket_bra(const CVector& ket, const CVector& bra);
CMatrix projector(const CVector& v);
CVector basis_vector(int d, int k);

CMatrix tensor(const CMatrix& a, const CMatrix& b);
CVector tensor(const CVector& a, const CVector& b);

// Traces out every subsystem not listed in keep. The kept subsystems stay in
// their original order.
CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep);

// Ascending eigenvalues of a Hermitian matrix. Throws std::invalid_argument
// when the input is not Hermitian within tol.
RVector eigvalsh(const CMatrix& m, double tol = kDefaultTol);

bool is_hermitian(const CMatrix& m, double tol = kDefaultTol);
bool is_psd(const CMatrix& m, double tol = kDefaultTol);
bool is_unitary(const CMatrix& m, double tol = kDefaultTol);
CMatrix hermitian_part(const CMatrix& m);

// Square root of a PSD matrix; slightly negative eigenvalues are clamped.
CMatrix sqrtm_psd(const CMatrix& m);

// Uhlmann root fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)).
double fidelity(const CMatrix& rho, const CMatrix& sigma,
                double tol = kDefaultTol);
double fidelity_squared(const CMatrix& rho, const CMatrix& sigma,
                        double tol = kDefaultTol);

SchmidtDecomposition schmidt_decompose(const PureState& s,
                                       double tol = kDefaultTol);
CVector schmidt_reconstruct(const SchmidtDecomposition& sd);

// Makes the first entry with modulus above tol real and positive. Returns
// the phase that was removed.
cplx fix_phase(CVector& v, double tol = 1e-12);

// Completes the given orthonormal columns to a full orthonormal basis by
// Gram-Schmidt over computational basis vectors.
CMatrix complete_basis(const CMatrix& cols, int d, double tol = 1e-10);

}  // namespace seqrand

#endif  // SEQRAND_LINALG_H_
