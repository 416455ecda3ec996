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

// Two-qubit states modelling entanglement sources: depolarized Bell pairs,
// purified pairs, atom-photon links and NV-center spin pairs.

#ifndef SEQRAND_NOISE_H_
#define SEQRAND_NOISE_H_

#include <array>
#include <map>
#include <string>

#include "seqrand/linalg.h"

namespace seqrand {

enum class Bell { kPhiPlus, kPhiMinus, kPsiPlus, kPsiMinus };

std::string bell_name(Bell b);
Bell parse_bell(const std::string& s);
CVector bell_vector(Bell b);
CMatrix bell_state(Bell b);

// (1 - eps) Phi+ + eps/3 (Phi- + Psi+ + Psi-), eps in [0, 3/4].
CMatrix depolarized_bell(double eps, bool strict = true);

// Bell-diagonal weights (Phi+, Phi-, Psi+, Psi-) of the truncated
// purification polynomials before renormalization.
std::array<double, 4> purified_weights(double eps, int rounds);

struct PurifiedState {
  CMatrix rho;           // renormalized to unit trace
  double deficit = 0.0;  // 1 - sum of raw weights
  double raw_infidelity = 0.0;  // 1 - raw Phi+ weight
};

PurifiedState purified_state(double eps, int rounds, bool strict = true);

// Atom-photon link with transmission eta: the pure branch
// cos z |00> + sin z sqrt(eta) |11> plus the lost-photon term on |01>.
CMatrix atom_photon_state(double zeta, double eta, bool strict = true);

// NV spin pair in the computational basis; ideal limit Psi-.
CMatrix nv_state(double f_z, double visibility, bool strict = true);

double f_z(double e_early_a, double e_late_a, double e_early_b,
           double e_late_b);

// Local unitary I (x) u sending `target` to Phi+.
CMatrix align_unitary(Bell target);
CMatrix basis_align(const CMatrix& rho, Bell target);

enum class StateFamily { kPure, kBell, kDepolarized, kPurified, kAtomPhoton, kNv };

std::string family_name(StateFamily f);
StateFamily parse_family(const std::string& s);

// Family plus named parameters, as read from a config file.
//   pure:         zeta
//   bell:         which (0..3 for Phi+, Phi-, Psi+, Psi-)
//   depolarized:  eps
//   purified:     eps, rounds
//   atom-photon:  zeta, eta
//   nv:           f_z (or e_early_a, e_late_a, e_early_b, e_late_b), v,
//                 align (default 1)
struct NoiseStateSpec {
  StateFamily family = StateFamily::kPure;
  std::map<std::string, double> params;
  bool strict = true;

  double get(const std::string& key) const;
  double get(const std::string& key, double fallback) const;
};

struct GeneratedState {
  CMatrix rho;
  double deficit = 0.0;
};

// Throws std::invalid_argument on unknown or missing parameters and on
// states that fail the Hermitian / unit-trace / PSD checks.
GeneratedState generate_state(const NoiseStateSpec& spec);

// Hermitian to 1e-12, unit trace, min eigenvalue >= -1e-9.
bool is_valid_state(const CMatrix& rho);

}  // namespace seqrand

#endif  // SEQRAND_NOISE_H_
