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

#include "seqrand/noise.h"

#include <cmath>
#include <set>
#include <stdexcept>

namespace seqrand {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

CMatrix bell_mixture(const std::array<double, 4>& w) {
  return w[0] * bell_state(Bell::kPhiPlus) + w[1] * bell_state(Bell::kPhiMinus) +
         w[2] * bell_state(Bell::kPsiPlus) + w[3] * bell_state(Bell::kPsiMinus);
}

}  // namespace

std::string bell_name(Bell b) {
  switch (b) {
    case Bell::kPhiPlus:
      return "phi+";
    case Bell::kPhiMinus:
      return "phi-";
    case Bell::kPsiPlus:
      return "psi+";
    case Bell::kPsiMinus:
      return "psi-";
  }
  return "?";
}

Bell parse_bell(const std::string& s) {
  for (Bell b : {Bell::kPhiPlus, Bell::kPhiMinus, Bell::kPsiPlus,
                 Bell::kPsiMinus}) {
    if (s == bell_name(b)) return b;
  }
  throw std::invalid_argument("unknown Bell state '" + s + "'");
}

CVector bell_vector(Bell b) {
  const double s = 1.0 / std::sqrt(2.0);
  CVector v = CVector::Zero(4);
  switch (b) {
    case Bell::kPhiPlus:
      v(0) = s;
      v(3) = s;
      break;
    case Bell::kPhiMinus:
      v(0) = s;
      v(3) = -s;
      break;
    case Bell::kPsiPlus:
      v(1) = s;
      v(2) = s;
      break;
    case Bell::kPsiMinus:
      v(1) = s;
      v(2) = -s;
      break;
  }
  return v;
}

CMatrix bell_state(Bell b) { return projector(bell_vector(b)); }

CMatrix depolarized_bell(double eps, bool strict) {
  if (strict) require(eps >= 0.0 && eps <= 0.75, "depolarized: eps must be in [0, 3/4]");
  return bell_mixture({1.0 - eps, eps / 3.0, eps / 3.0, eps / 3.0});
}

std::array<double, 4> purified_weights(double eps, int rounds) {
  const double e2 = eps * eps;
  const double e3 = e2 * eps;
  switch (rounds) {
    case 0:
      return {1.0 - eps, eps / 3.0, eps / 3.0, eps / 3.0};
    case 1:
      return {1.0 - 2.0 / 3.0 * eps - 2.0 / 3.0 * e2, 2.0 / 9.0 * (eps + e2),
              2.0 / 9.0 * e2, 2.0 / 9.0 * e2};
    case 2:
      return {1.0 - 8.0 / 9.0 * e2 - 8.0 / 27.0 * e3, 4.0 / 9.0 * e2,
              4.0 / 9.0 * e2, 8.0 / 27.0 * e3};
    case 3:
      return {1.0 - 2.0 / 9.0 * e2 - 16.0 / 27.0 * e3, 2.0 / 9.0 * e2,
              8.0 / 27.0 * e3, 8.0 / 27.0 * e3};
    default:
      throw std::invalid_argument("purified: rounds must be 0..3");
  }
}

PurifiedState purified_state(double eps, int rounds, bool strict) {
  if (strict) require(eps >= 0.0 && eps <= 0.5, "purified: eps must be in [0, 1/2]");
  const std::array<double, 4> w = purified_weights(eps, rounds);
  double total = 0.0;
  for (double x : w) {
    require(x >= 0.0, "purified: negative Bell weight at eps=" + std::to_string(eps));
    total += x;
  }
  require(total > 0.0, "purified: zero total weight");
  PurifiedState out;
  out.deficit = 1.0 - total;
  out.raw_infidelity = 1.0 - w[0];
  out.rho = bell_mixture(w) / total;
  return out;
}

CMatrix atom_photon_state(double zeta, double eta, bool strict) {
  if (strict) {
    require(zeta >= 0.0 && zeta <= M_PI / 4 + 1e-15,
            "atom-photon: zeta must be in [0, pi/4]");
    require(eta >= 0.0 && eta <= 1.0, "atom-photon: eta must be in [0, 1]");
  }
  const double c = std::cos(zeta), s = std::sin(zeta);
  CMatrix r = CMatrix::Zero(4, 4);
  r(0, 0) = c * c;
  r(0, 3) = r(3, 0) = std::sqrt(eta) * c * s;
  r(1, 1) = s * s * (1.0 - eta);
  r(3, 3) = eta * s * s;
  return r;
}

CMatrix nv_state(double fz, double v, bool strict) {
  if (strict) {
    require(fz >= 0.0 && fz <= 1.0, "nv: F_z must be in [0, 1]");
    require(v >= 0.0, "nv: visibility must be >= 0");
    require(v <= fz + 1e-15, "nv: visibility above F_z gives a non-PSD matrix");
  }
  CMatrix r = CMatrix::Zero(4, 4);
  r(0, 0) = r(3, 3) = 1.0 - fz;
  r(1, 1) = r(2, 2) = fz;
  r(1, 2) = r(2, 1) = -v;
  return 0.5 * r;
}

double f_z(double e_early_a, double e_late_a, double e_early_b,
           double e_late_b) {
  return 0.5 * ((1.0 - e_early_a) * (1.0 - e_late_b) +
                (1.0 - e_early_b) * (1.0 - e_late_a));
}

CMatrix align_unitary(Bell target) {
  CMatrix u(2, 2);
  switch (target) {
    case Bell::kPhiPlus:
      u = identity(2);
      break;
    case Bell::kPhiMinus:
      u = pauli_z();
      break;
    case Bell::kPsiPlus:
      u = pauli_x();
      break;
    case Bell::kPsiMinus:
      u << 0, 1, -1, 0;
      break;
  }
  return tensor(identity(2), u);
}

CMatrix basis_align(const CMatrix& rho, Bell target) {
  const CMatrix u = align_unitary(target);
  return u * rho * u.adjoint();
}

std::string family_name(StateFamily f) {
  switch (f) {
    case StateFamily::kPure:
      return "pure";
    case StateFamily::kBell:
      return "bell";
    case StateFamily::kDepolarized:
      return "depolarized";
    case StateFamily::kPurified:
      return "purified";
    case StateFamily::kAtomPhoton:
      return "atom-photon";
    case StateFamily::kNv:
      return "nv";
  }
  return "?";
}

StateFamily parse_family(const std::string& s) {
  for (StateFamily f :
       {StateFamily::kPure, StateFamily::kBell, StateFamily::kDepolarized,
        StateFamily::kPurified, StateFamily::kAtomPhoton, StateFamily::kNv}) {
    if (s == family_name(f)) return f;
  }
  throw std::invalid_argument("unknown state family '" + s + "'");
}

double NoiseStateSpec::get(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) {
    throw std::invalid_argument(family_name(family) + ": missing parameter '" +
                                key + "'");
  }
  return it->second;
}

double NoiseStateSpec::get(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

bool is_valid_state(const CMatrix& rho) {
  if (!is_hermitian(rho, 1e-12)) return false;
  if (std::abs(rho.trace() - cplx(1.0, 0.0)) > 1e-9) return false;
  return eigvalsh(rho, 1e-12).minCoeff() >= -1e-9;
}

GeneratedState generate_state(const NoiseStateSpec& spec) {
  static const std::map<StateFamily, std::set<std::string>> kAllowed = {
      {StateFamily::kPure, {"zeta"}},
      {StateFamily::kBell, {"which"}},
      {StateFamily::kDepolarized, {"eps"}},
      {StateFamily::kPurified, {"eps", "rounds"}},
      {StateFamily::kAtomPhoton, {"zeta", "eta"}},
      {StateFamily::kNv,
       {"f_z", "v", "align", "e_early_a", "e_late_a", "e_early_b", "e_late_b"}},
  };
  const auto& allowed = kAllowed.at(spec.family);
  for (const auto& [key, value] : spec.params) {
    if (!allowed.count(key)) {
      throw std::invalid_argument(family_name(spec.family) +
                                  ": unknown parameter '" + key + "'");
    }
  }
  GeneratedState out;
  switch (spec.family) {
    case StateFamily::kPure: {
      const double z = spec.get("zeta");
      if (spec.strict) {
        require(z >= 0.0 && z <= M_PI / 4 + 1e-15, "pure: zeta must be in [0, pi/4]");
      }
      CVector v = CVector::Zero(4);
      v(0) = std::cos(z);
      v(3) = std::sin(z);
      out.rho = projector(v);
      break;
    }
    case StateFamily::kBell: {
      const double w = spec.get("which", 0.0);
      require(w == 0.0 || w == 1.0 || w == 2.0 || w == 3.0,
              "bell: which must be 0, 1, 2 or 3");
      out.rho = bell_state(static_cast<Bell>(static_cast<int>(w)));
      break;
    }
    case StateFamily::kDepolarized:
      out.rho = depolarized_bell(spec.get("eps"), spec.strict);
      break;
    case StateFamily::kPurified: {
      const double r = spec.get("rounds");
      require(r == std::floor(r), "purified: rounds must be an integer");
      PurifiedState p = purified_state(spec.get("eps"), static_cast<int>(r),
                                       spec.strict);
      out.rho = p.rho;
      out.deficit = p.deficit;
      break;
    }
    case StateFamily::kAtomPhoton:
      out.rho = atom_photon_state(spec.get("zeta", M_PI / 4), spec.get("eta"),
                                  spec.strict);
      break;
    case StateFamily::kNv: {
      double fz;
      if (spec.params.count("f_z")) {
        fz = spec.get("f_z");
      } else {
        fz = f_z(spec.get("e_early_a"), spec.get("e_late_a"),
                 spec.get("e_early_b"), spec.get("e_late_b"));
      }
      out.rho = nv_state(fz, spec.get("v"), spec.strict);
      if (spec.get("align", 1.0) != 0.0) {
        out.rho = basis_align(out.rho, Bell::kPsiMinus);
      }
      break;
    }
  }
  if (spec.strict && !is_valid_state(out.rho)) {
    throw std::invalid_argument(family_name(spec.family) +
                                ": generated matrix is not a valid state");
  }
  return out;
}

}  // namespace seqrand
