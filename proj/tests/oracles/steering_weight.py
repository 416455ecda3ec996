# Copyright 2026 The seqrand Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent steering-weight values frozen into steering_test.cpp.

Builds assemblages with plain numpy and solves the primal program with
cvxpy and Clarabel. Run: python3 tests/oracles/steering_weight.py
"""

import itertools

import cvxpy as cp
import numpy as np

P0 = np.diag([1.0, 0.0]).astype(complex)
P1 = np.diag([0.0, 1.0]).astype(complex)
PLUS = 0.5 * np.array([[1, 1], [1, 1]], dtype=complex)
MINUS = 0.5 * np.array([[1, -1], [-1, 1]], dtype=complex)


def kraus(basis, angle, b):
  lo, hi = (P0, P1) if basis == "Z" else (PLUS, MINUS)
  c, s = np.cos(angle), np.sin(angle)
  return c * lo + s * hi if b == 0 else c * hi + s * lo


def pure(zeta):
  v = np.zeros(4, dtype=complex)
  v[0], v[3] = np.cos(zeta), np.sin(zeta)
  return np.outer(v, v.conj())


def depolarized(eps):
  phi = pure(np.pi / 4)
  return (1 - 4 * eps / 3) * phi + (eps / 3) * np.eye(4)


def tr_b(m):
  return np.einsum("ijkj->ik", m.reshape(2, 2, 2, 2))


def assemblage(rho, rounds):
  """rounds: list of ((basis0, angle0), (basis1, angle1)). Returns dict."""
  n = len(rounds)
  out = {}
  for ys in itertools.product([0, 1], repeat=n):
    for bs in itertools.product([0, 1], repeat=n):
      k = np.eye(2, dtype=complex)
      for i in range(n):
        basis, ang = rounds[i][ys[i]]
        k = kraus(basis, ang, bs[i]) @ k
      op = np.kron(np.eye(2), k)
      out[(ys, bs)] = tr_b(op @ rho @ op.conj().T)
  return out


def strategies(n):
  """Causal deterministic strategies: b_i depends on y_1..y_i."""
  prefixes = [list(itertools.product([0, 1], repeat=i + 1)) for i in range(n)]
  tables = [list(itertools.product([0, 1], repeat=len(p))) for p in prefixes]
  for choice in itertools.product(*tables):
    def f(ys, choice=choice):
      return tuple(choice[i][prefixes[i].index(tuple(ys[: i + 1]))]
                   for i in range(n))
    yield f


def steering_weight(assem, n):
  strats = list(strategies(n))
  sig = [cp.Variable((2, 2), hermitian=True) for _ in strats]
  cons = [s >> 0 for s in sig]
  for (ys, bs), el in assem.items():
    lhs = sum((s for s, f in zip(sig, strats) if f(ys) == bs),
              start=np.zeros((2, 2)))
    cons.append(el - lhs >> 0)
  prob = cp.Problem(cp.Maximize(cp.real(sum(cp.trace(s) for s in sig))), cons)
  prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-11, tol_gap_rel=1e-11,
             tol_feas=1e-11, max_iter=500)
  return 1.0 - prob.value


CASES = {
    "pure_pi8_one_round": (pure(np.pi / 8),
                           [(("Z", 0.0), ("X", np.pi / 8))]),
    "depolarized_015_one_round": (depolarized(0.15),
                                  [(("Z", 0.0), ("X", 0.0))]),
    "pure_pi4_theta03_one_round": (pure(np.pi / 4),
                                   [(("Z", 0.0), ("X", 0.3))]),
    "pure_pi4_two_rounds": (pure(np.pi / 4),
                            [(("Z", 0.0), ("X", 0.2)),
                             (("Z", 0.1), ("X", 0.3))]),
}

if __name__ == "__main__":
  for name, (rho, rounds) in CASES.items():
    sw = steering_weight(assemblage(rho, rounds), len(rounds))
    print(f"{name}: {sw:.8f}")
