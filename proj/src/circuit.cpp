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

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace seqrand {

namespace {

int bit_of(int qubits, int wire) { return qubits - 1 - wire; }

// Input bit for round r (1-based) of an n-round input index.
int input_bit(int y, int n, int r) { return (y >> (n - r)) & 1; }

std::vector<int> input_bits(int y, int n) {
  std::vector<int> out(n);
  for (int r = 1; r <= n; ++r) out[r - 1] = input_bit(y, n, r);
  return out;
}

std::string control_text(int bit, int value) {
  if (bit < 0) return "-";
  return "y" + std::to_string(bit) + "=" + std::to_string(value);
}

void parse_control(const std::string& s, int* bit, int* value) {
  if (s == "-") {
    *bit = -1;
    *value = 1;
    return;
  }
  const auto eq = s.find('=');
  if (s.size() < 4 || s[0] != 'y' || eq == std::string::npos) {
    throw std::invalid_argument("circuit text: bad control '" + s + "'");
  }
  *bit = std::stoi(s.substr(1, eq - 1));
  *value = std::stoi(s.substr(eq + 1));
}

constexpr int kDykstraIterations = 20000;

// Nearest PSD element in (tr, tr X, tr Y, tr Z) coordinates; returns the
// clipped eigenvalue magnitude.
double psd_clip(RMatrix& coords, int row) {
  const double t = coords(row, 0);
  const double r = coords.row(row).tail(3).norm();
  if (r <= t) return 0.0;
  if (r <= -t) {
    coords.row(row).setZero();
    return r;
  }
  const double top = 0.5 * (t + r);
  coords.row(row).tail(3) *= top / r;
  coords(row, 0) = top;
  return 0.5 * (r - t);
}

CMatrix pauli_matrix(Pauli p) {
  switch (p) {
    case Pauli::kX:
      return pauli_x();
    case Pauli::kY:
      return pauli_y();
    case Pauli::kZ:
      return pauli_z();
  }
  return identity(2);
}

}  // namespace

std::string gate_name(GateKind k) {
  switch (k) {
    case GateKind::kH:
      return "h";
    case GateKind::kX:
      return "x";
    case GateKind::kZ:
      return "z";
    case GateKind::kCnot:
      return "cx";
    case GateKind::kCz:
      return "cz";
    case GateKind::kSwap:
      return "swap";
    case GateKind::kCswap:
      return "cswap";
    case GateKind::kRy:
      return "ry";
  }
  return "?";
}

GateKind parse_gate(const std::string& s) {
  for (GateKind k : {GateKind::kH, GateKind::kX, GateKind::kZ, GateKind::kCnot,
                     GateKind::kCz, GateKind::kSwap, GateKind::kCswap,
                     GateKind::kRy}) {
    if (gate_name(k) == s) return k;
  }
  throw std::invalid_argument("unknown gate '" + s + "'");
}

int gate_arity(GateKind k) {
  switch (k) {
    case GateKind::kCnot:
    case GateKind::kCz:
    case GateKind::kSwap:
      return 2;
    case GateKind::kCswap:
      return 3;
    default:
      return 1;
  }
}

void Circuit::add(GateKind k, std::vector<int> wires, double angle,
                  int input_bit, int input_value) {
  gates.push_back({k, std::move(wires), angle, input_bit, input_value});
}

void Circuit::append(const Circuit& frag, const std::vector<int>& wire_map,
                     int input_bit, int input_value) {
  if (static_cast<int>(wire_map.size()) != frag.qubits) {
    throw std::invalid_argument("append: wire map size mismatch");
  }
  for (Gate g : frag.gates) {
    for (int& w : g.wires) w = wire_map[w];
    if (g.input_bit < 0) {
      g.input_bit = input_bit;
      g.input_value = input_value;
    }
    gates.push_back(std::move(g));
  }
}

int Circuit::rounds() const {
  int r = 0;
  for (const MeasureOp& m : measurements) r = std::max(r, m.round);
  return r;
}

void Circuit::validate() const {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw std::invalid_argument("circuit: qubit count must be in 1.." +
                                std::to_string(kMaxQubits));
  }
  auto check_control = [&](int bit, int value) {
    if (bit >= input_bits || bit < -1 || (bit >= 0 && value != 0 && value != 1)) {
      throw std::invalid_argument("circuit: control references undeclared input");
    }
  };
  for (const Gate& g : gates) {
    if (static_cast<int>(g.wires.size()) != gate_arity(g.kind)) {
      throw std::invalid_argument("circuit: wrong wire count for " +
                                  gate_name(g.kind));
    }
    for (size_t i = 0; i < g.wires.size(); ++i) {
      if (g.wires[i] < 0 || g.wires[i] >= qubits) {
        throw std::invalid_argument("circuit: wire out of range");
      }
      for (size_t j = 0; j < i; ++j) {
        if (g.wires[i] == g.wires[j]) {
          throw std::invalid_argument("circuit: repeated wire in gate");
        }
      }
    }
    check_control(g.input_bit, g.input_value);
  }
  for (const MeasureOp& m : measurements) {
    if (m.wire < 0 || m.wire >= qubits || m.round < 1) {
      throw std::invalid_argument("circuit: bad measurement");
    }
    check_control(m.input_bit, m.input_value);
  }
}

CMatrix gate_matrix(const Gate& g) {
  CMatrix m;
  switch (g.kind) {
    case GateKind::kH:
      return hadamard();
    case GateKind::kX:
      return pauli_x();
    case GateKind::kZ:
      return pauli_z();
    case GateKind::kRy: {
      const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
      m.resize(2, 2);
      m << c, -s, s, c;
      return m;
    }
    case GateKind::kCnot:
      m = identity(4);
      m.bottomRightCorner(2, 2) = pauli_x();
      return m;
    case GateKind::kCz:
      m = identity(4);
      m(3, 3) = -1.0;
      return m;
    case GateKind::kSwap:
      m = CMatrix::Zero(4, 4);
      m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
      return m;
    case GateKind::kCswap:
      m = identity(8);
      m(5, 5) = m(6, 6) = 0.0;
      m(5, 6) = m(6, 5) = 1.0;
      return m;
  }
  return m;
}

Circuit build_measurement_gadget(Basis basis, double angle) {
  if (!(angle >= 0.0 && angle <= M_PI / 4 + 1e-12)) {
    throw std::invalid_argument("gadget: angle outside [0, pi/4]");
  }
  Circuit c;
  c.qubits = 2;
  c.add(GateKind::kRy, {0}, 2 * angle);
  c.add(GateKind::kH, {0});
  c.add(basis == Basis::kX ? GateKind::kCnot : GateKind::kCz, {0, 1});
  c.add(GateKind::kH, {0});
  c.measurements.push_back({0, 1});
  return c;
}

std::array<CMatrix, 2> gadget_instrument(Basis basis, double angle) {
  const Circuit c = build_measurement_gadget(basis, angle);
  std::array<CMatrix, 2> k{CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)};
  for (int j = 0; j < 2; ++j) {
    CVector in = CVector::Zero(4);
    in(j) = 1.0;  // ancilla |0>, data |j>
    const CVector out = run_circuit(c, in, {});
    for (int b = 0; b < 2; ++b) {
      for (int i = 0; i < 2; ++i) k[b](i, j) = out(2 * b + i);
    }
  }
  return k;
}

Circuit build_sequence_circuit(const MeasurementPlan& plan) {
  plan.validate();
  const int n = plan.size();
  if (n < 1 || n > kMaxSequenceRounds) {
    throw std::invalid_argument("sequence circuit: ancilla budget allows 1.." +
                                std::to_string(kMaxSequenceRounds) + " rounds");
  }
  Circuit c;
  c.qubits = 2 + n;
  c.input_bits = n;
  for (int i = 0; i < n; ++i) {
    const int anc = 2 + i;
    for (int v = 0; v < 2; ++v) {
      const RotatedMeasurement& m = plan.rounds[i].for_input(v);
      c.append(build_measurement_gadget(m.basis, m.angle), {anc, 1}, i, v);
    }
    c.measurements.push_back({anc, i + 1});
  }
  c.validate();
  return c;
}

Circuit build_quantum_controlled_circuit(const MeasurementPlan& plan) {
  plan.validate();
  const int n = plan.size();
  Circuit c;
  c.qubits = 2 + 4 * n;
  c.input_bits = n;
  if (n < 1 || c.qubits > kMaxQubits) {
    throw std::invalid_argument("quantum-controlled circuit: qubit budget exceeded");
  }
  for (int i = 0; i < n; ++i) {
    const int yq = 2 + 4 * i, anc_x = yq + 1, anc_z = yq + 2, spare = yq + 3;
    c.add(GateKind::kX, {yq}, 0.0, i, 1);  // load |y_i>
    auto swap_if_zero = [&] {
      c.add(GateKind::kX, {yq});
      c.add(GateKind::kCswap, {yq, spare, 1});
      c.add(GateKind::kX, {yq});
    };
    swap_if_zero();
    const RotatedMeasurement& m0 = plan.rounds[i].for_input(0);
    const RotatedMeasurement& m1 = plan.rounds[i].for_input(1);
    c.append(build_measurement_gadget(m0.basis, m0.angle), {anc_z, spare});
    c.append(build_measurement_gadget(m1.basis, m1.angle), {anc_x, 1});
    swap_if_zero();
    c.measurements.push_back({anc_z, i + 1, i, 0});
    c.measurements.push_back({anc_x, i + 1, i, 1});
  }
  c.validate();
  return c;
}

CVector run_circuit(const Circuit& c, const CVector& psi,
                    const std::vector<int>& y) {
  c.validate();
  const Eigen::Index dim = Eigen::Index{1} << c.qubits;
  if (psi.size() != dim) {
    throw std::invalid_argument("run_circuit: state dimension mismatch");
  }
  if (static_cast<int>(y.size()) < c.input_bits) {
    throw std::invalid_argument("run_circuit: missing input bits");
  }
  CVector v = psi;
  std::vector<Eigen::Index> offsets;
  CVector local;
  for (const Gate& g : c.gates) {
    if (!g.fires(y)) continue;
    const CMatrix u = gate_matrix(g);
    const int k = static_cast<int>(g.wires.size());
    const int sub = 1 << k;
    Eigen::Index mask = 0;
    offsets.assign(sub, 0);
    for (int j = 0; j < sub; ++j) {
      for (int t = 0; t < k; ++t) {
        if ((j >> (k - 1 - t)) & 1) {
          offsets[j] |= Eigen::Index{1} << bit_of(c.qubits, g.wires[t]);
        }
      }
    }
    for (int t = 0; t < k; ++t) mask |= Eigen::Index{1} << bit_of(c.qubits, g.wires[t]);
    local.resize(sub);
    for (Eigen::Index base = 0; base < dim; ++base) {
      if (base & mask) continue;
      for (int j = 0; j < sub; ++j) local(j) = v(base | offsets[j]);
      local = u * local;
      for (int j = 0; j < sub; ++j) v(base | offsets[j]) = local(j);
    }
  }
  return v;
}

CVector embed_pair(const CVector& ab, int qubits) {
  if (ab.size() != 4 || qubits < 2) {
    throw std::invalid_argument("embed_pair: expects a two-qubit vector");
  }
  CVector rest = CVector::Zero(Eigen::Index{1} << (qubits - 2));
  rest(0) = 1.0;
  return tensor(ab, rest);
}

Assemblage circuit_assemblage(const Circuit& c, const CMatrix& rho_ab) {
  c.validate();
  const int n = c.rounds();
  if (n < 1) throw std::invalid_argument("circuit_assemblage: no measurements");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(rho_ab));
  Assemblage a;
  a.round = n;
  a.rho_a = partial_trace(rho_ab, {2, 2}, {0});
  const int h = 1 << n;
  a.elements.assign(static_cast<size_t>(h) * h, CMatrix::Zero(2, 2));
  const Eigen::Index dim = Eigen::Index{1} << c.qubits;
  const Eigen::Index alice = Eigen::Index{1} << bit_of(c.qubits, 0);
  for (int yi = 0; yi < h; ++yi) {
    const std::vector<int> y = input_bits(yi, n);
    std::vector<int> readout(n, -1);
    for (const MeasureOp& m : c.measurements) {
      if (m.input_bit >= 0 && y[m.input_bit] != m.input_value) continue;
      if (readout[m.round - 1] >= 0) {
        throw std::invalid_argument("circuit_assemblage: two readouts in one round");
      }
      readout[m.round - 1] = bit_of(c.qubits, m.wire);
    }
    if (std::count(readout.begin(), readout.end(), -1) > 0) {
      throw std::invalid_argument("circuit_assemblage: round without readout");
    }
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      const double p = es.eigenvalues()(k);
      if (p <= 1e-15) continue;
      const CVector out =
          run_circuit(c, embed_pair(es.eigenvectors().col(k), c.qubits), y);
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (i & alice) continue;
        int b = 0;
        for (int r = 0; r < n; ++r) b = (b << 1) | static_cast<int>((i >> readout[r]) & 1);
        CMatrix& s = a.at(b, yi);
        const cplx u0 = out(i), u1 = out(i | alice);
        s(0, 0) += p * std::norm(u0);
        s(1, 1) += p * std::norm(u1);
        s(0, 1) += p * u0 * std::conj(u1);
      }
    }
    for (int b = 0; b < h; ++b) {
      CMatrix& s = a.at(b, yi);
      s(1, 0) = std::conj(s(0, 1));
    }
  }
  return a;
}

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::kX:
      return 'X';
    case Pauli::kY:
      return 'Y';
    case Pauli::kZ:
      return 'Z';
  }
  return '?';
}

std::vector<Pauli> parse_paulis(const std::string& s) {
  std::vector<Pauli> out;
  for (char ch : s) {
    Pauli p;
    switch (std::toupper(static_cast<unsigned char>(ch))) {
      case 'X':
        p = Pauli::kX;
        break;
      case 'Y':
        p = Pauli::kY;
        break;
      case 'Z':
        p = Pauli::kZ;
        break;
      default:
        throw std::invalid_argument(std::string("unknown Pauli basis '") + ch + "'");
    }
    if (std::find(out.begin(), out.end(), p) != out.end()) {
      throw std::invalid_argument("repeated Pauli basis");
    }
    out.push_back(p);
  }
  if (out.empty()) throw std::invalid_argument("no Pauli bases given");
  return out;
}

double ShotRecord::history_total(int y, int b) const {
  double t = 0.0;
  for (size_t k = 0; k < bases.size(); ++k) {
    const auto& c = at(y, static_cast<int>(k), b);
    t += c[0] + c[1];
  }
  return t;
}

ShotRecord sample_shots(const Circuit& c, const CMatrix& rho_ab,
                        const std::vector<Pauli>& bases, long shots,
                        std::uint64_t seed) {
  const Assemblage exact = circuit_assemblage(c, rho_ab);
  ShotRecord rec;
  rec.rounds = exact.round;
  rec.bases = bases;
  rec.exact = shots <= 0;
  rec.shots = rec.exact ? 0 : shots;
  const int h = exact.histories();
  rec.counts.assign(static_cast<size_t>(h) * bases.size() * h, {0.0, 0.0});
  std::mt19937_64 rng(seed);
  std::vector<double> probs(2 * static_cast<size_t>(h));
  for (int y = 0; y < h; ++y) {
    for (size_t k = 0; k < bases.size(); ++k) {
      const CMatrix p = pauli_matrix(bases[k]);
      for (int b = 0; b < h; ++b) {
        const CMatrix& s = exact.at(b, y);
        const double t = s.trace().real(), e = (p * s).trace().real();
        probs[2 * b] = std::max(0.0, 0.5 * (t + e));
        probs[2 * b + 1] = std::max(0.0, 0.5 * (t - e));
      }
      if (rec.exact) {
        for (int b = 0; b < h; ++b) {
          rec.counts[rec.index(y, static_cast<int>(k), b)] = {probs[2 * b],
                                                               probs[2 * b + 1]};
        }
        continue;
      }
      std::discrete_distribution<int> dist(probs.begin(), probs.end());
      for (long s = 0; s < shots; ++s) {
        const int cell = dist(rng);
        rec.counts[rec.index(y, static_cast<int>(k), cell / 2)][cell % 2] += 1.0;
      }
    }
  }
  return rec;
}

TomographyResult direct_inversion(const ShotRecord& rec, int b, int y) {
  const int h = 1 << rec.rounds;
  if (b < 0 || b >= h || y < 0 || y >= h) {
    throw std::invalid_argument("direct_inversion: history out of range");
  }
  TomographyResult t;
  double all = 0.0;
  for (int bb = 0; bb < h; ++bb) all += rec.history_total(y, bb);
  const double mine = rec.history_total(y, b);
  t.rho = 0.5 * identity(2);
  t.element = CMatrix::Zero(2, 2);
  if (mine <= 0.0 || all <= 0.0) {
    t.omitted = true;
    return t;
  }
  t.prob = mine / all;
  for (size_t k = 0; k < rec.bases.size(); ++k) {
    const auto& c = rec.at(y, static_cast<int>(k), b);
    const double n = c[0] + c[1];
    if (n > 0.0) t.raw[static_cast<int>(rec.bases[k])] = (c[0] - c[1]) / n;
  }
  std::array<double, 3> r = t.raw;
  const double norm = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  if (norm > 1.0) {
    t.rescaled = true;
    for (double& x : r) x /= norm;
  }
  t.rho = 0.5 * (identity(2) + r[0] * pauli_x() + r[1] * pauli_y() +
                 r[2] * pauli_z());
  t.element = t.prob * t.rho;
  return t;
}

EstimatedAssemblage estimate_assemblage(const ShotRecord& rec, bool project) {
  const int n = rec.rounds;
  const int h = 1 << n;
  const int vars = h * h;  // index y * h + b
  EstimatedAssemblage out;
  // Pauli coordinates (tr sigma, tr X sigma, tr Y sigma, tr Z sigma).
  const std::array<CMatrix, 4> paulis{identity(2), pauli_x(), pauli_y(), pauli_z()};
  RMatrix coords(vars, 4);
  for (int y = 0; y < h; ++y) {
    for (int b = 0; b < h; ++b) {
      const TomographyResult t = direct_inversion(rec, b, y);
      if (t.omitted) ++out.omitted;
      for (int q = 0; q < 4; ++q) {
        coords(y * h + b, q) = (paulis[q] * t.element).trace().real();
      }
    }
  }
  if (project) {
    // Rows: marginal over rounds > k may not depend on inputs of rounds > k.
    std::vector<RVector> rows;
    for (int k = 0; k < n; ++k) {
      const int tail = n - k;
      for (int y = 0; y < h; ++y) {
        const int y0 = y & ~((1 << tail) - 1);
        if (y0 == y) continue;
        for (int p = 0; p < (1 << k); ++p) {
          RVector row = RVector::Zero(vars);
          for (int b = 0; b < h; ++b) {
            if ((b >> tail) != p) continue;
            row(y * h + b) += 1.0;
            row(y0 * h + b) -= 1.0;
          }
          rows.push_back(row);
        }
      }
    }
    if (!rows.empty()) {
      RMatrix a(static_cast<Eigen::Index>(rows.size()), vars);
      for (size_t i = 0; i < rows.size(); ++i) {
        a.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
      }
      Eigen::CompleteOrthogonalDecomposition<RMatrix> cod(a);
      const RMatrix null_proj =
          RMatrix::Identity(vars, vars) - cod.pseudoInverse() * a;
      // Dykstra's alternating projections between the constraint subspace
      // and the per-element PSD cone converge to the nearest point of the
      // intersection.
      const RMatrix start = coords;
      RMatrix x = coords, p = RMatrix::Zero(vars, 4), q = RMatrix::Zero(vars, 4);
      for (int it = 0; it < kDykstraIterations; ++it) {
        const RMatrix y = null_proj * (x + p);
        p += x - y;
        RMatrix z = y + q;
        double clipped = 0.0;
        for (int i = 0; i < vars; ++i) clipped += psd_clip(z, i);
        q = y + q - z;
        const double step = (z - x).norm();
        x = std::move(z);
        if (clipped == 0.0 && step < 1e-13) break;
      }
      coords = null_proj * x;
      // Clipping can move the common total weight away from 1.
      double total = 0.0;
      for (int b = 0; b < h; ++b) total += coords(b, 0);
      if (total > 0.0) coords /= total;
      // ||sigma||_HS^2 = (t^2 + |r|^2) / 2 in these coordinates.
      out.projection_distance = std::sqrt(0.5 * (coords - start).squaredNorm());
    }
  }
  // Mix with the uniform assemblage 2^-n I/2, which meets every constraint:
  // an element with trace t and Bloch length r needs
  // (1 - lambda)(t - r) + lambda 2^-n >= 0.
  const double w = 1.0 / h;
  double lambda = 0.0;
  for (int i = 0; i < vars; ++i) {
    const double gap = coords.row(i).tail(3).norm() - coords(i, 0);
    if (gap > 0.0) lambda = std::max(lambda, gap / (gap + w));
  }
  out.mixing = lambda;
  coords *= (1.0 - lambda);
  coords.col(0).array() += lambda * w;
  Assemblage last;
  last.round = n;
  last.elements.resize(static_cast<size_t>(vars));
  for (int i = 0; i < vars; ++i) {
    CMatrix s = CMatrix::Zero(2, 2);
    for (int q = 0; q < 4; ++q) s += 0.5 * coords(i, q) * paulis[q];
    last.elements[static_cast<size_t>(i)] = s;
  }
  for (int r = 1; r <= n; ++r) {
    Assemblage a;
    a.round = r;
    const int hr = 1 << r, tail = n - r;
    a.elements.assign(static_cast<size_t>(hr) * hr, CMatrix::Zero(2, 2));
    for (int yr = 0; yr < hr; ++yr) {
      for (int b = 0; b < h; ++b) a.at(b >> tail, yr) += last.at(b, yr << tail);
    }
    a.rho_a = CMatrix::Zero(2, 2);
    for (int b = 0; b < hr; ++b) a.rho_a += a.at(b, 0);
    out.rounds.push_back(std::move(a));
  }
  return out;
}

void write_circuit(std::ostream& os, const Circuit& c) {
  os << "qubits " << c.qubits << "\n";
  os << "inputs " << c.input_bits << "\n";
  os << std::setprecision(17);
  for (const Gate& g : c.gates) {
    os << gate_name(g.kind) << ' ';
    for (size_t i = 0; i < g.wires.size(); ++i) {
      os << (i ? "," : "") << g.wires[i];
    }
    os << ' ';
    if (g.kind == GateKind::kRy) {
      os << g.angle;
    } else {
      os << '-';
    }
    os << ' ' << control_text(g.input_bit, g.input_value) << "\n";
  }
  for (const MeasureOp& m : c.measurements) {
    os << "measure " << m.wire << ' ' << m.round << ' '
       << control_text(m.input_bit, m.input_value) << "\n";
  }
}

Circuit read_circuit(std::istream& is) {
  Circuit c;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    try {
      if (head == "qubits") {
        ls >> c.qubits;
      } else if (head == "inputs") {
        ls >> c.input_bits;
      } else if (head == "measure") {
        MeasureOp m;
        std::string ctl;
        ls >> m.wire >> m.round >> ctl;
        parse_control(ctl, &m.input_bit, &m.input_value);
        c.measurements.push_back(m);
      } else {
        Gate g;
        g.kind = parse_gate(head);
        std::string wires, angle, ctl;
        ls >> wires >> angle >> ctl;
        std::istringstream ws(wires);
        for (std::string w; std::getline(ws, w, ',');) g.wires.push_back(std::stoi(w));
        if (angle != "-") g.angle = std::stod(angle);
        parse_control(ctl, &g.input_bit, &g.input_value);
        c.gates.push_back(std::move(g));
      }
      if (ls.fail()) throw std::invalid_argument("missing field");
    } catch (const std::exception& e) {
      throw std::invalid_argument("circuit text line " + std::to_string(lineno) +
                                  ": " + e.what());
    }
  }
  c.validate();
  return c;
}

}  // namespace seqrand
