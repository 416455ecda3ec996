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

// Statevector simulation of the measurement circuits, finite-shot sampling
// of Alice's Pauli statistics and direct-inversion tomography.
//
// Wire 0 is the most significant qubit. Sequence circuits place Alice on
// wire 0 and Bob's data qubit on wire 1.

#ifndef SEQRAND_CIRCUIT_H_
#define SEQRAND_CIRCUIT_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "seqrand/linalg.h"
#include "seqrand/tqsm.h"

namespace seqrand {

inline constexpr int kMaxQubits = 8;
inline constexpr int kMaxSequenceRounds = 3;

enum class GateKind { kH, kX, kZ, kCnot, kCz, kSwap, kCswap, kRy };

std::string gate_name(GateKind k);
GateKind parse_gate(const std::string& s);
int gate_arity(GateKind k);

// Classical control: the gate fires only when y[input_bit] == input_value.
struct Gate {
  GateKind kind = GateKind::kH;
  std::vector<int> wires;  // controls first
  double angle = 0.0;      // R_y only
  int input_bit = -1;      // -1: unconditional
  int input_value = 1;

  bool fires(const std::vector<int>& y) const {
    return input_bit < 0 || y[input_bit] == input_value;
  }
};

// Computational-basis readout of `wire` giving round `round` (1-based),
// optionally selected by an input bit like gates.
struct MeasureOp {
  int wire = 0;
  int round = 1;
  int input_bit = -1;
  int input_value = 1;
};

struct Circuit {
  int qubits = 0;
  int input_bits = 0;
  std::vector<Gate> gates;
  std::vector<MeasureOp> measurements;

  void add(GateKind k, std::vector<int> wires, double angle = 0.0,
           int input_bit = -1, int input_value = 1);
  // Appends `frag` with its wire w mapped to wire_map[w]; unconditional
  // gates of the fragment inherit the given control.
  void append(const Circuit& frag, const std::vector<int>& wire_map,
              int input_bit = -1, int input_value = 1);
  int rounds() const;
  // Throws std::invalid_argument on range or arity errors.
  void validate() const;
};

// Local unitary of a gate on its own wires (first wire most significant).
CMatrix gate_matrix(const Gate& g);

// Two-wire fragment: wire 0 ancilla, wire 1 data. R_y(2 angle), H,
// controlled-X or controlled-Z onto the data, H.
Circuit build_measurement_gadget(Basis basis, double angle);

// Instrument induced on the data qubit by the gadget followed by a Z readout
// of the ancilla: K_b = (<b| x I) U (|0> x I).
std::array<CMatrix, 2> gadget_instrument(Basis basis, double angle);

// Alice, Bob and one ancilla per round; round i applies the gadget of
// plan.rounds[i].for_input(y_i) under classical control of y_i.
Circuit build_sequence_circuit(const MeasurementPlan& plan);

// Variant with the inputs held in qubits: per round an input wire, one
// ancilla for each basis and a spare wire the data is swapped onto when the
// input is 0. Fits the qubit budget for one round.
Circuit build_quantum_controlled_circuit(const MeasurementPlan& plan);

// Runs the gates for input string y on a full statevector.
CVector run_circuit(const Circuit& c, const CVector& psi,
                    const std::vector<int>& y);

// Embeds a two-qubit vector on wires 0, 1 with all other wires in |0>.
CVector embed_pair(const CVector& ab, int qubits);

// Exact final-round assemblage: for each y, Alice's state conditioned on the
// measured ancillas, with mixed inputs handled through their eigenvectors.
Assemblage circuit_assemblage(const Circuit& c, const CMatrix& rho_ab);

enum class Pauli { kX, kY, kZ };

char pauli_char(Pauli p);
std::vector<Pauli> parse_paulis(const std::string& s);

// Counts of Alice's +1 / -1 outcomes per (y, basis, history).
struct ShotRecord {
  int rounds = 0;
  std::vector<Pauli> bases;
  long shots = 0;      // per (y, basis) setting
  bool exact = false;  // counts hold probabilities
  std::vector<std::array<double, 2>> counts;

  std::size_t index(int y, int k, int b) const {
    return (static_cast<std::size_t>(y) * bases.size() + k) * (1u << rounds) +
           b;
  }
  const std::array<double, 2>& at(int y, int k, int b) const {
    return counts[index(y, k, b)];
  }
  // Shots attributed to history b under input y, over all bases.
  double history_total(int y, int b) const;
};

// shots <= 0 selects the exact mode.
ShotRecord sample_shots(const Circuit& c, const CMatrix& rho_ab,
                        const std::vector<Pauli>& bases, long shots,
                        std::uint64_t seed);

struct TomographyResult {
  std::array<double, 3> raw{};  // estimated (r_x, r_y, r_z)
  bool rescaled = false;
  double prob = 0.0;  // estimated p(b|y)
  bool omitted = false;  // no shots for this history
  CMatrix rho;           // estimated conditional state
  CMatrix element;       // prob * rho
};

// r is rescaled to unit length when |r| > 1. A missing basis contributes 0.
TomographyResult direct_inversion(const ShotRecord& rec, int b, int y);

struct EstimatedAssemblage {
  std::vector<Assemblage> rounds;  // rounds 1..n
  double projection_distance = 0.0;  // Hilbert-Schmidt, over all elements
  double mixing = 0.0;  // weight of the uniform assemblage mixed in
  int omitted = 0;
};

// Least-squares projection of the final-round estimate onto the
// no-signalling / causality subspace, followed by the smallest admixture of
// the uniform assemblage 2^-n I/2 that makes every element PSD. Earlier
// rounds are marginals.
EstimatedAssemblage estimate_assemblage(const ShotRecord& rec,
                                        bool project = true);

// Plain-text gate list, one item per line:
//   qubits <n> / inputs <m>
//   <gate> <w1,w2,...> <angle|-> <y<i>=<v>|->
//   measure <wire> <round> <y<i>=<v>|->
void write_circuit(std::ostream& os, const Circuit& c);
Circuit read_circuit(std::istream& is);

}  // namespace seqrand

#endif  // SEQRAND_CIRCUIT_H_
