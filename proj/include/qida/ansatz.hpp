// Copyright 2026 The QIDA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file ansatz.hpp
 * @brief Entangler topologies and depth-repeated R_Y/CNOT circuits.
 *
 * A parent sequence is the unordered set of qubit pairs whose normalized
 * mutual information exceeds a threshold mu. Each ordering of it is an
 * entangler block; pair (i, j) with i < j becomes CNOT(control=i, target=j).
 *
 * A circuit is an initial R_Y layer on every qubit followed by `depth`
 * repetitions of [block CNOTs, R_Y on each qubit touched by the block].
 * Every R_Y carries its own angle. Parameters are laid out as the initial
 * layer (qubit order) followed by each repetition's layer (ascending qubit).
 */

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qida/states.hpp"

namespace qida {

struct QubitPair {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const QubitPair&, const QubitPair&) = default;
};

struct ParentSequence {
  int n_qubits = 0;
  std::vector<QubitPair> pairs;  // i < j, row-major order
  double mu = 0.0;
  bool reduced = false;
  std::string provenance;  // e.g. "MP2/NO"
};

struct Cnot {
  int control = 0;
  int target = 0;
  friend auto operator<=>(const Cnot&, const Cnot&) = default;
};

struct EntanglerBlock {
  int n_qubits = 0;
  std::vector<Cnot> cnots;
  std::string label;

  /// Distinct qubits appearing in any CNOT, ascending.
  std::vector<int> touched() const;
};

enum class RotationPlacement {
  TouchedQubits,  // per-block R_Y only on qubits the block acts on
  AllQubits,      // per-block R_Y on every qubit
};

RotationPlacement parse_rotation_placement(const std::string& name);
std::string to_string(RotationPlacement p);

struct Gate {
  enum class Kind { RY, CNOT };
  Kind kind = Kind::RY;
  int q0 = 0;      // RY qubit, or CNOT control
  int q1 = -1;     // CNOT target
  int param = -1;  // RY parameter index
};

struct CircuitSpec {
  int n_qubits = 0;
  int depth = 0;
  EntanglerBlock block;
  RotationPlacement placement = RotationPlacement::TouchedQubits;
  std::vector<Gate> gates;
  int parameter_count = 0;
  int cnot_count = 0;
};

ParentSequence threshold_pairs(const QmiMatrix& q, double mu);
/// Keeps, for each row i, only the first j > i above threshold.
ParentSequence reduce_first_spot(const QmiMatrix& q, double mu);

EntanglerBlock permute(const ParentSequence& p, std::uint64_t seed);
std::vector<EntanglerBlock> enumerate_permutations(const ParentSequence& p,
                                                   std::uint64_t limit);

EntanglerBlock ladder(int n);
EntanglerBlock random_entangler(int n, std::uint64_t seed);

CircuitSpec build_circuit(const EntanglerBlock& b, int depth, int n,
                          RotationPlacement placement = RotationPlacement::TouchedQubits);

nlohmann::json to_json(const ParentSequence& p);
nlohmann::json to_json(const EntanglerBlock& b);
ParentSequence parent_sequence_from_json(const nlohmann::json& j);
EntanglerBlock entangler_block_from_json(const nlohmann::json& j);

}  // namespace qida
