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

#include "qida/ansatz.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "qida/error.hpp"
#include "qida/rng.hpp"

namespace qida {

namespace {

void check_mu(double mu) {
  if (!(mu >= 0.0 && mu < 1.0))
    throw RangeError("threshold mu must lie in [0, 1), got " + std::to_string(mu));
}

EntanglerBlock block_from_pairs(int n, const std::vector<QubitPair>& pairs,
                                std::string label) {
  EntanglerBlock b;
  b.n_qubits = n;
  b.label = std::move(label);
  b.cnots.reserve(pairs.size());
  for (const auto& p : pairs) b.cnots.push_back({p.i, p.j});
  return b;
}

}  // namespace

std::vector<int> EntanglerBlock::touched() const {
  std::set<int> s;
  for (const auto& c : cnots) {
    s.insert(c.control);
    s.insert(c.target);
  }
  return {s.begin(), s.end()};
}

RotationPlacement parse_rotation_placement(const std::string& name) {
  if (name == "touched") return RotationPlacement::TouchedQubits;
  if (name == "all") return RotationPlacement::AllQubits;
  throw InputError("unknown rotation placement '" + name + "' (expected touched|all)");
}

std::string to_string(RotationPlacement p) {
  return p == RotationPlacement::AllQubits ? "all" : "touched";
}

ParentSequence threshold_pairs(const QmiMatrix& q, double mu) {
  check_mu(mu);
  ParentSequence p;
  p.n_qubits = q.n;
  p.mu = mu;
  for (int i = 0; i < q.n; ++i)
    for (int j = i + 1; j < q.n; ++j)
      if (q.normalized(i, j) > mu) p.pairs.push_back({i, j});
  return p;
}

ParentSequence reduce_first_spot(const QmiMatrix& q, double mu) {
  check_mu(mu);
  ParentSequence p;
  p.n_qubits = q.n;
  p.mu = mu;
  p.reduced = true;
  for (int i = 0; i < q.n; ++i)
    for (int j = i + 1; j < q.n; ++j)
      if (q.normalized(i, j) > mu) {
        p.pairs.push_back({i, j});
        break;
      }
  return p;
}

EntanglerBlock permute(const ParentSequence& p, std::uint64_t seed) {
  if (p.pairs.empty()) throw InputError("cannot permute an empty parent sequence");
  std::vector<QubitPair> pairs = p.pairs;
  Rng rng(seed);
  rng.shuffle(pairs);
  return block_from_pairs(p.n_qubits, pairs, "qida-perm-" + std::to_string(seed));
}

std::vector<EntanglerBlock> enumerate_permutations(const ParentSequence& p,
                                                   std::uint64_t limit) {
  std::uint64_t count = 1;
  for (std::uint64_t k = 2; k <= p.pairs.size(); ++k) {
    if (count > limit / k)
      throw RangeError(std::to_string(p.pairs.size()) +
                       "! orderings exceed the limit; use seeded sampling instead");
    count *= k;
  }
  if (count > limit)
    throw RangeError("ordering count exceeds the limit; use seeded sampling instead");
  std::vector<QubitPair> pairs = p.pairs;
  std::sort(pairs.begin(), pairs.end());
  std::vector<EntanglerBlock> out;
  out.reserve(count);
  int k = 0;
  do {
    out.push_back(block_from_pairs(p.n_qubits, pairs, "qida-enum-" + std::to_string(k++)));
  } while (std::next_permutation(pairs.begin(), pairs.end()));
  return out;
}

EntanglerBlock ladder(int n) {
  if (n < 2) throw RangeError("ladder needs at least 2 qubits");
  EntanglerBlock b;
  b.n_qubits = n;
  b.label = "ladder";
  for (int k = 0; k + 1 < n; ++k) b.cnots.push_back({k, k + 1});
  return b;
}

EntanglerBlock random_entangler(int n, std::uint64_t seed) {
  if (n < 2) throw RangeError("random entangler needs at least 2 qubits");
  EntanglerBlock b;
  b.n_qubits = n;
  b.label = "random-" + std::to_string(seed);
  Rng rng(seed);
  std::set<Cnot> seen;
  while (static_cast<int>(b.cnots.size()) < n - 1) {
    const int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    const int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(t)));
    if (seen.insert({c, t}).second) b.cnots.push_back({c, t});
  }
  return b;
}

CircuitSpec build_circuit(const EntanglerBlock& b, int depth, int n,
                          RotationPlacement placement) {
  if (depth < 1) throw RangeError("depth must be at least 1");
  if (n < 1) throw RangeError("circuit needs at least 1 qubit");
  for (const auto& c : b.cnots) {
    if (c.control < 0 || c.target < 0 || c.control >= n || c.target >= n)
      throw RangeError("CNOT (" + std::to_string(c.control) + "," +
                       std::to_string(c.target) + ") outside a " + std::to_string(n) +
                       "-qubit register");
    if (c.control == c.target) throw InputError("CNOT control equals target");
  }

  CircuitSpec spec;
  spec.n_qubits = n;
  spec.depth = depth;
  spec.block = b;
  spec.placement = placement;

  std::vector<int> layer;
  if (placement == RotationPlacement::AllQubits) {
    for (int q = 0; q < n; ++q) layer.push_back(q);
  } else {
    layer = b.touched();
  }

  int param = 0;
  for (int q = 0; q < n; ++q) spec.gates.push_back({Gate::Kind::RY, q, -1, param++});
  for (int d = 0; d < depth; ++d) {
    for (const auto& c : b.cnots)
      spec.gates.push_back({Gate::Kind::CNOT, c.control, c.target, -1});
    for (int q : layer) spec.gates.push_back({Gate::Kind::RY, q, -1, param++});
  }
  spec.parameter_count = param;
  spec.cnot_count = depth * static_cast<int>(b.cnots.size());
  return spec;
}

nlohmann::json to_json(const ParentSequence& p) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& pr : p.pairs) pairs.push_back({pr.i, pr.j});
  return {{"kind", "parent_sequence"}, {"n_qubits", p.n_qubits}, {"mu", p.mu},
          {"reduced", p.reduced},      {"provenance", p.provenance}, {"pairs", pairs}};
}

nlohmann::json to_json(const EntanglerBlock& b) {
  nlohmann::json cnots = nlohmann::json::array();
  for (const auto& c : b.cnots) cnots.push_back({c.control, c.target});
  return {{"kind", "entangler_block"}, {"n_qubits", b.n_qubits}, {"label", b.label},
          {"cnots", cnots}};
}

ParentSequence parent_sequence_from_json(const nlohmann::json& j) {
  try {
    ParentSequence p;
    p.n_qubits = j.at("n_qubits").get<int>();
    p.mu = j.value("mu", 0.0);
    p.reduced = j.value("reduced", false);
    p.provenance = j.value("provenance", std::string{});
    std::set<QubitPair> seen;
    std::vector<int> per_row(std::max(p.n_qubits, 0), 0);
    for (const auto& e : j.at("pairs")) {
      const QubitPair pr{e.at(0).get<int>(), e.at(1).get<int>()};
      if (pr.i < 0 || pr.i >= pr.j || pr.j >= p.n_qubits)
        throw InputError("pair (" + std::to_string(pr.i) + "," + std::to_string(pr.j) +
                         ") violates 0 <= i < j < n_qubits");
      if (!seen.insert(pr).second) throw InputError("duplicate pair in sequence");
      if (p.reduced && ++per_row[pr.i] > 1)
        throw InputError("reduced sequence has two pairs in row " + std::to_string(pr.i));
      p.pairs.push_back(pr);
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed parent sequence document: ") + e.what());
  }
}

EntanglerBlock entangler_block_from_json(const nlohmann::json& j) {
  try {
    EntanglerBlock b;
    b.n_qubits = j.at("n_qubits").get<int>();
    b.label = j.value("label", std::string{});
    for (const auto& e : j.at("cnots")) {
      const Cnot c{e.at(0).get<int>(), e.at(1).get<int>()};
      if (c.control == c.target) throw InputError("CNOT control equals target");
      b.cnots.push_back(c);
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed entangler block document: ") + e.what());
  }
}

}  // namespace qida
