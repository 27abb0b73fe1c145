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
 * @file harness.hpp
 * @brief Experiment orchestration, run statistics and resource surfaces.
 *
 * Archive layout written by run_experiment:
 *
 *     manifest.json
 *     qmi/<state>_<basis>.csv
 *     sequences/<ansatz>.json          parent sequence and its blocks
 *     runs/<ansatz>/<depth>.csv        block,seed,final_energy,pct_corr,...
 *     summary.csv
 *     resource_grid.csv                x,y,value,winner
 */

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qida/ansatz.hpp"
#include "qida/encoding.hpp"
#include "qida/error.hpp"
#include "qida/fcidump.hpp"
#include "qida/natorb.hpp"
#include "qida/states.hpp"
#include "qida/vqe.hpp"

namespace qida {

/// Error raised inside a named pipeline stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Runs fn, rethrowing any library or standard error tagged with stage.
template <class F>
auto run_stage(const std::string& stage, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

enum class BasisMode { HFCO, NO };
enum class StateMode { MP2, FCI };

BasisMode parse_basis_mode(const std::string& name);
StateMode parse_state_mode(const std::string& name);
std::string to_string(BasisMode b);
std::string to_string(StateMode s);

/// Everything the sweep needs about one molecule in the working basis.
struct PreparedSystem {
  IntegralSet hfco;
  IntegralSet integrals;  // working basis (HFCO or NO)
  double e_hf = 0.0;
  double e_mp2_corr = 0.0;
  double e_fci = 0.0;
  Statevector state;  // QMI source state in the working basis
  QmiMatrix qmi;
  PauliHamiltonian hamiltonian;  // working basis
  std::optional<OrbitalRotation> rotation;
  BasisMode basis = BasisMode::NO;
  StateMode state_mode = StateMode::MP2;
};

PreparedSystem prepare_system(const IntegralSet& s, StateMode state, BasisMode basis,
                              QmiNormalization norm = QmiNormalization::MaxElement);

/// 100 (E - E_HF) / (E_FCI - E_HF).
double correlation_fraction(double e, double e_hf, double e_fci);

/// floor(x / sigma_cnots); 0 means no depth fits the budget.
int f_sigma(int sigma_cnots, int x);

struct ExperimentConfig {
  std::string fcidump;
  BasisMode basis = BasisMode::NO;
  StateMode state = StateMode::MP2;
  QmiNormalization norm = QmiNormalization::MaxElement;
  std::vector<double> mu{0.5};
  std::vector<bool> reduced{false};  // one sequence per (mu, reduced) pair
  std::vector<std::string> ansatze{"qida", "ladder", "random"};
  std::vector<int> depths{1, 2, 3, 4};
  int permutations = 20;
  std::uint64_t permutation_seed = 1;
  int restarts = 10;
  int ladder_restarts = 0;  // 0: permutations * restarts
  int random_blocks = 0;    // 0: permutations
  std::uint64_t random_seed = 1;
  std::uint64_t restart_seed = 1;
  RotationPlacement placement = RotationPlacement::TouchedQubits;
  int max_iterations = 5000;
  int jobs = 0;
  std::string output;

  void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);

/// One ansatz family member: a label and its entangler blocks.
struct AnsatzFamily {
  std::string label;  // qida_mu0.5, qida_mu0.5_red, ladder, random
  std::string kind;   // qida | ladder | random
  std::optional<ParentSequence> sequence;
  std::vector<EntanglerBlock> blocks;
  std::vector<std::uint64_t> block_seeds;  // permutation or random seeds
  int restarts = 0;                        // per block
};

/// QIDA sequences from the QMI matrix plus the requested baselines.
std::vector<AnsatzFamily> build_families(const ExperimentConfig& cfg,
                                         const PreparedSystem& sys);

/// Runs loaded back from an archive: ansatz -> depth -> %E_c values.
struct ArchiveRuns {
  struct Series {
    int block_cnots = 0;
    std::map<int, std::vector<double>> pct_by_depth;
    std::map<int, int> flagged_by_depth;
  };
  std::map<std::string, Series> ansatze;
  int n_elec = 0;
};

struct SummaryRow {
  std::string ansatz;
  int depth = 0;
  int cnots = 0;
  int runs = 0;
  double max_pct = 0.0;
  double mean_pct = 0.0;
  double within30 = 0.0;  // percent of runs with pct >= 0.7 max
  int flagged = 0;        // |<N> - N| > 0.01
};

std::vector<SummaryRow> summarize(const ArchiveRuns& a);
void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);

struct ResourceCell {
  int x = 0;
  int y = 0;
  std::optional<double> value;  // empty when no ansatz has enough runs
  std::string winner;
};

struct ResourceGrid {
  std::vector<int> x;
  std::vector<int> y;
  std::vector<ResourceCell> cells;  // x-major
};

/// Expected max %E_c over y runs per depth and all depths within the CNOT
/// budget, averaged over every y-subset of each depth's stored runs.
ResourceGrid resource_surface(const ArchiveRuns& a, const std::vector<int>& x,
                              const std::vector<int>& y);
/// Grid axes covering every affordable CNOT count and run count.
ResourceGrid resource_surface(const ArchiveRuns& a);
void write_resource_csv(const ResourceGrid& g, std::ostream& out);

/// Expected maximum of one draw of y values without replacement from each
/// pool, the pools being independent. Empty if some pool has fewer than y.
std::optional<double> expected_max_of_draws(const std::vector<std::vector<double>>& pools,
                                            int y);

using ProgressFn = std::function<void(const std::string&)>;

struct ExperimentResult {
  std::string archive;
  nlohmann::json manifest;
  ArchiveRuns runs;
  std::vector<SummaryRow> summary;
  ResourceGrid grid;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg, const ProgressFn& progress = {});

ArchiveRuns load_archive(const std::string& dir);

}  // namespace qida
