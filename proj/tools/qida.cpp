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

// qida: command-line front end, one subcommand per pipeline stage.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qida/ansatz.hpp"
#include "qida/encoding.hpp"
#include "qida/fcidump.hpp"
#include "qida/harness.hpp"
#include "qida/states.hpp"
#include "qida/vqe.hpp"

namespace fs = std::filesystem;
using namespace qida;

namespace {

constexpr const char* kOutputEnv = "QIDA_OUTPUT_DIR";

constexpr const char* kQmiSchema =
    "QMI CSV: header i,j,raw,normalized; one row per pair i<j; raw in nats.";
constexpr const char* kSequenceSchema =
    "Sequence JSON: {kind: parent_sequence, n_qubits, mu, reduced, provenance, "
    "pairs: [[i,j],...]}. Block JSON: {kind: entangler_block, n_qubits, label, "
    "cnots: [[control,target],...]}.";
constexpr const char* kRunsSchema =
    "Runs CSV: seed,final_energy,pct_corr,iterations,converged,n_expectation "
    "(12 significant digits; pct_corr = 100 (E - E_HF)/(E_FCI - E_HF)).";
constexpr const char* kConfigSchema =
    "Config JSON keys: fcidump, basis (hfco|no), state (mp2|fci), norm (max|2ln2), "
    "mu (list), reduced (list of bool), ansatze (qida|ladder|random), depths, "
    "permutations, permutation_seed, restarts, ladder_restarts, random_blocks, "
    "random_seed, restart_seed, placement (touched|all), max_iterations, jobs, output.";
constexpr const char* kArchiveSchema =
    "Archive: manifest.json, qmi/*.csv, sequences/*.json, runs/<ansatz>/<depth>.csv "
    "(block column then the runs CSV columns), summary.csv "
    "(ansatz,depth,cnots,runs,max_pct,mean_pct,within30_pct,flagged), "
    "resource_grid.csv (x,y,value,winner).";

/// Resolves --out: explicit path, else $QIDA_OUTPUT_DIR/name, else stdout ("").
std::string resolve_out(const std::string& out, const std::string& default_name) {
  if (!out.empty()) return out;
  if (const char* dir = std::getenv(kOutputEnv); dir && *dir)
    return (fs::path(dir) / default_name).string();
  return {};
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw StageError("output", "cannot write " + path);
  out << content;
}

IntegralSet load(const std::string& path) {
  return run_stage("parse", [&] { return read_fcidump(path); });
}

int cmd_info(const std::string& path) {
  const IntegralSet s = load(path);
  const PauliHamiltonian h = run_stage("encoding", [&] { return build_hamiltonian(s); });
  const int M = s.n_orb();
  int one = 0;
  for (int p = 0; p < M; ++p)
    for (int q = 0; q <= p; ++q) one += s.h(p, q) != 0.0;
  int two = 0;
  for (double v : s.eri_packed()) two += v != 0.0;
  std::printf("label: %s\n", s.source_label.empty() ? "(none)" : s.source_label.c_str());
  std::printf("orbitals: %d\nelectrons: %d\nms2: %d\n", M, s.n_elec(), s.ms2());
  std::printf("%d qubits\n", 2 * M);
  std::printf("core energy: %.12f\n", s.core_energy());
  std::printf("one-body terms: %d\ntwo-body terms: %d\npauli terms: %zu\n", one, two,
              h.terms.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QIDA: mutual-information driven VQE ansatz pipeline"};
  app.require_subcommand(1);
  app.footer(std::string("Environment: ") + kOutputEnv +
             " sets the directory for outputs when --out is omitted.");

  // info
  std::string info_path;
  auto* info = app.add_subcommand("info", "Summarize an FCIDUMP file");
  info->add_option("fcidump", info_path, "FCIDUMP integral file")->required();

  // qmi
  std::string qmi_path, qmi_state = "mp2", qmi_basis = "no", qmi_norm = "max", qmi_out;
  bool qmi_compare = false;
  auto* qmi = app.add_subcommand("qmi", "Compute the qubit mutual information matrix");
  qmi->add_option("fcidump", qmi_path, "FCIDUMP integral file")->required();
  qmi->add_option("--state", qmi_state, "Source state: mp2|fci")
      ->check(CLI::IsMember({"mp2", "fci"}));
  qmi->add_option("--basis", qmi_basis, "Orbital basis: hfco|no (no rotates to natural orbitals)")
      ->check(CLI::IsMember({"hfco", "no"}));
  qmi->add_option("--norm", qmi_norm, "Normalization: max (largest off-diagonal) or 2ln2")
      ->check(CLI::IsMember({"max", "2ln2"}));
  qmi->add_option("--out", qmi_out, "Output CSV path (default: stdout)");
  qmi->add_flag("--compare-fci", qmi_compare,
                "Also report max |normalized difference| against the FCI state");
  qmi->footer(kQmiSchema);

  // ansatz
  std::string an_path, an_out, an_prov = "mp2/no";
  double an_mu = 0.5;
  bool an_reduce = false;
  auto* an = app.add_subcommand("ansatz", "Threshold a QMI matrix into a parent sequence");
  an->add_option("qmi", an_path, "QMI CSV produced by `qida qmi`")->required();
  an->add_option("--mu", an_mu, "Threshold in [0,1); pairs with normalized I > mu are kept");
  an->add_flag("--reduce", an_reduce, "Keep only the first above-threshold pair of each row");
  an->add_option("--provenance", an_prov, "Provenance tag stored in the document");
  an->add_option("--out", an_out, "Output JSON path (default: stdout)");
  an->footer(std::string(kQmiSchema) + "\n" + kSequenceSchema);

  // vqe
  std::string vq_path, vq_seq, vq_out, vq_basis, vq_state = "mp2", vq_placement = "touched";
  int vq_depth = 1, vq_restarts = 10, vq_jobs = 0, vq_maxit = 5000;
  std::uint64_t vq_perm_seed = 1, vq_seed = 1;
  auto* vq = app.add_subcommand("vqe", "Run seeded VQE restarts for one entangler block");
  vq->add_option("fcidump", vq_path, "FCIDUMP integral file (HF canonical orbitals)")
      ->required();
  vq->add_option("sequence", vq_seq,
                 "Sequence or block JSON, or the literal `ladder` or `random`")
      ->required();
  vq->add_option("--depth", vq_depth, "Number of repeated entangler blocks")
      ->check(CLI::PositiveNumber);
  vq->add_option("--perm-seed", vq_perm_seed,
                 "Seed of the permutation (sequence) or random block (random)");
  vq->add_option("--restarts", vq_restarts, "Number of VQE restarts")
      ->check(CLI::PositiveNumber);
  vq->add_option("--seed", vq_seed, "Seed of the first restart; restart k uses seed+k");
  vq->add_option("--basis", vq_basis,
                 "Hamiltonian basis hfco|no (default: from the sequence provenance, else no)")
      ->check(CLI::IsMember({"hfco", "no"}));
  vq->add_option("--state", vq_state, "State defining the natural orbitals: mp2|fci")
      ->check(CLI::IsMember({"mp2", "fci"}));
  vq->add_option("--placement", vq_placement, "Per-block R_Y placement: touched|all")
      ->check(CLI::IsMember({"touched", "all"}));
  vq->add_option("--max-iterations", vq_maxit, "Optimizer iteration cap")
      ->check(CLI::PositiveNumber);
  vq->add_option("--jobs", vq_jobs, "Worker threads (0: OpenMP default)");
  vq->add_option("--out", vq_out, "Output CSV path (default: stdout)");
  vq->footer(std::string(kSequenceSchema) + "\n" + kRunsSchema);

  // sweep
  std::string sw_cfg, sw_out;
  int sw_jobs = -1;
  bool sw_quiet = false;
  auto* sw = app.add_subcommand("sweep", "Run a full experiment from a config file");
  sw->add_option("config", sw_cfg, "Experiment config JSON")->required();
  sw->add_option("--out", sw_out, "Archive directory (overrides the config)");
  sw->add_option("--jobs", sw_jobs, "Worker threads (overrides the config)");
  sw->add_flag("--quiet", sw_quiet, "Suppress progress on stderr");
  sw->footer(std::string(kConfigSchema) + "\n" + kArchiveSchema);

  // resources
  std::string rs_dir, rs_out;
  std::vector<int> rs_x, rs_y;
  auto* rs = app.add_subcommand("resources", "Compute the resource grid of an archive");
  rs->add_option("archive", rs_dir, "Archive directory written by `qida sweep`")->required();
  rs->add_option("--x", rs_x, "CNOT budgets (default: every affordable count)");
  rs->add_option("--y", rs_y, "VQE repetition budgets (default: 1..smallest run pool)");
  rs->add_option("--out", rs_out, "Output CSV path (default: stdout)");
  rs->footer(kArchiveSchema);

  CLI11_PARSE(app, argc, argv);

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (*info) return cmd_info(info_path);

    if (*qmi) {
      const IntegralSet s = load(qmi_path);
      const QmiNormalization norm = parse_qmi_normalization(qmi_norm);
      const PreparedSystem sys = prepare_system(s, parse_state_mode(qmi_state),
                                                parse_basis_mode(qmi_basis), norm);
      std::ostringstream csv;
      write_qmi_csv(sys.qmi, csv);
      emit(resolve_out(qmi_out, "qmi_" + qmi_state + "_" + qmi_basis + ".csv"), csv.str());
      std::fprintf(stderr, "pairs above 0.5: %d\n", count_above(sys.qmi, 0.5));
      if (qmi_compare) {
        const PreparedSystem ref = prepare_system(s, StateMode::FCI,
                                                  parse_basis_mode(qmi_basis), norm);
        const double d = (ref.qmi.normalized - sys.qmi.normalized).cwiseAbs().maxCoeff();
        std::fprintf(stderr, "max |normalized difference| vs fci: %.6g\n", d);
      }
      return 0;
    }

    if (*an) {
      const QmiMatrix q = run_stage("parse", [&] { return read_qmi_csv(an_path); });
      ParentSequence p = run_stage("ansatz", [&] {
        return an_reduce ? reduce_first_spot(q, an_mu) : threshold_pairs(q, an_mu);
      });
      p.provenance = an_prov;
      emit(resolve_out(an_out, "sequence.json"), to_json(p).dump(2) + "\n");
      std::fprintf(stderr, "pairs: %zu\n", p.pairs.size());
      return 0;
    }

    if (*vq) {
      const IntegralSet s = load(vq_path);
      const int n = 2 * s.n_orb();
      EntanglerBlock block;
      std::string provenance;
      run_stage("ansatz", [&] {
        if (vq_seq == "ladder") {
          block = ladder(n);
        } else if (vq_seq == "random") {
          block = random_entangler(n, vq_perm_seed);
        } else {
          std::ifstream in(vq_seq);
          if (!in) throw InputError("cannot open " + vq_seq);
          const nlohmann::json j = nlohmann::json::parse(in);
          if (j.value("kind", std::string{}) == "entangler_block") {
            block = entangler_block_from_json(j);
          } else {
            const ParentSequence p = parent_sequence_from_json(j);
            provenance = p.provenance;
            block = permute(p, vq_perm_seed);
          }
        }
        if (block.n_qubits != n)
          throw InputError("block acts on " + std::to_string(block.n_qubits) +
                           " qubits but the system has " + std::to_string(n));
        return 0;
      });
      BasisMode basis = BasisMode::NO;
      if (!vq_basis.empty()) {
        basis = parse_basis_mode(vq_basis);
      } else if (const auto slash = provenance.find('/'); slash != std::string::npos) {
        basis = parse_basis_mode(provenance.substr(slash + 1));
      }
      const PreparedSystem sys = prepare_system(s, parse_state_mode(vq_state), basis);
      const CircuitSpec c = run_stage("ansatz", [&] {
        return build_circuit(block, vq_depth, n, parse_rotation_placement(vq_placement));
      });
      OptimizerOptions opts;
      opts.max_iterations = vq_maxit;
      const auto runs = run_stage("vqe", [&] {
        return run_batch(c, sys.hamiltonian.compile(), vq_restarts, vq_seed, vq_jobs, opts);
      });
      std::ostringstream csv;
      write_runs_csv(runs, sys.e_hf, sys.e_fci, csv);
      emit(resolve_out(vq_out, "runs.csv"), csv.str());
      double best = runs.front().final_energy;
      for (const auto& r : runs) best = std::min(best, r.final_energy);
      std::fprintf(stderr, "block %s: %d CNOTs, %d parameters; best %%E_c %.4f\n",
                   block.label.c_str(), c.cnot_count, c.parameter_count,
                   correlation_fraction(best, sys.e_hf, sys.e_fci));
      return 0;
    }

    if (*sw) {
      ExperimentConfig cfg = run_stage("config", [&] {
        std::ifstream in(sw_cfg);
        if (!in) throw InputError("cannot open " + sw_cfg);
        return config_from_json(nlohmann::json::parse(in));
      });
      if (!sw_out.empty()) cfg.output = sw_out;
      if (cfg.output.empty()) cfg.output = resolve_out("", "sweep");
      if (sw_jobs >= 0) cfg.jobs = sw_jobs;
      ProgressFn progress;
      if (!sw_quiet) progress = [](const std::string& m) { std::fprintf(stderr, "%s\n", m.c_str()); };
      const ExperimentResult res = run_experiment(cfg, progress);
      std::ostringstream sum;
      write_summary_csv(res.summary, sum);
      std::cout << sum.str();
      return 0;
    }

    if (*rs) {
      const ArchiveRuns a = run_stage("parse", [&] { return load_archive(rs_dir); });
      ResourceGrid g = run_stage("resources", [&] {
        if (rs_x.empty() && rs_y.empty()) return resource_surface(a);
        ResourceGrid def = resource_surface(a);
        return resource_surface(a, rs_x.empty() ? def.x : rs_x, rs_y.empty() ? def.y : rs_y);
      });
      std::ostringstream csv;
      write_resource_csv(g, csv);
      emit(resolve_out(rs_out, "resource_grid.csv"), csv.str());
      return 0;
    }
  } catch (const StageError& e) {
    std::fprintf(stderr, "qida %s: [%s] %s\n", cmd.c_str(), e.stage().c_str(),
                 e.what() + e.stage().size() + 2);
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qida %s: [%s] %s\n", cmd.c_str(), cmd.c_str(), e.what());
    return 2;
  }
  return 1;
}
