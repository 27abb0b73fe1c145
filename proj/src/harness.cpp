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

#include "qida/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "qida/meanfield.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qida {

namespace fs = std::filesystem;

namespace {

// Runs whose <N> strays further than this from N are flagged.
constexpr double kParticleNumberSlack = 0.01;

std::string format_mu(double mu) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", mu);
  return buf;
}

void write_file(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write " + p.string());
  out << content;
  if (!out) throw InputError("write failed for " + p.string());
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

BasisMode parse_basis_mode(const std::string& name) {
  if (name == "no" || name == "NO") return BasisMode::NO;
  if (name == "hfco" || name == "HFCO") return BasisMode::HFCO;
  throw InputError("unknown basis '" + name + "' (expected hfco|no)");
}

StateMode parse_state_mode(const std::string& name) {
  if (name == "mp2" || name == "MP2") return StateMode::MP2;
  if (name == "fci" || name == "FCI") return StateMode::FCI;
  throw InputError("unknown state '" + name + "' (expected mp2|fci)");
}

std::string to_string(BasisMode b) { return b == BasisMode::NO ? "no" : "hfco"; }
std::string to_string(StateMode s) { return s == StateMode::FCI ? "fci" : "mp2"; }

PreparedSystem prepare_system(const IntegralSet& s, StateMode state, BasisMode basis,
                              QmiNormalization norm) {
  PreparedSystem sys;
  sys.hfco = s;
  sys.basis = basis;
  sys.state_mode = state;
  const int n = 2 * s.n_orb();

  const AmplitudeSet amps = run_stage("meanfield", [&] {
    sys.e_hf = hf_energy(s);
    AmplitudeSet a = mp2_amplitudes(s);
    sys.e_mp2_corr = mp2_energy(a, s);
    return a;
  });
  const PauliHamiltonian h_hfco = run_stage("encoding", [&] { return build_hamiltonian(s); });
  const FciResult fci =
      run_stage("fci", [&] { return fci_ground_state(h_hfco, s.n_elec(), s.ms2()); });
  sys.e_fci = fci.energy;

  Statevector psi = run_stage("states", [&] {
    return state == StateMode::FCI ? fci.state : mp2_statevector(amps);
  });
  if (psi.n_qubits != n) throw StageError("states", "state register size mismatch");

  if (basis == BasisMode::NO) {
    run_stage("natorb", [&] {
      OrbitalRotation R = natural_orbitals(one_body_rdm_spatial(psi));
      sys.integrals = transform_integrals(s, R);
      psi = rotate_statevector(psi, R);
      sys.rotation = std::move(R);
      return 0;
    });
    sys.hamiltonian = run_stage("encoding", [&] { return build_hamiltonian(sys.integrals); });
  } else {
    sys.integrals = s;
    sys.hamiltonian = h_hfco;
  }
  sys.state = std::move(psi);
  sys.qmi = run_stage("qmi", [&] { return qmi_matrix(sys.state, norm); });
  return sys;
}

double correlation_fraction(double e, double e_hf, double e_fci) {
  if (!(e_fci < e_hf))
    throw InputError("correlation fraction needs E_FCI < E_HF (degenerate denominator)");
  return 100.0 * (e - e_hf) / (e_fci - e_hf);
}

int f_sigma(int sigma_cnots, int x) {
  if (sigma_cnots < 1) throw RangeError("an entangler block needs at least one CNOT");
  return x < 0 ? 0 : x / sigma_cnots;
}

void ExperimentConfig::validate() const {
  if (fcidump.empty()) throw InputError("config: fcidump path is required");
  if (output.empty()) throw InputError("config: output directory is required");
  if (depths.empty()) throw InputError("config: depths must be nonempty");
  for (int d : depths)
    if (d < 1) throw RangeError("config: depths must be >= 1");
  if (permutations < 1) throw RangeError("config: permutations must be >= 1");
  if (restarts < 1) throw RangeError("config: restarts must be >= 1");
  if (ladder_restarts < 0 || random_blocks < 0)
    throw RangeError("config: baseline counts must be >= 0");
  if (max_iterations < 1) throw RangeError("config: max_iterations must be >= 1");
  for (double m : mu)
    if (!(m >= 0.0 && m < 1.0)) throw RangeError("config: mu values must lie in [0, 1)");
  for (const auto& a : ansatze)
    if (a != "qida" && a != "ladder" && a != "random")
      throw InputError("config: unknown ansatz family '" + a + "'");
  if (std::find(ansatze.begin(), ansatze.end(), "qida") != ansatze.end() &&
      (mu.empty() || reduced.empty()))
    throw InputError("config: qida needs at least one mu and one reduced flag");
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    c.fcidump = j.at("fcidump").get<std::string>();
    if (j.contains("basis")) c.basis = parse_basis_mode(j["basis"].get<std::string>());
    if (j.contains("state")) c.state = parse_state_mode(j["state"].get<std::string>());
    if (j.contains("norm")) c.norm = parse_qmi_normalization(j["norm"].get<std::string>());
    if (j.contains("mu")) {
      c.mu.clear();
      if (j["mu"].is_array())
        c.mu = j["mu"].get<std::vector<double>>();
      else
        c.mu.push_back(j["mu"].get<double>());
    }
    if (j.contains("reduced")) {
      c.reduced.clear();
      if (j["reduced"].is_array())
        for (const auto& v : j["reduced"]) c.reduced.push_back(v.get<bool>());
      else
        c.reduced.push_back(j["reduced"].get<bool>());
    }
    if (j.contains("ansatze")) c.ansatze = j["ansatze"].get<std::vector<std::string>>();
    if (j.contains("depths")) c.depths = j["depths"].get<std::vector<int>>();
    c.permutations = j.value("permutations", c.permutations);
    c.permutation_seed = j.value("permutation_seed", c.permutation_seed);
    c.restarts = j.value("restarts", c.restarts);
    c.ladder_restarts = j.value("ladder_restarts", c.ladder_restarts);
    c.random_blocks = j.value("random_blocks", c.random_blocks);
    c.random_seed = j.value("random_seed", c.random_seed);
    c.restart_seed = j.value("restart_seed", c.restart_seed);
    if (j.contains("placement"))
      c.placement = parse_rotation_placement(j["placement"].get<std::string>());
    c.max_iterations = j.value("max_iterations", c.max_iterations);
    c.jobs = j.value("jobs", c.jobs);
    c.output = j.value("output", c.output);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  std::vector<bool> reduced(c.reduced.begin(), c.reduced.end());
  return {{"fcidump", c.fcidump},
          {"basis", to_string(c.basis)},
          {"state", to_string(c.state)},
          {"norm", to_string(c.norm)},
          {"mu", c.mu},
          {"reduced", reduced},
          {"ansatze", c.ansatze},
          {"depths", c.depths},
          {"permutations", c.permutations},
          {"permutation_seed", c.permutation_seed},
          {"restarts", c.restarts},
          {"ladder_restarts", c.ladder_restarts},
          {"random_blocks", c.random_blocks},
          {"random_seed", c.random_seed},
          {"restart_seed", c.restart_seed},
          {"placement", to_string(c.placement)},
          {"max_iterations", c.max_iterations},
          {"jobs", c.jobs},
          {"output", c.output}};
}

std::vector<AnsatzFamily> build_families(const ExperimentConfig& cfg,
                                         const PreparedSystem& sys) {
  const int n = sys.qmi.n;
  std::vector<AnsatzFamily> out;
  const std::string provenance = to_string(sys.state_mode) + "/" + to_string(sys.basis);
  for (const auto& kind : cfg.ansatze) {
    if (kind == "qida") {
      for (double mu : cfg.mu)
        for (bool red : cfg.reduced) {
          AnsatzFamily f;
          f.kind = "qida";
          f.label = "qida_mu" + format_mu(mu) + (red ? "_red" : "");
          ParentSequence p = red ? reduce_first_spot(sys.qmi, mu) : threshold_pairs(sys.qmi, mu);
          p.provenance = provenance;
          if (p.pairs.empty())
            throw InputError("parent sequence " + f.label + " is empty; lower mu");
          f.restarts = cfg.restarts;
          // Short sequences are explored exhaustively, longer ones sampled.
          std::uint64_t count = 1;
          bool small = true;
          for (std::size_t k = 2; k <= p.pairs.size() && small; ++k) {
            count *= k;
            small = count <= static_cast<std::uint64_t>(cfg.permutations);
          }
          if (small) {
            f.blocks = enumerate_permutations(p, static_cast<std::uint64_t>(cfg.permutations));
            for (std::size_t k = 0; k < f.blocks.size(); ++k) f.block_seeds.push_back(k);
          } else {
            for (int k = 0; k < cfg.permutations; ++k) {
              const std::uint64_t seed = cfg.permutation_seed + static_cast<std::uint64_t>(k);
              f.blocks.push_back(permute(p, seed));
              f.block_seeds.push_back(seed);
            }
          }
          f.sequence = std::move(p);
          out.push_back(std::move(f));
        }
    } else if (kind == "ladder") {
      AnsatzFamily f;
      f.kind = f.label = "ladder";
      f.blocks.push_back(ladder(n));
      f.block_seeds.push_back(0);
      f.restarts = cfg.ladder_restarts > 0 ? cfg.ladder_restarts
                                           : cfg.permutations * cfg.restarts;
      out.push_back(std::move(f));
    } else if (kind == "random") {
      AnsatzFamily f;
      f.kind = f.label = "random";
      const int blocks = cfg.random_blocks > 0 ? cfg.random_blocks : cfg.permutations;
      for (int k = 0; k < blocks; ++k) {
        const std::uint64_t seed = cfg.random_seed + static_cast<std::uint64_t>(k);
        f.blocks.push_back(random_entangler(n, seed));
        f.block_seeds.push_back(seed);
      }
      f.restarts = cfg.restarts;
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<SummaryRow> summarize(const ArchiveRuns& a) {
  std::vector<SummaryRow> rows;
  for (const auto& [label, series] : a.ansatze)
    for (const auto& [depth, pcts] : series.pct_by_depth) {
      SummaryRow r;
      r.ansatz = label;
      r.depth = depth;
      r.cnots = series.block_cnots * depth;
      r.runs = static_cast<int>(pcts.size());
      auto it = series.flagged_by_depth.find(depth);
      r.flagged = it == series.flagged_by_depth.end() ? 0 : it->second;
      if (!pcts.empty()) {
        r.max_pct = *std::max_element(pcts.begin(), pcts.end());
        r.mean_pct = std::accumulate(pcts.begin(), pcts.end(), 0.0) / pcts.size();
        const auto hits = std::count_if(pcts.begin(), pcts.end(),
                                        [&](double p) { return p >= 0.7 * r.max_pct; });
        r.within30 = 100.0 * static_cast<double>(hits) / pcts.size();
      }
      rows.push_back(r);
    }
  return rows;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << "ansatz,depth,cnots,runs,max_pct,mean_pct,within30_pct,flagged\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, ",%d,%d,%d,%.12g,%.12g,%.12g,%d\n", r.depth, r.cnots,
                  r.runs, r.max_pct, r.mean_pct, r.within30, r.flagged);
    out << r.ansatz << buf;
  }
}

std::optional<double> expected_max_of_draws(const std::vector<std::vector<double>>& pools,
                                            int y) {
  if (y < 1 || pools.empty()) return std::nullopt;
  std::vector<std::vector<double>> sorted = pools;
  std::vector<double> values;
  for (auto& p : sorted) {
    if (static_cast<int>(p.size()) < y) return std::nullopt;
    std::sort(p.begin(), p.end());
    values.insert(values.end(), p.begin(), p.end());
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  // P(max <= t) = prod over pools of C(#<=t, y) / C(size, y).
  auto cdf = [&](double t) {
    double prod = 1.0;
    for (const auto& p : sorted) {
      const auto c = std::upper_bound(p.begin(), p.end(), t) - p.begin();
      const auto n = static_cast<std::ptrdiff_t>(p.size());
      if (c < y) return 0.0;
      for (int i = 0; i < y; ++i)
        prod *= static_cast<double>(c - i) / static_cast<double>(n - i);
    }
    return prod;
  };
  double expect = 0.0, prev = 0.0;
  for (double v : values) {
    const double f = cdf(v);
    expect += v * (f - prev);
    prev = f;
  }
  return expect;
}

ResourceGrid resource_surface(const ArchiveRuns& a, const std::vector<int>& x,
                              const std::vector<int>& y) {
  ResourceGrid g;
  g.x = x;
  g.y = y;
  for (int xv : x)
    for (int yv : y) {
      ResourceCell cell;
      cell.x = xv;
      cell.y = yv;
      // An affordable ansatz without y runs at some eligible depth leaves
      // the whole cell missing rather than silently dropping out of the max.
      bool short_pool = false;
      for (const auto& [label, series] : a.ansatze) {
        if (series.block_cnots < 1 || series.pct_by_depth.empty()) continue;
        const int fmax = f_sigma(series.block_cnots, xv);
        if (fmax < 1) continue;
        std::vector<std::vector<double>> pools;
        for (const auto& [depth, pcts] : series.pct_by_depth)
          if (depth <= fmax) pools.push_back(pcts);
        if (pools.empty()) continue;
        const auto v = expected_max_of_draws(pools, yv);
        if (!v) {
          short_pool = true;
          break;
        }
        if (!cell.value || *v > *cell.value) {
          cell.value = v;
          cell.winner = label;
        }
      }
      if (short_pool) {
        cell.value.reset();
        cell.winner.clear();
      }
      g.cells.push_back(cell);
    }
  return g;
}

ResourceGrid resource_surface(const ArchiveRuns& a) {
  std::set<int> xs;
  int ymax = -1;
  for (const auto& [label, series] : a.ansatze)
    for (const auto& [depth, pcts] : series.pct_by_depth) {
      xs.insert(series.block_cnots * depth);
      const int size = static_cast<int>(pcts.size());
      ymax = ymax < 0 ? size : std::min(ymax, size);
    }
  ymax = std::max(ymax, 0);
  std::vector<int> y(ymax);
  std::iota(y.begin(), y.end(), 1);
  return resource_surface(a, {xs.begin(), xs.end()}, y);
}

void write_resource_csv(const ResourceGrid& g, std::ostream& out) {
  out << "x,y,value,winner\n";
  char buf[64];
  for (const auto& c : g.cells) {
    out << c.x << ',' << c.y << ',';
    if (c.value) {
      std::snprintf(buf, sizeof buf, "%.12g", *c.value);
      out << buf;
    }
    out << ',' << c.winner << '\n';
  }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const ProgressFn& progress) {
  auto say = [&](const std::string& msg) {
    if (progress) progress(msg);
  };
  run_stage("config", [&] {
    cfg.validate();
    return 0;
  });
  const fs::path root(cfg.output);
  const IntegralSet s = run_stage("parse", [&] { return read_fcidump(cfg.fcidump); });
  say("prepare " + cfg.fcidump);
  const PreparedSystem sys = prepare_system(s, cfg.state, cfg.basis, cfg.norm);
  const int n = sys.qmi.n;

  nlohmann::json manifest = {
      {"tool", "qida"},
      {"version", QIDA_VERSION},
      {"config", to_json(cfg)},
      {"system",
       {{"label", s.source_label},
        {"n_orb", s.n_orb()},
        {"n_elec", s.n_elec()},
        {"n_qubits", n},
        {"e_hf", sys.e_hf},
        {"e_mp2_corr", sys.e_mp2_corr},
        {"e_fci", sys.e_fci}}},
      {"conventions",
       {{"spin_order", "blocked"},
        {"cnot_direction", "control = smaller qubit index"},
        {"rotation_placement", to_string(cfg.placement)},
        {"within30",
         "a run counts if pct_corr >= 0.7 * max pct_corr of its ansatz and depth; "
         "the absolute-energy reading E - E_best <= 0.3 |E_best - E_HF| is not used"},
        {"resource_estimator",
         "expected max over every y-subset of each depth's runs; depths above the "
         "largest archived depth are not extrapolated; a cell is missing when any "
         "affordable ansatz has fewer than y runs at an eligible depth"}}}};

  const std::string qmi_name =
      "qmi/" + to_string(cfg.state) + "_" + to_string(cfg.basis) + ".csv";
  run_stage("archive", [&] {
    std::ostringstream q;
    write_qmi_csv(sys.qmi, q);
    write_file(root / qmi_name, q.str());
    write_file(root / "manifest.json", manifest.dump(2) + "\n");
    return 0;
  });

  std::vector<AnsatzFamily> families =
      run_stage("ansatz", [&] { return build_families(cfg, sys); });

  // Flatten (family, depth, block, restart) into independent units.
  struct Unit {
    int family, depth, block, circuit;
    std::uint64_t seed;
  };
  std::vector<CircuitSpec> circuits;
  std::vector<Unit> units;
  nlohmann::json seq_index = nlohmann::json::array();
  run_stage("ansatz", [&] {
    for (int fi = 0; fi < static_cast<int>(families.size()); ++fi) {
      const AnsatzFamily& f = families[fi];
      nlohmann::json doc = {{"label", f.label}, {"kind", f.kind}};
      if (f.sequence) doc["sequence"] = to_json(*f.sequence);
      doc["blocks"] = nlohmann::json::array();
      for (const auto& b : f.blocks) doc["blocks"].push_back(to_json(b));
      doc["block_seeds"] = f.block_seeds;
      write_file(root / "sequences" / (f.label + ".json"), doc.dump(2) + "\n");
      seq_index.push_back({{"label", f.label},
                           {"kind", f.kind},
                           {"block_cnots", f.blocks.front().cnots.size()},
                           {"blocks", f.blocks.size()},
                           {"restarts_per_block", f.restarts}});
      for (int d : cfg.depths)
        for (int b = 0; b < static_cast<int>(f.blocks.size()); ++b) {
          circuits.push_back(build_circuit(f.blocks[b], d, n, cfg.placement));
          for (int k = 0; k < f.restarts; ++k)
            units.push_back({fi, d, b, static_cast<int>(circuits.size()) - 1,
                             cfg.restart_seed + static_cast<std::uint64_t>(b) * f.restarts +
                                 static_cast<std::uint64_t>(k)});
        }
    }
    return 0;
  });
  manifest["ansatze"] = seq_index;
  manifest["qmi"] = qmi_name;

  say("vqe: " + std::to_string(units.size()) + " runs");
  const kernels::FlipOperator h = run_stage("vqe", [&] { return sys.hamiltonian.compile(); });
  OptimizerOptions opts;
  opts.max_iterations = cfg.max_iterations;
  std::vector<VqeRun> results(units.size());
  int threads = 1;
#ifdef _OPENMP
  threads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#endif
  std::atomic<std::size_t> done{0};
  std::string first_error;
  const std::ptrdiff_t n_units = static_cast<std::ptrdiff_t>(units.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
  for (std::ptrdiff_t u = 0; u < n_units; ++u) {
    try {
      results[u] = minimize(circuits[units[u].circuit], h, units[u].seed, opts);
    } catch (const std::exception& e) {
#pragma omp critical(qida_harness_error)
      if (first_error.empty()) first_error = e.what();
    }
    const std::size_t k = ++done;
    if (progress && (k % 50 == 0 || k == units.size())) {
#pragma omp critical(qida_harness_progress)
      say("vqe " + std::to_string(k) + "/" + std::to_string(units.size()));
    }
  }
  if (!first_error.empty()) throw StageError("vqe", first_error);

  // Serialized writer: canonical order regardless of execution order.
  ExperimentResult res;
  res.archive = root.string();
  res.runs.n_elec = s.n_elec();
  run_stage("archive", [&] {
    for (int fi = 0; fi < static_cast<int>(families.size()); ++fi) {
      const AnsatzFamily& f = families[fi];
      auto& series = res.runs.ansatze[f.label];
      series.block_cnots = static_cast<int>(f.blocks.front().cnots.size());
      for (int d : cfg.depths) {
        std::ostringstream csv;
        csv << "block,seed,final_energy,pct_corr,iterations,converged,n_expectation\n";
        auto& pcts = series.pct_by_depth[d];
        int& flagged = series.flagged_by_depth[d];
        for (std::size_t u = 0; u < units.size(); ++u) {
          if (units[u].family != fi || units[u].depth != d) continue;
          const VqeRun& r = results[u];
          const double pct = correlation_fraction(r.final_energy, sys.e_hf, sys.e_fci) + 0.0;
          char buf[256];
          std::snprintf(buf, sizeof buf, "%d,%llu,%.12g,%.12g,%d,%d,%.12g\n", units[u].block,
                        static_cast<unsigned long long>(r.seed), r.final_energy, pct,
                        r.iterations, r.converged ? 1 : 0, r.n_expectation);
          csv << buf;
          if (r.failed || !std::isfinite(pct)) continue;
          pcts.push_back(pct);
          if (std::abs(r.n_expectation - s.n_elec()) > kParticleNumberSlack) ++flagged;
        }
        write_file(root / "runs" / f.label / (std::to_string(d) + ".csv"), csv.str());
      }
    }
    res.summary = summarize(res.runs);
    std::ostringstream sum;
    write_summary_csv(res.summary, sum);
    write_file(root / "summary.csv", sum.str());
    res.grid = resource_surface(res.runs);
    std::ostringstream grid;
    write_resource_csv(res.grid, grid);
    write_file(root / "resource_grid.csv", grid.str());
    manifest["status"] = "complete";
    write_file(root / "manifest.json", manifest.dump(2) + "\n");
    return 0;
  });
  res.manifest = manifest;
  say("archive written to " + res.archive);
  return res;
}

ArchiveRuns load_archive(const std::string& dir) {
  const fs::path root(dir);
  std::ifstream mf(root / "manifest.json");
  if (!mf) throw InputError("no manifest.json in " + dir);
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(mf);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest.json: ") + e.what(), 0);
  }
  ArchiveRuns a;
  a.n_elec = m.at("system").at("n_elec").get<int>();
  const auto depths = m.at("config").at("depths").get<std::vector<int>>();
  for (const auto& entry : m.at("ansatze")) {
    const std::string label = entry.at("label").get<std::string>();
    auto& series = a.ansatze[label];
    series.block_cnots = entry.at("block_cnots").get<int>();
    for (int d : depths) {
      const fs::path p = root / "runs" / label / (std::to_string(d) + ".csv");
      std::ifstream in(p);
      if (!in) throw InputError("missing run file " + p.string());
      std::string line;
      std::getline(in, line);
      const auto header = split_csv(line);
      auto col = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ParseError(p.string() + ": no column " + name, 1);
        return static_cast<std::size_t>(it - header.begin());
      };
      const std::size_t c_pct = col("pct_corr"), c_n = col("n_expectation");
      auto& pcts = series.pct_by_depth[d];
      int& flagged = series.flagged_by_depth[d];
      int lineno = 1;
      while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size())
          throw ParseError(p.string() + ": wrong column count", lineno);
        double pct, nexp;
        try {
          pct = std::stod(cells[c_pct]);
          nexp = std::stod(cells[c_n]);
        } catch (const std::exception&) {
          continue;  // failed run (non-finite energy)
        }
        if (!std::isfinite(pct)) continue;
        pcts.push_back(pct);
        if (std::abs(nexp - a.n_elec) > kParticleNumberSlack) ++flagged;
      }
    }
  }
  return a;
}

}  // namespace qida
