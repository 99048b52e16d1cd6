// Copyright 2026 The qbrittle Authors
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

// qbrittle: generate circuits, prune them, and run ensemble studies.
//
// Exit codes: 0 success, 1 internal error, 2 invalid arguments or input,
// 3 no robust/fragile transition found, 4 simulator qubit cap exceeded.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbrittle/qbrittle.hpp"
#include "svg.hpp"

#ifndef QBRITTLE_VERSION
#define QBRITTLE_VERSION "dev"
#endif

namespace fs = std::filesystem;
using namespace qbrittle;

namespace {

enum ExitCode : int { kOk = 0, kInternal = 1, kInvalid = 2, kNoTransition = 3, kResource = 4 };

class InputError : public Error {
 public:
  using Error::Error;
};

class OutputError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot write " + path.string());
  out << text;
  if (!out) throw OutputError("write failed for " + path.string());
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Sidecar recording exactly what produced a set of outputs.
void write_manifest(const fs::path& path, const std::string& command, ordered_json config,
                    const std::vector<fs::path>& inputs, const std::vector<fs::path>& outputs) {
  ordered_json in = ordered_json::array(), out = ordered_json::array();
  for (const auto& p : inputs) in.push_back(p.string());
  for (const auto& p : outputs) out.push_back(p.string());
  const ordered_json manifest = {{"tool", "qbrittle"},        {"version", QBRITTLE_VERSION},
                                 {"command", command},        {"timestamp", utc_timestamp()},
                                 {"config", std::move(config)}, {"inputs", in},
                                 {"outputs", out}};
  write_file(path, manifest.dump(2) + "\n");
}

fs::path manifest_for(const fs::path& out) { return fs::path(out.string() + ".manifest.json"); }

// Fills alpha / rho / kappa from the published preset for n when not given.
struct ScaleFlags {
  int n = 10;
  std::optional<double> alpha, rho, kappa;

  EnsembleConfig resolve(bool need_kappa) const {
    EnsembleConfig c;
    c.n = n;
    std::optional<EnsembleConfig> preset;
    if (n == 10 || n == 12 || n == 14) preset = preset_config(n);
    auto pick = [&](const std::optional<double>& given, double EnsembleConfig::*field, const char* name) {
      if (given) return *given;
      if (preset) return (*preset).*field;
      throw InvalidParameter(std::string("--") + name + " is required for n=" + std::to_string(n));
    };
    c.alpha = pick(alpha, &EnsembleConfig::alpha, "alpha");
    c.rho = pick(rho, &EnsembleConfig::rho, "rho");
    c.kappa = need_kappa ? pick(kappa, &EnsembleConfig::kappa, "kappa") : (kappa ? *kappa : c.kappa);
    return c;
  }
};

void add_scale_flags(CLI::App* cmd, ScaleFlags& f, bool with_kappa) {
  cmd->add_option("--n", f.n, "Qubit count (even, >= 4)")->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "Depth factor (default: preset for n=10/12/14)");
  cmd->add_option("--rho", f.rho, "Redundancy rate in [0,1] (default: preset)");
  if (with_kappa) cmd->add_option("--kappa", f.kappa, "Compression ratio in (0,1) (default: preset)");
}

PruningMode parse_mode(const std::string& s) {
  if (s == "causal") return PruningMode::Causal;
  if (s == "aware") return PruningMode::Aware;
  throw InvalidParameter("--mode must be causal or aware");
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  ScaleFlags scale;
  std::uint64_t seed = 0;
  std::string out;
  std::string qasm;
};

int cmd_generate(const GenerateArgs& a) {
  const EnsembleConfig c = a.scale.resolve(false);
  const GenerationParams params{c.n, c.alpha, c.rho, a.seed};
  const Circuit circuit = generate_uniform(params);
  const std::string doc = to_json(circuit);
  if (a.out.empty()) {
    std::cout << doc;
  } else {
    write_file(a.out, doc);
    std::vector<fs::path> outputs{a.out};
    if (!a.qasm.empty()) {
      write_file(a.qasm, export_qasm(circuit));
      outputs.emplace_back(a.qasm);
    }
    write_manifest(manifest_for(a.out), "generate",
                   {{"n", params.n}, {"alpha", params.alpha}, {"rho", params.rho}, {"seed", params.seed}}, {},
                   outputs);
    std::cerr << "wrote " << circuit.size() << " gates (depth " << circuit_depth(circuit) << ") to " << a.out
              << "\n";
  }
  return kOk;
}

struct PruneArgs {
  std::string in;
  double kappa = 0.11;
  std::string mode = "causal";
  std::string out;
  std::string importance_csv;
  std::string qasm;
  std::string state_csv;
  double classify_threshold = kDefaultClassifyThreshold;
  double small_angle = kDefaultSmallAngleThreshold;
  std::optional<double> std_threshold, ratio_threshold;
};

int cmd_prune(const PruneArgs& a) {
  const PruningMode mode = parse_mode(a.mode);
  const Circuit circuit = circuit_from_json(read_file(a.in));
  if (circuit.empty()) throw InvalidParameter("input circuit has no gates");
  if (removal_quota(a.kappa, circuit.size()) == 0) {
    throw InvalidParameter("kappa=" + format_short(a.kappa) + " removes no gate from " +
                           std::to_string(circuit.size()) + " gates");
  }
  const ImportanceProfile profile = importance_profile(circuit);

  BrittlenessThresholds t = default_brittleness_thresholds(circuit.n_qubits());
  t.small_angle = a.small_angle;
  if (a.std_threshold) t.std_theta = *a.std_threshold;
  if (a.ratio_threshold) t.small_angle_ratio = *a.ratio_threshold;

  std::optional<BrittlenessReport> risk;
  if (mode == PruningMode::Aware) risk = risk_assess(circuit, t);
  const CompressionResult result =
      mode == PruningMode::Causal ? causal_prune(circuit, profile, a.kappa) : aware_prune(circuit, profile, a.kappa, t);

  std::vector<fs::path> outputs;
  if (!a.out.empty()) {
    write_file(a.out, to_json(result.compressed));
    outputs.emplace_back(a.out);
  }
  if (!a.importance_csv.empty()) {
    write_file(a.importance_csv, importance_to_csv(circuit, profile));
    outputs.emplace_back(a.importance_csv);
  }
  if (!a.qasm.empty()) {
    write_file(a.qasm, export_qasm(result.compressed));
    outputs.emplace_back(a.qasm);
  }
  if (!a.state_csv.empty()) {
    write_file(a.state_csv, state_to_csv(run(result.compressed)));
    outputs.emplace_back(a.state_csv);
  }
  if (!outputs.empty()) {
    write_manifest(manifest_for(outputs.front()), "prune",
                   {{"kappa", a.kappa},
                    {"mode", a.mode},
                    {"classify_threshold", a.classify_threshold},
                    {"small_angle_threshold", t.small_angle},
                    {"std_threshold", t.std_theta},
                    {"ratio_threshold", t.small_angle_ratio}},
                   {a.in}, outputs);
  }

  std::cout << "removed " << result.removed_indices.size() << " of " << circuit.size()
            << " gates, kappa_effective=" << format_short(result.kappa_effective)
            << ", fidelity=" << format_short(result.fidelity)
            << ", label=" << label_name(classify(result.fidelity, a.classify_threshold)) << ", mode=" << a.mode;
  if (risk) {
    std::cout << ", brittle=" << (risk->brittle ? "true" : "false") << " (mean_theta="
              << format_short(risk->mean_theta) << ", std_theta=" << format_short(risk->std_theta)
              << ", small_angle_ratio=" << format_short(risk->small_angle_ratio) << ")";
  }
  std::cout << "\n";
  return kOk;
}

struct EnsembleArgs {
  ScaleFlags scale;
  std::size_t count = 100;
  std::uint64_t base_seed = 0;
  std::string out_dir = "ensemble_out";
  std::string mode = "causal";
  double classify_threshold = kDefaultClassifyThreshold;
  double small_angle = kDefaultSmallAngleThreshold;
  std::size_t bins = 20;
  bool svg = false;
  unsigned threads = 0;
};

int cmd_ensemble(const EnsembleArgs& a) {
  EnsembleConfig cfg = a.scale.resolve(true);
  cfg.circuit_count = a.count;
  cfg.base_seed = a.base_seed;
  cfg.classify_threshold = a.classify_threshold;
  cfg.small_angle_threshold = a.small_angle;
  cfg.pruning_mode = parse_mode(a.mode);

  const EnsembleReport rep = run_ensemble(cfg, a.threads);
  const fs::path dir(a.out_dir);
  const auto fid_bins = fidelity_histogram(rep.records, a.bins);
  const auto r_bins = correlation_histogram(rep.records, a.bins);
  std::vector<fs::path> outputs = {dir / "report.json", dir / "records.csv", dir / "hist_fidelity.csv",
                                   dir / "hist_r.csv"};
  write_file(outputs[0], report_to_json(rep).dump(2) + "\n");
  write_file(outputs[1], records_to_csv(rep.records));
  write_file(outputs[2], histogram_to_csv(fid_bins));
  write_file(outputs[3], histogram_to_csv(r_bins));
  if (a.svg) {
    outputs.push_back(dir / "hist_fidelity.svg");
    outputs.push_back(dir / "hist_r.svg");
    write_file(outputs[4], cli::histogram_svg(fid_bins, "Fidelity after compression", "fidelity"));
    write_file(outputs[5], cli::histogram_svg(r_bins, "Angle-importance correlation", "r"));
  }
  ordered_json config = config_to_json(cfg);
  config["bins"] = a.bins;
  write_manifest(dir / "manifest.json", "ensemble", config, {}, outputs);

  std::cout << compare_classes(rep);
  if (!rep.both_classes()) {
    std::cerr << "warning: ensemble produced a single class; gap, effect size and p-values are null\n";
  }
  return kOk;
}

struct SweepArgs {
  ScaleFlags scale;
  std::uint64_t base_seed = 0;
  double kappa_min = 0.05;
  double kappa_max = 0.40;
  double kappa_step = 0.03;
  std::vector<double> grid;
  std::size_t probes = kDefaultProbeCount;
  std::string out;
  std::string mode = "causal";
  double classify_threshold = kDefaultClassifyThreshold;
  unsigned threads = 0;
};

std::vector<double> build_grid(const SweepArgs& a) {
  if (!a.grid.empty()) return a.grid;
  if (!(a.kappa_step > 0.0) || !(a.kappa_max > a.kappa_min)) {
    throw InvalidParameter("kappa grid needs step > 0 and max > min");
  }
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double v = std::round((a.kappa_min + a.kappa_step * k) * 1e9) / 1e9;
    if (v > a.kappa_max + 1e-12) break;
    grid.push_back(v);
  }
  return grid;
}

int cmd_sweep(const SweepArgs& a) {
  EnsembleConfig cfg = a.scale.resolve(false);
  cfg.base_seed = a.base_seed;
  cfg.classify_threshold = a.classify_threshold;
  cfg.pruning_mode = parse_mode(a.mode);
  const std::vector<double> grid = build_grid(a);
  cfg.kappa = grid.front();

  const SweepResult result = evaluate_kappa_grid(cfg, grid, a.probes, a.threads);
  const std::string table = sweep_to_csv(result);
  if (!a.out.empty()) {
    write_file(a.out, table);
    ordered_json config = config_to_json(cfg);
    config.erase("kappa");
    config.erase("circuit_count");
    config["probe_count"] = a.probes;
    config["grid"] = grid;
    write_manifest(manifest_for(a.out), "sweep", config, {}, {a.out});
  }
  std::cout << table;
  if (!result.selected_kappa) {
    std::cerr << "no grid kappa produced both robust and fragile circuits\n";
    return kNoTransition;
  }
  std::cout << "selected_kappa=" << format_short(*result.selected_kappa) << "\n";
  return kOk;
}

int cmd_report(const std::string& in) {
  const std::string text = read_file(in);
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  std::cout << compare_classes(report_from_json(j));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qbrittle: circuit compression stability studies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", QBRITTLE_VERSION);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate one structurally-uniform circuit");
  add_scale_flags(generate, gen.scale, false);
  generate->add_option("--seed", gen.seed, "PRNG seed")->capture_default_str();
  generate->add_option("--out,-o", gen.out, "Output circuit JSON (stdout when omitted)");
  generate->add_option("--qasm", gen.qasm, "Also write OpenQASM 2.0 here (needs --out)");

  PruneArgs pr;
  auto* prune = app.add_subcommand("prune", "Compress a circuit by causal importance");
  prune->add_option("--in,-i", pr.in, "Input circuit JSON")->required();
  prune->add_option("--kappa", pr.kappa, "Compression ratio in (0,1)")->capture_default_str();
  prune->add_option("--mode", pr.mode, "causal | aware")->capture_default_str();
  prune->add_option("--out,-o", pr.out, "Compressed circuit JSON");
  prune->add_option("--importance-csv", pr.importance_csv, "Per-gate importance CSV");
  prune->add_option("--qasm", pr.qasm, "Compressed circuit as OpenQASM 2.0");
  prune->add_option("--state-csv", pr.state_csv, "Compressed final state as index,re,im CSV");
  prune->add_option("--threshold", pr.classify_threshold, "Robust/fragile fidelity threshold")->capture_default_str();
  prune->add_option("--small-angle", pr.small_angle, "Small-angle threshold (rad)")->capture_default_str();
  prune->add_option("--std-threshold", pr.std_threshold, "Brittle when sigma_theta is below this");
  prune->add_option("--ratio-threshold", pr.ratio_threshold, "Brittle when the small-angle ratio is below this");

  EnsembleArgs en;
  auto* ensemble = app.add_subcommand("ensemble", "Run an ensemble study and write reports");
  add_scale_flags(ensemble, en.scale, true);
  ensemble->add_option("--count", en.count, "Circuits in the ensemble")->capture_default_str();
  ensemble->add_option("--base-seed", en.base_seed, "Seed of circuit 0; circuit k uses base+k")->capture_default_str();
  ensemble->add_option("--out-dir", en.out_dir, "Output directory")->capture_default_str();
  ensemble->add_option("--mode", en.mode, "causal | aware")->capture_default_str();
  ensemble->add_option("--threshold", en.classify_threshold, "Robust/fragile fidelity threshold")->capture_default_str();
  ensemble->add_option("--small-angle", en.small_angle, "Small-angle threshold (rad)")->capture_default_str();
  ensemble->add_option("--bins", en.bins, "Histogram bins")->capture_default_str();
  ensemble->add_flag("--svg", en.svg, "Also render histograms as SVG");
  ensemble->add_option("--threads", en.threads, "Worker threads (0 = all cores)")->capture_default_str();

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Search the kappa grid for the clearest transition");
  add_scale_flags(sweep, sw.scale, false);
  sweep->add_option("--base-seed", sw.base_seed, "Base seed")->capture_default_str();
  sweep->add_option("--kappa-min", sw.kappa_min, "First grid kappa")->capture_default_str();
  sweep->add_option("--kappa-max", sw.kappa_max, "Grid upper bound (inclusive)")->capture_default_str();
  sweep->add_option("--kappa-step", sw.kappa_step, "Grid step")->capture_default_str();
  sweep->add_option("--grid", sw.grid, "Explicit kappa values (overrides min/max/step)")->delimiter(',');
  sweep->add_option("--probes", sw.probes, "Probe circuits per grid point")->capture_default_str();
  sweep->add_option("--out,-o", sw.out, "Sweep table CSV");
  sweep->add_option("--mode", sw.mode, "causal | aware")->capture_default_str();
  sweep->add_option("--threshold", sw.classify_threshold, "Robust/fragile fidelity threshold")->capture_default_str();
  sweep->add_option("--threads", sw.threads, "Worker threads (0 = all cores)")->capture_default_str();

  std::string report_in;
  auto* report = app.add_subcommand("report", "Re-render class comparison tables from report.json");
  report->add_option("--in,-i", report_in, "Report JSON from `ensemble`")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*prune) return cmd_prune(pr);
    if (*ensemble) return cmd_ensemble(en);
    if (*sweep) return cmd_sweep(sw);
    if (*report) return cmd_report(report_in);
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const OutputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  } catch (const NoTransition& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoTransition;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
