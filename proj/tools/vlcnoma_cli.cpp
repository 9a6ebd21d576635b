#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vlcnoma/allocator.hpp"
#include "vlcnoma/config.hpp"
#include "vlcnoma/error.hpp"
#include "vlcnoma/io.hpp"
#include "vlcnoma/montecarlo.hpp"
#include "vlcnoma/verify.hpp"
#include "vlcnoma/vlc_channel.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vlcnoma;

namespace {

struct RunArgs {
  std::string config;
  std::string out_dir;
  unsigned threads = 0;
  bool zero_fill = false;
  std::string units;
  bool raw = false;
};

int cmd_run(const RunArgs& a) {
  ExperimentConfig cfg = load_config(a.config);
  if (!a.out_dir.empty()) cfg.output.out_dir = a.out_dir;
  if (a.threads > 0) cfg.threads = a.threads;
  if (a.zero_fill) cfg.zero_fill_infeasible = true;
  if (!a.units.empty()) cfg.units = a.units;
  if (a.raw) cfg.output.raw_records = true;

  ExperimentSettings settings = cfg.to_settings();
  settings.keep_records = cfg.output.raw_records;
  const ExperimentResult res = run_experiment(settings);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";

  const RateUnit unit = cfg.units == "bit" ? RateUnit::bit : RateUnit::nat;
  const std::string csv = aggregate_csv(res.aggregates, unit);
  const fs::path dir(cfg.output.out_dir);
  fs::create_directories(dir);
  write_file_atomic(dir / cfg.output.csv_name, csv);

  json manifest;
  manifest["config"] = to_json(cfg);
  manifest["master_seed"] = cfg.master_seed;
  manifest["timestamp_utc"] = utc_timestamp();
  manifest["version"] = VLCNOMA_VERSION;
  manifest["aggregate_csv"] = cfg.output.csv_name;
  manifest["aggregate_sha256"] = sha256_hex(csv);
  manifest["warnings"] = res.warnings;
  if (cfg.output.raw_records) {
    const std::string raw = records_csv(cfg.sweep.variable, cfg.sweep.values, res.records);
    write_file_atomic(dir / "records.csv", raw);
    manifest["records_csv"] = "records.csv";
    manifest["records_sha256"] = sha256_hex(raw);
  }
  write_file_atomic(dir / cfg.output.manifest_name, manifest.dump(2) + "\n");
  std::cout << "wrote " << (dir / cfg.output.csv_name).string() << " ("
            << res.aggregates.size() << " rows)\n";
  return 0;
}

int cmd_verify(const VerifyOptions& o, const std::vector<std::string>& only) {
  std::vector<SuiteResult> results;
  const auto want = [&](const std::string& n) {
    return only.empty() || std::find(only.begin(), only.end(), n) != only.end();
  };
  if (want("g-equivalence")) results.push_back(verify_g_equivalence(o));
  if (want("feasibility-vs-scan")) results.push_back(verify_feasibility(o));
  if (want("solver-vs-grid")) results.push_back(verify_solvers(o));
  if (want("amplitude-fuzz")) results.push_back(verify_amplitude(o));
  if (want("zf-diagonal")) results.push_back(verify_zero_forcing(o));
  if (want("nlos-neumann")) results.push_back(verify_nlos_neumann(o));
  if (want("sic-identity")) results.push_back(verify_sic_identity(o));
  bool ok = !results.empty();
  for (const auto& r : results) {
    std::printf("%-20s %s  max_deviation=%.6g  cases=%zu  %s\n", r.name.c_str(),
                r.passed ? "PASS" : "FAIL", r.max_deviation, r.cases, r.detail.c_str());
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

Problem parse_problem(const std::string& s) {
  if (s == "p1") return Problem::p1;
  if (s == "p2") return Problem::p2;
  if (s == "p3") return Problem::p3;
  if (s == "p4") return Problem::p4;
  throw ConfigError("problem: expected p1, p2, p3 or p4, got '" + s + "'");
}

// Instance file: {"problem", "gamma_rx", "weak_gain": [h1, h2], "r_th", optional
// "bandwidth", "rf_rate", "rf_bandwidth", "grid", "domain": [lo1, hi1, lo2, hi2]}.
int cmd_oracle(const std::string& instance_path, const std::string& out) {
  std::ifstream in(instance_path);
  if (!in) throw ConfigError("cannot open instance file '" + instance_path + "'");
  const json j = json::parse(in);
  std::vector<std::string> errors;
  for (const char* key : {"problem", "gamma_rx", "weak_gain", "r_th"})
    if (!j.contains(key)) errors.push_back(std::string(key) + ": required field is missing");
  static const std::set<std::string> known{"problem", "gamma_rx",     "weak_gain", "r_th",
                                           "bandwidth", "rf_rate", "rf_bandwidth", "grid",
                                           "domain"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) errors.push_back(k + ": unknown field");
  if (!errors.empty()) throw ConfigErrors(errors);

  const Problem p = parse_problem(j.at("problem").get<std::string>());
  Instance inst;
  inst.budget.gamma_rx = j.at("gamma_rx").get<double>();
  const auto h = j.at("weak_gain").get<std::vector<double>>();
  if (h.size() != 2) throw ConfigError("weak_gain: expected two entries");
  inst.budget.weak_gain = Vec2(h[0], h[1]);
  inst.budget.bandwidth = j.value("bandwidth", 20e6);
  inst.budget.rf_rate = j.value("rf_rate", 0.0);
  inst.budget.rf_bandwidth = j.value("rf_bandwidth", 16e6);
  inst.r_th = j.at("r_th").get<double>();
  const std::size_t n = j.value("grid", std::size_t{200});
  if (inst.budget.gamma_rx <= 0.0) throw ConfigError("gamma_rx: must be positive");
  if (inst.r_th < 0.0) throw ConfigError("r_th: must be non-negative");
  if (n < 2) throw ConfigError("grid: must be at least 2");
  GridDomain dom;
  if (j.contains("domain")) {
    const auto d = j.at("domain").get<std::vector<double>>();
    if (d.size() != 4) throw ConfigError("domain: expected [lo1, hi1, lo2, hi2]");
    dom = {d[0], d[1], d[2], d[3]};
  }

  std::ostringstream os;
  write_grid_csv(os, oracle_grid(p, inst, n, dom));
  if (out.empty()) {
    std::cout << os.str();
  } else {
    write_file_atomic(out, os.str());
  }
  return 0;
}

int cmd_channel(const std::string& config, std::size_t trial) {
  const ExperimentConfig cfg = load_config(config);
  const ExperimentSettings s = cfg.to_settings();
  const TrialContext ctx(apply_sweep(s.scenario, s.sweep.var, s.sweep.values.front()));
  const MultiUserChannel mu = draw_realization(s.master_seed, trial, ctx);
  json out;
  out["trial"] = trial;
  out["channel_hash"] = channel_hash(mu);
  out["cluster_0"] = to_json(mu.cluster_channel({0, 0, 0}));
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CoMP-assisted NOMA / C-NOMA simulator for two-cell indoor VLC"};
  app.require_subcommand(1);
  app.set_version_flag("--version", VLCNOMA_VERSION);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a Monte Carlo experiment from a config file");
  run_cmd->add_option("--config", run.config, "Experiment JSON")->required();
  run_cmd->add_option("--out-dir", run.out_dir, "Output directory (overrides config)");
  run_cmd->add_option("--threads", run.threads, "Worker threads (overrides config)");
  run_cmd->add_flag("--zero-fill-infeasible", run.zero_fill,
                    "Count infeasible trials as zero rate");
  run_cmd->add_option("--units", run.units, "Unit of the stderr column")
      ->check(CLI::IsMember({"nat", "bit"}));
  run_cmd->add_flag("--raw-records", run.raw, "Also write per-trial records.csv");

  VerifyOptions vo;
  std::vector<std::string> only;
  auto* verify_cmd = app.add_subcommand("verify", "Run the built-in oracle suites");
  verify_cmd->add_option("--seed", vo.seed);
  verify_cmd->add_option("--suite", only, "Restrict to the named suites");
  verify_cmd->add_option("--instances", vo.instances, "Solver-suite instances per problem");
  verify_cmd->add_option("--grid", vo.grid, "Grid points per axis for the solver oracle");
  verify_cmd->add_option("--feasibility-instances", vo.feasibility_instances);
  verify_cmd->add_option("--g-tuples", vo.g_tuples);
  verify_cmd->add_option("--amplitude-configs", vo.amplitude_configs);
  verify_cmd->add_option("--amplitude-samples", vo.amplitude_samples);
  verify_cmd->add_option("--amplitude-tolerance", vo.amplitude_tolerance,
                         "Relative slack on the peak-amplitude bound");
  verify_cmd->add_option("--nlos-placements", vo.nlos_placements);
  verify_cmd->add_option("--relative-gap", vo.relative_gap);
  verify_cmd->add_option("--g-cross-coefficient", vo.g_cross_coefficient,
                         "Test hook: cross-term coefficient used by the g metric");

  std::string instance, oracle_out;
  auto* oracle_cmd = app.add_subcommand("oracle", "Objective/feasibility heatmap over the alpha grid");
  oracle_cmd->add_option("instance", instance, "Instance JSON")->required();
  oracle_cmd->add_option("--out", oracle_out, "CSV path (stdout if omitted)");

  std::string channel_config;
  std::size_t trial = 0;
  auto* channel_cmd = app.add_subcommand("channel", "Print one channel realization as JSON");
  channel_cmd->add_option("--config", channel_config)->required();
  channel_cmd->add_option("--trial", trial);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run);
    if (*verify_cmd) return cmd_verify(vo, only);
    if (*oracle_cmd) return cmd_oracle(instance, oracle_out);
    if (*channel_cmd) return cmd_channel(channel_config, trial);
  } catch (const ConfigErrors& e) {
    std::cerr << "invalid configuration:\n";
    for (const auto& m : e.errors()) std::cerr << "  " << m << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
