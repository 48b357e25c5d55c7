// Copyright 2026 The locpriv Authors
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

#include "locpriv/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "locpriv/config.hpp"
#include "locpriv/csv.hpp"
#include "locpriv/errors.hpp"
#include "locpriv/units.hpp"
#include "locpriv/version.hpp"

namespace locpriv::cli {

namespace {

namespace fs = std::filesystem;

/// Relative output paths can be redirected wholesale with LOCPRIV_OUT_DIR.
fs::path resolve_output(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("LOCPRIV_OUT_DIR"); dir != nullptr && *dir != '\0') {
      p = fs::path(dir) / p;
    }
  }
  return p;
}

/// Writes every output atomically-ish: all content is rendered before the
/// first write, and on any write failure the already-written files from this
/// run are removed again.
void write_outputs(const std::vector<std::pair<fs::path, std::string>>& files) {
  std::vector<fs::path> written;
  try {
    for (const auto& [path, content] : files) {
      if (path.has_parent_path()) fs::create_directories(path.parent_path());
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open output file: " + path.string());
      out << content;
      if (!out) throw std::runtime_error("write failed: " + path.string());
      written.push_back(path);
    }
  } catch (...) {
    for (const auto& p : written) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    throw;
  }
}

nlohmann::json make_manifest(const std::string& subcommand, const RunConfig& config,
                             const std::vector<std::string>& outputs) {
  nlohmann::json j;
  j["artifact"] = kArtifactName;
  j["version"] = kArtifactVersion;
  j["subcommand"] = subcommand;
  j["seed"] = config.experiment.seed;
  j["config"] = config_to_json(config);
  j["outputs"] = outputs;
  return j;
}

struct CommonRunOptions {
  std::string config_path;
  std::string manifest_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  int workers = 0;
  std::string output;
};

void add_common_options(CLI::App* cmd, CommonRunOptions& opts, const std::string& default_output) {
  opts.output = default_output;
  auto* cfg = cmd->add_option("--config", opts.config_path, "run configuration file");
  auto* man = cmd->add_option("--manifest", opts.manifest_path,
                              "re-run from a previous run's manifest (config + seed)");
  cfg->excludes(man);
  cmd->add_option("--seed", opts.seed, "master seed (overrides the config seed)");
  cmd->add_option("--trials", opts.trials, "override trials per grid cell");
  cmd->add_option("--workers", opts.workers, "worker thread cap; 0 = all cores (results are identical for any count)");
  cmd->add_option("--output,-o", opts.output, "output CSV path")->capture_default_str();
}

RunConfig load_run_config(const CommonRunOptions& opts, const std::string& subcommand) {
  RunConfig config;
  if (!opts.manifest_path.empty()) {
    std::ifstream in(opts.manifest_path);
    if (!in) throw ConfigError("cannot open manifest: " + opts.manifest_path);
    nlohmann::json j;
    in >> j;
    if (j.value("subcommand", subcommand) != subcommand) {
      throw ConfigError("manifest was produced by subcommand '" +
                        j.value("subcommand", std::string{}) + "', not '" + subcommand + "'");
    }
    config = config_from_json(j.at("config"));
    config.experiment.seed = j.at("seed").get<std::uint64_t>();
    config.has_seed = true;
  } else if (!opts.config_path.empty()) {
    config = parse_config_file(opts.config_path);
  }
  if (opts.seed) {
    config.experiment.seed = *opts.seed;
    config.has_seed = true;
  }
  if (!config.has_seed) {
    throw ConfigError("no seed given: set seed in the config file or pass --seed");
  }
  if (opts.trials) config.experiment.trials = *opts.trials;
  return config;
}

ExecPolicy exec_policy_for(int workers) {
  ExecPolicy exec;
  exec.threads = workers;
  if (workers == 1) exec.parallel = false;
  return exec;
}

struct DistOptions {
  std::vector<double> levels_dbm, levels_mw;
  std::optional<double> mu_dbm, mu_mw;
  std::string output;
};

int run_optimize_dist(const DistOptions& opts, std::ostream& out) {
  if (opts.levels_dbm.empty() == opts.levels_mw.empty()) {
    throw ConfigError("give the levels exactly once, as --levels-dbm or --levels-mw");
  }
  if (opts.mu_dbm.has_value() == opts.mu_mw.has_value()) {
    throw ConfigError("give the mean exactly once, as --mu-dbm or --mu-mw");
  }
  std::vector<double> levels_mw = opts.levels_mw;
  if (!opts.levels_dbm.empty()) {
    levels_mw.clear();
    for (double v : opts.levels_dbm) levels_mw.push_back(dbm_to_mw(v));
  }
  const double mu_mw = opts.mu_mw ? *opts.mu_mw : dbm_to_mw(*opts.mu_dbm);

  PowerLevelSet levels(levels_mw);
  const PowerDistribution dist = solve_max_entropy(levels, mu_mw);

  out << "max-entropy transmit power distribution (p_i = k * exp(-alpha * x_i))\n";
  out << "  level_dbm    level_mw     probability\n";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double mw = levels.levels_mw()[i];
    out << "  " << std::setw(9) << std::setprecision(4) << std::fixed << mw_to_dbm(mw)
        << std::setw(13) << std::setprecision(6) << mw << std::setw(16) << std::setprecision(10)
        << dist.probs[i] << "\n";
  }
  out.unsetf(std::ios::fixed);
  out << std::setprecision(12);
  out << "  alpha: " << dist.rate_alpha << "   k: " << dist.coeff_k << "\n";
  out << "  entropy: " << entropy(dist) << " nats (uniform bound "
      << std::log(static_cast<double>(levels.size())) << ")\n";
  const double mean = mean_power(dist);
  out << "  mean: " << mean << " mW = " << mw_to_dbm(mean) << " dBm (target " << mu_mw
      << " mW)\n";

  if (!opts.output.empty()) {
    std::string csv = "level_dbm,level_mw,probability\n";
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const double mw = levels.levels_mw()[i];
      csv += format_double(mw_to_dbm(mw)) + "," + format_double(mw) + "," +
             format_double(dist.probs[i]) + "\n";
    }
    const fs::path csv_path = resolve_output(opts.output);
    nlohmann::json manifest;
    manifest["artifact"] = kArtifactName;
    manifest["version"] = kArtifactVersion;
    manifest["subcommand"] = "optimize-dist";
    manifest["levels_mw"] = levels.levels_mw();
    manifest["mu_mw"] = mu_mw;
    manifest["outputs"] = {csv_path.string()};
    const fs::path manifest_path = csv_path.string() + ".manifest.json";
    write_outputs({{csv_path, csv}, {manifest_path, manifest.dump(2) + "\n"}});
    out << "wrote " << csv_path.string() << " and " << manifest_path.string() << "\n";
  }
  return 0;
}

int run_simulate(const CommonRunOptions& opts, std::ostream& out) {
  const RunConfig config = load_run_config(opts, "simulate");
  const ExperimentReport report = run_monte_carlo(config.experiment, exec_policy_for(opts.workers));
  const std::string csv = to_csv(report);

  const fs::path csv_path = resolve_output(opts.output);
  const fs::path manifest_path = csv_path.string() + ".manifest.json";
  const nlohmann::json manifest = make_manifest("simulate", config, {csv_path.string()});
  write_outputs({{csv_path, csv}, {manifest_path, manifest.dump(2) + "\n"}});
  out << "wrote " << csv_path.string() << " (" << report.rows.size() << " rows) and "
      << manifest_path.string() << "\n";
  return 0;
}

int run_crlb(const CommonRunOptions& opts, std::ostream& out) {
  RunConfig config = load_run_config(opts, "crlb");
  if (opts.trials) config.crlb.trials = *opts.trials;  // --trials targets the bound curve here
  const auto rows = crlb_experiment(config.experiment, config.crlb, exec_policy_for(opts.workers));
  const std::string csv = to_csv(std::span<const CrlbReportRow>(rows));

  const fs::path csv_path = resolve_output(opts.output);
  const fs::path manifest_path = csv_path.string() + ".manifest.json";
  const nlohmann::json manifest = make_manifest("crlb", config, {csv_path.string()});
  write_outputs({{csv_path, csv}, {manifest_path, manifest.dump(2) + "\n"}});
  out << "wrote " << csv_path.string() << " (" << rows.size() << " rows) and "
      << manifest_path.string() << "\n";
  return 0;
}

ExperimentReport read_report_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open report CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty report CSV: " + path);
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
  if (line != "policy,node_type,snr_db,m,normalized_std,trials,excluded,seed") {
    throw ConfigError("unexpected CSV header in " + path);
  }
  ExperimentReport report;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 8) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 8 fields");
    }
    ReportRow r;
    r.policy = fields[0];
    r.node_type = fields[1];
    r.snr_db = std::stod(fields[2]);
    r.m = std::stoul(fields[3]);
    r.normalized_std = std::stod(fields[4]);
    r.trials = std::stoul(fields[5]);
    r.excluded = std::stoul(fields[6]);
    r.seed = std::stoull(fields[7]);
    report.rows.push_back(std::move(r));
  }
  return report;
}

int run_ratio_table(const std::string& input, const std::string& output, std::ostream& out) {
  const ExperimentReport report = read_report_csv(input);
  const std::vector<RatioRow> rows = accuracy_ratio_all(report);

  out << "untrusted/trusted normalized error std, spread over m\n";
  out << "  policy                      snr_db     min     avg     max\n";
  for (const auto& r : rows) {
    out << "  " << std::left << std::setw(26) << r.policy << std::right << std::setw(8)
        << std::setprecision(4) << r.snr_db << std::fixed << std::setprecision(3) << std::setw(8)
        << r.min_ratio << std::setw(8) << r.avg_ratio << std::setw(8) << r.max_ratio << "\n";
    out.unsetf(std::ios::fixed);
  }

  if (!output.empty()) {
    std::string csv = "policy,snr_db,min_ratio,avg_ratio,max_ratio\n";
    for (const auto& r : rows) {
      csv += r.policy + "," + format_double(r.snr_db) + "," + format_double(r.min_ratio) + "," +
             format_double(r.avg_ratio) + "," + format_double(r.max_ratio) + "\n";
    }
    const fs::path csv_path = resolve_output(output);
    nlohmann::json manifest;
    manifest["artifact"] = kArtifactName;
    manifest["version"] = kArtifactVersion;
    manifest["subcommand"] = "ratio-table";
    manifest["input"] = input;
    manifest["outputs"] = {csv_path.string()};
    const fs::path manifest_path = csv_path.string() + ".manifest.json";
    write_outputs({{csv_path, csv}, {manifest_path, manifest.dump(2) + "\n"}});
    out << "wrote " << csv_path.string() << " and " << manifest_path.string() << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{std::string(kArtifactName) +
               " - transmit-power randomization and RSS ranging privacy simulator"};
  app.require_subcommand(1);

  DistOptions dist;
  auto* cmd_dist = app.add_subcommand(
      "optimize-dist", "solve the max-entropy power distribution for a mean power target");
  cmd_dist->add_option("--levels-dbm", dist.levels_dbm, "power levels in dBm")->delimiter(',');
  cmd_dist->add_option("--levels-mw", dist.levels_mw, "power levels in mW")->delimiter(',');
  cmd_dist->add_option("--mu-dbm", dist.mu_dbm, "mean power target in dBm");
  cmd_dist->add_option("--mu-mw", dist.mu_mw, "mean power target in mW");
  cmd_dist->add_option("--output,-o", dist.output, "also write the pmf as CSV");

  CommonRunOptions sim;
  auto* cmd_sim = app.add_subcommand(
      "simulate", "Monte Carlo sweep of trusted/untrusted ranging accuracy over the config grid");
  add_common_options(cmd_sim, sim, "simulate.csv");

  CommonRunOptions crlb;
  auto* cmd_crlb = app.add_subcommand(
      "crlb", "variance lower-bound curves for trusted and untrusted gain estimation");
  add_common_options(cmd_crlb, crlb, "crlb.csv");

  std::string ratio_input, ratio_output;
  auto* cmd_ratio =
      app.add_subcommand("ratio-table", "per-SNR untrusted/trusted accuracy ratios from a simulate CSV");
  cmd_ratio->add_option("--input,-i", ratio_input, "simulate CSV")->required();
  cmd_ratio->add_option("--output,-o", ratio_output, "also write the table as CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_dist->parsed()) return run_optimize_dist(dist, out);
    if (cmd_sim->parsed()) return run_simulate(sim, out);
    if (cmd_crlb->parsed()) return run_crlb(crlb, out);
    return run_ratio_table(ratio_input, ratio_output, out);
  } catch (const InfeasibleMean& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace locpriv::cli
