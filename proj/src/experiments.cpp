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

#include "locpriv/experiments.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

#include "locpriv/csv.hpp"
#include "locpriv/errors.hpp"
#include "locpriv/units.hpp"

namespace locpriv {

PowerLevelSet default_level_set() {
  return PowerLevelSet({dbm_to_mw(-6.0), dbm_to_mw(-3.5), dbm_to_mw(-2.0), dbm_to_mw(0.0)});
}

double default_mean_power_mw() { return dbm_to_mw(-3.0); }

std::vector<std::size_t> default_m_values() {
  std::vector<std::size_t> m;
  for (std::size_t v = 4; v <= 40; v += 4) m.push_back(v);
  return m;
}

PowerDistribution make_policy(PolicyKind kind, const ExperimentConfig& cfg) {
  switch (kind) {
    case PolicyKind::uniform:
      return make_uniform(cfg.levels);
    case PolicyKind::discretized_normal:
      return make_discretized_normal(cfg.levels, cfg.mu_mw, cfg.resolved_normal_spread());
    case PolicyKind::discretized_exponential:
      return solve_max_entropy(cfg.levels, cfg.mu_mw);
  }
  throw std::logic_error("unknown policy kind");
}

TrialOutcome run_trial(const PowerDistribution& policy, double snr_db, std::size_t m,
                       const ExperimentConfig& cfg, Rng& rng) {
  const double h_true = gain_from_distance(cfg.true_distance_m, cfg.channel);
  // Average SNR is mean received signal power over total noise power, so the
  // noise level follows the policy's own mean transmit power. For the
  // mean-constrained policies that equals the configured mu; for the uniform
  // policy it is the unweighted level mean.
  const double sigma2 = sigma2_for_average_snr_db(snr_db, h_true, mean_power(policy));
  const ChannelParams params = cfg.channel.with_sigma2(sigma2);

  std::vector<Observation> obs(m);
  for (std::size_t k = 0; k < m; ++k) {
    obs[k].transmit_mw = sample_power(policy, rng).power_mw;
    obs[k].received_mw = sample_received_power(h_true, obs[k].transmit_mw, params, rng);
  }

  EstimatorConfig ecfg;
  ecfg.block_size = cfg.block_size;
  ecfg.h_min = h_true / cfg.bracket_factor;
  ecfg.h_max = h_true * cfg.bracket_factor;
  ecfg.h_tolerance = cfg.h_tolerance;
  ecfg.remainder = cfg.remainder;
  ecfg.grid_points = cfg.grid_points;
  ecfg.tie_tolerance = cfg.tie_tolerance;

  TrialOutcome out;
  try {
    // block searches stay serial here; trials are the parallel axis
    out.trusted_d = estimate_trusted(ObservationSet::trusted(obs), params, ecfg).d_hat;
    const EstimationResult untrusted = estimate_untrusted(
        ObservationSet::untrusted(obs), cfg.levels, params, ecfg, ExecPolicy::serial());
    out.untrusted_d = untrusted.d_hat;
    out.sequences_evaluated = untrusted.sequences_evaluated;
  } catch (const BracketMiss&) {
    out.excluded = true;
  }
  return out;
}

CellResult run_cell(const ExperimentConfig& cfg, const PowerDistribution& policy,
                    std::size_t snr_index, std::size_t m, const ExecPolicy& exec) {
  if (snr_index >= cfg.snr_db.size()) throw std::invalid_argument("snr index out of range");
  const double snr_db = cfg.snr_db[snr_index];
  const auto policy_id = static_cast<std::uint64_t>(policy.kind);

  std::vector<TrialOutcome> outcomes(cfg.trials);
  parallel_for(cfg.trials, exec, [&](std::size_t t) {
    Rng rng(derive_seed(cfg.seed, {policy_id, snr_index, m, t}));
    outcomes[t] = run_trial(policy, snr_db, m, cfg, rng);
  });

  CellResult cell;
  cell.trials = cfg.trials;
  for (const auto& o : outcomes) {
    if (o.excluded) {
      ++cell.excluded;
      continue;
    }
    cell.trusted_d.push_back(o.trusted_d);
    cell.untrusted_d.push_back(o.untrusted_d);
  }
  return cell;
}

ExperimentReport run_monte_carlo(const ExperimentConfig& cfg, const ExecPolicy& exec) {
  if (cfg.trials < 2) throw std::invalid_argument("need at least two trials per cell");

  ExperimentReport report;
  for (PolicyKind kind : cfg.policies) {
    const PowerDistribution policy = make_policy(kind, cfg);
    for (std::size_t si = 0; si < cfg.snr_db.size(); ++si) {
      for (std::size_t m : cfg.m_values) {
        const CellResult cell = run_cell(cfg, policy, si, m, exec);
        if (cell.excluded * 100 >= cell.trials) {
          throw std::runtime_error(
              "excluded " + std::to_string(cell.excluded) + " of " + std::to_string(cell.trials) +
              " trials (policy " + to_string(kind) + ", snr " + format_double(cfg.snr_db[si]) +
              " dB, m " + std::to_string(m) + "); exclusion rate must stay below 1%");
        }
        for (const char* node : {"trusted", "untrusted"}) {
          ReportRow row;
          row.policy = to_string(kind);
          row.node_type = node;
          row.snr_db = cfg.snr_db[si];
          row.m = m;
          const auto& d = node == std::string("trusted") ? cell.trusted_d : cell.untrusted_d;
          row.normalized_std = normalized_error_std(d, cfg.true_distance_m);
          row.trials = cell.trials;
          row.excluded = cell.excluded;
          row.seed = cfg.seed;
          report.rows.push_back(std::move(row));
        }
      }
    }
  }

  std::sort(report.rows.begin(), report.rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.policy, a.node_type, a.snr_db, a.m) <
           std::tie(b.policy, b.node_type, b.snr_db, b.m);
  });
  return report;
}

std::string to_csv(const ExperimentReport& report) {
  std::string out = "policy,node_type,snr_db,m,normalized_std,trials,excluded,seed\n";
  for (const auto& r : report.rows) {
    out += r.policy;
    out += ',';
    out += r.node_type;
    out += ',';
    out += format_double(r.snr_db);
    out += ',';
    out += format_u64(r.m);
    out += ',';
    out += format_double(r.normalized_std);
    out += ',';
    out += format_u64(r.trials);
    out += ',';
    out += format_u64(r.excluded);
    out += ',';
    out += format_u64(r.seed);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<RatioRow> ratio_rows_for_policy(const ExperimentReport& report,
                                            const std::string& policy_name) {
  // (snr, m) -> normalized std per node type
  std::map<double, std::map<std::size_t, std::pair<double, double>>, std::greater<double>> cells;
  std::map<double, std::map<std::size_t, std::pair<bool, bool>>, std::greater<double>> seen;
  for (const auto& r : report.rows) {
    if (r.policy != policy_name) continue;
    auto& value = cells[r.snr_db][r.m];
    auto& flags = seen[r.snr_db][r.m];
    if (r.node_type == "trusted") {
      value.first = r.normalized_std;
      flags.first = true;
    } else if (r.node_type == "untrusted") {
      value.second = r.normalized_std;
      flags.second = true;
    }
  }
  if (cells.empty()) {
    throw std::invalid_argument("no rows for policy " + policy_name);
  }

  std::vector<RatioRow> rows;
  for (const auto& [snr, per_m] : cells) {
    RatioRow row;
    row.policy = policy_name;
    row.snr_db = snr;
    row.min_ratio = std::numeric_limits<double>::infinity();
    row.max_ratio = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& [m, value] : per_m) {
      const auto& flags = seen[snr][m];
      if (!flags.first || !flags.second) {
        throw std::invalid_argument("missing node type for policy " + policy_name + " at snr " +
                                    format_double(snr) + " dB, m " + std::to_string(m));
      }
      if (!(value.first > 0.0)) {
        throw std::invalid_argument("trusted normalized std is zero; ratio undefined");
      }
      const double ratio = value.second / value.first;
      row.min_ratio = std::min(row.min_ratio, ratio);
      row.max_ratio = std::max(row.max_ratio, ratio);
      sum += ratio;
      ++count;
    }
    row.avg_ratio = sum / static_cast<double>(count);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<RatioRow> accuracy_ratio(const ExperimentReport& report, PolicyKind policy) {
  return ratio_rows_for_policy(report, to_string(policy));
}

std::vector<RatioRow> accuracy_ratio_all(const ExperimentReport& report) {
  std::vector<std::string> names;
  for (const auto& r : report.rows) {
    if (std::find(names.begin(), names.end(), r.policy) == names.end()) names.push_back(r.policy);
  }
  std::sort(names.begin(), names.end());
  std::vector<RatioRow> out;
  for (const auto& name : names) {
    const auto rows = ratio_rows_for_policy(report, name);
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

std::vector<CrlbReportRow> crlb_experiment(const ExperimentConfig& cfg, const CrlbRunConfig& crlb,
                                           const ExecPolicy& exec) {
  const double h_true = gain_from_distance(cfg.true_distance_m, cfg.channel);

  // one shared sub-seed across policies: the curves are compared against each
  // other, and common random numbers keep that comparison out of the noise
  const std::uint64_t seed = derive_seed(cfg.seed, {0xC21Bu});
  std::vector<CrlbReportRow> rows;
  for (PolicyKind kind : crlb.policies) {
    const PowerDistribution policy = make_policy(kind, cfg);
    const double sigma2 = sigma2_for_average_snr_db(crlb.snr_db, h_true, mean_power(policy));
    const auto curve = crlb_curve(policy, h_true, sigma2, crlb.m_values, crlb.trials,
                                  crlb.mc_samples, seed, exec);
    for (const auto& c : curve) {
      CrlbReportRow row;
      row.view = to_string(c.view);
      row.policy = to_string(kind);
      row.m = c.m;
      row.crlb_mean = c.crlb;
      row.crlb_stderr = c.crlb_stderr;
      row.trials = c.trials;
      row.seed = cfg.seed;
      rows.push_back(std::move(row));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const CrlbReportRow& a, const CrlbReportRow& b) {
    return std::tie(a.view, a.policy, a.m) < std::tie(b.view, b.policy, b.m);
  });
  return rows;
}

std::string to_csv(std::span<const CrlbReportRow> rows) {
  std::string out = "view,policy,m,crlb_mean,crlb_stderr,trials,seed\n";
  for (const auto& r : rows) {
    out += r.view;
    out += ',';
    out += r.policy;
    out += ',';
    out += format_u64(r.m);
    out += ',';
    out += format_double(r.crlb_mean);
    out += ',';
    out += format_double(r.crlb_stderr);
    out += ',';
    out += format_u64(r.trials);
    out += ',';
    out += format_u64(r.seed);
    out += '\n';
  }
  return out;
}

}  // namespace locpriv
