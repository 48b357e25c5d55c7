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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "locpriv/channel.hpp"
#include "locpriv/crlb.hpp"
#include "locpriv/estimation.hpp"
#include "locpriv/parallel.hpp"
#include "locpriv/power_policy.hpp"
#include "locpriv/rng.hpp"

namespace locpriv {

/// Default anchor power levels: {-6, -3.5, -2, 0} dBm in linear mW. Four
/// levels inside a mote-class output range, with pairwise ratios all distinct
/// so that no two different non-constant level sequences can produce the same
/// received-power products, and with the -3 dBm default mean strictly inside
/// (below the unweighted level mean, which tilts the max-entropy pmf toward
/// the low levels).
PowerLevelSet default_level_set();

/// -3 dBm in mW.
double default_mean_power_mw();

std::vector<std::size_t> default_m_values();  // 4, 8, ..., 40

/// One full Monte Carlo study: which policies to compare, the geometry, the
/// SNR and frame-count grid, and the estimator settings. Noise power is
/// derived per SNR cell and per policy from the policy's realized mean
/// transmit power, sigma2 = h * mean_power(policy) / (2 * 10^(snr/10)) with
/// h the gain at the true distance, so "average SNR" means the same thing for
/// every curve; the channel's own sigma2 field is ignored here.
struct ExperimentConfig {
  PowerLevelSet levels = default_level_set();
  double mu_mw = default_mean_power_mw();
  std::vector<PolicyKind> policies = {PolicyKind::uniform, PolicyKind::discretized_normal,
                                      PolicyKind::discretized_exponential};
  double true_distance_m = 1.0;
  std::vector<double> snr_db = {16.0, 9.0, 6.5};
  std::vector<std::size_t> m_values = default_m_values();
  std::size_t trials = 1000;
  double normal_spread_mw = 0.0;  // 0: use half the levels span (max - min)/2
  ChannelParams channel;          // path-loss fields; sigma2 set per cell

  std::size_t block_size = 4;
  double bracket_factor = 1e3;  // gain searched in [h/factor, h*factor]
  double h_tolerance = 1e-8;
  RemainderPolicy remainder = RemainderPolicy::drop;
  std::size_t grid_points = 64;
  double tie_tolerance = 1e-9;

  std::uint64_t seed = 0;

  double resolved_normal_spread() const {
    return normal_spread_mw > 0.0 ? normal_spread_mw
                                  : 0.5 * (levels.max_mw() - levels.min_mw());
  }
};

/// Instantiates one of the three compared policies on the config's level set.
PowerDistribution make_policy(PolicyKind kind, const ExperimentConfig& cfg);

struct TrialOutcome {
  double trusted_d = 0.0;
  double untrusted_d = 0.0;
  std::size_t sequences_evaluated = 0;  // candidate sequences scored by the untrusted search
  bool excluded = false;                // a gain search ran into the bracket edge
};

/// One paired trial: draws m transmit powers from the policy, generates one
/// set of received powers at the true distance, and runs both estimators on
/// those same observations (powers revealed to the trusted side only).
TrialOutcome run_trial(const PowerDistribution& policy, double snr_db, std::size_t m,
                       const ExperimentConfig& cfg, Rng& rng);

/// All trials of one grid cell. Trials run in parallel; every trial's
/// generator is seeded from (seed, policy id, snr index, m, trial index), so
/// the outcome is identical for any worker count and unchanged when other
/// grid cells are added or removed.
struct CellResult {
  std::vector<double> trusted_d;    // included trials, in trial order
  std::vector<double> untrusted_d;
  std::size_t trials = 0;           // configured count
  std::size_t excluded = 0;
};

CellResult run_cell(const ExperimentConfig& cfg, const PowerDistribution& policy,
                    std::size_t snr_index, std::size_t m, const ExecPolicy& exec = {});

struct ReportRow {
  std::string policy;
  std::string node_type;  // "trusted" | "untrusted"
  double snr_db = 0.0;
  std::size_t m = 0;
  double normalized_std = 0.0;
  std::size_t trials = 0;
  std::size_t excluded = 0;
  std::uint64_t seed = 0;  // master seed (provenance)
};

struct ExperimentReport {
  std::vector<ReportRow> rows;  // sorted by (policy, node_type, snr_db, m)
};

/// Full grid sweep. Throws if any cell excludes >= 1% of its trials.
ExperimentReport run_monte_carlo(const ExperimentConfig& cfg, const ExecPolicy& exec = {});

/// CSV with header policy,node_type,snr_db,m,normalized_std,trials,excluded,seed.
std::string to_csv(const ExperimentReport& report);

struct RatioRow {
  std::string policy;
  double snr_db = 0.0;
  double min_ratio = 0.0;
  double avg_ratio = 0.0;
  double max_ratio = 0.0;
};

/// Per-SNR spread over m of untrusted/trusted normalized error std for one
/// policy, SNR descending. Throws std::invalid_argument when the report lacks
/// one of the node types for that policy.
std::vector<RatioRow> accuracy_ratio(const ExperimentReport& report,
                                     PolicyKind policy = PolicyKind::discretized_exponential);

/// Ratio rows for every policy present in the report.
std::vector<RatioRow> accuracy_ratio_all(const ExperimentReport& report);

/// Bound-curve study settings (the analytical companion to the Monte Carlo
/// sweep above).
struct CrlbRunConfig {
  std::vector<PolicyKind> policies = {PolicyKind::discretized_exponential,
                                      PolicyKind::discretized_normal};
  std::vector<std::size_t> m_values = default_m_values();
  std::size_t trials = 30;       // random power sequences averaged per m
  std::size_t mc_samples = 20000;
  double snr_db = 16.0;
};

struct CrlbReportRow {
  std::string view;
  std::string policy;
  std::size_t m = 0;
  double crlb_mean = 0.0;
  double crlb_stderr = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

std::vector<CrlbReportRow> crlb_experiment(const ExperimentConfig& cfg, const CrlbRunConfig& crlb,
                                           const ExecPolicy& exec = {});

/// CSV with header view,policy,m,crlb_mean,crlb_stderr,trials,seed.
std::string to_csv(std::span<const CrlbReportRow> rows);

}  // namespace locpriv
