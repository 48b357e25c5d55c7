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

// Timing comparison of the OpenMP kernels against their serial runs and of
// the table-driven untrusted search against the plain reference. Also checks
// that all variants return bit-identical results, which is the contract the
// tests rely on.

#include <chrono>
#include <cstdio>
#include <vector>

#include "locpriv/crlb.hpp"
#include "locpriv/experiments.hpp"
#include "locpriv/units.hpp"

using namespace locpriv;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <typename Fn>
double time_call(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return seconds(t0, std::chrono::steady_clock::now());
}

bool same_result(const EstimationResult& a, const EstimationResult& b) {
  return a.h_hat == b.h_hat && a.d_hat == b.d_hat && a.per_block_h == b.per_block_h &&
         a.per_block_levels == b.per_block_levels;
}

void bench_untrusted_search() {
  ExperimentConfig cfg;
  cfg.seed = 20260811;
  const PowerDistribution policy = make_policy(PolicyKind::discretized_exponential, cfg);
  const double h_true = gain_from_distance(cfg.true_distance_m, cfg.channel);
  const double sigma2 = sigma2_for_average_snr_db(16.0, h_true, cfg.mu_mw);
  const ChannelParams params = cfg.channel.with_sigma2(sigma2);

  const std::size_t m = 64;
  Rng rng(cfg.seed);
  std::vector<Observation> obs(m);
  for (auto& o : obs) {
    o.transmit_mw = sample_power(policy, rng).power_mw;
    o.received_mw = sample_received_power(h_true, o.transmit_mw, params, rng);
  }
  const ObservationSet set = ObservationSet::untrusted(obs);

  EstimatorConfig ecfg;
  ecfg.h_min = h_true / cfg.bracket_factor;
  ecfg.h_max = h_true * cfg.bracket_factor;

  EstimationResult ref, tab_serial, tab_parallel;
  const double t_ref =
      time_call([&] { ref = estimate_untrusted_reference(set, cfg.levels, params, ecfg); });
  const double t_tab = time_call(
      [&] { tab_serial = estimate_untrusted(set, cfg.levels, params, ecfg, ExecPolicy::serial()); });
  const double t_par =
      time_call([&] { tab_parallel = estimate_untrusted(set, cfg.levels, params, ecfg); });

  std::printf("untrusted block search, m=%zu (%zu sequences)\n", m, tab_serial.sequences_evaluated);
  std::printf("  reference (no tables, serial) : %8.3f ms\n", 1e3 * t_ref);
  std::printf("  tables, serial                : %8.3f ms  (%.2fx)\n", 1e3 * t_tab, t_ref / t_tab);
  std::printf("  tables, OpenMP                : %8.3f ms  (%.2fx)\n", 1e3 * t_par, t_ref / t_par);
  std::printf("  results identical             : %s\n",
              same_result(ref, tab_serial) && same_result(ref, tab_parallel) ? "yes" : "NO");
}

void bench_cell() {
  ExperimentConfig cfg;
  cfg.seed = 7;
  cfg.trials = 64;
  const PowerDistribution policy = make_policy(PolicyKind::discretized_exponential, cfg);

  CellResult serial, parallel;
  const double t_serial =
      time_call([&] { serial = run_cell(cfg, policy, 0, 16, ExecPolicy::serial()); });
  const double t_parallel = time_call([&] { parallel = run_cell(cfg, policy, 0, 16, {}); });

  std::printf("experiment cell, %zu paired trials at m=16, snr 16 dB\n", cfg.trials);
  std::printf("  serial                        : %8.3f ms\n", 1e3 * t_serial);
  std::printf("  OpenMP over trials            : %8.3f ms  (%.2fx)\n", 1e3 * t_parallel,
              t_serial / t_parallel);
  std::printf("  results identical             : %s\n",
              serial.trusted_d == parallel.trusted_d && serial.untrusted_d == parallel.untrusted_d
                  ? "yes"
                  : "NO");
}

void bench_fisher() {
  FisherConfig cfg;
  cfg.gain = 1.0;
  cfg.sigma2 = 0.006;
  cfg.mc_samples = 200000;
  cfg.seed = 99;
  ExperimentConfig defaults;
  const PowerDistribution policy = make_policy(PolicyKind::discretized_exponential, defaults);
  Rng rng(3);
  for (int k = 0; k < 40; ++k) cfg.powers_mw.push_back(sample_power(policy, rng).power_mw);

  FisherMatrix serial, parallel;
  const double t_serial = time_call(
      [&] { serial = fisher_matrix(cfg, NodeView::untrusted, ExecPolicy::serial()); });
  const double t_parallel =
      time_call([&] { parallel = fisher_matrix(cfg, NodeView::untrusted, {}); });

  std::printf("fisher matrix, m=40, %zu draws per frame\n", cfg.mc_samples);
  std::printf("  serial                        : %8.3f ms\n", 1e3 * t_serial);
  std::printf("  OpenMP over frames            : %8.3f ms  (%.2fx)\n", 1e3 * t_parallel,
              t_serial / t_parallel);
  std::printf("  results identical             : %s\n",
              serial.h_h == parallel.h_h && serial.h_x == parallel.h_x && serial.x_x == parallel.x_x
                  ? "yes"
                  : "NO");
}

}  // namespace

int main() {
  bench_untrusted_search();
  std::printf("\n");
  bench_cell();
  std::printf("\n");
  bench_fisher();
  return 0;
}
