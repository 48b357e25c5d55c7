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

#include "locpriv/estimation.hpp"

#include <cmath>
#include <stdexcept>

#include "locpriv/errors.hpp"

namespace locpriv {

namespace {

constexpr double kInvPhi = 0.61803398874989484820;  // (sqrt(5) - 1) / 2

double grid_point(double log_lo, double step, std::size_t i) {
  return std::exp(log_lo + step * static_cast<double>(i));
}

void validate_config(const EstimatorConfig& cfg) {
  if (cfg.block_size < 1) throw std::invalid_argument("block_size must be >= 1");
  if (!(cfg.h_min > 0.0 && cfg.h_max > cfg.h_min)) {
    throw std::invalid_argument("gain bracket must satisfy 0 < h_min < h_max");
  }
  if (!(cfg.h_tolerance > 0.0)) throw std::invalid_argument("h_tolerance must be > 0");
  if (cfg.grid_points < 4) throw std::invalid_argument("grid_points must be >= 4");
}

struct LineMax {
  double arg = 0.0;
  double value = -std::numeric_limits<double>::infinity();
  bool at_edge = false;
};

/// Golden-section refinement of a log-spaced grid scan whose values are
/// already known. `f` is evaluated only inside the cells adjacent to the grid
/// argmax. The grid argmax on an endpoint is reported via at_edge; the edge
/// cell is still refined so the caller has a usable likelihood value.
template <typename F>
LineMax refine_from_grid(F&& f, double log_lo, double step, std::size_t grid,
                         std::span<const double> grid_values, double rel_tol) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid; ++i) {
    if (grid_values[i] > grid_values[best]) best = i;
  }
  LineMax out;
  out.at_edge = (best == 0 || best == grid - 1);

  const std::size_t ia = best == 0 ? 0 : best - 1;
  const std::size_t ib = best == grid - 1 ? best : best + 1;
  double a = log_lo + step * static_cast<double>(ia);
  double b = log_lo + step * static_cast<double>(ib);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(std::exp(c));
  double fd = f(std::exp(d));
  while (b - a > rel_tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(std::exp(d));
    }
  }
  out.arg = std::exp(0.5 * (a + b));
  out.value = f(out.arg);
  return out;
}

template <typename F>
LineMax maximize_on_log_grid(F&& f, const EstimatorConfig& cfg) {
  const double log_lo = std::log(cfg.h_min);
  const double log_hi = std::log(cfg.h_max);
  const double step = (log_hi - log_lo) / static_cast<double>(cfg.grid_points - 1);
  std::vector<double> values(cfg.grid_points);
  for (std::size_t i = 0; i < cfg.grid_points; ++i) {
    values[i] = f(grid_point(log_lo, step, i));
  }
  return refine_from_grid(f, log_lo, step, cfg.grid_points, values, cfg.h_tolerance);
}

struct BlockSpan {
  std::size_t begin;
  std::size_t size;
};

std::vector<BlockSpan> partition_blocks(std::size_t m, const EstimatorConfig& cfg) {
  std::vector<BlockSpan> blocks;
  const std::size_t s = cfg.block_size;
  std::size_t pos = 0;
  while (pos + s <= m) {
    blocks.push_back({pos, s});
    pos += s;
  }
  if (pos < m && cfg.remainder == RemainderPolicy::shrink) {
    blocks.push_back({pos, m - pos});
  }
  if (blocks.empty()) {
    throw EmptyBlocks("no complete block of " + std::to_string(s) + " frames in " +
                      std::to_string(m) + " observations (remainder_policy=drop)");
  }
  return blocks;
}

std::size_t pow_integer(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::size_t>::max() / base) {
      throw std::invalid_argument("candidate sequence count overflows");
    }
    r *= base;
  }
  return r;
}

struct BlockWinner {
  LineMax line;
  std::vector<std::size_t> level_indices;
  std::size_t candidates = 0;
};

/// Exhaustive scan of one block. Candidate sequences are enumerated in
/// lexicographic level-index order (first frame most significant); a
/// candidate replaces the incumbent only if it beats it by more than the tie
/// tolerance, which keeps the first (smallest) member of a tied class.
///
/// When `grid_table` is non-null it holds precomputed per-frame, per-level
/// grid log-densities laid out as [frame][level][grid_index]; the coarse scan
/// then reduces to table sums. Summation stays in frame order, so the result
/// is bit-identical to the direct evaluation.
BlockWinner search_block(std::span<const double> z, const PowerLevelSet& levels,
                         const ChannelParams& params, const EstimatorConfig& cfg,
                         const double* grid_table) {
  const std::size_t s = z.size();
  const std::size_t n = levels.size();
  const auto& level_mw = levels.levels_mw();
  const std::size_t n_candidates = pow_integer(n, s);

  const double log_lo = std::log(cfg.h_min);
  const double log_hi = std::log(cfg.h_max);
  const std::size_t grid = cfg.grid_points;
  const double step = (log_hi - log_lo) / static_cast<double>(grid - 1);

  std::vector<std::size_t> digits(s);
  std::vector<double> powers(s);
  std::vector<double> values(grid);

  BlockWinner winner;
  winner.candidates = n_candidates;

  for (std::size_t c = 0; c < n_candidates; ++c) {
    std::size_t rem = c;
    for (std::size_t j = s; j-- > 0;) {
      digits[j] = rem % n;
      rem /= n;
    }
    for (std::size_t j = 0; j < s; ++j) powers[j] = level_mw[digits[j]];

    const auto loglik_at = [&](double h) {
      double sum = 0.0;
      for (std::size_t j = 0; j < s; ++j) {
        sum += log_pdf_received_power(z[j], h, powers[j], params);
      }
      return sum;
    };

    if (grid_table != nullptr) {
      for (std::size_t i = 0; i < grid; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < s; ++j) {
          sum += grid_table[(j * n + digits[j]) * grid + i];
        }
        values[i] = sum;
      }
    } else {
      for (std::size_t i = 0; i < grid; ++i) {
        values[i] = loglik_at(grid_point(log_lo, step, i));
      }
    }

    LineMax lm = refine_from_grid(loglik_at, log_lo, step, grid, values, cfg.h_tolerance);
    if (lm.value > winner.line.value + cfg.tie_tolerance) {
      winner.line = lm;
      winner.level_indices = digits;
    }
  }
  return winner;
}

std::vector<double> build_grid_table(std::span<const double> z, const PowerLevelSet& levels,
                                     const ChannelParams& params, const EstimatorConfig& cfg) {
  const std::size_t s = z.size();
  const std::size_t n = levels.size();
  const std::size_t grid = cfg.grid_points;
  const double log_lo = std::log(cfg.h_min);
  const double step = (std::log(cfg.h_max) - log_lo) / static_cast<double>(grid - 1);
  std::vector<double> table(s * n * grid);
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t lvl = 0; lvl < n; ++lvl) {
      for (std::size_t i = 0; i < grid; ++i) {
        table[(j * n + lvl) * grid + i] =
            log_pdf_received_power(z[j], grid_point(log_lo, step, i), levels.levels_mw()[lvl], params);
      }
    }
  }
  return table;
}

EstimationResult assemble_untrusted(const std::vector<BlockWinner>& winners,
                                    const ChannelParams& params) {
  EstimationResult result;
  double h_sum = 0.0;
  double ll_sum = 0.0;
  for (const auto& w : winners) {
    if (w.line.at_edge) {
      throw BracketMiss("block maximum at gain bracket endpoint");
    }
    result.per_block_h.push_back(w.line.arg);
    result.per_block_levels.push_back(w.level_indices);
    result.sequences_evaluated += w.candidates;
    h_sum += w.line.arg;
    ll_sum += w.line.value;
  }
  result.h_hat = h_sum / static_cast<double>(winners.size());
  result.d_hat = distance_from_gain(result.h_hat, params);
  result.log_likelihood = ll_sum;
  return result;
}

EstimationResult run_untrusted(const ObservationSet& obs, const PowerLevelSet& levels,
                               const ChannelParams& params, const EstimatorConfig& cfg,
                               const ExecPolicy& exec, bool use_tables) {
  if (obs.powers_known()) {
    throw std::invalid_argument("untrusted estimator requires a hidden-power observation set");
  }
  if (obs.empty()) throw std::invalid_argument("observation set is empty");
  validate_config(cfg);
  validate(params);

  const std::vector<double> z = obs.received_mw();
  const std::vector<BlockSpan> blocks = partition_blocks(z.size(), cfg);
  pow_integer(levels.size(), cfg.block_size);  // overflow check before the parallel region
  std::vector<BlockWinner> winners(blocks.size());

  parallel_for(blocks.size(), exec, [&](std::size_t b) {
    const std::span<const double> zb(z.data() + blocks[b].begin, blocks[b].size);
    if (use_tables) {
      const std::vector<double> table = build_grid_table(zb, levels, params, cfg);
      winners[b] = search_block(zb, levels, params, cfg, table.data());
    } else {
      winners[b] = search_block(zb, levels, params, cfg, nullptr);
    }
  });

  return assemble_untrusted(winners, params);
}

}  // namespace

double maximize_over_h(const ObservationSet& obs, const ChannelParams& params,
                       const EstimatorConfig& cfg) {
  if (!obs.powers_known()) {
    throw std::invalid_argument("maximize_over_h requires known transmit powers");
  }
  if (obs.empty()) throw std::invalid_argument("observation set is empty");
  validate_config(cfg);
  validate(params);

  const auto loglik_at = [&](double h) { return log_likelihood(obs, h, params); };
  const LineMax lm = maximize_on_log_grid(loglik_at, cfg);
  if (lm.at_edge) {
    throw BracketMiss("likelihood maximum at gain bracket endpoint");
  }
  return lm.arg;
}

EstimationResult estimate_trusted(const ObservationSet& obs, const ChannelParams& params,
                                  const EstimatorConfig& cfg) {
  const double h = maximize_over_h(obs, params, cfg);
  EstimationResult result;
  result.h_hat = h;
  result.d_hat = distance_from_gain(h, params);
  result.log_likelihood = log_likelihood(obs, h, params);
  return result;
}

EstimationResult estimate_untrusted(const ObservationSet& obs, const PowerLevelSet& levels,
                                    const ChannelParams& params, const EstimatorConfig& cfg,
                                    const ExecPolicy& exec) {
  return run_untrusted(obs, levels, params, cfg, exec, /*use_tables=*/true);
}

EstimationResult estimate_untrusted_reference(const ObservationSet& obs, const PowerLevelSet& levels,
                                              const ChannelParams& params, const EstimatorConfig& cfg) {
  return run_untrusted(obs, levels, params, cfg, ExecPolicy::serial(), /*use_tables=*/false);
}

double normalized_error_std(std::span<const double> d_hats, double true_distance_m) {
  if (d_hats.size() < 2) throw std::invalid_argument("need at least two estimates");
  if (!(true_distance_m > 0.0)) throw std::domain_error("true distance must be > 0");
  double mean = 0.0;
  for (double d : d_hats) mean += d - true_distance_m;
  mean /= static_cast<double>(d_hats.size());
  double ss = 0.0;
  for (double d : d_hats) {
    const double e = (d - true_distance_m) - mean;
    ss += e * e;
  }
  return std::sqrt(ss / static_cast<double>(d_hats.size() - 1)) / true_distance_m;
}

}  // namespace locpriv
