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

#include "locpriv/crlb.hpp"

#include <cmath>
#include <stdexcept>

#include "locpriv/bessel.hpp"
#include "locpriv/errors.hpp"
#include "locpriv/rng.hpp"
#include "locpriv/signal_model.hpp"

namespace locpriv {

namespace {

void require_point(double z_mw, double gain, double x_mw, double sigma2) {
  if (!(z_mw >= 0.0)) throw std::domain_error("received power must be >= 0");
  if (!(gain > 0.0)) throw std::domain_error("gain must be > 0");
  if (!(x_mw > 0.0)) throw std::domain_error("transmit power must be > 0");
  if (!(sigma2 > 0.0)) throw std::domain_error("sigma2 must be > 0");
}

struct BesselTerms {
  double one_minus_r2;  // 1 - r^2
  double bracket;       // 1 - r^2 - 2 r / u
};

BesselTerms bessel_terms(double z_mw, double gain, double x_mw, double sigma2) {
  const double u = std::sqrt(z_mw * gain * x_mw) / sigma2;
  const double r = bessel_ratio_i1_i0(u);
  const double r_over_u = bessel_ratio_i1_i0_over_a(u);
  const double one_minus_r2 = 1.0 - r * r;
  return {one_minus_r2, one_minus_r2 - 2.0 * r_over_u};
}

}  // namespace

double d2_loglik_dh2(double z_mw, double gain, double x_mw, double sigma2) {
  require_point(z_mw, gain, x_mw, sigma2);
  const auto t = bessel_terms(z_mw, gain, x_mw, sigma2);
  return z_mw * x_mw / (4.0 * gain * sigma2 * sigma2) * t.bracket;
}

double d2_loglik_dx2(double z_mw, double gain, double x_mw, double sigma2) {
  require_point(z_mw, gain, x_mw, sigma2);
  const auto t = bessel_terms(z_mw, gain, x_mw, sigma2);
  return z_mw * gain / (4.0 * x_mw * sigma2 * sigma2) * t.bracket;
}

double d2_loglik_dhdx(double z_mw, double gain, double x_mw, double sigma2) {
  require_point(z_mw, gain, x_mw, sigma2);
  const auto t = bessel_terms(z_mw, gain, x_mw, sigma2);
  return (z_mw * t.one_minus_r2 - 2.0 * sigma2) / (4.0 * sigma2 * sigma2);
}

const char* to_string(NodeView view) {
  return view == NodeView::trusted ? "trusted" : "untrusted";
}

std::vector<std::vector<double>> FisherMatrix::dense() const {
  const std::size_t dim = dimension();
  std::vector<std::vector<double>> out(dim, std::vector<double>(dim, 0.0));
  out[0][0] = h_h;
  for (std::size_t k = 0; k < h_x.size(); ++k) {
    out[0][k + 1] = h_x[k];
    out[k + 1][0] = h_x[k];
    out[k + 1][k + 1] = x_x[k];
  }
  return out;
}

FisherMatrix fisher_matrix(const FisherConfig& cfg, NodeView view, const ExecPolicy& exec) {
  if (cfg.powers_mw.empty()) throw std::invalid_argument("power sequence is empty");
  if (cfg.mc_samples < 2) throw std::invalid_argument("mc_samples must be >= 2");
  for (double x : cfg.powers_mw) require_point(0.0, cfg.gain, x, cfg.sigma2);

  const std::size_t m = cfg.powers_mw.size();
  const auto n = static_cast<double>(cfg.mc_samples);
  ChannelParams params;
  params.sigma2 = cfg.sigma2;

  struct FrameAccum {
    double hh = 0, hh2 = 0, hx = 0, hx2 = 0, xx = 0, xx2 = 0;
  };
  std::vector<FrameAccum> acc(m);

  parallel_for(m, exec, [&](std::size_t k) {
    Rng rng(derive_seed(cfg.seed, {k}));
    const double x = cfg.powers_mw[k];
    FrameAccum a;
    for (std::size_t i = 0; i < cfg.mc_samples; ++i) {
      const double z = sample_received_power(cfg.gain, x, params, rng);
      const auto t = bessel_terms(z, cfg.gain, x, cfg.sigma2);
      const double s4 = 4.0 * cfg.sigma2 * cfg.sigma2;
      const double hh = -(z * x / (cfg.gain * s4) * t.bracket);
      const double xx = -(z * cfg.gain / (x * s4) * t.bracket);
      const double hx = -((z * t.one_minus_r2 - 2.0 * cfg.sigma2) / s4);
      a.hh += hh;
      a.hh2 += hh * hh;
      a.hx += hx;
      a.hx2 += hx * hx;
      a.xx += xx;
      a.xx2 += xx * xx;
    }
    acc[k] = a;
  });

  const auto mean_and_se = [n](double sum, double sumsq) {
    const double mean = sum / n;
    const double var = (sumsq / n - mean * mean) * n / (n - 1.0);
    return std::pair<double, double>(mean, std::sqrt(std::max(var, 0.0) / n));
  };

  FisherMatrix f;
  double hh_var = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const auto [hh, hh_se] = mean_and_se(acc[k].hh, acc[k].hh2);
    f.h_h += hh;
    hh_var += hh_se * hh_se;
    if (view == NodeView::untrusted) {
      const auto [hx, hx_se] = mean_and_se(acc[k].hx, acc[k].hx2);
      const auto [xx, xx_se] = mean_and_se(acc[k].xx, acc[k].xx2);
      f.h_x.push_back(hx);
      f.h_x_stderr.push_back(hx_se);
      f.x_x.push_back(xx);
      f.x_x_stderr.push_back(xx_se);
    }
  }
  f.h_h_stderr = std::sqrt(hh_var);
  return f;
}

double crlb_gain_variance(const FisherMatrix& fisher) {
  if (!(fisher.h_h > 0.0)) {
    throw SingularFisher("gain information is not positive");
  }
  if (fisher.dimension() == 1) {
    return 1.0 / fisher.h_h;
  }
  double schur = fisher.h_h;
  for (std::size_t k = 0; k < fisher.x_x.size(); ++k) {
    if (!(fisher.x_x[k] > 1e-14 * fisher.h_h)) {
      throw SingularFisher("power diagonal entry numerically zero");
    }
    schur -= fisher.h_x[k] * fisher.h_x[k] / fisher.x_x[k];
  }
  if (!(schur > 0.0)) {
    throw SingularFisher("Schur complement not positive; bound undefined");
  }
  return 1.0 / schur;
}

std::vector<CrlbCurveRow> crlb_curve(const PowerDistribution& policy, double gain, double sigma2,
                                     std::span<const std::size_t> m_values, std::size_t trials,
                                     std::size_t mc_samples, std::uint64_t seed,
                                     const ExecPolicy& exec) {
  if (trials < 2) throw std::invalid_argument("need at least two trials");

  struct TrialEntries {
    double h_h = 0.0;
    std::vector<double> h_x, x_x;
  };
  // flatten (m index, trial) jobs for one deterministic parallel sweep
  const std::size_t n_m = m_values.size();
  std::vector<std::vector<TrialEntries>> per_m(n_m, std::vector<TrialEntries>(trials));

  parallel_for(n_m * trials, exec, [&](std::size_t job) {
    const std::size_t mi = job / trials;
    const std::size_t t = job % trials;
    const std::size_t m = m_values[mi];

    Rng seq_rng(derive_seed(seed, {static_cast<std::uint64_t>(m), t, 0}));
    FisherConfig cfg;
    cfg.gain = gain;
    cfg.sigma2 = sigma2;
    cfg.mc_samples = mc_samples;
    cfg.seed = derive_seed(seed, {static_cast<std::uint64_t>(m), t, 1});
    cfg.powers_mw.reserve(m);
    for (std::size_t k = 0; k < m; ++k) cfg.powers_mw.push_back(sample_power(policy, seq_rng).power_mw);

    const FisherMatrix f = fisher_matrix(cfg, NodeView::untrusted, ExecPolicy::serial());
    per_m[mi][t] = {f.h_h, f.h_x, f.x_x};
  });

  const auto trusted_bound = [](const FisherMatrix& f) {
    FisherMatrix t;
    t.h_h = f.h_h;
    return crlb_gain_variance(t);
  };

  std::vector<CrlbCurveRow> rows;
  for (NodeView view : {NodeView::trusted, NodeView::untrusted}) {
    for (std::size_t mi = 0; mi < n_m; ++mi) {
      const std::size_t m = m_values[mi];
      const auto average_excluding = [&](std::size_t skip) {
        FisherMatrix avg;
        avg.h_x.assign(m, 0.0);
        avg.x_x.assign(m, 0.0);
        double count = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
          if (t == skip) continue;
          avg.h_h += per_m[mi][t].h_h;
          for (std::size_t k = 0; k < m; ++k) {
            avg.h_x[k] += per_m[mi][t].h_x[k];
            avg.x_x[k] += per_m[mi][t].x_x[k];
          }
          count += 1.0;
        }
        avg.h_h /= count;
        for (std::size_t k = 0; k < m; ++k) {
          avg.h_x[k] /= count;
          avg.x_x[k] /= count;
        }
        return avg;
      };

      const FisherMatrix full = average_excluding(trials);  // skip index out of range: keep all
      const double value =
          view == NodeView::trusted ? trusted_bound(full) : crlb_gain_variance(full);

      // jackknife standard error over trials
      double jack_mean = 0.0;
      std::vector<double> jack(trials);
      for (std::size_t t = 0; t < trials; ++t) {
        const FisherMatrix loo = average_excluding(t);
        jack[t] = view == NodeView::trusted ? trusted_bound(loo) : crlb_gain_variance(loo);
        jack_mean += jack[t];
      }
      jack_mean /= static_cast<double>(trials);
      double ss = 0.0;
      for (double v : jack) ss += (v - jack_mean) * (v - jack_mean);
      const double se =
          std::sqrt(ss * static_cast<double>(trials - 1) / static_cast<double>(trials));

      rows.push_back({view, m, value, se, trials});
    }
  }
  return rows;
}

}  // namespace locpriv
