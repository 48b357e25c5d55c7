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

#include "locpriv/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "locpriv/rng.hpp"
#include "support/quadrature.hpp"
#include "support/stats.hpp"

using namespace locpriv;

namespace {

ChannelParams with_sigma2(double s2) {
  ChannelParams p;
  p.sigma2 = s2;
  return p;
}

double integration_cutoff(double gain, double x, double s2) {
  const double mean = gain * x + 2.0 * s2;
  const double sd = std::sqrt(4.0 * s2 * s2 + 4.0 * s2 * gain * x);
  return mean + 60.0 * sd;
}

}  // namespace

TEST_CASE("pdf at z=0 reduces to the exponential prefactor") {
  // I0(0) = 1, so f(0 | h=1, x=1, s2=0.5) = exp(-1)
  CHECK(pdf_received_power(0.0, 1.0, 1.0, with_sigma2(0.5)) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("pdf matches the arbitrary-precision reference point") {
  // f(1.2 | 0.8, 1.0, 0.25), 40-digit reference
  CHECK(pdf_received_power(1.2, 0.8, 1.0, with_sigma2(0.25)) ==
        doctest::Approx(0.3861461738890224799033).epsilon(1e-13));
}

TEST_CASE("pdf integrates to one") {
  const ChannelParams p = with_sigma2(0.02);
  const double total = test_support::integrate(
      [&](double z) { return pdf_received_power(z, 0.01, 0.5, p); }, 0.0,
      integration_cutoff(0.01, 0.5, 0.02), 1e-11);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("pdf integrates to one for random parameter triples") {
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const double gain = std::exp(rng.uniform01() * 4.0 - 4.0);
    const double x = std::exp(rng.uniform01() * 3.0 - 2.0);
    const double s2 = (0.05 + rng.uniform01()) * gain * x;
    const ChannelParams p = with_sigma2(s2);
    const double total = test_support::integrate(
        [&](double z) { return pdf_received_power(z, gain, x, p); }, 0.0,
        integration_cutoff(gain, x, s2), 1e-11);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("domain errors") {
  const ChannelParams p = with_sigma2(0.1);
  CHECK_THROWS_AS(pdf_received_power(-0.1, 1.0, 1.0, p), std::domain_error);
  CHECK_THROWS_AS(pdf_received_power(0.1, 0.0, 1.0, p), std::domain_error);
  CHECK_THROWS_AS(pdf_received_power(0.1, 1.0, -1.0, p), std::domain_error);
  CHECK_THROWS_AS(pdf_received_power(0.1, 1.0, 1.0, with_sigma2(0.0)), std::domain_error);
}

TEST_CASE("log-domain evaluation stays finite at extreme Bessel arguments") {
  // sqrt(z h x)/s2 = 1e5 overflows I0 by itself; the log form must not.
  const double s2 = 1e-3;
  const double z = 100.0, x = 1.0;
  const double gain = (1e5 * s2) * (1e5 * s2) / (z * x);
  const double lp = log_pdf_received_power(z, gain, x, with_sigma2(s2));
  CHECK(std::isfinite(lp));
  CHECK(std::isfinite(pdf_received_power(z, gain, x, with_sigma2(s2))));
}

TEST_CASE("log likelihood reduces to the single-sample log pdf") {
  const ChannelParams p = with_sigma2(0.25);
  const ObservationSet one = ObservationSet::trusted({{1.2, 1.0}});
  CHECK(log_likelihood(one, 0.8, p) ==
        doctest::Approx(log_pdf_received_power(1.2, 0.8, 1.0, p)).epsilon(1e-15));
}

TEST_CASE("two identical samples double the log likelihood") {
  const ChannelParams p = with_sigma2(0.25);
  const ObservationSet two = ObservationSet::trusted({{1.2, 1.0}, {1.2, 1.0}});
  const ObservationSet one = ObservationSet::trusted({{1.2, 1.0}});
  CHECK(log_likelihood(two, 0.8, p) ==
        doctest::Approx(2.0 * log_likelihood(one, 0.8, p)).epsilon(1e-15));
}

TEST_CASE("log likelihood is the sum of per-sample log pdfs") {
  const ChannelParams p = with_sigma2(0.1);
  Rng rng(5);
  std::vector<Observation> obs;
  double expected = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double x = 0.2 + rng.uniform01();
    const double z = sample_received_power(0.5, x, p, rng);
    obs.push_back({z, x});
    expected += log_pdf_received_power(z, 0.5, x, p);
  }
  CHECK(log_likelihood(ObservationSet::trusted(obs), 0.5, p) ==
        doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("sampler mean and variance match the noncentral chi-square moments") {
  const double gain = 0.01, x = 0.5, s2 = 0.02;
  const ChannelParams p = with_sigma2(s2);
  Rng rng(12345);
  const std::size_t n = 100000;
  std::vector<double> zs(n);
  for (auto& z : zs) z = sample_received_power(gain, x, p, rng);
  const double m = test_support::mean(zs);
  const double v = test_support::sample_variance(zs);
  CHECK(std::abs(m - 0.045) <= 0.01 * 0.045);         // h x + 2 s2
  CHECK(std::abs(v - 0.002) <= 0.05 * 0.002);         // 4 s2^2 + 4 s2 h x

  // the same two moments, via quadrature of the density itself
  const double cutoff = integration_cutoff(gain, x, s2);
  const double m_quad = test_support::integrate(
      [&](double z) { return z * pdf_received_power(z, gain, x, p); }, 0.0, cutoff, 1e-12);
  const double m2_quad = test_support::integrate(
      [&](double z) { return z * z * pdf_received_power(z, gain, x, p); }, 0.0, cutoff, 1e-13);
  CHECK(m_quad == doctest::Approx(0.045).epsilon(1e-8));
  CHECK(m2_quad - m_quad * m_quad == doctest::Approx(0.002).epsilon(1e-6));
}

TEST_CASE("sampler collapses to h*x in the noise-free limit") {
  const ChannelParams p = with_sigma2(1e-12);
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const double z = sample_received_power(0.01, 0.5, p, rng);
    CHECK(std::abs(z - 0.005) <= 1e-5);
  }
}

TEST_CASE("sampler agrees with the numerically integrated CDF (KS test)") {
  // one triple at the unit-test scale; the acceptance suite covers five
  const double gain = 0.8, x = 1.0, s2 = 0.25;
  const ChannelParams p = with_sigma2(s2);
  Rng rng(777);
  const std::size_t n = 100000;
  std::vector<double> zs(n);
  for (auto& z : zs) z = sample_received_power(gain, x, p, rng);
  std::sort(zs.begin(), zs.end());

  std::vector<double> cdf(n);
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += test_support::gauss15([&](double z) { return pdf_received_power(z, gain, x, p); }, prev,
                                 zs[i]);
    cdf[i] = acc;
    prev = zs[i];
  }
  CHECK(test_support::ks_distance(cdf) < 0.006);
}

TEST_CASE("observation set enforces its field invariants") {
  CHECK_THROWS_AS(ObservationSet::trusted({{-0.1, 1.0}}), std::domain_error);
  CHECK_THROWS_AS(ObservationSet::trusted({{0.1, 0.0}}), std::domain_error);
  const ObservationSet ok = ObservationSet::untrusted({{0.0, 0.5}, {1.0, 1.0}});
  CHECK(ok.size() == 2);
  CHECK_FALSE(ok.powers_known());
  CHECK_THROWS_AS(log_likelihood(ObservationSet::trusted({}), 1.0, with_sigma2(0.1)),
                  std::invalid_argument);
}
