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

#include <cmath>
#include <stdexcept>

#include "locpriv/bessel.hpp"

namespace locpriv {

namespace {

void require_inputs(double z_mw, double gain, double x_mw, const ChannelParams& params) {
  if (!(z_mw >= 0.0)) throw std::domain_error("received power must be >= 0");
  if (!(gain > 0.0)) throw std::domain_error("gain must be > 0");
  if (!(x_mw > 0.0)) throw std::domain_error("transmit power must be > 0");
  if (!(params.sigma2 > 0.0)) throw std::domain_error("sigma2 must be > 0");
}

}  // namespace

ObservationSet::ObservationSet(std::vector<Observation> samples, bool powers_known)
    : samples_(std::move(samples)), powers_known_(powers_known) {
  for (const auto& s : samples_) {
    if (!(s.received_mw >= 0.0)) throw std::domain_error("received power must be >= 0");
    if (!(s.transmit_mw > 0.0)) throw std::domain_error("transmit power must be > 0");
  }
}

std::vector<double> ObservationSet::received_mw() const {
  std::vector<double> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.received_mw);
  return out;
}

std::vector<double> ObservationSet::transmit_mw() const {
  std::vector<double> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.transmit_mw);
  return out;
}

double log_pdf_received_power(double z_mw, double gain, double x_mw, const ChannelParams& params) {
  require_inputs(z_mw, gain, x_mw, params);
  const double two_s2 = 2.0 * params.sigma2;
  const double w = gain * x_mw;
  const double u = std::sqrt(z_mw * w) / params.sigma2;
  return -std::log(two_s2) - (z_mw + w) / two_s2 + log_bessel_i0(u);
}

double pdf_received_power(double z_mw, double gain, double x_mw, const ChannelParams& params) {
  return std::exp(log_pdf_received_power(z_mw, gain, x_mw, params));
}

double log_likelihood(const ObservationSet& obs, double gain, const ChannelParams& params) {
  if (obs.empty()) throw std::invalid_argument("observation set is empty");
  double sum = 0.0;
  for (const auto& s : obs.samples()) {
    sum += log_pdf_received_power(s.received_mw, gain, s.transmit_mw, params);
  }
  return sum;
}

double log_likelihood(std::span<const double> received_mw, std::span<const double> transmit_mw,
                      double gain, const ChannelParams& params) {
  if (received_mw.empty() || received_mw.size() != transmit_mw.size()) {
    throw std::invalid_argument("mismatched or empty observation spans");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < received_mw.size(); ++k) {
    sum += log_pdf_received_power(received_mw[k], gain, transmit_mw[k], params);
  }
  return sum;
}

double sample_received_power(double gain, double x_mw, const ChannelParams& params, Rng& rng) {
  require_inputs(0.0, gain, x_mw, params);
  const auto [n1, n2] = rng.gaussian_pair(std::sqrt(params.sigma2));
  const double a = std::sqrt(gain * x_mw) + n1;
  return a * a + n2 * n2;
}

}  // namespace locpriv
