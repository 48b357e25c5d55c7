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
#include <span>
#include <vector>

#include "locpriv/channel.hpp"
#include "locpriv/rng.hpp"

namespace locpriv {

/// One received beacon frame: measured power z and the transmit power x that
/// produced it.
struct Observation {
  double received_mw;  // z >= 0
  double transmit_mw;  // x > 0
};

/// An ordered set of frames sharing one visibility mode: either the receiver
/// knows every frame's transmit power (trusted view) or none (untrusted
/// view). In the untrusted view the transmit powers are still stored -- they
/// are the ground truth used to generate the data -- but estimators must not
/// read them.
class ObservationSet {
 public:
  ObservationSet(std::vector<Observation> samples, bool powers_known);

  static ObservationSet trusted(std::vector<Observation> samples) {
    return ObservationSet(std::move(samples), true);
  }
  static ObservationSet untrusted(std::vector<Observation> samples) {
    return ObservationSet(std::move(samples), false);
  }

  const std::vector<Observation>& samples() const { return samples_; }
  bool powers_known() const { return powers_known_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  std::vector<double> received_mw() const;
  std::vector<double> transmit_mw() const;

 private:
  std::vector<Observation> samples_;
  bool powers_known_;
};

/// Density of the received power z given channel gain h and transmit power x:
///   f(z | h, x) = 1/(2 sigma2) * exp(-(z + h x)/(2 sigma2))
///                 * I0(sqrt(z h x) / sigma2).
/// Computed as exp(log_pdf_received_power), so it stays finite for Bessel
/// arguments far beyond the overflow point of I0 itself.
double pdf_received_power(double z_mw, double gain, double x_mw, const ChannelParams& params);

/// log of pdf_received_power; the form used by every likelihood computation.
double log_pdf_received_power(double z_mw, double gain, double x_mw, const ChannelParams& params);

/// Sum of per-sample log densities over the set, using each sample's stored
/// transmit power. Requires a non-empty set.
double log_likelihood(const ObservationSet& obs, double gain, const ChannelParams& params);

/// Same sum with the transmit powers supplied externally (used by estimators
/// scoring hypothesized power sequences against received powers).
double log_likelihood(std::span<const double> received_mw, std::span<const double> transmit_mw,
                      double gain, const ChannelParams& params);

/// Draws z = (sqrt(h x) + n1)^2 + n2^2 with n1, n2 ~ N(0, sigma2). This is a
/// scaled noncentral chi-square with 2 degrees of freedom and noncentrality
/// h x / sigma2, whose density is exactly pdf_received_power.
double sample_received_power(double gain, double x_mw, const ChannelParams& params, Rng& rng);

}  // namespace locpriv
