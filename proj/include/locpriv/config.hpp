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

#include <string>

#include <json.hpp>

#include "locpriv/experiments.hpp"

namespace locpriv {

/// Everything a simulate/crlb run needs. The experiment block carries the
/// estimator and channel settings; the crlb block configures the bound
/// curves. `has_seed` records whether the config supplied a seed (a run
/// without any seed is rejected, there is no silent default).
struct RunConfig {
  ExperimentConfig experiment;
  CrlbRunConfig crlb;
  bool has_seed = false;
};

/// Parses the flat key-value config format:
///
///   # comment
///   [experiment]
///   levels_dbm = -6, -4.5, -2.5, 0
///   m_values = 4:40:4
///   trials = 1000
///
/// Sections: [experiment], [estimator], [channel], [crlb]. Every key is
/// optional and defaults to the library defaults; unknown sections or keys
/// are hard errors (they are almost always typos). Throws ConfigError with
/// the offending line number.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

/// Full resolved-config echo (every default materialized), as stored in run
/// manifests. config_from_json inverts it exactly, double for double.
nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

}  // namespace locpriv
