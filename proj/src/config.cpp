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

#include "locpriv/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "locpriv/errors.hpp"
#include "locpriv/units.hpp"

namespace locpriv {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& raw, int line) {
  const std::string s = trim(raw);
  double value = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ConfigError("line " + std::to_string(line) + ": not a number: '" + s + "'");
  }
  return value;
}

std::uint64_t parse_u64(const std::string& raw, int line) {
  const std::string s = trim(raw);
  std::uint64_t value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ConfigError("line " + std::to_string(line) + ": not a non-negative integer: '" + s + "'");
  }
  return value;
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(raw);
  while (std::getline(in, item, ',')) parts.push_back(trim(item));
  return parts;
}

std::vector<double> parse_double_list(const std::string& raw, int line) {
  std::vector<double> out;
  for (const auto& p : split_list(raw)) out.push_back(parse_double(p, line));
  if (out.empty()) throw ConfigError("line " + std::to_string(line) + ": empty list");
  return out;
}

// Either an explicit comma list or a start:stop:step range (inclusive stop).
std::vector<std::size_t> parse_size_list(const std::string& raw, int line) {
  const std::string s = trim(raw);
  if (s.find(':') != std::string::npos) {
    std::vector<std::uint64_t> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ':')) parts.push_back(parse_u64(item, line));
    if (parts.size() != 3 || parts[2] == 0 || parts[0] > parts[1]) {
      throw ConfigError("line " + std::to_string(line) + ": range must be start:stop:step");
    }
    std::vector<std::size_t> out;
    for (std::uint64_t v = parts[0]; v <= parts[1]; v += parts[2]) out.push_back(v);
    return out;
  }
  std::vector<std::size_t> out;
  for (const auto& p : split_list(s)) out.push_back(parse_u64(p, line));
  if (out.empty()) throw ConfigError("line " + std::to_string(line) + ": empty list");
  return out;
}

PolicyKind parse_policy(const std::string& name, int line) {
  if (name == "uniform") return PolicyKind::uniform;
  if (name == "discretized_normal") return PolicyKind::discretized_normal;
  if (name == "discretized_exponential") return PolicyKind::discretized_exponential;
  throw ConfigError("line " + std::to_string(line) + ": unknown policy '" + name + "'");
}

std::vector<PolicyKind> parse_policies(const std::string& raw, int line) {
  std::vector<PolicyKind> out;
  for (const auto& p : split_list(raw)) out.push_back(parse_policy(p, line));
  if (out.empty()) throw ConfigError("line " + std::to_string(line) + ": empty policy list");
  return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;

  bool have_levels = false, have_mu = false;
  std::vector<double> levels_mw;
  double mu_mw = config.experiment.mu_mw;

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "experiment" && section != "estimator" && section != "channel" &&
          section != "crlb") {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key + "' outside a section");
    }

    auto& exp = config.experiment;
    if (section == "experiment") {
      if (key == "levels_dbm" || key == "levels_mw") {
        if (have_levels) throw ConfigError("line " + std::to_string(line_no) + ": levels given twice");
        have_levels = true;
        levels_mw = parse_double_list(value, line_no);
        if (key == "levels_dbm") {
          for (double& v : levels_mw) v = dbm_to_mw(v);
        }
      } else if (key == "mu_dbm" || key == "mu_mw") {
        if (have_mu) throw ConfigError("line " + std::to_string(line_no) + ": mu given twice");
        have_mu = true;
        mu_mw = key == "mu_dbm" ? dbm_to_mw(parse_double(value, line_no)) : parse_double(value, line_no);
      } else if (key == "policies") {
        exp.policies = parse_policies(value, line_no);
      } else if (key == "true_distance_m") {
        exp.true_distance_m = parse_double(value, line_no);
      } else if (key == "snr_db") {
        exp.snr_db = parse_double_list(value, line_no);
      } else if (key == "m_values") {
        exp.m_values = parse_size_list(value, line_no);
      } else if (key == "trials") {
        exp.trials = parse_u64(value, line_no);
      } else if (key == "normal_spread_mw") {
        exp.normal_spread_mw = parse_double(value, line_no);
      } else if (key == "seed") {
        exp.seed = parse_u64(value, line_no);
        config.has_seed = true;
      } else {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key +
                          "' in [experiment]");
      }
    } else if (section == "estimator") {
      if (key == "block_size") {
        exp.block_size = parse_u64(value, line_no);
      } else if (key == "bracket_factor") {
        exp.bracket_factor = parse_double(value, line_no);
      } else if (key == "h_tolerance") {
        exp.h_tolerance = parse_double(value, line_no);
      } else if (key == "remainder_policy") {
        if (value == "drop") {
          exp.remainder = RemainderPolicy::drop;
        } else if (value == "shrink") {
          exp.remainder = RemainderPolicy::shrink;
        } else {
          throw ConfigError("line " + std::to_string(line_no) + ": remainder_policy must be drop or shrink");
        }
      } else if (key == "grid_points") {
        exp.grid_points = parse_u64(value, line_no);
      } else if (key == "tie_tolerance") {
        exp.tie_tolerance = parse_double(value, line_no);
      } else {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key +
                          "' in [estimator]");
      }
    } else if (section == "channel") {
      if (key == "path_loss_exponent") {
        exp.channel.path_loss_exponent = parse_double(value, line_no);
      } else if (key == "ref_distance_m") {
        exp.channel.ref_distance = parse_double(value, line_no);
      } else if (key == "ref_gain") {
        exp.channel.path_loss_ref_gain = parse_double(value, line_no);
      } else {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key +
                          "' in [channel]");
      }
    } else {  // crlb
      if (key == "policies") {
        config.crlb.policies = parse_policies(value, line_no);
      } else if (key == "m_values") {
        config.crlb.m_values = parse_size_list(value, line_no);
      } else if (key == "trials") {
        config.crlb.trials = parse_u64(value, line_no);
      } else if (key == "mc_samples") {
        config.crlb.mc_samples = parse_u64(value, line_no);
      } else if (key == "snr_db") {
        config.crlb.snr_db = parse_double(value, line_no);
      } else {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "' in [crlb]");
      }
    }
  }

  try {
    if (have_levels) config.experiment.levels = PowerLevelSet(levels_mw);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid levels: ") + e.what());
  }
  config.experiment.mu_mw = mu_mw;
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

nlohmann::json config_to_json(const RunConfig& config) {
  const auto& e = config.experiment;
  nlohmann::json policies = nlohmann::json::array();
  for (PolicyKind k : e.policies) policies.push_back(to_string(k));
  nlohmann::json crlb_policies = nlohmann::json::array();
  for (PolicyKind k : config.crlb.policies) crlb_policies.push_back(to_string(k));

  return nlohmann::json{
      {"experiment",
       {{"levels_mw", e.levels.levels_mw()},
        {"mu_mw", e.mu_mw},
        {"policies", policies},
        {"true_distance_m", e.true_distance_m},
        {"snr_db", e.snr_db},
        {"m_values", e.m_values},
        {"trials", e.trials},
        {"normal_spread_mw", e.resolved_normal_spread()}}},
      {"estimator",
       {{"block_size", e.block_size},
        {"bracket_factor", e.bracket_factor},
        {"h_tolerance", e.h_tolerance},
        {"remainder_policy", e.remainder == RemainderPolicy::drop ? "drop" : "shrink"},
        {"grid_points", e.grid_points},
        {"tie_tolerance", e.tie_tolerance}}},
      {"channel",
       {{"path_loss_exponent", e.channel.path_loss_exponent},
        {"ref_distance_m", e.channel.ref_distance},
        {"ref_gain", e.channel.path_loss_ref_gain}}},
      {"crlb",
       {{"policies", crlb_policies},
        {"m_values", config.crlb.m_values},
        {"trials", config.crlb.trials},
        {"mc_samples", config.crlb.mc_samples},
        {"snr_db", config.crlb.snr_db}}}};
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig config;
  auto& e = config.experiment;
  const auto& je = j.at("experiment");
  e.levels = PowerLevelSet(je.at("levels_mw").get<std::vector<double>>());
  e.mu_mw = je.at("mu_mw").get<double>();
  e.policies.clear();
  for (const auto& name : je.at("policies")) e.policies.push_back(parse_policy(name.get<std::string>(), 0));
  e.true_distance_m = je.at("true_distance_m").get<double>();
  e.snr_db = je.at("snr_db").get<std::vector<double>>();
  e.m_values = je.at("m_values").get<std::vector<std::size_t>>();
  e.trials = je.at("trials").get<std::size_t>();
  e.normal_spread_mw = je.at("normal_spread_mw").get<double>();

  const auto& js = j.at("estimator");
  e.block_size = js.at("block_size").get<std::size_t>();
  e.bracket_factor = js.at("bracket_factor").get<double>();
  e.h_tolerance = js.at("h_tolerance").get<double>();
  e.remainder = js.at("remainder_policy").get<std::string>() == "shrink" ? RemainderPolicy::shrink
                                                                         : RemainderPolicy::drop;
  e.grid_points = js.at("grid_points").get<std::size_t>();
  e.tie_tolerance = js.at("tie_tolerance").get<double>();

  const auto& jc = j.at("channel");
  e.channel.path_loss_exponent = jc.at("path_loss_exponent").get<double>();
  e.channel.ref_distance = jc.at("ref_distance_m").get<double>();
  e.channel.path_loss_ref_gain = jc.at("ref_gain").get<double>();

  const auto& jb = j.at("crlb");
  config.crlb.policies.clear();
  for (const auto& name : jb.at("policies")) {
    config.crlb.policies.push_back(parse_policy(name.get<std::string>(), 0));
  }
  config.crlb.m_values = jb.at("m_values").get<std::vector<std::size_t>>();
  config.crlb.trials = jb.at("trials").get<std::size_t>();
  config.crlb.mc_samples = jb.at("mc_samples").get<std::size_t>();
  config.crlb.snr_db = jb.at("snr_db").get<double>();
  return config;
}

}  // namespace locpriv
