/*
 * Copyright 2026 langevin-mimo contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "lmimo/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lmimo {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& section,
                const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      const std::string path = section.empty() ? item.key() : section + "." + item.key();
      throw ConfigError("unknown key \"" + path + "\"");
    }
  }
}

const json* find(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const std::string& section, const std::string& key) {
  const json* v = find(obj, key);
  if (!v) throw ConfigError(section + "." + key + ": missing required key");
  return *v;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path + ": expected a number");
  return v.get<double>();
}

long long as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path + ": expected an integer");
  return v.get<long long>();
}

std::uint64_t as_u64(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ConfigError(path + ": expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path + ": expected a string");
  return v.get<std::string>();
}

}  // namespace

SweepConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");
  check_keys(root, "", {"channel", "modulation", "langevin", "sweep"});

  SweepConfig config;

  {
    const json& channel = require(root, "config", "channel");
    if (!channel.is_object()) throw ConfigError("channel: expected an object");
    check_keys(channel, "channel", {"n_rx", "n_users", "rho"});
    config.channel.n_rx =
        static_cast<int>(as_integer(require(channel, "channel", "n_rx"), "channel.n_rx"));
    config.channel.n_users =
        static_cast<int>(as_integer(require(channel, "channel", "n_users"), "channel.n_users"));
    config.channel.rho = as_number(require(channel, "channel", "rho"), "channel.rho");
  }

  {
    const json& modulation = require(root, "config", "modulation");
    if (!modulation.is_object()) throw ConfigError("modulation: expected an object");
    check_keys(modulation, "modulation", {"order"});
    config.modulation_order =
        static_cast<int>(as_integer(require(modulation, "modulation", "order"), "modulation.order"));
  }

  {
    // Every langevin key is optional; omitted keys keep the reference values.
    double epsilon = 3e-5;
    long long steps = 70;
    long long levels = 20;
    double sigma_first = 1.0;
    double sigma_last = 0.01;
    long long trajectories = 40;
    if (const json* langevin = find(root, "langevin")) {
      if (!langevin->is_object()) throw ConfigError("langevin: expected an object");
      check_keys(*langevin, "langevin",
                 {"epsilon", "steps_per_level", "n_levels", "sigma_first", "sigma_last",
                  "n_trajectories"});
      if (const json* v = find(*langevin, "epsilon")) epsilon = as_number(*v, "langevin.epsilon");
      if (const json* v = find(*langevin, "steps_per_level"))
        steps = as_integer(*v, "langevin.steps_per_level");
      if (const json* v = find(*langevin, "n_levels"))
        levels = as_integer(*v, "langevin.n_levels");
      if (const json* v = find(*langevin, "sigma_first"))
        sigma_first = as_number(*v, "langevin.sigma_first");
      if (const json* v = find(*langevin, "sigma_last"))
        sigma_last = as_number(*v, "langevin.sigma_last");
      if (const json* v = find(*langevin, "n_trajectories"))
        trajectories = as_integer(*v, "langevin.n_trajectories");
    }
    config.langevin.epsilon = epsilon;
    if (steps < 1) throw ConfigError("langevin.steps_per_level: must be >= 1");
    config.langevin.steps_per_level = static_cast<int>(steps);
    if (trajectories < 1) throw ConfigError("langevin.n_trajectories: must be >= 1");
    config.langevin.n_trajectories = static_cast<int>(trajectories);
    if (levels < 2) throw ConfigError("langevin.n_levels: must be >= 2");
    try {
      config.langevin.schedule =
          make_schedule(sigma_first, sigma_last, static_cast<int>(levels));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("langevin schedule: ") + e.what());
    }
  }

  {
    const json& sweep = require(root, "config", "sweep");
    if (!sweep.is_object()) throw ConfigError("sweep: expected an object");
    check_keys(sweep, "sweep",
               {"snr_db_list", "detectors", "n_trials", "master_seed", "output_path"});

    const json& snrs = require(sweep, "sweep", "snr_db_list");
    if (!snrs.is_array() || snrs.empty())
      throw ConfigError("sweep.snr_db_list: expected a nonempty array of numbers");
    for (const json& v : snrs)
      config.snr_db_list.push_back(as_number(v, "sweep.snr_db_list"));

    const json& detectors = require(sweep, "sweep", "detectors");
    if (!detectors.is_array() || detectors.empty())
      throw ConfigError("sweep.detectors: expected a nonempty array of strings");
    for (const json& v : detectors)
      config.detectors.push_back(as_string(v, "sweep.detectors"));

    config.n_trials = as_integer(require(sweep, "sweep", "n_trials"), "sweep.n_trials");
    config.master_seed = as_u64(require(sweep, "sweep", "master_seed"), "sweep.master_seed");
    if (const json* v = find(sweep, "output_path"))
      config.output_path = as_string(*v, "sweep.output_path");
  }

  validate(config);
  return config;
}

SweepConfig parse_config_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot read config file \"" + path + "\"");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace lmimo
