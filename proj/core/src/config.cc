// Copyright 2026 The throttlesim Authors.
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

#include "throttlesim/config.h"

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>

#include "throttlesim/benchmarks.h"
#include "throttlesim/instance_io.h"
#include "throttlesim/strategies.h"
#include "text_util.h"

namespace throttlesim {
namespace {

using internal::Trim;

double ToDouble(std::string_view s, const std::string& what) {
  try {
    return internal::ParseDouble(s);
  } catch (const std::invalid_argument&) {
    throw ConfigError(what + ": not a number: '" + std::string(s) + "'");
  }
}

int64_t ToInt(std::string_view s, const std::string& what) {
  try {
    return internal::ParseInt(s);
  } catch (const std::invalid_argument&) {
    throw ConfigError(what + ": not an integer: '" + std::string(s) + "'");
  }
}

bool ToBool(std::string_view s, const std::string& what) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(what + ": expected true or false");
}

InfoMode ToInfoMode(std::string_view s) {
  try {
    return ParseInfoMode(s);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

// 'name k1=v1 k2=v2' -> name and parameter map.
std::map<std::string, std::string> SpecParams(
    const std::vector<std::string_view>& fields) {
  std::map<std::string, std::string> params;
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const auto eq = fields[i].find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("instance spec: expected key=value, got '" +
                        std::string(fields[i]) + "'");
    }
    params[std::string(fields[i].substr(0, eq))] =
        std::string(fields[i].substr(eq + 1));
  }
  return params;
}

double Require(const std::map<std::string, std::string>& params,
               const std::string& key, const std::string& where) {
  auto it = params.find(key);
  if (it == params.end()) throw ConfigError(where + ": missing " + key + "=");
  return ToDouble(it->second, where + " " + key);
}

void CheckKeys(const std::map<std::string, std::string>& params,
               std::initializer_list<std::string_view> allowed,
               const std::string& where) {
  for (const auto& [k, v] : params) {
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError(where + ": unknown parameter '" + k + "'");
  }
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (instance.empty()) throw ConfigError("config: instance is required");
  if (strategies.empty()) throw ConfigError("config: no [strategy] sections");
  if (horizons.empty()) throw ConfigError("config: horizons is required");
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (horizons[i] < 2) throw ConfigError("config: horizons must be >= 2");
    if (i > 0 && horizons[i] <= horizons[i - 1]) {
      throw ConfigError("config: horizons must be strictly ascending");
    }
  }
  if (replications < 1) throw ConfigError("config: replications must be >= 1");
  if (threads < 0) throw ConfigError("config: threads must be >= 0");
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    if (strategies[i].kind.empty()) {
      throw ConfigError("config: strategy '" + strategies[i].name +
                        "' has no kind");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (strategies[i].name == strategies[j].name) {
        throw ConfigError("config: duplicate strategy '" +
                          strategies[i].name + "'");
      }
    }
  }
}

ExperimentConfig ParseExperimentConfig(std::istream& is) {
  ExperimentConfig cfg;
  StrategySpec* current = nullptr;
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string where = "config line " + std::to_string(line_no);
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section");
      const auto fields =
          internal::SplitWhitespace(line.substr(1, line.size() - 2));
      if (fields.size() != 2 || fields[0] != "strategy") {
        throw ConfigError(where + ": expected [strategy NAME]");
      }
      cfg.strategies.push_back(StrategySpec{std::string(fields[1]), "", {}, {}});
      current = &cfg.strategies.back();
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + ": expected key = value");
    }
    const std::string key(Trim(line.substr(0, eq)));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");

    if (current != nullptr) {
      if (key == "kind") {
        current->kind = std::string(value);
      } else if (key == "info_mode") {
        current->info_mode = ToInfoMode(value);
      } else {
        current->params[key] = std::string(value);
      }
      continue;
    }
    if (key == "experiment_id") {
      cfg.experiment_id = std::string(value);
    } else if (key == "instance") {
      cfg.instance = std::string(value);
    } else if (key == "horizons") {
      std::string_view rest = value;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = Trim(rest.substr(0, comma));
        if (item.empty()) throw ConfigError(where + ": empty horizon");
        cfg.horizons.push_back(ToInt(item, where));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
    } else if (key == "replications") {
      cfg.replications = ToInt(value, where);
    } else if (key == "base_seed") {
      const int64_t s = ToInt(value, where);
      if (s < 0) throw ConfigError(where + ": base_seed must be >= 0");
      cfg.base_seed = static_cast<uint64_t>(s);
    } else if (key == "info_mode") {
      cfg.info_mode = ToInfoMode(value);
    } else if (key == "output") {
      cfg.output = std::string(value);
    } else if (key == "svg") {
      cfg.svg = std::string(value);
    } else if (key == "slope_output") {
      cfg.slope_output = std::string(value);
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(ToInt(value, where));
    } else if (key == "mu") {
      cfg.mu = ToDouble(value, where);
    } else if (key == "hindsight") {
      cfg.hindsight = ToBool(value, where);
    } else if (key == "invariants") {
      cfg.check_invariants = ToBool(value, where);
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
  cfg.Validate();
  return cfg;
}

ExperimentConfig ParseExperimentConfigFile(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path);
  return ParseExperimentConfig(is);
}

Instance MakeInstanceFromSpec(const std::string& spec, int64_t horizon) {
  if (spec.rfind("file:", 0) == 0) {
    InstanceDocument doc;
    try {
      doc = ReadInstanceFile(spec.substr(5));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    Instance inst = std::move(doc.instance);
    if (inst.horizon != horizon) {
      if (!inst.IsStochastic()) {
        throw ConfigError("instance file " + spec.substr(5) + " has T = " +
                          std::to_string(inst.horizon) +
                          " and fixed inputs; cannot run it at T = " +
                          std::to_string(horizon));
      }
      inst.horizon = horizon;
    }
    try {
      inst.Validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    return inst;
  }

  const auto fields = internal::SplitWhitespace(spec);
  if (fields.empty()) throw ConfigError("empty instance spec");
  const std::string name(fields[0]);
  const auto params = SpecParams(fields);
  try {
    if (name == "thm1") {
      CheckKeys(params, {}, name);
      return MakeThm1Instance(horizon);
    }
    if (name == "thm2") {
      CheckKeys(params, {"rho", "vmax", "delta"}, name);
      return MakeThm2Instance(Require(params, "rho", name),
                              Require(params, "vmax", name),
                              Require(params, "delta", name), horizon);
    }
    if (name == "thm3") {
      CheckKeys(params, {"mu"}, name);
      return MakeThm3Adversary(Require(params, "mu", name), horizon);
    }
    if (name == "gap") {
      CheckKeys(params, {}, name);
      return MakeGapInstance(horizon);
    }
    if (name == "singleton") {
      CheckKeys(params, {}, name);
      return MakeSingletonPriceInstance(horizon);
    }
    if (name == "random") {
      CheckKeys(params, {"seed", "nf", "ng", "rho", "vmax"}, name);
      const double vmax = params.count("vmax") ? Require(params, "vmax", name)
                                               : 1.0;
      return MakeRandomInstance(
          static_cast<uint64_t>(ToInt(params.at("seed"), "random seed")),
          static_cast<int>(ToInt(params.at("nf"), "random nf")),
          static_cast<int>(ToInt(params.at("ng"), "random ng")),
          Require(params, "rho", name), horizon, vmax);
    }
  } catch (const std::out_of_range&) {
    throw ConfigError(name + ": missing parameter (need seed, nf, ng, rho)");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(name + ": " + e.what());
  }
  throw ConfigError("unknown instance '" + name + "'");
}

std::unique_ptr<Strategy> MakeStrategy(const StrategySpec& spec,
                                       const Instance& instance) {
  const std::string where = "strategy " + spec.name;
  try {
    if (spec.kind == "ogdcb") {
      CheckKeys(spec.params, {}, where);
      return std::make_unique<OgdCbStrategy>(instance.horizon, instance.rho,
                                             instance.vmax);
    }
    if (spec.kind == "pacing") {
      CheckKeys(spec.params, {"step", "mu_max"}, where);
      PacingState s =
          PacingState::Default(instance.horizon, instance.rho, instance.vmax);
      if (spec.params.count("step")) s.step_size = Require(spec.params, "step", where);
      if (spec.params.count("mu_max")) s.mu_max = Require(spec.params, "mu_max", where);
      return std::make_unique<PacingStrategy>(s);
    }
    if (spec.kind == "static") {
      CheckKeys(spec.params, {"prob", "policy"}, where);
      if (spec.params.count("prob") == spec.params.count("policy")) {
        throw ConfigError(where + ": static needs exactly one of prob= or policy=");
      }
      if (spec.params.count("prob")) {
        const double p = Require(spec.params, "prob", where);
        if (!(p >= 0.0 && p <= 1.0)) {
          throw ConfigError(where + ": prob must lie in [0, 1]");
        }
        return MakeStaticThrottle([p](double) { return p; }, spec.name);
      }
      if (spec.params.at("policy") != "fluid") {
        throw ConfigError(where + ": unknown policy '" +
                          spec.params.at("policy") + "'");
      }
      if (!instance.IsStochastic()) {
        throw ConfigError(where + ": policy=fluid needs an i.i.d. instance");
      }
      const FluidSolution sol =
          FluidOpt(*instance.value_distribution(),
                   *instance.price_distribution(), instance.rho);
      return MakeStaticThrottle(TabulatedParticipation(sol.support, sol.policy),
                                spec.name);
    }
    if (spec.kind == "always_enter") {
      CheckKeys(spec.params, {}, where);
      return MakeAlwaysEnter();
    }
    if (spec.kind == "always_skip") {
      CheckKeys(spec.params, {}, where);
      return MakeAlwaysSkip();
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": unknown kind '" + spec.kind + "'");
}

}  // namespace throttlesim
