// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0

#include "nof1/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "nof1/errors.hpp"

namespace nof1 {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::islower(static_cast<unsigned char>(c)) &&
        !std::isdigit(static_cast<unsigned char>(c)) && c != '_') {
      return false;
    }
  }
  return true;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (!s.empty() && s.back() == ',') out.push_back("");
  return out;
}

double parse_double(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw ConfigError("config: empty value for " + key);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw ConfigError("config: bad number for " + key + ": '" + s + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty() || s[0] == '-') {
    throw ConfigError("config: bad unsigned value for " + key + ": '" + s +
                      "'");
  }
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 0);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw ConfigError("config: bad unsigned value for " + key + ": '" + s +
                      "'");
  }
  return static_cast<std::uint64_t>(v);
}

std::string json_scalar_to_string(const std::string& key,
                                  const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw ConfigError("config: unsupported JSON value at " + key);
}

ResponseSpec load_response(const ConfigMap& map) {
  ResponseSpec r;
  r.values = map.get_doubles("response.values", {});
  r.coefficients = map.get_doubles("response.coefficients", {});
  r.rates = map.get_doubles("response.rates", {});
  if (r.values.empty() && r.coefficients.empty() && r.rates.empty()) {
    // Default shape: a single geometric decay with daily carryover 1/2.
    r.coefficients = {1.0};
    r.rates = {0.5};
  }
  return r;
}

ErrorSpec load_error(const ConfigMap& map) {
  ErrorSpec e;
  const std::string kind = map.get_string("error.kind", "zero");
  if (kind == "zero") {
    e.kind = ErrorKind::Zero;
  } else if (kind == "values") {
    e.kind = ErrorKind::Values;
  } else if (kind == "sinusoid") {
    e.kind = ErrorKind::Sinusoid;
  } else {
    throw ConfigError("config: error.kind must be zero, values or sinusoid");
  }
  e.values = map.get_doubles("error.values", {});
  e.amplitude = map.get_double("error.amplitude", 0.0);
  e.period = map.get_double("error.period", 7.0);
  e.phase = map.get_double("error.phase", 0.0);
  return e;
}

ModelKind parse_model(const ConfigMap& map, const std::string& key,
                      ModelKind fallback) {
  const std::string s = map.get_string(
      key, fallback == ModelKind::Circular ? "circular" : "linear");
  if (s == "linear") return ModelKind::Linear;
  if (s == "circular") return ModelKind::Circular;
  throw ConfigError("config: " + key + " must be linear or circular");
}

}  // namespace

ConfigMap ConfigMap::from_ini_text(const std::string& text) {
  ConfigMap map;
  std::stringstream ss(text);
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        throw ParseError("config: unterminated section header", lineno);
      }
      section = trim(s.substr(1, s.size() - 2));
      if (!valid_name(section)) {
        throw ParseError("config: bad section name '" + section + "'",
                         lineno);
      }
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config: expected key = value", lineno);
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (!valid_name(key)) {
      throw ParseError("config: bad key name '" + key + "'", lineno);
    }
    if (section.empty()) {
      throw ParseError("config: key '" + key + "' before any [section]",
                       lineno);
    }
    const std::string full = section + "." + key;
    if (map.entries_.count(full) != 0) {
      throw ParseError("config: duplicate key " + full, lineno);
    }
    map.entries_[full] = value;
  }
  return map;
}

ConfigMap ConfigMap::from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(std::string("config: ") + err.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config: JSON root must be an object of sections");
  }
  ConfigMap map;
  for (const auto& [section, body] : doc.items()) {
    if (!valid_name(section)) {
      throw ConfigError("config: bad section name '" + section + "'");
    }
    if (!body.is_object()) {
      throw ConfigError("config: section '" + section +
                        "' must be an object");
    }
    for (const auto& [key, value] : body.items()) {
      if (!valid_name(key)) {
        throw ConfigError("config: bad key name '" + key + "'");
      }
      const std::string full = section + "." + key;
      if (value.is_array()) {
        std::string joined;
        for (std::size_t i = 0; i < value.size(); ++i) {
          if (i > 0) joined += ",";
          joined += json_scalar_to_string(full, value[i]);
        }
        map.entries_[full] = joined;
      } else {
        map.entries_[full] = json_scalar_to_string(full, value);
      }
    }
  }
  return map;
}

ConfigMap ConfigMap::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const bool json = path.size() >= 5 &&
                    path.compare(path.size() - 5, 5, ".json") == 0;
  return json ? from_json_text(buf.str()) : from_ini_text(buf.str());
}

void ConfigMap::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

bool ConfigMap::has(const std::string& key) const {
  return entries_.count(key) != 0;
}

std::string ConfigMap::get_string(const std::string& key,
                                  const std::string& fallback) const {
  consumed_.insert(key);
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : trim(it->second);
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
  consumed_.insert(key);
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : parse_double(key, it->second);
}

std::size_t ConfigMap::get_size(const std::string& key,
                                std::size_t fallback) const {
  consumed_.insert(key);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  return static_cast<std::size_t>(parse_u64(key, it->second));
}

std::uint64_t ConfigMap::get_u64(const std::string& key,
                                 std::uint64_t fallback) const {
  consumed_.insert(key);
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : parse_u64(key, it->second);
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
  consumed_.insert(key);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string s = trim(it->second);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw ConfigError("config: bad boolean for " + key + ": '" + s + "'");
}

std::vector<double> ConfigMap::get_doubles(
    const std::string& key, std::vector<double> fallback) const {
  consumed_.insert(key);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::vector<double> out;
  for (const std::string& item : split_list(it->second)) {
    out.push_back(parse_double(key, item));
  }
  return out;
}

std::vector<std::size_t> ConfigMap::get_sizes(
    const std::string& key, std::vector<std::size_t> fallback) const {
  consumed_.insert(key);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::vector<std::size_t> out;
  for (const std::string& item : split_list(it->second)) {
    out.push_back(static_cast<std::size_t>(parse_u64(key, item)));
  }
  return out;
}

void ConfigMap::check_consumed(const std::set<std::string>& sections) const {
  std::string unknown;
  for (const auto& [key, value] : entries_) {
    const std::size_t dot = key.find('.');
    const std::string section = key.substr(0, dot);
    if (sections.count(section) == 0) continue;
    if (consumed_.count(key) == 0) {
      if (!unknown.empty()) unknown += ", ";
      unknown += key;
    }
  }
  if (!unknown.empty()) {
    throw ConfigError("config: unknown key(s): " + unknown);
  }
}

MonteCarloTask build_task(const SimulateConfig& cfg) {
  const std::size_t T = cfg.design.horizon;
  MonteCarloTask task;
  task.design = cfg.design;
  task.g = cfg.response.realize(T);
  task.e = cfg.error.realize(T);
  task.model = cfg.model;
  task.estimator = cfg.estimator;
  if (cfg.estimator == EstimatorKind::Mom) {
    task.estimand = make_estimand(cfg.estimand, T, cfg.lag_k);
  }
  return task;
}

CompareDesignsConfig load_compare_config(const ConfigMap& map) {
  CompareDesignsConfig cfg;
  cfg.pair.a = map.get_double("pair.a", cfg.pair.a);
  cfg.pair.b = map.get_double("pair.b", cfg.pair.b);
  const std::string form = map.get_string("pair.error_form", "response");
  if (form == "response") {
    cfg.pair.error_form = ErrorForm::Response;
  } else if (form == "impulse") {
    cfg.pair.error_form = ErrorForm::Impulse;
  } else {
    throw ConfigError("config: pair.error_form must be response or impulse");
  }
  cfg.pair.base = load_response(map);
  cfg.horizon = map.get_size("design.horizon", cfg.horizon);
  cfg.washout = map.get_size("design.washout", cfg.washout);
  cfg.block = map.get_size("design.block", cfg.block);
  cfg.replicates = map.get_size("mc.replicates", cfg.replicates);
  cfg.seed = map.get_u64("mc.seed", cfg.seed);
  map.check_consumed({"pair", "response", "design", "mc"});
  return cfg;
}

CoverageConfig load_coverage_config(const ConfigMap& map) {
  CoverageConfig cfg;
  cfg.response = load_response(map);
  cfg.error = load_error(map);
  cfg.model = parse_model(map, "coverage.model", cfg.model);
  cfg.horizon = map.get_size("coverage.horizon", cfg.horizon);
  cfg.replicates = map.get_size("coverage.replicates", cfg.replicates);
  cfg.truncation = map.get_size("coverage.truncation", cfg.truncation);
  cfg.alpha = map.get_double("coverage.alpha", cfg.alpha);
  cfg.plugin_ci = map.get_bool("coverage.plugin_ci", cfg.plugin_ci);
  cfg.histogram_bins =
      map.get_size("coverage.histogram_bins", cfg.histogram_bins);
  cfg.seed = map.get_u64("mc.seed", cfg.seed);
  map.check_consumed({"response", "error", "coverage", "mc"});
  return cfg;
}

ConsistencyConfig load_consistency_config(const ConfigMap& map) {
  ConsistencyConfig cfg;
  cfg.response = load_response(map);
  cfg.error = load_error(map);
  cfg.model = parse_model(map, "consistency.model", cfg.model);
  cfg.horizons = map.get_sizes("consistency.horizons", cfg.horizons);
  cfg.replicates = map.get_size("consistency.replicates", cfg.replicates);
  cfg.truncation = map.get_size("consistency.truncation", cfg.truncation);
  cfg.seed = map.get_u64("mc.seed", cfg.seed);
  map.check_consumed({"response", "error", "consistency", "mc"});
  return cfg;
}

SimulateConfig load_simulate_config(const ConfigMap& map) {
  SimulateConfig cfg;
  const std::string kind =
      map.get_string("design.kind", "rapid_bernoulli");
  if (kind == "rapid_bernoulli" || kind == "rapid") {
    cfg.design.kind = DesignKind::RapidBernoulli;
  } else if (kind == "standard_imd") {
    cfg.design.kind = DesignKind::StandardImmediate;
  } else if (kind == "standard_cum") {
    cfg.design.kind = DesignKind::StandardCumulative;
  } else {
    throw ConfigError(
        "config: design.kind must be rapid_bernoulli, standard_imd or "
        "standard_cum");
  }
  cfg.design.horizon = map.get_size("design.horizon", cfg.design.horizon);
  cfg.design.washout = map.get_size("design.washout", cfg.design.washout);
  cfg.design.block = map.get_size("design.block", cfg.design.block);
  cfg.design.treat_probability = map.get_double(
      "design.treat_probability", cfg.design.treat_probability);
  cfg.response = load_response(map);
  cfg.error = load_error(map);
  cfg.model = parse_model(map, "simulate.model", cfg.model);

  const std::string estimator = map.get_string("simulate.estimator", "mom");
  if (estimator == "mom") {
    cfg.estimator = EstimatorKind::Mom;
  } else if (estimator == "ht" || estimator == "horvitz_thompson") {
    cfg.estimator = EstimatorKind::HorvitzThompson;
  } else {
    throw ConfigError("config: simulate.estimator must be mom or ht");
  }

  const std::string estimand = map.get_string("simulate.estimand", "ate");
  if (estimand == "ate") {
    cfg.estimand = EstimandKind::Ate;
  } else if (estimand == "lag_k") {
    cfg.estimand = EstimandKind::LagK;
  } else if (estimand == "immediate") {
    cfg.estimand = EstimandKind::Immediate;
  } else if (estimand == "cumulative") {
    cfg.estimand = EstimandKind::Cumulative;
  } else if (estimand == "flip") {
    cfg.estimand = EstimandKind::Flip;
  } else {
    throw ConfigError(
        "config: simulate.estimand must be ate, lag_k, immediate, "
        "cumulative or flip");
  }
  cfg.lag_k = map.get_size("simulate.lag_k", cfg.lag_k);
  cfg.replicates = map.get_size("mc.replicates", cfg.replicates);
  cfg.seed = map.get_u64("mc.seed", cfg.seed);
  map.check_consumed({"design", "response", "error", "simulate", "mc"});
  return cfg;
}

}  // namespace nof1
