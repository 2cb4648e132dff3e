// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration: flat "section.key = value" maps parsed from an
// INI-style text file or an equivalent JSON object, plus loaders that turn
// a map into the typed configs the simulation entry points take.
//
// Loaders own specific sections. Every key in an owned section must be
// consumed, so a typo like "replciates" fails loudly instead of silently
// running defaults; sections owned by other subcommands are ignored, which
// lets one preset file serve several experiments.

#ifndef NOF1_CONFIG_HPP
#define NOF1_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nof1/simulation.hpp"

namespace nof1 {

class ConfigMap {
 public:
  static ConfigMap from_ini_text(const std::string& text);
  static ConfigMap from_json_text(const std::string& text);
  // Dispatches on extension: ".json" is parsed as JSON, anything else as INI.
  static ConfigMap from_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  // Typed getters; a present-but-malformed value throws ConfigError naming
  // the key. Every getter marks the key consumed.
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  std::uint64_t get_u64(const std::string& key,
                        std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key,
                                  std::vector<double> fallback) const;
  std::vector<std::size_t> get_sizes(
      const std::string& key, std::vector<std::size_t> fallback) const;

  // Throws ConfigError if any key in one of `sections` was never consumed.
  void check_consumed(const std::set<std::string>& sections) const;

  const std::map<std::string, std::string>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::string> entries_;
  mutable std::set<std::string> consumed_;
};

// Scenario for the generic `simulate` subcommand.
struct SimulateConfig {
  DesignSpec design{DesignKind::RapidBernoulli, 35, 0, 1, 0.5};
  ResponseSpec response;
  ErrorSpec error;
  ModelKind model = ModelKind::Linear;
  EstimatorKind estimator = EstimatorKind::Mom;
  EstimandKind estimand = EstimandKind::Ate;
  std::size_t lag_k = 0;
  std::size_t replicates = 1000;
  std::uint64_t seed = 0x5eed0000u;
};
MonteCarloTask build_task(const SimulateConfig& cfg);

// Section ownership: [pair] [response] [design] [mc]
CompareDesignsConfig load_compare_config(const ConfigMap& map);
// Section ownership: [response] [error] [coverage] [mc]
CoverageConfig load_coverage_config(const ConfigMap& map);
// Section ownership: [response] [error] [consistency] [mc]
ConsistencyConfig load_consistency_config(const ConfigMap& map);
// Section ownership: [design] [response] [error] [simulate] [mc]
SimulateConfig load_simulate_config(const ConfigMap& map);

}  // namespace nof1

#endif  // NOF1_CONFIG_HPP
