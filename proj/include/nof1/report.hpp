// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// Serialization: observation CSV in and out, JSON reports (insertion-ordered
// keys, no timestamps, so equal results serialize to equal bytes), and a
// small SVG renderer for the coverage histogram.

#ifndef NOF1_REPORT_HPP
#define NOF1_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "nof1/config.hpp"
#include "nof1/inference.hpp"
#include "nof1/simulation.hpp"

namespace nof1 {

using OrderedJson = nlohmann::ordered_json;

// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

OrderedJson to_json(const EstimateReport& report);
OrderedJson to_json(const CompareDesignsResult& result);
OrderedJson to_json(const CoverageResult& result);
OrderedJson to_json(const ConsistencyResult& result,
                    const ConsistencyConfig& config);
OrderedJson simulate_summary_json(const SimulateConfig& cfg,
                                  const MonteCarloDraws& draws);

// Day-level observations as "t,x,y" rows under that exact header; t must
// run 0..T-1 in order, x is the binary treatment, y the outcome.
struct ObservationData {
  std::vector<std::uint8_t> x;
  std::vector<double> y;
};
ObservationData read_observation_csv(std::istream& in);
ObservationData read_observation_csv_file(const std::string& path);
void write_observation_csv(std::ostream& out, const TreatmentPath& x,
                           const Signal& y);

// Standardized-estimate histogram with the standard normal density overlaid.
std::string histogram_svg(const std::vector<double>& edges,
                          const std::vector<double>& counts);

}  // namespace nof1

#endif  // NOF1_REPORT_HPP
