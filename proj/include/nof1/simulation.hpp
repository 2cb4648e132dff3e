// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo experiments over randomized treatment paths: head-to-head
// design comparisons, coverage of closed-form confidence bands, and
// consistency of the truncated response estimate.
//
// Replicate r always draws its path from replicate_seed(seed, r), and every
// per-replicate result lands in a slot indexed by r before any reduction.
// Results are therefore identical (to the byte) for any thread count.

#ifndef NOF1_SIMULATION_HPP
#define NOF1_SIMULATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nof1/design.hpp"
#include "nof1/model.hpp"
#include "nof1/signal.hpp"

namespace nof1 {

// Response shape, either explicit lag values or a sum of geometric decays
// g_t = sum_j coefficients[j] * rates[j]^t.
struct ResponseSpec {
  std::vector<double> values;
  std::vector<double> coefficients;
  std::vector<double> rates;

  Signal realize(std::size_t horizon) const;
};

// Deterministic day-level nuisance term.
enum class ErrorKind { Zero, Values, Sinusoid };
struct ErrorSpec {
  ErrorKind kind = ErrorKind::Zero;
  std::vector<double> values;
  double amplitude = 0.0;
  double period = 7.0;  // days per cycle
  double phase = 0.0;

  Signal realize(std::size_t horizon) const;
};

// Two active drugs sharing one response shape: drug A responds with
// a * base, drug B with b * base, and every dosing day administers exactly
// one of them. Folding drug B into the nuisance term turns this into the
// single-treatment estimation frame y = x * g + e with g = (a - b) * base:
//   Response: e = b * (dosed * base), the accumulated drug-B response
//             under the design's dosing calendar;
//   Impulse:  e = b * base, a single drug-B pulse at day zero.
enum class ErrorForm { Response, Impulse };
struct DrugPair {
  double a = 2.0;
  double b = 1.0;
  ResponseSpec base;
  ErrorForm error_form = ErrorForm::Response;
};

enum class EstimatorKind { Mom, HorvitzThompson };

// One simulation scenario in the estimation frame.
struct MonteCarloTask {
  DesignSpec design;
  Signal g = Signal::zeros(1);  // length design.horizon
  Signal e = Signal::zeros(1);  // length design.horizon
  ModelKind model = ModelKind::Linear;
  EstimatorKind estimator = EstimatorKind::Mom;
  std::optional<EstimandPair> estimand;  // required for Mom
};

// Everything one replicate generates.
struct ReplicateData {
  DesignRealization realization;
  Signal y;
};
ReplicateData make_replicate(const MonteCarloTask& task, std::uint64_t seed,
                             std::size_t r);

// The estimator a Monte Carlo run applies to one replicate.
double estimate_replicate(const MonteCarloTask& task,
                          const ReplicateData& data);

struct MonteCarloDraws {
  std::vector<double> estimates;      // one per replicate
  std::vector<double> avg_responses;  // mean outcome over measured days
};
MonteCarloDraws run_monte_carlo(const MonteCarloTask& task,
                                std::size_t replicates, std::uint64_t seed,
                                std::size_t threads);

struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;       // sample standard deviation
  double mean_se = 0.0;  // sd / sqrt(n)
};
SummaryStats summarize(const std::vector<double>& values);

// ---- design comparison -------------------------------------------------

struct CompareDesignsConfig {
  std::size_t horizon = 35;
  std::size_t replicates = 5000;
  std::size_t washout = 5;  // rest days between standard-design decisions
  std::size_t block = 2;    // dosing days per standard cumulative block
  DrugPair pair;
  std::uint64_t seed = 0x5eed0001u;
};

struct DesignRow {
  std::string design;
  std::string estimand;
  std::string estimator;
  std::size_t replicates = 0;
  double target = 0.0;  // exact estimand under the generating pair
  double mean = 0.0;
  double mean_se = 0.0;
  double sd = 0.0;
  double snr = 0.0;  // |target| / sd
  double avg_response = 0.0;
  double avg_response_se = 0.0;
};

struct CompareDesignsResult {
  CompareDesignsConfig config;
  std::vector<DesignRow> rows;
};
CompareDesignsResult compare_designs(const CompareDesignsConfig& cfg,
                                     std::size_t threads);

// ---- confidence-band coverage -------------------------------------------

struct CoverageConfig {
  std::size_t horizon = 200;
  std::size_t replicates = 20000;
  ModelKind model = ModelKind::Linear;
  ResponseSpec response;
  ErrorSpec error;
  std::size_t truncation = 25;  // K: the estimand sums lags 0..K-1
  double alpha = 0.05;          // level for the plug-in CIs
  bool plugin_ci = false;
  std::size_t histogram_bins = 40;
  std::uint64_t seed = 0x5eed0002u;
};

struct CoverageResult {
  std::size_t horizon = 0;
  std::size_t replicates = 0;
  std::string model;
  std::size_t truncation = 0;
  double estimand = 0.0;          // tau under the generating model
  double variance_formula = 0.0;  // closed-form circular (V_Q + V_L) / T
  double band_halfwidth = 0.0;    // 2 sqrt(variance_formula)
  double coverage = 0.0;          // fraction of replicates inside the band
  double coverage_se = 0.0;
  bool plugin_ci = false;
  double plugin_alpha = 0.0;
  double plugin_coverage = 0.0;
  double plugin_coverage_se = 0.0;
  double ks_statistic = 0.0;  // standardized estimates vs N(0, 1)
  double mean = 0.0;
  double sd = 0.0;
  std::vector<double> hist_edges;   // bins + 1 edges over [-4, 4]
  std::vector<double> hist_counts;  // bins entries
  std::vector<double> estimates;    // per-replicate, for downstream tests
};
CoverageResult coverage_experiment(const CoverageConfig& cfg,
                                   std::size_t threads);

// ---- truncated-response consistency --------------------------------------

struct ConsistencyConfig {
  std::vector<std::size_t> horizons = {200, 1000, 5000};
  std::size_t replicates = 1000;
  ModelKind model = ModelKind::Circular;
  ResponseSpec response;
  ErrorSpec error;
  std::size_t truncation = 0;  // 0: ceil(2 ln T) per horizon
  std::uint64_t seed = 0x5eed0003u;
};

struct ConsistencyRow {
  std::size_t horizon = 0;
  std::size_t truncation = 0;
  double median_sup_error = 0.0;  // median over replicates of
                                  // max_{k < K} |g_hat_k - g_k|
  double p90_sup_error = 0.0;
  double mean_sup_error = 0.0;
};

struct ConsistencyResult {
  std::vector<ConsistencyRow> rows;
  double log_slope = 0.0;  // least-squares d log(median) / d log(T)
};
ConsistencyResult consistency_sweep(const ConsistencyConfig& cfg,
                                    std::size_t threads);

// ---- distribution distances ----------------------------------------------

double ks_vs_standard_normal(std::vector<double> values);
double ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace nof1

#endif  // NOF1_SIMULATION_HPP
