// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// Treatment-effect estimators.
//
// The moment estimator for lag weights q on observations (x, y) is
//   tau_hat(q) = (1/T) < z * q, 2y >     with z = 2x - 1,
// using the linear or circular convolution to match the outcome model. It
// is unbiased for the matching lag-weighted effect under i.i.d. fair-coin
// treatment.
//
// The Horvitz-Thompson estimator on n measured outcomes with arms z_i is
//   (2/n) sum_i z_i y_i.

#ifndef NOF1_ESTIMATION_HPP
#define NOF1_ESTIMATION_HPP

#include <cstddef>
#include <vector>

#include "nof1/model.hpp"

namespace nof1 {

struct Observation {
  TreatmentPath x;
  Signal y;
  ModelKind model = ModelKind::Linear;
};

double mom_estimate(const Observation& obs, const EstimandWeights& q);

// Contrast form: estimate(primary) - estimate(baseline), never merging the
// two weight vectors.
double mom_estimate(const Observation& obs, const EstimandPair& pair);

// arms in {-1, +1}, one entry per measured outcome.
double ht_estimate(const std::vector<double>& measured_y,
                   const std::vector<double>& arms);

struct TruncatedResponse {
  Signal values;       // length T, zero past the truncation
  std::size_t lags;    // truncation K
};

// First-K lag recovery: entry k is the moment estimate at the k-lag unit
// impulse. K = 0 yields the all-zero response.
TruncatedResponse estimate_g_truncated(const Observation& obs, std::size_t k);

// Residual path e_hat = y - x * g_hat (model-aware convolution).
Signal estimate_error(const Observation& obs, const TruncatedResponse& g_hat);

// Default truncation ceil(2 log T) used by the plug-in pipeline.
std::size_t default_truncation(std::size_t horizon);

}  // namespace nof1

#endif  // NOF1_ESTIMATION_HPP
