// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// Normal-approximation confidence intervals for the moment estimator and
// diagnostics for when that approximation is trustworthy.

#ifndef NOF1_INFERENCE_HPP
#define NOF1_INFERENCE_HPP

#include <cstddef>
#include <string>

#include "nof1/estimation.hpp"
#include "nof1/model.hpp"
#include "nof1/variance.hpp"

namespace nof1 {

// Phi^{-1}(p) for p in (0, 1). Wichura's rational approximation refined by
// one Newton step on the erfc-based cdf; accurate to full double precision
// over the interesting range.
double normal_quantile(double p);

// Phi(x) = erfc(-x / sqrt(2)) / 2.
double normal_cdf(double x);

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 0.0;
  double level = 0.0;  // 1 - alpha
};

// estimate +/- z_{1-alpha/2} sqrt(variance)
ConfidenceInterval confidence_interval(double estimate, double variance,
                                       double alpha);

// Checks on the two sufficient conditions for asymptotic normality.
//
// Quadratic part (circular model): with rho = g (*) q~ the chaos kernel
// row, the fourth-moment surrogate lhs = ||(|g| (*) |q|) (*) (|g| (*)
// |q|)||^2 must grow slower than T^{1-eps} V_Q^2. The exact fourth-moment
// gap of the normalized chaos obeys
//   |E[G_bar^4] - 3| <= 4/T + 16 lhs / (T V_Q^2),
// reported here as fourth_moment_gap_bound.
//
// Linear part: a nonvanishing mean shift (the e-free linear coefficient)
// keeps the linear term Gaussian-dominant; the sufficient condition
// reported is |<1, g> <1, q>| > 2 ||e||_inf ||q||_1.
struct NormalityDiagnostics {
  double v_quadratic = 0.0;
  double lhs = 0.0;
  double rhs_per_c = 0.0;  // T^{1-eps} V_Q^2
  bool vq_defined = false;
  double fourth_moment_gap_bound = 0.0;
  bool linear_term_dominates = false;
};
NormalityDiagnostics normality_diagnostics(const ImpulseResponse& g,
                                           const EstimandWeights& q,
                                           const ExogenousError& e,
                                           double epsilon = 0.1);

// Everything the estimate pipeline produces for one observed series.
struct EstimateReport {
  double estimate = 0.0;
  std::string estimand;
  std::string model;
  std::size_t horizon = 0;
  std::size_t truncation = 0;
  VarianceDecomposition variance;
  double se = 0.0;
  double alpha = 0.0;
  ConfidenceInterval ci;
};

// Point estimate, plug-in variance (truncation k, defaulted when k == 0),
// and normal CI for the requested estimand.
EstimateReport estimate_with_ci(const Observation& obs,
                                const EstimandPair& estimand,
                                std::size_t k, double alpha);

}  // namespace nof1

#endif  // NOF1_INFERENCE_HPP
