// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact and plug-in variances of the moment estimator under i.i.d.
// fair-coin treatment.
//
// Writing z = 2x - 1 and h = 1 * g + 2e (model-matched convolution), the
// estimation error splits into a pure quadratic chaos and a linear term,
//   tau_hat - tau = (1/T) sum_{i != j} z_i z_j H_ij + (1/T) sum_i z_i L_i,
// where, per model,
//   circular: H_ij = sum_t q°_{t-i} g°_{t-j}   (a circulant matrix),
//             L_i  = sum_t q°_{t-i} h_t,
//   linear:   H = Tq^T Tg,  L = Tq^T (g * 1 + 2e),
// with Tu the lower-triangular Toeplitz operator of u. The variance
// decomposes into quadratic and linear parts,
//   var(tau_hat) = (V_Q + V_L) / T,
// which this module evaluates in closed form (never materializing T x T
// matrices on the fast paths) and by plugging in an estimated response.

#ifndef NOF1_VARIANCE_HPP
#define NOF1_VARIANCE_HPP

#include <cstddef>

#include "nof1/estimation.hpp"
#include "nof1/model.hpp"
#include "nof1/signal.hpp"

namespace nof1 {

struct VarianceDecomposition {
  double v_quadratic = 0.0;      // V_Q, clamped at zero
  double v_linear = 0.0;         // V_L
  double v_quadratic_raw = 0.0;  // V_Q before clamping
  std::size_t horizon = 0;

  // var(tau_hat)
  double total() const {
    return (v_quadratic + v_linear) / static_cast<double>(horizon);
  }
};

// Exact variance of the moment estimator, linear model.
double exact_variance_linear(const ImpulseResponse& g,
                             const EstimandWeights& q,
                             const ExogenousError& e);

// The same split into quadratic and linear parts.
VarianceDecomposition variance_linear(const ImpulseResponse& g,
                                      const EstimandWeights& q,
                                      const ExogenousError& e);

// Exact decomposition, circular model:
//   V_Q = ||g (*) q||^2 + <g (*) g, q (*) q> - 2 <q, g>^2
//   V_L = (1/T) ||(1 (*) g + 2e) (*) q||^2
VarianceDecomposition variance_circular(const ImpulseResponse& g,
                                        const EstimandWeights& q,
                                        const ExogenousError& e);

// Dense chaos matrix H and linear coefficient vector L for either model.
// Diagnostic/oracle path, capped like the other dense builders.
struct HLForms {
  DenseMatrix h;
  Signal l;
  ModelKind model;
};
HLForms build_h_l(const ImpulseResponse& g, const EstimandWeights& q,
                  const ExogenousError& e, ModelKind kind,
                  std::size_t cap = kDefaultDenseCap);

// Plug-in variance from one observation: the response is estimated to K
// lags for the squared terms (2K lags inside the cross term) and the
// residual path replaces e. A negative plug-in V_Q is clamped to zero;
// the raw value is preserved in v_quadratic_raw. Requires 2K <= T.
VarianceDecomposition plugin_variance(const Observation& obs,
                                      const EstimandWeights& q,
                                      std::size_t k);

// Signal-to-noise analysis for the immediate effect of an A-vs-B contrast
// with geometric base response g_t = beta^t.
struct SnrReport {
  double v = 0.0;               // sum_{t>=1} ((T-t)/T) beta^{2t}
  double w = 0.0;               // (1/T) ||g * 1||^2
  double v_geometric_bound = 0.0;  // beta^2 / (1 - beta^2)
  double w_geometric_bound = 0.0;  // 1 / (1 - beta)^2
  double rapid_snr = 0.0;          // exact SNR at horizon T
  double rapid_prefactor = 0.0;       // 1 / sqrt(r^2 v + w), r = (A-B)/(A+B)
  double rapid_prefactor_lower = 0.0;  // 1 / sqrt(v_bound + w_bound)
  double standard_snr_conservative = 0.0;  // r sqrt(T / washout)
  double conservative_prefactor = 0.0;     // 1 / sqrt(washout)
};
SnrReport snr_analysis(double a, double b, double beta, std::size_t horizon,
                       std::size_t washout);

}  // namespace nof1

#endif  // NOF1_VARIANCE_HPP
