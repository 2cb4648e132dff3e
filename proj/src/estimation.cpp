// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0

#include "nof1/estimation.hpp"

#include <cmath>
#include <utility>

#include "nof1/errors.hpp"
#include "nof1/kernels.hpp"

namespace nof1 {
namespace {

void check_observation(const Observation& obs) {
  if (obs.x.size() != obs.y.size()) {
    throw DimensionError("observation: path and outcome length mismatch");
  }
}

}  // namespace

double mom_estimate(const Observation& obs, const EstimandWeights& q) {
  check_observation(obs);
  if (q.horizon() != obs.y.size()) {
    throw DimensionError("mom_estimate: weight length mismatch");
  }
  const Signal z = obs.x.centered();
  const Signal u = obs.model == ModelKind::Linear
                       ? linear_convolve(z, q.q())
                       : circular_convolve(z, q.q());
  const double T = static_cast<double>(obs.y.size());
  return 2.0 * dot(u, obs.y) / T;
}

double mom_estimate(const Observation& obs, const EstimandPair& pair) {
  double value = mom_estimate(obs, pair.primary);
  if (pair.baseline.has_value()) value -= mom_estimate(obs, *pair.baseline);
  return value;
}

double ht_estimate(const std::vector<double>& measured_y,
                   const std::vector<double>& arms) {
  if (measured_y.empty()) {
    throw DimensionError("ht_estimate: no measured outcomes");
  }
  if (measured_y.size() != arms.size()) {
    throw DimensionError("ht_estimate: outcome and arm count mismatch");
  }
  for (double a : arms) {
    if (a != 1.0 && a != -1.0) {
      throw DomainError("ht_estimate: arms must be -1 or +1");
    }
  }
  const double n = static_cast<double>(measured_y.size());
  return 2.0 * kernels::ops().dot(measured_y.data(), arms.data(),
                                  measured_y.size()) /
         n;
}

TruncatedResponse estimate_g_truncated(const Observation& obs,
                                       std::size_t k) {
  check_observation(obs);
  const std::size_t T = obs.y.size();
  if (k > T) throw DomainError("estimate_g_truncated: K exceeds horizon");
  std::vector<double> g_hat(T, 0.0);
  const Signal z = obs.x.centered();
  const double* zd = z.data();
  const double* yd = obs.y.data();
  const auto& ops = kernels::ops();
  const double scale = 2.0 / static_cast<double>(T);
  for (std::size_t lag = 0; lag < k; ++lag) {
    double acc = ops.dot(zd, yd + lag, T - lag);
    if (obs.model == ModelKind::Circular && lag > 0) {
      acc += ops.dot(zd + (T - lag), yd, lag);
    }
    g_hat[lag] = scale * acc;
  }
  return TruncatedResponse{Signal(std::move(g_hat)), k};
}

Signal estimate_error(const Observation& obs,
                      const TruncatedResponse& g_hat) {
  check_observation(obs);
  if (g_hat.values.size() != obs.y.size()) {
    throw DimensionError("estimate_error: response length mismatch");
  }
  const Convolver conv(g_hat.values,
                       obs.model == ModelKind::Linear
                           ? Convolver::Mode::Linear
                           : Convolver::Mode::Circular);
  const Signal fitted = conv.apply(obs.x.as_signal());
  std::vector<double> e(obs.y.size());
  for (std::size_t t = 0; t < e.size(); ++t) e[t] = obs.y[t] - fitted[t];
  return Signal(std::move(e));
}

std::size_t default_truncation(std::size_t horizon) {
  if (horizon < 2) return 1;
  const double k = std::ceil(2.0 * std::log(static_cast<double>(horizon)));
  const auto kk = static_cast<std::size_t>(k);
  return kk > horizon ? horizon : kk;
}

}  // namespace nof1
