// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0

#include "nof1/model.hpp"

#include <string>
#include <utility>

#include "nof1/errors.hpp"

namespace nof1 {

TreatmentPath::TreatmentPath(std::vector<std::uint8_t> x) : x_(std::move(x)) {
  if (x_.empty()) throw DimensionError("treatment path: empty");
  for (auto v : x_) {
    if (v > 1) throw DomainError("treatment path: entries must be 0 or 1");
  }
}

Signal TreatmentPath::as_signal() const {
  std::vector<double> v(x_.size());
  for (std::size_t t = 0; t < x_.size(); ++t) v[t] = x_[t];
  return Signal(std::move(v));
}

Signal TreatmentPath::centered() const {
  std::vector<double> v(x_.size());
  for (std::size_t t = 0; t < x_.size(); ++t) v[t] = 2.0 * x_[t] - 1.0;
  return Signal(std::move(v));
}

EstimandWeights::EstimandWeights(Signal q, std::size_t support)
    : q_(std::move(q)), support_(support) {
  if (support_ == 0 || support_ > q_.size()) {
    throw DomainError("estimand weights: support must be in [1, T]");
  }
  for (std::size_t t = support_; t < q_.size(); ++t) {
    if (q_[t] != 0.0) {
      throw DomainError("estimand weights: nonzero entry past support");
    }
  }
}

Signal simulate_outcomes(const TreatmentPath& x, const ImpulseResponse& g,
                         const ExogenousError& e, ModelKind kind) {
  if (x.size() != g.horizon() || x.size() != e.e.size()) {
    throw DimensionError("simulate_outcomes: length mismatch");
  }
  const Signal xs = x.as_signal();
  Signal conv = kind == ModelKind::Linear ? linear_convolve(xs, g.g)
                                          : circular_convolve(xs, g.g);
  std::vector<double> y = conv.values();
  for (std::size_t t = 0; t < y.size(); ++t) y[t] += e.e[t];
  return Signal(std::move(y));
}

double estimand_linear(const EstimandWeights& q, const ImpulseResponse& g) {
  if (q.horizon() != g.horizon()) {
    throw DimensionError("estimand: length mismatch");
  }
  const double T = static_cast<double>(g.horizon());
  double acc = 0.0;
  for (std::size_t t = 0; t < q.support(); ++t) {
    acc += (T - static_cast<double>(t)) / T * q.q()[t] * g.g[t];
  }
  return acc;
}

double estimand_circular(const EstimandWeights& q, const ImpulseResponse& g) {
  if (q.horizon() != g.horizon()) {
    throw DimensionError("estimand: length mismatch");
  }
  double acc = 0.0;
  for (std::size_t t = 0; t < q.support(); ++t) acc += q.q()[t] * g.g[t];
  return acc;
}

double estimand(const EstimandWeights& q, const ImpulseResponse& g,
                ModelKind kind) {
  return kind == ModelKind::Linear ? estimand_linear(q, g)
                                   : estimand_circular(q, g);
}

EstimandPair make_estimand(EstimandKind kind, std::size_t horizon,
                           std::size_t k) {
  if (horizon == 0) throw DimensionError("make_estimand: zero horizon");
  switch (kind) {
    case EstimandKind::Ate:
      return {kind, EstimandWeights(Signal::ones(horizon), horizon),
              std::nullopt};
    case EstimandKind::LagK: {
      if (k == 0 || k > horizon) {
        throw DomainError("make_estimand: lag count must be in [1, T]");
      }
      std::vector<double> q(horizon, 0.0);
      for (std::size_t t = 0; t < k; ++t) q[t] = 1.0;
      return {kind, EstimandWeights(Signal(std::move(q)), k), std::nullopt};
    }
    case EstimandKind::Immediate:
      return {kind, EstimandWeights(Signal::unit(horizon, 0), 1),
              std::nullopt};
    case EstimandKind::Cumulative: {
      if (horizon < 2) {
        throw DomainError("make_estimand: cumulative needs T >= 2");
      }
      std::vector<double> q(horizon, 0.0);
      q[0] = 1.0;
      q[1] = 1.0;
      return {kind, EstimandWeights(Signal(std::move(q)), 2), std::nullopt};
    }
    case EstimandKind::Flip: {
      if (horizon < 2) throw DomainError("make_estimand: flip needs T >= 2");
      // Day-two outcome of (B then A) minus (A then B): weight +1 on lag 0
      // against baseline weight +1 on lag 1.
      return {kind, EstimandWeights(Signal::unit(horizon, 0), 1),
              EstimandWeights(Signal::unit(horizon, 1), 2)};
    }
  }
  throw DomainError("make_estimand: unknown kind");
}

double estimand_value(const EstimandPair& pair, const ImpulseResponse& g,
                      ModelKind kind) {
  double value = estimand(pair.primary, g, kind);
  if (pair.baseline.has_value()) value -= estimand(*pair.baseline, g, kind);
  return value;
}

double counterfactual_contrast(const EstimandWeights& qa,
                               const EstimandWeights& qb,
                               const ImpulseResponse& g, ModelKind kind) {
  return estimand(qa, g, kind) - estimand(qb, g, kind);
}

const char* estimand_kind_name(EstimandKind kind) {
  switch (kind) {
    case EstimandKind::Ate:
      return "ate";
    case EstimandKind::LagK:
      return "lag_k";
    case EstimandKind::Immediate:
      return "immediate";
    case EstimandKind::Cumulative:
      return "cumulative";
    case EstimandKind::Flip:
      return "flip";
  }
  return "unknown";
}

const char* model_kind_name(ModelKind kind) {
  return kind == ModelKind::Circular ? "circular" : "linear";
}

}  // namespace nof1
