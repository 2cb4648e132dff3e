// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// Outcome model: a binary treatment path drives a linear time-invariant
// response plus a deterministic error path,
//   y = x * g + e          (running-in dynamics)
//   y = x (*) g + e        (steady-state / wrap-around dynamics)
// and lag-weighted treatment effects
//   linear form    sum_t ((T - t) / T) q_t g_t
//   circular form  <q, g>
// with weights q supported on the first K lags.

#ifndef NOF1_MODEL_HPP
#define NOF1_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nof1/signal.hpp"

namespace nof1 {

enum class ModelKind { Linear, Circular };

struct ImpulseResponse {
  Signal g;

  std::size_t horizon() const { return g.size(); }
};

// Deterministic, bounded error path; never randomized by this library.
struct ExogenousError {
  Signal e;
};

// x in {0, 1}^T.
class TreatmentPath {
 public:
  explicit TreatmentPath(std::vector<std::uint8_t> x);

  std::size_t size() const { return x_.size(); }
  std::uint8_t operator[](std::size_t t) const { return x_[t]; }
  const std::vector<std::uint8_t>& bits() const { return x_; }

  Signal as_signal() const;
  // z = 2x - 1 in {-1, +1}^T.
  Signal centered() const;

 private:
  std::vector<std::uint8_t> x_;
};

// Lag weights q with q_t = 0 for t >= support.
class EstimandWeights {
 public:
  EstimandWeights(Signal q, std::size_t support);

  const Signal& q() const { return q_; }
  std::size_t support() const { return support_; }
  std::size_t horizon() const { return q_.size(); }

 private:
  Signal q_;
  std::size_t support_;
};

Signal simulate_outcomes(const TreatmentPath& x, const ImpulseResponse& g,
                         const ExogenousError& e, ModelKind kind);

double estimand_linear(const EstimandWeights& q, const ImpulseResponse& g);
double estimand_circular(const EstimandWeights& q, const ImpulseResponse& g);
double estimand(const EstimandWeights& q, const ImpulseResponse& g,
                ModelKind kind);

enum class EstimandKind { Ate, LagK, Immediate, Cumulative, Flip };

// A target effect. Contrasts (currently only the flip effect) carry a
// baseline; their value is estimand(primary) - estimand(baseline).
struct EstimandPair {
  EstimandKind kind;
  EstimandWeights primary;
  std::optional<EstimandWeights> baseline;
};

// K is the lag count for LagK and ignored otherwise.
EstimandPair make_estimand(EstimandKind kind, std::size_t horizon,
                           std::size_t k = 0);

double estimand_value(const EstimandPair& pair, const ImpulseResponse& g,
                      ModelKind kind);

// tau(qa) - tau(qb), evaluating each side separately.
double counterfactual_contrast(const EstimandWeights& qa,
                               const EstimandWeights& qb,
                               const ImpulseResponse& g, ModelKind kind);

const char* estimand_kind_name(EstimandKind kind);
const char* model_kind_name(ModelKind kind);

}  // namespace nof1

#endif  // NOF1_MODEL_HPP
