// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0

#include "nof1/design.hpp"

#include <string>

#include "nof1/errors.hpp"
#include "nof1/rng.hpp"

namespace nof1 {

std::vector<std::size_t> decision_days(const DesignSpec& spec) {
  if (spec.horizon == 0) throw ConfigError("design: zero horizon");
  if (spec.treat_probability <= 0.0 || spec.treat_probability >= 1.0) {
    throw ConfigError("design: treatment probability must be in (0, 1)");
  }
  std::vector<std::size_t> days;
  switch (spec.kind) {
    case DesignKind::RapidBernoulli:
      for (std::size_t t = 0; t < spec.horizon; ++t) days.push_back(t);
      return days;
    case DesignKind::StandardImmediate: {
      const std::size_t stride = 1 + spec.washout;
      for (std::size_t t = 0; t < spec.horizon; t += stride) days.push_back(t);
      break;
    }
    case DesignKind::StandardCumulative: {
      if (spec.block == 0) throw ConfigError("design: zero block length");
      const std::size_t stride = spec.block + spec.washout;
      for (std::size_t t = 0; t + spec.block <= spec.horizon; t += stride) {
        days.push_back(t);
      }
      break;
    }
  }
  if (days.empty()) {
    throw ConfigError("design: horizon " + std::to_string(spec.horizon) +
                      " leaves no complete decision");
  }
  return days;
}

DesignRealization realize(const DesignSpec& spec, std::uint64_t seed) {
  const auto days = decision_days(spec);
  const std::size_t T = spec.horizon;
  Rng rng(seed);

  std::vector<std::uint8_t> x(T, 0);
  std::vector<std::uint8_t> dosed(T, 0);
  std::vector<std::uint8_t> measured(T, 0);
  std::vector<Assignment> assignments;
  assignments.reserve(days.size());

  const std::size_t block =
      spec.kind == DesignKind::StandardCumulative ? spec.block : 1;
  for (std::size_t i = 0; i < days.size(); ++i) {
    const std::uint8_t arm = spec.treat_probability == 0.5
                                 ? static_cast<std::uint8_t>(rng.coin())
                                 : static_cast<std::uint8_t>(
                                       rng.bernoulli(spec.treat_probability));
    assignments.push_back({i, days[i], arm});
    for (std::size_t b = 0; b < block && days[i] + b < T; ++b) {
      x[days[i] + b] = arm;
      dosed[days[i] + b] = 1;
    }
    measured[days[i] + block - 1] = 1;
  }
  return DesignRealization{TreatmentPath(std::move(x)), std::move(dosed),
                           std::move(measured), std::move(assignments)};
}

const char* design_kind_name(DesignKind kind) {
  switch (kind) {
    case DesignKind::RapidBernoulli:
      return "rapid_bernoulli";
    case DesignKind::StandardImmediate:
      return "standard_imd";
    case DesignKind::StandardCumulative:
      return "standard_cum";
  }
  return "unknown";
}

PathEnumerator::PathEnumerator(std::size_t horizon) : horizon_(horizon) {
  if (horizon == 0) throw DimensionError("enumerate_paths: zero horizon");
  if (horizon > kMaxHorizon) {
    throw DomainError("enumerate_paths: horizon " + std::to_string(horizon) +
                      " exceeds cap " + std::to_string(kMaxHorizon));
  }
  count_ = std::uint64_t{1} << horizon_;
}

bool PathEnumerator::next(std::vector<std::uint8_t>& x) {
  if (index_ >= count_) return false;
  x.assign(horizon_, 0);
  for (std::size_t t = 0; t < horizon_; ++t) {
    x[t] = static_cast<std::uint8_t>((index_ >> (horizon_ - 1 - t)) & 1u);
  }
  ++index_;
  return true;
}

}  // namespace nof1
