// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// Randomized treatment schedules.
//
//   rapid_bernoulli      a fresh coin every day; every day is dosed and
//                        measured.
//   standard_imd         dose and measure on one day, then wait `washout`
//                        undosed days; decisions at 0, 1+w, 2(1+w), ...
//   standard_cum         dose a block of `block` consecutive days, measure
//                        on the block's last day, then wait `washout` days;
//                        block starts at 0, block+w, 2(block+w), ...
//
// Coin flips are pairwise independent across decisions and derived from the
// seed via the pinned generator in rng.hpp, so a (spec, seed) pair yields
// the same realization on every platform.

#ifndef NOF1_DESIGN_HPP
#define NOF1_DESIGN_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nof1/model.hpp"

namespace nof1 {

enum class DesignKind { RapidBernoulli, StandardImmediate, StandardCumulative };

struct DesignSpec {
  DesignKind kind = DesignKind::RapidBernoulli;
  std::size_t horizon = 0;
  std::size_t washout = 0;      // undosed days after each measurement
  std::size_t block = 1;        // dosed days per decision (standard_cum)
  double treat_probability = 0.5;
};

struct Assignment {
  std::size_t decision;  // 0-based decision index
  std::size_t time;      // day of the decision (first dosed day)
  std::uint8_t arm;      // 1 = treatment arm, 0 = control arm
};

struct DesignRealization {
  TreatmentPath path;                  // arm on dosed days, 0 elsewhere
  std::vector<std::uint8_t> dosed;     // 1 on days with a dose
  std::vector<std::uint8_t> measured;  // 1 on days entering the estimator
  std::vector<Assignment> assignments;

  std::size_t horizon() const { return path.size(); }
};

// Days on which a decision is taken (equivalently, the first dosed day of
// each block). Throws ConfigError when no decision fits the horizon.
std::vector<std::size_t> decision_days(const DesignSpec& spec);

DesignRealization realize(const DesignSpec& spec, std::uint64_t seed);

const char* design_kind_name(DesignKind kind);

// Streams all 2^T paths in lexicographic order, x_0 being the most
// significant position: (0,...,0), (0,...,0,1), ..., (1,...,1).
class PathEnumerator {
 public:
  static constexpr std::size_t kMaxHorizon = 20;

  explicit PathEnumerator(std::size_t horizon);

  std::uint64_t count() const { return count_; }
  // Fills the next path; returns false once exhausted.
  bool next(std::vector<std::uint8_t>& x);

 private:
  std::size_t horizon_;
  std::uint64_t count_;
  std::uint64_t index_ = 0;
};

}  // namespace nof1

#endif  // NOF1_DESIGN_HPP
