// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exhaustive-enumeration oracles for the randomization distribution of the
// moment estimator, plus closed-form moments of Rademacher chaoses.
//
// Everything here exists to check the fast paths: small horizons, dense
// matrices, and (for integer inputs) exact rational arithmetic with no
// rounding anywhere. Conventions for the chaos helpers:
//   G = sum_{i<j} w_ij eps_i eps_j,  eps_i iid uniform on {-1, +1},
// with w symmetric and zero on the diagonal. Then
//   E[G^2] = sum_{i<j} w_ij^2,
//   E[G^4] = 3 (E[G^2])^2 - sum_{i!=j} w_ij^4 + 3 c4,
//   c4     = tr(w^4) - 2 sum_i r_i^2 + sum_{i!=j} w_ij^4,
// where r_i = sum_j w_ij^2 and c4 is eight times the sum over 4-cycles of
// the products of their edge weights. c4 can also be taken directly from
// the cycle definition (O(T^4), small T) to cross-check the trace identity.

#ifndef NOF1_CHAOS_HPP
#define NOF1_CHAOS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nof1/model.hpp"
#include "nof1/signal.hpp"

namespace nof1 {

// Exact rational arithmetic on 128-bit integers. Inputs stay small here
// (path numerators and power sums over at most 2^20 paths), so reduced
// fractions never approach the 128-bit range.
class Rational {
 public:
  using Int = __int128;

  Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT(runtime/explicit)
  Rational(Int num, Int den);

  Int num() const { return num_; }
  Int den() const { return den_; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(-num_, den_); }
  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }

  double to_double() const;
  std::string to_string() const;  // "num/den", reduced

 private:
  Int num_ = 0;
  Int den_ = 1;
};

enum class Cycle4Path {
  Auto,           // trace identity, cross-checked by Direct when cheap
  Direct,         // literal sum over 4-cycles, O(T^4), T <= 32
  TraceIdentity,  // tr(w^4) - 2 sum r_i^2 + sum w^4
};

struct ChaosMoments {
  double second = 0.0;
  double fourth = 0.0;
};
ChaosMoments chaos_moments(const DenseMatrix& w,
                           Cycle4Path path = Cycle4Path::Auto);

struct ChaosMomentsExact {
  Rational second;
  Rational fourth;
};
ChaosMomentsExact chaos_moments_exact(
    const std::vector<std::vector<long long>>& w,
    Cycle4Path path = Cycle4Path::Auto);

// Moments of the full quadratic form z^T m z over Rademacher z (any square
// m, diagonal included):
//   mean = tr(m),
//   var  = sum_{i!=j} (m_ij^2 + m_ij m_ji)
//        = ||m||_F^2 + tr(m^2) - 2 sum_i m_ii^2.
struct QuadraticFormMoments {
  double mean = 0.0;
  double variance = 0.0;
};
QuadraticFormMoments quadratic_form_moments(const DenseMatrix& m);

// The law of tau_hat over all 2^T equally likely treatment paths.
// Estimates are indexed by the path read as a binary number, x_0 the most
// significant bit. When g, e, q all have integer entries the moments are
// also computed in exact rational arithmetic (numerators in int64, power
// sums in int128) and integer_exact is set.
struct PathDistribution {
  std::size_t horizon = 0;
  std::vector<double> estimates;
  double mean = 0.0;
  double variance = 0.0;
  double fourth_central = 0.0;

  bool integer_exact = false;
  // Valid only when integer_exact: estimate i = numerators[i] / denominator.
  std::vector<std::int64_t> numerators;
  std::int64_t denominator = 1;
  Rational mean_exact;
  Rational variance_exact;
  Rational fourth_central_exact;
};

inline constexpr std::size_t kDefaultEnumerationCap = 12;
inline constexpr std::size_t kMaxEnumerationHorizon = 20;

PathDistribution enumerate_estimator_distribution(
    const ImpulseResponse& g, const ExogenousError& e,
    const EstimandWeights& q, ModelKind kind,
    std::size_t cap = kDefaultEnumerationCap);

// Exact variance of tau_hat for integer inputs, computed from the dense
// chaos matrix rather than any closed form:
//   var = (1/T^2) [ sum_{i!=j} (H_ij^2 + H_ij H_ji) + sum_i L_i^2 ],
// reported in the same (V_Q, V_L) split as VarianceDecomposition.
struct ExactVariance {
  Rational v_quadratic;
  Rational v_linear;
  Rational total;
};
ExactVariance exact_variance_matrix(const std::vector<long long>& g,
                                    const std::vector<long long>& q,
                                    const std::vector<long long>& e,
                                    ModelKind kind);

}  // namespace nof1

#endif  // NOF1_CHAOS_HPP
