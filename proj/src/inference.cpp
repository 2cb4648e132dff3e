// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0

#include "nof1/inference.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "nof1/errors.hpp"
#include "nof1/kernels.hpp"

namespace nof1 {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;

// AS 241, PPND16.
double ppnd16(double p) {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        q * (((((((2.5090809287301226727e+3 * r +
                    3.3430575583588128105e+4) *
                       r +
                   6.7265770927008700853e+4) *
                      r +
                  4.5921953931549871457e+4) *
                     r +
                 1.3731693765509461125e+4) *
                    r +
                1.9715909503065514427e+3) *
                   r +
               1.3314166789178437745e+2) *
                  r +
              3.3871328727963666080e+0);
    const double den =
        (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
              3.9307895800092710610e+4) *
                 r +
             2.1213794301586595867e+4) *
                r +
            5.3941960214247511077e+3) *
               r +
           6.8718700749205790830e+2) *
              r +
          4.2313330701600911252e+1) *
             r +
         1.0);
    return num / den;
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) *
                  r +
              2.41780725177450611770e-1) *
                 r +
             1.27045825245236838258e+0) *
                r +
            3.64784832476320460504e+0) *
               r +
           5.76949722146069140550e+0) *
              r +
          4.63033784615654529590e+0) *
             r +
         1.42343711074968357734e+0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) *
                  r +
              1.51986665636164571966e-2) *
                 r +
             1.48103976427480074590e-1) *
                r +
            6.89767334985100004550e-1) *
               r +
           1.67638483018380384940e+0) *
              r +
          2.05319162663775882187e+0) *
             r +
         1.0);
    x = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) *
                  r +
              1.24266094738807843860e-3) *
                 r +
             2.65321895265761230930e-2) *
                r +
            2.96560571828504891230e-1) *
               r +
           1.78482653991729133580e+0) *
              r +
          5.46378491116411436990e+0) *
             r +
         6.65790464350110377720e+0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) *
                  r +
              1.84631831751005468180e-5) *
                 r +
             7.86869131145613259100e-4) *
                r +
            1.48753612908506148525e-2) *
               r +
           1.36929880922735805310e-1) *
              r +
          5.99832206555887937690e-1) *
             r +
         1.0);
    x = num / den;
  }
  return q < 0.0 ? -x : x;
}

}  // namespace

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal_quantile: p must be in (0, 1)");
  }
  double x = ppnd16(p);
  // One Newton step against the erfc-based cdf. In the tails compare
  // survival functions so the correction is not swallowed by rounding.
  const double pdf = kInvSqrt2Pi * std::exp(-0.5 * x * x);
  if (pdf > 0.0) {
    // delta = Phi(x) - p, with the upper tail evaluated through the
    // survival function so the correction is not swallowed by rounding.
    double delta;
    if (p > 0.5) {
      const double sf = 0.5 * std::erfc(x / std::sqrt(2.0));
      delta = (1.0 - p) - sf;
    } else {
      delta = normal_cdf(x) - p;
    }
    x -= delta / pdf;
  }
  return x;
}

ConfidenceInterval confidence_interval(double estimate, double variance,
                                       double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("confidence_interval: alpha must be in (0, 1)");
  }
  if (variance < 0.0) {
    throw DomainError("confidence_interval: negative variance");
  }
  const double z = normal_quantile(1.0 - alpha / 2.0);
  const double half = z * std::sqrt(variance);
  return ConfidenceInterval{estimate - half, estimate + half, 1.0 - alpha};
}

NormalityDiagnostics normality_diagnostics(const ImpulseResponse& g,
                                           const EstimandWeights& q,
                                           const ExogenousError& e,
                                           double epsilon) {
  if (g.horizon() != q.horizon() || g.horizon() != e.e.size()) {
    throw DimensionError("normality_diagnostics: length mismatch");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("normality_diagnostics: epsilon must be in (0, 1)");
  }
  const std::size_t T = g.horizon();
  NormalityDiagnostics out;
  out.v_quadratic = variance_circular(g, q, e).v_quadratic_raw;
  out.vq_defined = out.v_quadratic > 0.0;

  std::vector<double> ag(T), aq(T);
  for (std::size_t t = 0; t < T; ++t) {
    ag[t] = std::fabs(g.g[t]);
    aq[t] = std::fabs(q.q()[t]);
  }
  const Signal m = circular_convolve(Signal(std::move(ag)),
                                     Signal(std::move(aq)));
  const Signal mm = circular_convolve(m, m);
  out.lhs = kernels::ops().sum_sq(mm.data(), T);
  out.rhs_per_c = std::pow(static_cast<double>(T), 1.0 - epsilon) *
                  out.v_quadratic * out.v_quadratic;
  out.fourth_moment_gap_bound =
      out.vq_defined
          ? 4.0 / static_cast<double>(T) +
                16.0 * out.lhs /
                    (static_cast<double>(T) * out.v_quadratic *
                     out.v_quadratic)
          : std::numeric_limits<double>::infinity();

  double g_mass = 0.0, q_mass = 0.0, e_max = 0.0, q_l1 = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    g_mass += g.g[t];
    q_mass += q.q()[t];
    e_max = std::max(e_max, std::fabs(e.e[t]));
    q_l1 += std::fabs(q.q()[t]);
  }
  out.linear_term_dominates =
      std::fabs(g_mass * q_mass) > 2.0 * e_max * q_l1;
  return out;
}

EstimateReport estimate_with_ci(const Observation& obs,
                                const EstimandPair& estimand, std::size_t k,
                                double alpha) {
  const std::size_t T = obs.y.size();
  if (k == 0) k = default_truncation(T);
  if (2 * k > T) k = std::max<std::size_t>(1, T / 2);

  EstimateReport report;
  report.estimate = mom_estimate(obs, estimand);
  report.estimand = estimand_kind_name(estimand.kind);
  report.model = model_kind_name(obs.model);
  report.horizon = T;
  report.truncation = k;

  const EstimandWeights* q_eff = &estimand.primary;
  std::optional<EstimandWeights> diff;
  if (estimand.baseline.has_value()) {
    std::vector<double> d(T);
    std::size_t support = 0;
    for (std::size_t t = 0; t < T; ++t) {
      d[t] = estimand.primary.q()[t] - estimand.baseline->q()[t];
      if (d[t] != 0.0) support = t + 1;
    }
    if (support == 0) {
      throw DomainError("estimate_with_ci: degenerate contrast weights");
    }
    diff.emplace(Signal(std::move(d)), support);
    q_eff = &*diff;
  }
  report.variance = plugin_variance(obs, *q_eff, k);
  report.se = std::sqrt(report.variance.total());
  report.alpha = alpha;
  report.ci =
      confidence_interval(report.estimate, report.variance.total(), alpha);
  return report;
}

}  // namespace nof1
