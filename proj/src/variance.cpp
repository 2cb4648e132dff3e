// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0

#include "nof1/variance.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "nof1/errors.hpp"
#include "nof1/kernels.hpp"

namespace nof1 {
namespace {

std::size_t support_length(const std::vector<double>& v) {
  std::size_t k = v.size();
  while (k > 0 && v[k - 1] == 0.0) --k;
  return k;
}

// One diagonal of H = Tq^T Tg as a running prefix in m = T - 1 - i:
//   upper (j - i = d >= 0): H(i, i+d) = A_d(T-1-i),
//     A_d(m) = sum_{u=d..m} q_u g_{u-d},
//   lower (i - j = d > 0):  H(i, i-d) = B_d(T-1-i),
//     B_d(m) = sum_{u=0..m} q_u g_{u+d}.
// The prefix is zero below `first`, varies over `values`, and is frozen at
// `tail` afterwards (all later summands vanish by support).
struct DiagonalPrefix {
  std::size_t first = 0;
  const std::vector<double>* values = nullptr;
  double tail = 0.0;

  double at(std::size_t m) const {
    if (m < first) return 0.0;
    const std::size_t idx = m - first;
    if (idx < values->size()) return (*values)[idx];
    return tail;
  }
  std::size_t frozen_from() const { return first + values->size(); }
};

DiagonalPrefix upper_prefix(const double* q, std::size_t kq, const double* g,
                            std::size_t /*kg*/, std::size_t T, std::size_t d,
                            std::size_t stop, std::vector<double>& scratch) {
  // stop = min(kq, d + kg): past it no term q_m g_{m-d} is nonzero.
  scratch.clear();
  double run = 0.0;
  for (std::size_t m = d; m < std::min(stop, T); ++m) {
    run += q[m] * g[m - d];
    scratch.push_back(run);
  }
  (void)kq;
  return DiagonalPrefix{d, &scratch, run};
}

DiagonalPrefix lower_prefix(const double* q, std::size_t /*kq*/,
                            const double* g, std::size_t /*kg*/,
                            std::size_t T, std::size_t d, std::size_t stop,
                            std::vector<double>& scratch) {
  // stop = min(kq, kg - d): past it no term q_m g_{m+d} is nonzero.
  scratch.clear();
  double run = 0.0;
  for (std::size_t m = 0; m < std::min(stop, T - d); ++m) {
    run += q[m] * g[m + d];
    scratch.push_back(run);
  }
  return DiagonalPrefix{0, &scratch, run};
}

// sum over m in [mlo, mhi) of p(m)^2
double prefix_sum_sq(const DiagonalPrefix& p, std::size_t mlo,
                     std::size_t mhi) {
  double acc = 0.0;
  const std::size_t lo = std::max(mlo, p.first);
  const std::size_t frozen = p.frozen_from();
  for (std::size_t m = lo; m < std::min(mhi, frozen); ++m) {
    const double v = p.at(m);
    acc += v * v;
  }
  if (mhi > frozen) {
    const std::size_t start = std::max(lo, frozen);
    if (mhi > start) {
      acc += static_cast<double>(mhi - start) * p.tail * p.tail;
    }
  }
  return acc;
}

// sum over mB in [0, count) of pa(mB + d) * pb(mB)
double prefix_cross(const DiagonalPrefix& pa, const DiagonalPrefix& pb,
                    std::size_t d, std::size_t count) {
  const std::size_t frozen_a =
      pa.frozen_from() > d ? pa.frozen_from() - d : 0;
  const std::size_t stable = std::max(frozen_a, pb.frozen_from());
  double acc = 0.0;
  for (std::size_t m = 0; m < std::min(stable, count); ++m) {
    acc += pa.at(m + d) * pb.at(m);
  }
  if (count > stable) {
    acc += static_cast<double>(count - stable) * pa.tail * pb.tail;
  }
  return acc;
}

struct QuadTerms {
  double frob = 0.0;     // ||H||_F^2
  double tr_sq = 0.0;    // tr(H^2)
  double diag_sq = 0.0;  // sum_t H_tt^2
};

// The three chaos moments of H = Tq^T Tg, exploiting the support lengths of
// q and g so that K-supported inputs cost O(T K) instead of O(T^2).
QuadTerms toeplitz_product_terms(const std::vector<double>& q,
                                 const std::vector<double>& g,
                                 std::size_t T) {
  const std::size_t kq = support_length(q);
  const std::size_t kg = support_length(g);
  QuadTerms out;
  if (kq == 0 || kg == 0) return out;
  std::vector<double> scratch_a, scratch_b;

  const auto diag = upper_prefix(q.data(), kq, g.data(), kg, T, 0,
                                 std::min(kq, kg), scratch_a);
  out.diag_sq = prefix_sum_sq(diag, 0, T);
  out.frob = out.diag_sq;

  double cross = 0.0;
  for (std::size_t d = 1; d < T; ++d) {
    const bool has_a = d < kq;
    const bool has_b = d < kg;
    if (!has_a && !has_b) break;
    DiagonalPrefix pa{}, pb{};
    if (has_a) {
      pa = upper_prefix(q.data(), kq, g.data(), kg, T, d,
                        std::min(kq, d + kg), scratch_a);
      out.frob += prefix_sum_sq(pa, d, T);
    }
    if (has_b) {
      pb = lower_prefix(q.data(), kq, g.data(), kg, T, d,
                        kg > d ? std::min(kq, kg - d) : 0, scratch_b);
      out.frob += prefix_sum_sq(pb, 0, T - d);
    }
    if (has_a && has_b) cross += prefix_cross(pa, pb, d, T - d);
  }
  out.tr_sq = out.diag_sq + 2.0 * cross;
  return out;
}

// w = g * 1 + 2e (linear model), i.e. running sums of g plus 2e.
std::vector<double> linear_shift_vector(const Signal& g, const Signal& e) {
  std::vector<double> w(g.size());
  double run = 0.0;
  for (std::size_t t = 0; t < g.size(); ++t) {
    run += g[t];
    w[t] = run + 2.0 * e[t];
  }
  return w;
}

// l_s = sum_{t >= s} q_{t-s} w_t = (Tq^T w)_s
double toeplitz_adjoint_apply_sum_sq(const std::vector<double>& q,
                                     const std::vector<double>& w) {
  const std::size_t T = w.size();
  const std::size_t kq = support_length(q);
  double acc = 0.0;
  for (std::size_t s = 0; s < T; ++s) {
    const std::size_t len = std::min(kq, T - s);
    const double ls = kernels::ops().dot(q.data(), w.data() + s, len);
    acc += ls * ls;
  }
  return acc;
}

void check_inputs(const ImpulseResponse& g, const EstimandWeights& q,
                  const ExogenousError& e) {
  if (g.horizon() != q.horizon() || g.horizon() != e.e.size()) {
    throw DimensionError("variance: length mismatch");
  }
}

// h = 1 (*) g + 2e; the circulant of all-ones collapses to the total mass
// of g on every coordinate.
std::vector<double> circular_shift_vector(const Signal& g, const Signal& e) {
  const double mass =
      kernels::ops().sum(g.data(), g.size());
  std::vector<double> h(g.size());
  for (std::size_t t = 0; t < h.size(); ++t) h[t] = mass + 2.0 * e[t];
  return h;
}

VarianceDecomposition circular_decomposition(const Signal& g, const Signal& q,
                                             const Signal& e) {
  const std::size_t T = g.size();
  const Signal gq = circular_convolve(g, q);
  const Signal gg = circular_convolve(g, g);
  const Signal qq = circular_convolve(q, q);
  const double qg = dot(q, g);
  const double v_q_raw =
      kernels::ops().sum_sq(gq.data(), T) + dot(gg, qq) - 2.0 * qg * qg;
  const Signal h = Signal(circular_shift_vector(g, e));
  const Signal hq = circular_convolve(h, q);
  const double v_l =
      kernels::ops().sum_sq(hq.data(), T) / static_cast<double>(T);
  VarianceDecomposition out;
  out.v_quadratic_raw = v_q_raw;
  out.v_quadratic = std::max(0.0, v_q_raw);
  out.v_linear = v_l;
  out.horizon = T;
  return out;
}

}  // namespace

VarianceDecomposition variance_linear(const ImpulseResponse& g,
                                      const EstimandWeights& q,
                                      const ExogenousError& e) {
  check_inputs(g, q, e);
  const std::size_t T = g.horizon();
  const QuadTerms terms =
      toeplitz_product_terms(q.q().values(), g.g.values(), T);
  const double quad = terms.frob + terms.tr_sq - 2.0 * terms.diag_sq;
  const std::vector<double> w = linear_shift_vector(g.g, e.e);
  const double lin = toeplitz_adjoint_apply_sum_sq(q.q().values(), w);
  VarianceDecomposition out;
  out.v_quadratic_raw = quad / static_cast<double>(T);
  out.v_quadratic = std::max(0.0, out.v_quadratic_raw);
  out.v_linear = lin / static_cast<double>(T);
  out.horizon = T;
  return out;
}

double exact_variance_linear(const ImpulseResponse& g,
                             const EstimandWeights& q,
                             const ExogenousError& e) {
  return variance_linear(g, q, e).total();
}

VarianceDecomposition variance_circular(const ImpulseResponse& g,
                                        const EstimandWeights& q,
                                        const ExogenousError& e) {
  check_inputs(g, q, e);
  return circular_decomposition(g.g, q.q(), e.e);
}

HLForms build_h_l(const ImpulseResponse& g, const EstimandWeights& q,
                  const ExogenousError& e, ModelKind kind, std::size_t cap) {
  check_inputs(g, q, e);
  const std::size_t T = g.horizon();
  if (T > cap) {
    throw DomainError("build_h_l: horizon exceeds dense cap");
  }
  DenseMatrix h = DenseMatrix::zeros(T);
  std::vector<double> l(T, 0.0);
  const auto& qv = q.q().values();
  const auto& gv = g.g.values();
  if (kind == ModelKind::Linear) {
    const std::size_t kq = support_length(qv);
    const std::size_t kg = support_length(gv);
    std::vector<double> scratch;
    for (std::size_t d = 0; d < T && d < kq; ++d) {
      const auto pa = upper_prefix(qv.data(), kq, gv.data(), kg, T, d,
                                   std::min(kq, d + kg), scratch);
      for (std::size_t i = 0; i + d < T; ++i) {
        h.at(i, i + d) = pa.at(T - 1 - i);
      }
    }
    for (std::size_t d = 1; d < T && d < kg; ++d) {
      const auto pb = lower_prefix(qv.data(), kq, gv.data(), kg, T, d,
                                   kg > d ? std::min(kq, kg - d) : 0,
                                   scratch);
      for (std::size_t i = d; i < T; ++i) {
        h.at(i, i - d) = pb.at(T - 1 - i);
      }
    }
    const std::vector<double> w = linear_shift_vector(g.g, e.e);
    const std::size_t kq2 = support_length(qv);
    for (std::size_t s = 0; s < T; ++s) {
      const std::size_t len = std::min(kq2, T - s);
      l[s] = kernels::ops().dot(qv.data(), w.data() + s, len);
    }
  } else {
    // Circulant: H_ij = rho((j - i) mod T), rho(delta) = sum_s q_s g°_{s-d}.
    std::vector<double> rho(T, 0.0);
    for (std::size_t delta = 0; delta < T; ++delta) {
      double acc = 0.0;
      for (std::size_t s = 0; s < T; ++s) {
        acc += qv[s] * gv[(s + T - delta) % T];
      }
      rho[delta] = acc;
    }
    for (std::size_t i = 0; i < T; ++i) {
      for (std::size_t j = 0; j < T; ++j) {
        h.at(i, j) = rho[(j + T - i) % T];
      }
    }
    const std::vector<double> hv = circular_shift_vector(g.g, e.e);
    for (std::size_t i = 0; i < T; ++i) {
      double acc = 0.0;
      for (std::size_t s = 0; s < T; ++s) {
        acc += qv[s] * hv[(s + i) % T];
      }
      l[i] = acc;
    }
  }
  return HLForms{std::move(h), Signal(std::move(l)), kind};
}

VarianceDecomposition plugin_variance(const Observation& obs,
                                      const EstimandWeights& q,
                                      std::size_t k) {
  const std::size_t T = obs.y.size();
  if (q.horizon() != T) {
    throw DimensionError("plugin_variance: weight length mismatch");
  }
  if (k == 0 || 2 * k > T) {
    throw DomainError("plugin_variance: need 1 <= K and 2K <= T");
  }
  const TruncatedResponse g2k = estimate_g_truncated(obs, 2 * k);
  std::vector<double> gk_values(T, 0.0);
  for (std::size_t t = 0; t < k; ++t) gk_values[t] = g2k.values[t];
  const Signal gk(std::move(gk_values));
  const TruncatedResponse gk_trunc{gk, k};
  const Signal residual = estimate_error(obs, gk_trunc);

  VarianceDecomposition out;
  out.horizon = T;
  if (obs.model == ModelKind::Circular) {
    const Signal gq = circular_convolve(gk, q.q());
    const Signal g2 = circular_convolve(g2k.values, g2k.values);
    const Signal qq = circular_convolve(q.q(), q.q());
    const double qg = dot(q.q(), gk);
    out.v_quadratic_raw = kernels::ops().sum_sq(gq.data(), T) + dot(g2, qq) -
                          2.0 * qg * qg;
    const Signal h = Signal(circular_shift_vector(gk, residual));
    const Signal hq = circular_convolve(h, q.q());
    out.v_linear =
        kernels::ops().sum_sq(hq.data(), T) / static_cast<double>(T);
  } else {
    const QuadTerms near =
        toeplitz_product_terms(q.q().values(), gk.values(), T);
    const QuadTerms wide =
        toeplitz_product_terms(q.q().values(), g2k.values.values(), T);
    out.v_quadratic_raw =
        (near.frob + wide.tr_sq - 2.0 * near.diag_sq) / static_cast<double>(T);
    const std::vector<double> w = linear_shift_vector(gk, residual);
    out.v_linear = toeplitz_adjoint_apply_sum_sq(q.q().values(), w) /
                   static_cast<double>(T);
  }
  out.v_quadratic = std::max(0.0, out.v_quadratic_raw);
  return out;
}

SnrReport snr_analysis(double a, double b, double beta, std::size_t horizon,
                       std::size_t washout) {
  if (horizon == 0) throw DomainError("snr_analysis: zero horizon");
  if (washout == 0) throw DomainError("snr_analysis: washout must be >= 1");
  if (a < 0.0 || b < 0.0 || a + b <= 0.0) {
    throw DomainError("snr_analysis: need a, b >= 0 with a + b > 0");
  }
  if (beta < 0.0 || beta >= 1.0) {
    throw DomainError("snr_analysis: beta must be in [0, 1)");
  }
  const double T = static_cast<double>(horizon);
  SnrReport r;
  double v = 0.0;
  for (std::size_t t = 1; t < horizon; ++t) {
    v += (T - static_cast<double>(t)) / T * std::pow(beta, 2.0 * t);
  }
  r.v = v;
  double w = 0.0;
  double run = 0.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    run += std::pow(beta, static_cast<double>(t));
    w += run * run;
  }
  r.w = w / T;
  r.v_geometric_bound = beta * beta / (1.0 - beta * beta);
  r.w_geometric_bound = 1.0 / ((1.0 - beta) * (1.0 - beta));
  const double ratio = (a - b) / (a + b);
  const double var_imd =
      (a + b) * (a + b) / T * (ratio * ratio * r.v + r.w);
  r.rapid_snr = (a - b) / std::sqrt(var_imd);
  r.rapid_prefactor = 1.0 / std::sqrt(ratio * ratio * r.v + r.w);
  r.rapid_prefactor_lower =
      1.0 / std::sqrt(r.v_geometric_bound + r.w_geometric_bound);
  r.conservative_prefactor = 1.0 / std::sqrt(static_cast<double>(washout));
  r.standard_snr_conservative =
      ratio * std::sqrt(T) * r.conservative_prefactor;
  return r;
}

}  // namespace nof1
