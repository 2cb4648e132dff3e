// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: ten end-to-end checks covering unbiasedness, exact
// variances, the chaos oracle, the benchmark design table, coverage,
// asymptotic normality, model equivalence, plug-in validity, the SNR
// claims, and byte-level determinism. One [PASS]/[FAIL] line each; every
// tolerance is written out next to its check.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nof1/chaos.hpp"
#include "nof1/config.hpp"
#include "nof1/design.hpp"
#include "nof1/errors.hpp"
#include "nof1/estimation.hpp"
#include "nof1/inference.hpp"
#include "nof1/report.hpp"
#include "nof1/rng.hpp"
#include "nof1/signal.hpp"
#include "nof1/simulation.hpp"
#include "nof1/variance.hpp"

#ifndef NOF1_CLI_PATH
#error "NOF1_CLI_PATH must point at the nof1 binary"
#endif
#ifndef NOF1_PRESET_DIR
#error "NOF1_PRESET_DIR must point at the preset directory"
#endif

namespace {

using nof1::EstimandWeights;
using nof1::ExogenousError;
using nof1::ImpulseResponse;
using nof1::ModelKind;
using nof1::Rational;
using nof1::Signal;

int g_failures = 0;

void report(int index, const char* label, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << index << " " << label;
  if (!detail.empty()) std::cout << ": " << detail;
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

// The mixed-decay response used by the coverage, normality, equivalence
// and plug-in checks (matches presets/fig23.cfg).
Signal mixture_response(std::size_t T) {
  nof1::ResponseSpec spec;
  spec.coefficients = {1.00, -1.60, 0.75};
  spec.rates = {0.65, 0.50, 0.48};
  return spec.realize(T);
}

struct IntInstance {
  std::vector<long long> g, q, e;
  std::size_t kq = 1;
};

IntInstance random_int_instance(nof1::Rng& rng, std::size_t T) {
  IntInstance in;
  in.g.resize(T);
  in.q.assign(T, 0);
  in.e.resize(T);
  in.kq = 1 + rng.next_u64() % T;
  for (std::size_t t = 0; t < T; ++t) {
    in.g[t] = (long long)(rng.next_u64() % 5) - 2;
    in.e[t] = (long long)(rng.next_u64() % 5) - 2;
    if (t < in.kq) in.q[t] = (long long)(rng.next_u64() % 5) - 2;
  }
  if (in.q[0] == 0) in.q[0] = 1;
  return in;
}

Signal to_signal(const std::vector<long long>& v) {
  std::vector<double> d(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) d[i] = double(v[i]);
  return Signal(std::move(d));
}

bool rational_abs_leq(const Rational& x, const Rational& bound) {
  Rational a = x.num() < 0 ? -x : x;
  const Rational d = bound - a;
  return d.num() >= 0;
}

// ---- 1: unbiasedness ------------------------------------------------------

void criterion_unbiasedness() {
  nof1::Rng rng(0xACC00001);
  std::size_t checked = 0;
  bool ok = true;
  std::string detail;

  // 50 integer instances: exact rational equality of the enumerated mean
  // and the estimand.
  for (int rep = 0; rep < 50 && ok; ++rep) {
    const std::size_t T = 2 + rng.next_u64() % 11;  // 2..12
    const IntInstance in = random_int_instance(rng, T);
    const ImpulseResponse g{to_signal(in.g)};
    const EstimandWeights q(to_signal(in.q), in.kq);
    const ExogenousError e{to_signal(in.e)};
    for (ModelKind kind : {ModelKind::Linear, ModelKind::Circular}) {
      const auto dist =
          nof1::enumerate_estimator_distribution(g, e, q, kind);
      if (!dist.integer_exact) {
        ok = false;
        detail = "integer instance not recognized as exact";
        break;
      }
      long long num = 0;
      for (std::size_t t = 0; t < T; ++t) {
        num += (kind == ModelKind::Linear ? (long long)(T - t) : (long long)T)
               * in.q[t] * in.g[t];
      }
      const Rational want(num, (long long)T);
      if (dist.mean_exact != want) {
        ok = false;
        detail = "exact mean " + dist.mean_exact.to_string() + " != " +
                 want.to_string() + " at T=" + std::to_string(T);
        break;
      }
      ++checked;
    }
  }

  // 50 float instances: 1e-10 relative.
  const double tol = 1e-10;
  for (int rep = 0; rep < 50 && ok; ++rep) {
    const std::size_t T = 2 + rng.next_u64() % 11;
    std::vector<double> gv(T), qv(T, 0.0), ev(T);
    const std::size_t kq = 1 + rng.next_u64() % T;
    for (std::size_t t = 0; t < T; ++t) {
      gv[t] = 4.0 * rng.next_double() - 2.0;
      ev[t] = 4.0 * rng.next_double() - 2.0;
      if (t < kq) qv[t] = 4.0 * rng.next_double() - 2.0;
    }
    const ImpulseResponse g{Signal(gv)};
    const EstimandWeights q(Signal(qv), kq);
    const ExogenousError e{Signal(ev)};
    for (ModelKind kind : {ModelKind::Linear, ModelKind::Circular}) {
      const auto dist =
          nof1::enumerate_estimator_distribution(g, e, q, kind);
      const double want = nof1::estimand(q, g, kind);
      const double err = std::fabs(dist.mean - want);
      if (err > tol * std::max(1.0, std::fabs(want))) {
        ok = false;
        detail = "float mean off by " + fmt(err);
        break;
      }
      ++checked;
    }
  }

  if (ok) detail = std::to_string(checked) + " instance-model pairs";
  report(1, "unbiasedness over all paths", ok, detail);
}

// ---- 2: exact variance ----------------------------------------------------

void criterion_exact_variance() {
  nof1::Rng rng(0xACC00002);
  std::size_t checked = 0;
  bool ok = true;
  std::string detail;
  const double tol = 1e-10;

  for (int rep = 0; rep < 50 && ok; ++rep) {
    const std::size_t T = 2 + rng.next_u64() % 11;
    const IntInstance in = random_int_instance(rng, T);
    const ImpulseResponse g{to_signal(in.g)};
    const EstimandWeights q(to_signal(in.q), in.kq);
    const ExogenousError e{to_signal(in.e)};
    for (ModelKind kind : {ModelKind::Linear, ModelKind::Circular}) {
      const auto dist =
          nof1::enumerate_estimator_distribution(g, e, q, kind);
      const auto exact = nof1::exact_variance_matrix(in.g, in.q, in.e, kind);
      if (dist.variance_exact != exact.total) {
        ok = false;
        detail = "dense rational variance != enumeration at T=" +
                 std::to_string(T);
        break;
      }
      const auto closed = kind == ModelKind::Linear
                              ? nof1::variance_linear(g, q, e)
                              : nof1::variance_circular(g, q, e);
      const double want = dist.variance_exact.to_double();
      if (std::fabs(closed.total() - want) >
          tol * std::max(1.0, std::fabs(want))) {
        ok = false;
        detail = "closed form off by " + fmt(closed.total() - want);
        break;
      }
      ++checked;
    }
  }

  for (int rep = 0; rep < 50 && ok; ++rep) {
    const std::size_t T = 2 + rng.next_u64() % 11;
    std::vector<double> gv(T), qv(T, 0.0), ev(T);
    const std::size_t kq = 1 + rng.next_u64() % T;
    for (std::size_t t = 0; t < T; ++t) {
      gv[t] = 4.0 * rng.next_double() - 2.0;
      ev[t] = 4.0 * rng.next_double() - 2.0;
      if (t < kq) qv[t] = 4.0 * rng.next_double() - 2.0;
    }
    const ImpulseResponse g{Signal(gv)};
    const EstimandWeights q(Signal(qv), kq);
    const ExogenousError e{Signal(ev)};
    for (ModelKind kind : {ModelKind::Linear, ModelKind::Circular}) {
      const auto dist =
          nof1::enumerate_estimator_distribution(g, e, q, kind);
      const auto closed = kind == ModelKind::Linear
                              ? nof1::variance_linear(g, q, e)
                              : nof1::variance_circular(g, q, e);
      if (std::fabs(closed.total() - dist.variance) >
          tol * std::max(1.0, std::fabs(dist.variance))) {
        ok = false;
        detail = "float variance off by " +
                 fmt(closed.total() - dist.variance);
        break;
      }
      ++checked;
    }
  }

  if (ok) detail = std::to_string(checked) + " instance-model pairs";
  report(2, "closed-form variances equal enumeration", ok, detail);
}

// ---- 3: chaos moments -----------------------------------------------------

void criterion_chaos_moments() {
  nof1::Rng rng(0xACC00003);
  bool ok = true;
  std::string detail;
  std::size_t checked = 0;

  for (int rep = 0; rep < 100 && ok; ++rep) {
    const std::size_t n = 2 + rng.next_u64() % 9;  // 2..10
    std::vector<std::vector<long long>> w(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const long long v = (long long)(rng.next_u64() % 9) - 4;
        w[i][j] = v;
        w[j][i] = v;
      }
    }
    // literal enumeration over every sign vector
    long long sum_sq = 0, sum_quad = 0;
    const std::uint64_t paths = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < paths; ++mask) {
      long long gval = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const long long si = (mask >> i) & 1 ? 1 : -1;
        for (std::size_t j = i + 1; j < n; ++j) {
          const long long sj = (mask >> j) & 1 ? 1 : -1;
          gval += w[i][j] * si * sj;
        }
      }
      sum_sq += gval * gval;
      sum_quad += gval * gval * gval * gval;
    }
    const Rational want2(sum_sq, (long long)paths);
    const Rational want4(sum_quad, (long long)paths);
    for (nof1::Cycle4Path path :
         {nof1::Cycle4Path::Direct, nof1::Cycle4Path::TraceIdentity}) {
      const auto m = nof1::chaos_moments_exact(w, path);
      if (m.second != want2 || m.fourth != want4) {
        ok = false;
        detail = "formula mismatch at n=" + std::to_string(n);
        break;
      }
      ++checked;
    }
  }

  if (ok) detail = std::to_string(checked) + " matrix-path pairs";
  report(3, "chaos moment formulas equal enumeration", ok, detail);
}

// ---- 4: benchmark design table --------------------------------------------

void criterion_design_table() {
  bool ok = true;
  std::string detail;
  try {
    const auto map = nof1::ConfigMap::from_file(
        std::string(NOF1_PRESET_DIR) + "/table1.cfg");
    const auto cfg = nof1::load_compare_config(map);
    const auto result = nof1::compare_designs(cfg, 2);

    // Pinned external benchmark numbers: per-row mean, snr and average
    // response under the (a, b) = (2, 1) halving-response pair at T=35.
    struct Want {
      double mean, snr, avg;
    };
    const Want want[5] = {
        {1.017, 1.032, 2.918},  // rapid, immediate
        {1.516, 0.770, 2.918},  // rapid, cumulative
        {0.517, 2.390, 2.918},  // rapid, flip
        {0.969, 0.833, 1.536},  // standard immediate
        {1.525, 0.751, 2.268},  // standard cumulative
    };
    if (result.rows.size() != 5) {
      report(4, "benchmark design table", false, "expected 5 rows");
      return;
    }
    for (std::size_t i = 0; i < 5 && ok; ++i) {
      const auto& row = result.rows[i];
      const double mean_tol = 3.0 * row.mean_se;  // 3 MC standard errors
      if (std::fabs(row.mean - want[i].mean) > mean_tol) {
        ok = false;
        detail = "row " + std::to_string(i) + " mean " + fmt(row.mean) +
                 " vs " + fmt(want[i].mean) + " (tol " + fmt(mean_tol) + ")";
      } else if (std::fabs(row.snr / want[i].snr - 1.0) > 0.10) {
        ok = false;
        detail = "row " + std::to_string(i) + " snr " + fmt(row.snr) +
                 " vs " + fmt(want[i].snr) + " (tol 10%)";
      } else if (std::fabs(row.avg_response - want[i].avg) > 0.05) {
        ok = false;
        detail = "row " + std::to_string(i) + " avg response " +
                 fmt(row.avg_response) + " vs " + fmt(want[i].avg) +
                 " (tol 0.05)";
      }
    }
    if (ok) detail = "5 rows within 3 SE / 10% / 0.05";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(4, "benchmark design table", ok, detail);
}

// ---- 5..8 share the heavyweight runs --------------------------------------

void criterion_band_coverage() {
  bool ok = true;
  std::string detail;
  try {
    const auto map = nof1::ConfigMap::from_file(
        std::string(NOF1_PRESET_DIR) + "/fig23.cfg");
    const auto cfg = nof1::load_coverage_config(map);
    const auto result = nof1::coverage_experiment(cfg, 2);
    // two-sigma band coverage within 0.7 percentage points of 95.49%
    const double got_pp = 100.0 * result.coverage;
    ok = std::fabs(got_pp - 95.49) <= 0.7;
    detail = "coverage " + fmt(got_pp) + "% vs 95.49% +/- 0.7pp (T=" +
             std::to_string(result.horizon) + ", R=" +
             std::to_string(result.replicates) + ")";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(5, "closed-form band coverage", ok, detail);
}

nof1::CoverageResult big_run(ModelKind model, std::uint64_t seed,
                             bool plugin, std::size_t replicates) {
  nof1::CoverageConfig cfg;
  cfg.horizon = 5000;
  cfg.replicates = replicates;
  cfg.model = model;
  cfg.response.coefficients = {1.00, -1.60, 0.75};
  cfg.response.rates = {0.65, 0.50, 0.48};
  cfg.truncation = 25;
  cfg.alpha = 0.05;
  cfg.plugin_ci = plugin;
  cfg.seed = seed;
  return nof1::coverage_experiment(cfg, 2);
}

void criterion_normality(const nof1::CoverageResult& circ5000) {
  bool ok = true;
  std::string detail;

  // (a) standardized estimates at T=5000 look standard normal
  const double ks_tol = 0.02;
  if (circ5000.ks_statistic >= ks_tol) {
    ok = false;
    detail = "KS " + fmt(circ5000.ks_statistic) + " >= " + fmt(ks_tol);
  }

  // (b) exact fourth-moment bound at small horizons: for the quadratic
  // chaos with kernel W = H + H^T (zero diagonal),
  //   | E[G^4]/E[G^2]^2 - 3 | <= 4/T + (16/T) lhs / V_Q^2,
  // everything evaluated in rational arithmetic.
  if (ok) {
    for (std::size_t T : {4u, 6u, 8u, 10u, 12u}) {
      std::vector<long long> g(T, 0), q(T, 0), e(T, 0);
      g[0] = 3;
      g[1] = 2;
      g[2] = 1;
      q[0] = 1;
      q[1] = 1;
      const std::size_t kq = 2;

      // integer circulant chaos matrix H_ij = rho((j - i) mod T)
      std::vector<long long> rho(T, 0);
      for (std::size_t d = 0; d < T; ++d) {
        long long acc = 0;
        for (std::size_t s = 0; s < T; ++s) {
          acc += q[s] * g[(s + T - d) % T];
        }
        rho[d] = acc;
      }
      std::vector<std::vector<long long>> w(T,
                                            std::vector<long long>(T, 0));
      for (std::size_t i = 0; i < T; ++i) {
        for (std::size_t j = 0; j < T; ++j) {
          if (i != j) w[i][j] = rho[(j - i + T) % T] + rho[(i - j + T) % T];
        }
      }
      const auto moments = nof1::chaos_moments_exact(w);
      if (moments.second == Rational(0)) {
        ok = false;
        detail = "degenerate chaos kernel at T=" + std::to_string(T);
        break;
      }
      const Rational ratio =
          moments.fourth / (moments.second * moments.second);

      // lhs = || (|g| (*) |q|) (*) (|g| (*) |q|) ||^2 over the integers
      std::vector<long long> m(T, 0);
      for (std::size_t t = 0; t < T; ++t) {
        long long acc = 0;
        for (std::size_t s = 0; s < T; ++s) {
          acc += std::llabs(q[s]) * std::llabs(g[(t + T - s) % T]);
        }
        m[t] = acc;
      }
      long long lhs = 0;
      for (std::size_t t = 0; t < T; ++t) {
        long long acc = 0;
        for (std::size_t s = 0; s < T; ++s) {
          acc += m[s] * m[(t + T - s) % T];
        }
        lhs += acc * acc;
      }

      const auto exact =
          nof1::exact_variance_matrix(g, q, e, ModelKind::Circular);
      const Rational vq = exact.v_quadratic;
      if (vq == Rational(0)) {
        ok = false;
        detail = "degenerate V_Q at T=" + std::to_string(T);
        break;
      }
      const Rational bound =
          Rational(4, (long long)T) +
          Rational(16, (long long)T) * Rational(lhs) / (vq * vq);
      const Rational gap = ratio - Rational(3);
      if (!rational_abs_leq(gap, bound)) {
        ok = false;
        detail = "fourth-moment gap exceeds bound at T=" +
                 std::to_string(T);
        break;
      }
      (void)kq;
    }
    if (ok) {
      detail = "KS " + fmt(circ5000.ks_statistic) +
               " < 0.02; exact bound holds at T in {4,6,8,10,12}";
    }
  }
  report(6, "asymptotic normality", ok, detail);
}

void criterion_model_equivalence(const nof1::CoverageResult& circ5000,
                                 const nof1::CoverageResult& lin5000) {
  bool ok = true;
  std::string detail;

  // (a) worst-case quadratic-form gap between the two chaos matrices
  // scales as K^3 / T: the prefactor c_T = sup_z |z^T (H - H^L) z| / K^3
  // must be stable across T (it is exactly T-free once T >> K).
  const std::size_t K = 4;
  std::vector<double> c_values;
  for (std::size_t T : {64u, 256u, 1024u}) {
    std::vector<double> gv(T, 0.0), qv(T, 0.0);
    for (std::size_t t = 0; t < K; ++t) {
      gv[t] = std::pow(0.5, double(t));
      qv[t] = 1.0;
    }
    const ImpulseResponse g{Signal(gv)};
    const EstimandWeights q(Signal(qv), K);
    const ExogenousError e{Signal::zeros(T)};
    const auto hc = nof1::build_h_l(g, q, e, ModelKind::Circular);
    const auto hl = nof1::build_h_l(g, q, e, ModelKind::Linear);

    double hmax = 0.0;
    for (std::size_t i = 0; i < T; ++i) {
      for (std::size_t j = 0; j < T; ++j) {
        hmax = std::max(hmax, std::fabs(hc.h.at(i, j)));
      }
    }
    const double thresh = 1e-12 * std::max(1.0, hmax);

    std::vector<std::size_t> touched;
    std::vector<char> mark(T, 0);
    for (std::size_t i = 0; i < T; ++i) {
      for (std::size_t j = 0; j < T; ++j) {
        if (std::fabs(hc.h.at(i, j) - hl.h.at(i, j)) > thresh) {
          mark[i] = 1;
          mark[j] = 1;
        }
      }
    }
    for (std::size_t i = 0; i < T; ++i) {
      if (mark[i]) touched.push_back(i);
    }
    if (touched.size() > 20) {
      ok = false;
      detail = "gap support unexpectedly large: " +
               std::to_string(touched.size()) + " coordinates";
      break;
    }

    // exact sup over sign vectors: only the touched coordinates matter
    const std::size_t m = touched.size();
    double sup = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      double val = 0.0;
      for (std::size_t a = 0; a < m; ++a) {
        const double za = (mask >> a) & 1 ? 1.0 : -1.0;
        for (std::size_t b = 0; b < m; ++b) {
          const double zb = (mask >> b) & 1 ? 1.0 : -1.0;
          val += za * zb *
                 (hc.h.at(touched[a], touched[b]) -
                  hl.h.at(touched[a], touched[b]));
        }
      }
      sup = std::max(sup, std::fabs(val));
    }
    c_values.push_back(sup / double(K * K * K));
  }
  if (ok) {
    const double cmin = *std::min_element(c_values.begin(), c_values.end());
    const double cmax = *std::max_element(c_values.begin(), c_values.end());
    if (!(cmin > 0.0) || cmax / cmin > 1.10) {
      ok = false;
      detail = "prefactor drifts: " + fmt(cmin) + " .. " + fmt(cmax);
    }
  }

  // (b) two-sample KS between the standardized estimate draws of the two
  // models at T=5000
  if (ok) {
    auto standardize = [](const nof1::CoverageResult& r) {
      std::vector<double> z(r.estimates.size());
      const double sd = std::sqrt(r.variance_formula);
      for (std::size_t i = 0; i < z.size(); ++i) {
        z[i] = (r.estimates[i] - r.estimand) / sd;
      }
      return z;
    };
    const double d =
        nof1::ks_two_sample(standardize(circ5000), standardize(lin5000));
    if (d >= 0.02) {
      ok = false;
      detail = "two-sample KS " + fmt(d) + " >= 0.02";
    } else {
      detail = "prefactor stable (" + fmt(c_values[0]) +
               "), two-sample KS " + fmt(d) + " < 0.02";
    }
  }
  report(7, "circular and linear models agree", ok, detail);
}

void criterion_plugin_validity(const nof1::CoverageResult& plug5000) {
  bool ok = true;
  std::string detail;
  const std::size_t K = 25;
  const std::size_t R = 300;

  // (a) median absolute error of both plug-in components strictly
  // decreases over T in {200, 1000, 5000}
  std::vector<double> med_q, med_l;
  for (std::size_t T : {200u, 1000u, 5000u}) {
    const Signal g = mixture_response(T);
    const ImpulseResponse g_imp{g};
    const auto pair = nof1::make_estimand(nof1::EstimandKind::LagK, T, K);
    const ExogenousError e{Signal::zeros(T)};
    const auto truth = nof1::variance_circular(g_imp, pair.primary, e);

    nof1::MonteCarloTask task;
    task.design =
        nof1::DesignSpec{nof1::DesignKind::RapidBernoulli, T, 0, 1, 0.5};
    task.g = g;
    task.e = e.e;
    task.model = ModelKind::Circular;
    task.estimator = nof1::EstimatorKind::Mom;
    task.estimand = pair;

    std::vector<double> err_q(R), err_l(R);
    for (std::size_t r = 0; r < R; ++r) {
      const auto data = nof1::make_replicate(task, 0xACC00008u + T, r);
      const nof1::Observation obs{data.realization.path, data.y,
                                  ModelKind::Circular};
      const auto est = nof1::plugin_variance(obs, pair.primary, K);
      err_q[r] = std::fabs(est.v_quadratic - truth.v_quadratic);
      err_l[r] = std::fabs(est.v_linear - truth.v_linear);
    }
    std::sort(err_q.begin(), err_q.end());
    std::sort(err_l.begin(), err_l.end());
    med_q.push_back(0.5 * (err_q[R / 2 - 1] + err_q[R / 2]));
    med_l.push_back(0.5 * (err_l[R / 2 - 1] + err_l[R / 2]));
  }
  if (!(med_q[0] > med_q[1] && med_q[1] > med_q[2])) {
    ok = false;
    detail = "quadratic MAE not decreasing: " + fmt(med_q[0]) + ", " +
             fmt(med_q[1]) + ", " + fmt(med_q[2]);
  } else if (!(med_l[0] > med_l[1] && med_l[1] > med_l[2])) {
    ok = false;
    detail = "linear MAE not decreasing: " + fmt(med_l[0]) + ", " +
             fmt(med_l[1]) + ", " + fmt(med_l[2]);
  }

  // (b) plug-in CI coverage at T=5000 within 1pp of 95%
  if (ok) {
    const double got_pp = 100.0 * plug5000.plugin_coverage;
    if (std::fabs(got_pp - 95.0) > 1.0) {
      ok = false;
      detail = "plug-in CI coverage " + fmt(got_pp) + "% vs 95% +/- 1pp";
    } else {
      detail = "MAE decreasing; plug-in CI coverage " + fmt(got_pp) + "%";
    }
  }
  report(8, "plug-in variance validity", ok, detail);
}

// ---- 9: SNR claims --------------------------------------------------------

void criterion_snr() {
  bool ok = true;
  std::string detail;
  try {
    const auto r = nof1::snr_analysis(2.0, 1.0, 0.5, 35, 5);
    auto trunc2 = [](double v) { return std::floor(v * 100.0) / 100.0; };
    if (!(r.v <= 0.34)) {
      ok = false;
      detail = "v = " + fmt(r.v) + " > 0.34";
    } else if (!(r.w <= 4.0)) {
      ok = false;
      detail = "w = " + fmt(r.w) + " > 4";
    } else if (trunc2(r.rapid_prefactor_lower) != 0.48) {
      ok = false;
      detail = "rapid prefactor " + fmt(r.rapid_prefactor_lower) +
               " not 0.48 at 2 decimals";
    } else if (!(r.rapid_prefactor >= 0.48)) {
      ok = false;
      detail = "exact rapid prefactor below its lower bound";
    } else if (trunc2(r.conservative_prefactor) != 0.44) {
      ok = false;
      detail = "conservative prefactor " + fmt(r.conservative_prefactor) +
               " not 0.44 at 2 decimals";
    } else {
      // the reported SNRs factor through the prefactors exactly
      const double ratio = (2.0 - 1.0) / (2.0 + 1.0);
      const double rapid_check = ratio * std::sqrt(35.0) * r.rapid_prefactor;
      const double std_check =
          ratio * std::sqrt(35.0) * r.conservative_prefactor;
      if (std::fabs(rapid_check - r.rapid_snr) > 1e-12 ||
          std::fabs(std_check - r.standard_snr_conservative) > 1e-12) {
        ok = false;
        detail = "snr does not factor through the prefactor";
      } else {
        detail = "v = " + fmt(r.v) + " <= 0.34, w = " + fmt(r.w) +
                 " <= 4, prefactors 0.48 / 0.44";
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(9, "signal-to-noise claims", ok, detail);
}

// ---- 10: determinism across thread counts ---------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool run_cli(const std::string& args) {
  const std::string cmd = std::string(NOF1_CLI_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) && WEXITSTATUS(status) == 0;
}

void criterion_determinism() {
  bool ok = true;
  std::string detail;

  std::ofstream("acc_sim.cfg")
      << "[design]\nkind = rapid_bernoulli\nhorizon = 100\n"
      << "[simulate]\nmodel = linear\nestimator = mom\nestimand = ate\n"
      << "[response]\ncoefficients = 1.0\nrates = 0.5\n"
      << "[error]\nkind = sinusoid\namplitude = 0.3\nperiod = 7\n"
      << "[mc]\nreplicates = 500\nseed = 97531\n";
  std::ofstream("acc_cov.cfg")
      << "[response]\ncoefficients = 1.0, -0.4\nrates = 0.6, 0.3\n"
      << "[coverage]\nmodel = circular\nhorizon = 96\nreplicates = 400\n"
      << "truncation = 6\nplugin_ci = true\n"
      << "[mc]\nseed = 24680\n";

  const struct {
    const char* name;
    std::string base;
  } runs[] = {
      {"simulate", "simulate -c acc_sim.cfg"},
      {"coverage", "coverage -c acc_cov.cfg"},
  };
  for (const auto& r : runs) {
    if (!ok) break;
    if (!run_cli(r.base + " --threads 1 > acc_t1.json") ||
        !run_cli(r.base + " --threads 3 > acc_t3.json") ||
        !run_cli(r.base + " --threads 8 > acc_t8.json")) {
      ok = false;
      detail = std::string(r.name) + " run failed";
      break;
    }
    const std::string a = slurp("acc_t1.json");
    const std::string b = slurp("acc_t3.json");
    const std::string c = slurp("acc_t8.json");
    if (a.empty() || a != b || a != c) {
      ok = false;
      detail = std::string(r.name) + " output differs across thread counts";
    }
  }
  if (ok) detail = "byte-identical JSON at 1, 3 and 8 threads";

  std::remove("acc_sim.cfg");
  std::remove("acc_cov.cfg");
  std::remove("acc_t1.json");
  std::remove("acc_t3.json");
  std::remove("acc_t8.json");
  report(10, "thread-count determinism", ok, detail);
}

}  // namespace

int main() {
  std::cout << "nof1 acceptance checks" << std::endl;

  criterion_unbiasedness();
  criterion_exact_variance();
  criterion_chaos_moments();
  criterion_design_table();
  criterion_band_coverage();

  try {
    const auto circ5000 = big_run(ModelKind::Circular, 0xACC00006u, false,
                                  20000);
    const auto lin5000 = big_run(ModelKind::Linear, 0xACC00007u, false,
                                 20000);
    criterion_normality(circ5000);
    criterion_model_equivalence(circ5000, lin5000);
  } catch (const std::exception& e) {
    report(6, "asymptotic normality", false, e.what());
    report(7, "circular and linear models agree", false, e.what());
  }

  try {
    const auto plug5000 = big_run(ModelKind::Circular, 0xACC00009u, true,
                                  5000);
    criterion_plugin_validity(plug5000);
  } catch (const std::exception& e) {
    report(8, "plug-in variance validity", false, e.what());
  }

  criterion_snr();
  criterion_determinism();

  if (g_failures == 0) {
    std::cout << "all acceptance checks passed" << std::endl;
    return 0;
  }
  std::cout << g_failures << " acceptance check(s) failed" << std::endl;
  return 1;
}
