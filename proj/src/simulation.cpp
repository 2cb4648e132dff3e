// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0

#include "nof1/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>

#include "nof1/errors.hpp"
#include "nof1/estimation.hpp"
#include "nof1/inference.hpp"
#include "nof1/rng.hpp"
#include "nof1/variance.hpp"

namespace nof1 {
namespace {

constexpr double kTwoPi = 6.2831853071795864769;

// Runs fn(r) for r in [0, n) across contiguous chunks. Slot-array writes
// inside fn keep results independent of the thread count.
void parallel_replicates(std::size_t n, std::size_t threads,
                         const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t r = 0; r < n; ++r) fn(r);
    return;
  }
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto worker = [&](std::size_t lo, std::size_t hi) {
    try {
      for (std::size_t r = lo; r < hi; ++r) fn(r);
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t k = 0; k < threads; ++k) {
    const std::size_t lo = n * k / threads;
    const std::size_t hi = n * (k + 1) / threads;
    pool.emplace_back(worker, lo, hi);
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void check_task(const MonteCarloTask& task) {
  const std::size_t T = task.design.horizon;
  if (task.g.size() != T || task.e.size() != T) {
    throw DimensionError("simulation: g and e must match the horizon");
  }
  if (task.estimator == EstimatorKind::Mom && !task.estimand.has_value()) {
    throw ConfigError("simulation: the mom estimator needs an estimand");
  }
}

// Shared per-scenario state; replicate() is const and safe to call from
// multiple threads.
class Engine {
 public:
  Engine(const MonteCarloTask& task, std::uint64_t seed)
      : task_(task),
        seed_(seed),
        conv_(task.g, task.model == ModelKind::Circular
                          ? Convolver::Mode::Circular
                          : Convolver::Mode::Linear) {}

  ReplicateData replicate(std::size_t r) const {
    DesignRealization real = realize(task_.design, replicate_seed(seed_, r));
    std::vector<double> y;
    conv_.apply(real.path.as_signal().values(), y);
    for (std::size_t t = 0; t < y.size(); ++t) y[t] += task_.e[t];
    return ReplicateData{std::move(real), Signal(std::move(y))};
  }

  double estimate(const ReplicateData& data) const {
    return estimate_replicate(task_, data);
  }

  double avg_response(const ReplicateData& data) const {
    double acc = 0.0;
    std::size_t n = 0;
    for (std::size_t t = 0; t < data.y.size(); ++t) {
      if (data.realization.measured[t]) {
        acc += data.y[t];
        ++n;
      }
    }
    return n == 0 ? 0.0 : acc / static_cast<double>(n);
  }

 private:
  const MonteCarloTask& task_;
  std::uint64_t seed_;
  Convolver conv_;
};

double median_of_sorted(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double quantile_of_sorted(const std::vector<double>& v, double p) {
  if (v.empty()) return 0.0;
  const double pos = p * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

double proportion_se(double p, std::size_t n) {
  if (n == 0) return 0.0;
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

}  // namespace

Signal ResponseSpec::realize(std::size_t horizon) const {
  if (horizon == 0) {
    throw DimensionError("response: zero horizon");
  }
  std::vector<double> g(horizon, 0.0);
  if (!values.empty()) {
    if (!coefficients.empty() || !rates.empty()) {
      throw ConfigError("response: give either values or a decay mix");
    }
    for (std::size_t t = 0; t < std::min(values.size(), horizon); ++t) {
      g[t] = values[t];
    }
    return Signal(std::move(g));
  }
  if (coefficients.empty() || coefficients.size() != rates.size()) {
    throw ConfigError("response: coefficients and rates must pair up");
  }
  for (double r : rates) {
    if (!(std::fabs(r) <= 1.0)) {
      throw ConfigError("response: rates must lie in [-1, 1]");
    }
  }
  for (std::size_t t = 0; t < horizon; ++t) {
    double acc = 0.0;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
      acc += coefficients[j] * std::pow(rates[j], static_cast<double>(t));
    }
    g[t] = acc;
  }
  return Signal(std::move(g));
}

Signal ErrorSpec::realize(std::size_t horizon) const {
  if (horizon == 0) {
    throw DimensionError("error: zero horizon");
  }
  std::vector<double> e(horizon, 0.0);
  switch (kind) {
    case ErrorKind::Zero:
      break;
    case ErrorKind::Values:
      for (std::size_t t = 0; t < std::min(values.size(), horizon); ++t) {
        e[t] = values[t];
      }
      break;
    case ErrorKind::Sinusoid:
      if (!(period > 0.0)) {
        throw ConfigError("error: sinusoid period must be positive");
      }
      for (std::size_t t = 0; t < horizon; ++t) {
        e[t] = amplitude *
               std::sin(kTwoPi * static_cast<double>(t) / period + phase);
      }
      break;
  }
  return Signal(std::move(e));
}

ReplicateData make_replicate(const MonteCarloTask& task, std::uint64_t seed,
                             std::size_t r) {
  check_task(task);
  const Engine engine(task, seed);
  return engine.replicate(r);
}

double estimate_replicate(const MonteCarloTask& task,
                          const ReplicateData& data) {
  check_task(task);
  if (task.estimator == EstimatorKind::Mom) {
    const Observation obs{data.realization.path, data.y, task.model};
    return mom_estimate(obs, *task.estimand);
  }
  const std::size_t block = task.design.block;
  std::vector<double> ys, arms;
  ys.reserve(data.realization.assignments.size());
  arms.reserve(data.realization.assignments.size());
  for (const Assignment& a : data.realization.assignments) {
    ys.push_back(data.y[a.time + block - 1]);
    arms.push_back(a.arm ? 1.0 : -1.0);
  }
  return ht_estimate(ys, arms);
}

MonteCarloDraws run_monte_carlo(const MonteCarloTask& task,
                                std::size_t replicates, std::uint64_t seed,
                                std::size_t threads) {
  check_task(task);
  if (replicates == 0) {
    throw ConfigError("simulation: need at least one replicate");
  }
  const Engine engine(task, seed);
  MonteCarloDraws draws;
  draws.estimates.resize(replicates);
  draws.avg_responses.resize(replicates);
  parallel_replicates(replicates, threads, [&](std::size_t r) {
    const ReplicateData data = engine.replicate(r);
    draws.estimates[r] = engine.estimate(data);
    draws.avg_responses[r] = engine.avg_response(data);
  });
  return draws;
}

SummaryStats summarize(const std::vector<double>& values) {
  SummaryStats s;
  s.n = values.size();
  if (s.n == 0) return s;
  double acc = 0.0;
  for (double v : values) acc += v;
  s.mean = acc / static_cast<double>(s.n);
  if (s.n >= 2) {
    double ss = 0.0;
    for (double v : values) {
      const double d = v - s.mean;
      ss += d * d;
    }
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    s.mean_se = s.sd / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

CompareDesignsResult compare_designs(const CompareDesignsConfig& cfg,
                                     std::size_t threads) {
  const std::size_t T = cfg.horizon;
  if (T < 2) throw ConfigError("compare_designs: horizon must be >= 2");
  if (cfg.block < 1) throw ConfigError("compare_designs: block must be >= 1");
  const Signal base = cfg.pair.base.realize(T);
  const double contrast = cfg.pair.a - cfg.pair.b;

  std::vector<double> gv(T);
  for (std::size_t t = 0; t < T; ++t) gv[t] = contrast * base[t];
  const Signal g_eff(std::move(gv));
  const ImpulseResponse g_imp{g_eff};

  const DesignSpec rapid{DesignKind::RapidBernoulli, T, 0, 1, 0.5};
  const DesignSpec std_imd{DesignKind::StandardImmediate, T, cfg.washout, 1,
                           0.5};
  const DesignSpec std_cum{DesignKind::StandardCumulative, T, cfg.washout,
                           cfg.block, 0.5};

  // Drug B's contribution for a given dosing calendar.
  auto nuisance = [&](const DesignSpec& spec) {
    std::vector<double> e(T, 0.0);
    if (cfg.pair.error_form == ErrorForm::Impulse) {
      for (std::size_t t = 0; t < T; ++t) e[t] = cfg.pair.b * base[t];
      return Signal(std::move(e));
    }
    std::vector<double> dosed(T, 0.0);
    for (std::size_t day : decision_days(spec)) {
      for (std::size_t u = 0; u < spec.block && day + u < T; ++u) {
        dosed[day + u] = 1.0;
      }
    }
    const Signal resp = linear_convolve(Signal(std::move(dosed)), base);
    for (std::size_t t = 0; t < T; ++t) e[t] = cfg.pair.b * resp[t];
    return Signal(std::move(e));
  };

  struct RowSpec {
    DesignSpec design;
    EstimatorKind estimator;
    std::optional<EstimandPair> estimand;
    double target;
  };
  std::vector<RowSpec> specs;
  for (EstimandKind kind : {EstimandKind::Immediate, EstimandKind::Cumulative,
                            EstimandKind::Flip}) {
    EstimandPair pair = make_estimand(kind, T);
    const double target = estimand_value(pair, g_imp, ModelKind::Linear);
    specs.push_back(
        {rapid, EstimatorKind::Mom, std::move(pair), target});
  }
  specs.push_back({std_imd, EstimatorKind::HorvitzThompson, std::nullopt,
                   g_eff[0]});
  double block_sum = 0.0;
  for (std::size_t u = 0; u < std::min(cfg.block, T); ++u) {
    block_sum += g_eff[u];
  }
  specs.push_back({std_cum, EstimatorKind::HorvitzThompson, std::nullopt,
                   block_sum});

  CompareDesignsResult result;
  result.config = cfg;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    RowSpec& rs = specs[i];
    MonteCarloTask task;
    task.design = rs.design;
    task.g = g_eff;
    task.e = nuisance(rs.design);
    task.model = ModelKind::Linear;
    task.estimator = rs.estimator;
    task.estimand = rs.estimand;
    const MonteCarloDraws draws = run_monte_carlo(
        task, cfg.replicates, replicate_seed(cfg.seed, i), threads);
    const SummaryStats est = summarize(draws.estimates);
    const SummaryStats resp = summarize(draws.avg_responses);

    DesignRow row;
    row.design = design_kind_name(rs.design.kind);
    row.estimand = rs.estimand.has_value()
                       ? estimand_kind_name(rs.estimand->kind)
                       : (rs.design.kind == DesignKind::StandardCumulative
                              ? "cumulative"
                              : "immediate");
    row.estimator =
        rs.estimator == EstimatorKind::Mom ? "mom" : "horvitz_thompson";
    row.replicates = est.n;
    row.target = rs.target;
    row.mean = est.mean;
    row.mean_se = est.mean_se;
    row.sd = est.sd;
    row.snr = est.sd > 0.0 ? std::fabs(rs.target) / est.sd : 0.0;
    row.avg_response = resp.mean;
    row.avg_response_se = resp.mean_se;
    result.rows.push_back(std::move(row));
  }
  return result;
}

CoverageResult coverage_experiment(const CoverageConfig& cfg,
                                   std::size_t threads) {
  const std::size_t T = cfg.horizon;
  const std::size_t R = cfg.replicates;
  if (cfg.truncation == 0 || cfg.truncation > T) {
    throw ConfigError("coverage: truncation must be in [1, T]");
  }
  const Signal g = cfg.response.realize(T);
  const Signal e = cfg.error.realize(T);
  EstimandPair pair = make_estimand(EstimandKind::LagK, T, cfg.truncation);
  const ImpulseResponse g_imp{g};
  const double tau = estimand_value(pair, g_imp, cfg.model);

  // The band uses the closed form matched to the generating model; the
  // circular-vs-linear approximation is probed separately through the
  // estimate draws.
  const double var_formula =
      (cfg.model == ModelKind::Circular
           ? variance_circular(g_imp, pair.primary, ExogenousError{e})
           : variance_linear(g_imp, pair.primary, ExogenousError{e}))
          .total();
  if (!(var_formula > 0.0)) {
    throw DomainError("coverage: degenerate closed-form variance");
  }
  const double halfwidth = 2.0 * std::sqrt(var_formula);
  const double z = normal_quantile(1.0 - cfg.alpha / 2.0);

  MonteCarloTask task;
  task.design = DesignSpec{DesignKind::RapidBernoulli, T, 0, 1, 0.5};
  task.g = g;
  task.e = e;
  task.model = cfg.model;
  task.estimator = EstimatorKind::Mom;
  task.estimand = pair;
  check_task(task);
  const Engine engine(task, cfg.seed);

  std::vector<double> estimates(R);
  std::vector<double> plugin_covered(cfg.plugin_ci ? R : 0);
  parallel_replicates(R, threads, [&](std::size_t r) {
    const ReplicateData data = engine.replicate(r);
    const double est = engine.estimate(data);
    estimates[r] = est;
    if (cfg.plugin_ci) {
      const Observation obs{data.realization.path, data.y, cfg.model};
      const VarianceDecomposition vd =
          plugin_variance(obs, pair.primary, cfg.truncation);
      const double half = z * std::sqrt(vd.total());
      plugin_covered[r] = std::fabs(est - tau) <= half ? 1.0 : 0.0;
    }
  });

  CoverageResult out;
  out.horizon = T;
  out.replicates = R;
  out.model = model_kind_name(cfg.model);
  out.truncation = cfg.truncation;
  out.estimand = tau;
  out.variance_formula = var_formula;
  out.band_halfwidth = halfwidth;

  std::size_t inside = 0;
  for (double est : estimates) {
    if (std::fabs(est - tau) <= halfwidth) ++inside;
  }
  out.coverage = static_cast<double>(inside) / static_cast<double>(R);
  out.coverage_se = proportion_se(out.coverage, R);

  out.plugin_ci = cfg.plugin_ci;
  if (cfg.plugin_ci) {
    out.plugin_alpha = cfg.alpha;
    const SummaryStats pc = summarize(plugin_covered);
    out.plugin_coverage = pc.mean;
    out.plugin_coverage_se = proportion_se(pc.mean, R);
  }

  const double sd_formula = std::sqrt(var_formula);
  std::vector<double> standardized(R);
  for (std::size_t r = 0; r < R; ++r) {
    standardized[r] = (estimates[r] - tau) / sd_formula;
  }
  out.ks_statistic = ks_vs_standard_normal(standardized);

  const SummaryStats stats = summarize(estimates);
  out.mean = stats.mean;
  out.sd = stats.sd;

  const std::size_t bins = std::max<std::size_t>(1, cfg.histogram_bins);
  out.hist_edges.resize(bins + 1);
  out.hist_counts.assign(bins, 0.0);
  const double lo = -4.0, hi = 4.0;
  for (std::size_t b = 0; b <= bins; ++b) {
    out.hist_edges[b] =
        lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
  }
  for (double v : standardized) {
    if (v < lo || v >= hi) continue;
    const auto b = static_cast<std::size_t>((v - lo) / (hi - lo) *
                                            static_cast<double>(bins));
    out.hist_counts[std::min(b, bins - 1)] += 1.0;
  }
  out.estimates = std::move(estimates);
  return out;
}

ConsistencyResult consistency_sweep(const ConsistencyConfig& cfg,
                                    std::size_t threads) {
  if (cfg.horizons.empty()) {
    throw ConfigError("consistency: need at least one horizon");
  }
  ConsistencyResult out;
  for (std::size_t i = 0; i < cfg.horizons.size(); ++i) {
    const std::size_t T = cfg.horizons[i];
    std::size_t k = cfg.truncation == 0 ? default_truncation(T)
                                        : cfg.truncation;
    k = std::min(k, T);
    const Signal g = cfg.response.realize(T);
    const Signal e = cfg.error.realize(T);

    MonteCarloTask task;
    task.design = DesignSpec{DesignKind::RapidBernoulli, T, 0, 1, 0.5};
    task.g = g;
    task.e = e;
    task.model = cfg.model;
    task.estimator = EstimatorKind::Mom;
    task.estimand = make_estimand(EstimandKind::Immediate, T);
    check_task(task);
    const Engine engine(task, replicate_seed(cfg.seed, i));

    std::vector<double> sup_errors(cfg.replicates);
    parallel_replicates(cfg.replicates, threads, [&](std::size_t r) {
      const ReplicateData data = engine.replicate(r);
      const Observation obs{data.realization.path, data.y, cfg.model};
      const TruncatedResponse hat = estimate_g_truncated(obs, k);
      double sup = 0.0;
      for (std::size_t lag = 0; lag < k; ++lag) {
        sup = std::max(sup, std::fabs(hat.values[lag] - g[lag]));
      }
      sup_errors[r] = sup;
    });

    std::sort(sup_errors.begin(), sup_errors.end());
    ConsistencyRow row;
    row.horizon = T;
    row.truncation = k;
    row.median_sup_error = median_of_sorted(sup_errors);
    row.p90_sup_error = quantile_of_sorted(sup_errors, 0.9);
    row.mean_sup_error = summarize(sup_errors).mean;
    out.rows.push_back(row);
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (const ConsistencyRow& row : out.rows) {
    if (!(row.median_sup_error > 0.0)) continue;
    const double x = std::log(static_cast<double>(row.horizon));
    const double y = std::log(row.median_sup_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n >= 2) {
    const double den = static_cast<double>(n) * sxx - sx * sx;
    if (den != 0.0) {
      out.log_slope = (static_cast<double>(n) * sxy - sx * sy) / den;
    }
  }
  return out;
}

double ks_vs_standard_normal(std::vector<double> values) {
  if (values.empty()) {
    throw DimensionError("ks: empty sample");
  }
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double cdf = normal_cdf(values[i]);
    d = std::max(d, cdf - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - cdf);
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw DimensionError("ks: empty sample");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace nof1
