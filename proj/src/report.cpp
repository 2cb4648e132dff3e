// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0

#include "nof1/report.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "nof1/errors.hpp"

namespace nof1 {
namespace {

OrderedJson variance_json(const VarianceDecomposition& v) {
  OrderedJson j;
  j["v_quadratic"] = v.v_quadratic;
  j["v_quadratic_raw"] = v.v_quadratic_raw;
  j["v_linear"] = v.v_linear;
  j["total"] = v.total();
  return j;
}

OrderedJson response_json(const ResponseSpec& r) {
  OrderedJson j;
  if (!r.values.empty()) {
    j["values"] = r.values;
  } else {
    j["coefficients"] = r.coefficients;
    j["rates"] = r.rates;
  }
  return j;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_csv_double(const std::string& s, std::size_t lineno,
                        const char* what) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ParseError(std::string("csv: bad ") + what + " '" + s + "'",
                     lineno);
  }
  if (!std::isfinite(v)) {
    throw ParseError(std::string("csv: non-finite ") + what, lineno);
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

OrderedJson to_json(const EstimateReport& report) {
  OrderedJson j;
  j["estimate"] = report.estimate;
  j["estimand"] = report.estimand;
  j["model"] = report.model;
  j["horizon"] = report.horizon;
  j["truncation"] = report.truncation;
  j["variance"] = variance_json(report.variance);
  j["se"] = report.se;
  j["alpha"] = report.alpha;
  j["ci"] = OrderedJson{{"lo", report.ci.lo},
                        {"hi", report.ci.hi},
                        {"level", report.ci.level}};
  return j;
}

OrderedJson to_json(const CompareDesignsResult& result) {
  const CompareDesignsConfig& cfg = result.config;
  OrderedJson j;
  j["config"] = OrderedJson{
      {"horizon", cfg.horizon},
      {"replicates", cfg.replicates},
      {"washout", cfg.washout},
      {"block", cfg.block},
      {"pair",
       OrderedJson{{"a", cfg.pair.a},
                   {"b", cfg.pair.b},
                   {"error_form", cfg.pair.error_form == ErrorForm::Response
                                      ? "response"
                                      : "impulse"},
                   {"base", response_json(cfg.pair.base)}}},
      {"seed", cfg.seed}};
  j["rows"] = OrderedJson::array();
  for (const DesignRow& row : result.rows) {
    OrderedJson r;
    r["design"] = row.design;
    r["estimand"] = row.estimand;
    r["estimator"] = row.estimator;
    r["replicates"] = row.replicates;
    r["target"] = row.target;
    r["mean"] = row.mean;
    r["mean_se"] = row.mean_se;
    r["sd"] = row.sd;
    r["snr"] = row.snr;
    r["avg_response"] = row.avg_response;
    r["avg_response_se"] = row.avg_response_se;
    j["rows"].push_back(std::move(r));
  }
  return j;
}

OrderedJson to_json(const CoverageResult& result) {
  OrderedJson j;
  j["horizon"] = result.horizon;
  j["replicates"] = result.replicates;
  j["model"] = result.model;
  j["truncation"] = result.truncation;
  j["estimand"] = result.estimand;
  j["variance_formula"] = result.variance_formula;
  j["band_halfwidth"] = result.band_halfwidth;
  j["coverage"] = result.coverage;
  j["coverage_se"] = result.coverage_se;
  if (result.plugin_ci) {
    j["plugin_alpha"] = result.plugin_alpha;
    j["plugin_coverage"] = result.plugin_coverage;
    j["plugin_coverage_se"] = result.plugin_coverage_se;
  }
  j["ks_statistic"] = result.ks_statistic;
  j["mean"] = result.mean;
  j["sd"] = result.sd;
  j["histogram"] = OrderedJson{{"edges", result.hist_edges},
                               {"counts", result.hist_counts}};
  return j;
}

OrderedJson to_json(const ConsistencyResult& result,
                    const ConsistencyConfig& config) {
  OrderedJson j;
  j["config"] = OrderedJson{
      {"horizons", config.horizons},
      {"replicates", config.replicates},
      {"model", model_kind_name(config.model)},
      {"truncation", config.truncation},
      {"response", response_json(config.response)},
      {"seed", config.seed}};
  j["rows"] = OrderedJson::array();
  for (const ConsistencyRow& row : result.rows) {
    j["rows"].push_back(OrderedJson{{"horizon", row.horizon},
                                    {"truncation", row.truncation},
                                    {"median_sup_error",
                                     row.median_sup_error},
                                    {"p90_sup_error", row.p90_sup_error},
                                    {"mean_sup_error", row.mean_sup_error}});
  }
  j["log_slope"] = result.log_slope;
  return j;
}

OrderedJson simulate_summary_json(const SimulateConfig& cfg,
                                  const MonteCarloDraws& draws) {
  const SummaryStats est = summarize(draws.estimates);
  const SummaryStats resp = summarize(draws.avg_responses);
  OrderedJson j;
  j["config"] = OrderedJson{
      {"design", design_kind_name(cfg.design.kind)},
      {"horizon", cfg.design.horizon},
      {"washout", cfg.design.washout},
      {"block", cfg.design.block},
      {"treat_probability", cfg.design.treat_probability},
      {"model", model_kind_name(cfg.model)},
      {"estimator",
       cfg.estimator == EstimatorKind::Mom ? "mom" : "horvitz_thompson"},
      {"estimand", estimand_kind_name(cfg.estimand)},
      {"lag_k", cfg.lag_k},
      {"response", response_json(cfg.response)},
      {"replicates", cfg.replicates},
      {"seed", cfg.seed}};
  j["estimates"] = OrderedJson{{"n", est.n},
                               {"mean", est.mean},
                               {"sd", est.sd},
                               {"mean_se", est.mean_se}};
  j["avg_responses"] = OrderedJson{{"n", resp.n},
                                   {"mean", resp.mean},
                                   {"sd", resp.sd},
                                   {"mean_se", resp.mean_se}};
  return j;
}

ObservationData read_observation_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  ObservationData data;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "t,x,y") {
        throw ParseError("csv: expected header 't,x,y'", lineno);
      }
      saw_header = true;
      continue;
    }
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 3) {
      throw ParseError("csv: expected 3 fields", lineno);
    }
    const double t = parse_csv_double(fields[0], lineno, "day index");
    if (t != static_cast<double>(data.x.size())) {
      throw ParseError("csv: day indices must run 0,1,2,...", lineno);
    }
    const double x = parse_csv_double(fields[1], lineno, "treatment");
    if (x != 0.0 && x != 1.0) {
      throw ParseError("csv: treatment must be 0 or 1", lineno);
    }
    const double y = parse_csv_double(fields[2], lineno, "outcome");
    data.x.push_back(static_cast<std::uint8_t>(x));
    data.y.push_back(y);
  }
  if (!saw_header) throw ParseError("csv: empty input", 0);
  if (data.x.empty()) throw ParseError("csv: no observations", lineno);
  return data;
}

ObservationData read_observation_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("csv: cannot open " + path);
  return read_observation_csv(in);
}

void write_observation_csv(std::ostream& out, const TreatmentPath& x,
                           const Signal& y) {
  if (x.size() != y.size()) {
    throw DimensionError("csv: treatment and outcome lengths differ");
  }
  out << "t,x,y\n";
  for (std::size_t t = 0; t < y.size(); ++t) {
    out << t << ',' << (x[t] != 0 ? 1 : 0) << ',' << format_double(y[t])
        << '\n';
  }
}

std::string histogram_svg(const std::vector<double>& edges,
                          const std::vector<double>& counts) {
  if (edges.size() != counts.size() + 1 || counts.empty()) {
    throw DimensionError("svg: need bins + 1 edges");
  }
  const double width = 640.0, height = 400.0;
  const double ml = 50.0, mr = 15.0, mt = 15.0, mb = 35.0;
  const double pw = width - ml - mr;
  const double ph = height - mt - mb;
  const double xlo = edges.front(), xhi = edges.back();

  double total = 0.0, peak = 0.0;
  for (double c : counts) total += c;
  for (double c : counts) peak = std::max(peak, c);
  // Expected bin mass under the standard normal, same vertical scale.
  std::vector<double> expected(counts.size());
  for (std::size_t b = 0; b < counts.size(); ++b) {
    expected[b] = total * (normal_cdf(edges[b + 1]) - normal_cdf(edges[b]));
    peak = std::max(peak, expected[b]);
  }
  if (peak <= 0.0) peak = 1.0;

  auto sx = [&](double v) { return ml + (v - xlo) / (xhi - xlo) * pw; };
  auto sy = [&](double c) { return mt + ph - c / peak * ph; };
  char buf[256];
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
         "height=\"400\" viewBox=\"0 0 640 400\">\n";
  svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  for (std::size_t b = 0; b < counts.size(); ++b) {
    const double x0 = sx(edges[b]);
    const double x1 = sx(edges[b + 1]);
    const double y = sy(counts[b]);
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" "
                  "height=\"%.2f\" fill=\"#7aa6c2\" stroke=\"#456\" "
                  "stroke-width=\"0.5\"/>\n",
                  x0, y, x1 - x0, mt + ph - y);
    svg += buf;
  }
  svg += "<polyline fill=\"none\" stroke=\"#b03a2e\" stroke-width=\"1.5\" "
         "points=\"";
  for (std::size_t b = 0; b < counts.size(); ++b) {
    const double mid = 0.5 * (edges[b] + edges[b + 1]);
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", sx(mid), sy(expected[b]));
    svg += buf;
  }
  svg += "\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                "stroke=\"black\"/>\n",
                ml, mt + ph, ml + pw, mt + ph);
  svg += buf;
  for (int v = static_cast<int>(std::ceil(xlo));
       v <= static_cast<int>(std::floor(xhi)); ++v) {
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" "
                  "text-anchor=\"middle\" fill=\"black\">%d</text>\n",
                  sx(v), mt + ph + 18.0, v);
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace nof1
