// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// nof1: design, simulate and analyze single-subject randomized experiments.
//
// Exit codes: 0 success, 1 runtime failure (domain/dimension errors while
// computing), 2 usage failure (bad flags, config or input files).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "nof1/config.hpp"
#include "nof1/errors.hpp"
#include "nof1/inference.hpp"
#include "nof1/report.hpp"
#include "nof1/simulation.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string output_path;
  std::size_t threads = 0;  // 0: NOF1_THREADS, then 1
};

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NOF1_THREADS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return static_cast<std::size_t>(v);
    }
  }
  return 1;
}

void emit(const nof1::OrderedJson& j, const std::string& output_path) {
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!output_path.empty()) {
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
      throw nof1::ConfigError("cannot write " + output_path);
    }
    out << text;
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw nof1::ConfigError("cannot write " + path);
  out << text;
}

struct EstimateArgs {
  std::string input_path;
  std::string output_path;
  nof1::ModelKind model = nof1::ModelKind::Linear;
  nof1::EstimandKind estimand = nof1::EstimandKind::Ate;
  std::size_t lag_k = 0;
  std::size_t truncation = 0;  // 0: ceil(2 log T)
  double alpha = 0.05;
};

void run_estimate(const EstimateArgs& args) {
  const nof1::ObservationData data =
      nof1::read_observation_csv_file(args.input_path);
  nof1::Observation obs{nof1::TreatmentPath(data.x),
                        nof1::Signal(data.y), args.model};
  const nof1::EstimandPair pair =
      nof1::make_estimand(args.estimand, obs.y.size(), args.lag_k);
  const nof1::EstimateReport report =
      nof1::estimate_with_ci(obs, pair, args.truncation, args.alpha);
  emit(nof1::to_json(report), args.output_path);
}

struct SimulateArgs {
  CommonArgs common;
  bool dump = false;
  std::size_t dump_replicate = 0;
  std::string dump_csv;
};

void run_simulate(const SimulateArgs& args) {
  const nof1::ConfigMap map =
      nof1::ConfigMap::from_file(args.common.config_path);
  const nof1::SimulateConfig cfg = nof1::load_simulate_config(map);
  const nof1::MonteCarloTask task = nof1::build_task(cfg);
  if (args.dump) {
    const nof1::ReplicateData data =
        nof1::make_replicate(task, cfg.seed, args.dump_replicate);
    std::ostringstream csv;
    nof1::write_observation_csv(csv, data.realization.path, data.y);
    write_text_file(args.dump_csv, csv.str());
    nof1::OrderedJson j;
    j["replicate"] = args.dump_replicate;
    j["seed"] = cfg.seed;
    j["csv"] = args.dump_csv;
    j["model"] = nof1::model_kind_name(cfg.model);
    j["estimator"] = cfg.estimator == nof1::EstimatorKind::Mom
                         ? "mom"
                         : "horvitz_thompson";
    j["estimand"] = nof1::estimand_kind_name(cfg.estimand);
    j["estimate"] = nof1::estimate_replicate(task, data);
    emit(j, args.common.output_path);
    return;
  }
  const nof1::MonteCarloDraws draws = nof1::run_monte_carlo(
      task, cfg.replicates, cfg.seed, resolve_threads(args.common.threads));
  emit(nof1::simulate_summary_json(cfg, draws), args.common.output_path);
}

void run_compare(const CommonArgs& args) {
  const nof1::ConfigMap map = nof1::ConfigMap::from_file(args.config_path);
  const nof1::CompareDesignsConfig cfg = nof1::load_compare_config(map);
  const nof1::CompareDesignsResult result =
      nof1::compare_designs(cfg, resolve_threads(args.threads));
  emit(nof1::to_json(result), args.output_path);
}

struct CoverageArgs {
  CommonArgs common;
  std::string svg_path;
  bool plugin_ci = false;
};

void run_coverage(const CoverageArgs& args) {
  const nof1::ConfigMap map =
      nof1::ConfigMap::from_file(args.common.config_path);
  nof1::CoverageConfig cfg = nof1::load_coverage_config(map);
  if (args.plugin_ci) cfg.plugin_ci = true;
  const nof1::CoverageResult result =
      nof1::coverage_experiment(cfg, resolve_threads(args.common.threads));
  if (!args.svg_path.empty()) {
    write_text_file(args.svg_path,
                    nof1::histogram_svg(result.hist_edges,
                                        result.hist_counts));
  }
  emit(nof1::to_json(result), args.common.output_path);
}

void run_consistency(const CommonArgs& args) {
  const nof1::ConfigMap map = nof1::ConfigMap::from_file(args.config_path);
  const nof1::ConsistencyConfig cfg = nof1::load_consistency_config(map);
  const nof1::ConsistencyResult result =
      nof1::consistency_sweep(cfg, resolve_threads(args.threads));
  emit(nof1::to_json(result, cfg), args.output_path);
}

void emit_error(const char* type, const std::string& message,
                std::size_t line = 0) {
  nof1::OrderedJson j;
  j["error"] = type;
  j["message"] = message;
  if (line > 0) j["line"] = line;
  std::cerr << j.dump() << "\n";
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config_path, "Config file (INI or JSON)")
      ->required();
  cmd->add_option("-o,--output", args.output_path,
                  "Also write the JSON report to this file");
  cmd->add_option("-t,--threads", args.threads,
                  "Worker threads (default: NOF1_THREADS, then 1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Design, simulate and analyze randomized single-subject experiments "
      "with carryover dynamics"};
  app.require_subcommand(1);

  const std::map<std::string, nof1::ModelKind> model_map{
      {"linear", nof1::ModelKind::Linear},
      {"circular", nof1::ModelKind::Circular}};
  const std::map<std::string, nof1::EstimandKind> estimand_map{
      {"ate", nof1::EstimandKind::Ate},
      {"lag_k", nof1::EstimandKind::LagK},
      {"immediate", nof1::EstimandKind::Immediate},
      {"cumulative", nof1::EstimandKind::Cumulative},
      {"flip", nof1::EstimandKind::Flip}};

  EstimateArgs est;
  CLI::App* estimate =
      app.add_subcommand("estimate",
                         "Estimate a treatment effect from observed t,x,y "
                         "days with a plug-in confidence interval");
  estimate->add_option("-i,--input", est.input_path, "Observation CSV")
      ->required();
  estimate->add_option("-o,--output", est.output_path,
                       "Also write the JSON report to this file");
  estimate
      ->add_option("-m,--model", est.model,
                   "Outcome dynamics: linear or circular")
      ->transform(CLI::CheckedTransformer(model_map, CLI::ignore_case));
  estimate->add_option("-e,--estimand", est.estimand, "Effect to estimate")
      ->transform(CLI::CheckedTransformer(estimand_map, CLI::ignore_case));
  estimate->add_option("--lag", est.lag_k, "Lag count for --estimand lag_k");
  estimate->add_option("-k,--truncation", est.truncation,
                       "Plug-in truncation (0: ceil(2 log T))");
  estimate->add_option("-a,--alpha", est.alpha, "CI miss probability");

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo a configured scenario");
  add_common(simulate, sim.common);
  CLI::Option* dump_rep =
      simulate->add_option("--dump-replicate", sim.dump_replicate,
                           "Write one replicate's observations instead of "
                           "running the experiment");
  simulate->add_option("--dump-csv", sim.dump_csv,
                       "CSV path for --dump-replicate")
      ->needs(dump_rep);
  dump_rep->needs(simulate->get_option("--dump-csv"));

  CommonArgs cmp;
  CLI::App* compare = app.add_subcommand(
      "compare-designs",
      "Head-to-head estimator table for rapid and standard designs");
  add_common(compare, cmp);

  CoverageArgs cov;
  CLI::App* coverage = app.add_subcommand(
      "coverage", "Coverage of the closed-form two-sigma band");
  add_common(coverage, cov.common);
  coverage->add_option("--svg", cov.svg_path,
                       "Write the standardized histogram as SVG");
  coverage->add_flag("--plugin-ci", cov.plugin_ci,
                     "Also evaluate per-replicate plug-in intervals");

  CommonArgs con;
  CLI::App* consistency = app.add_subcommand(
      "consistency", "Truncated response recovery across horizons");
  add_common(consistency, con);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  sim.dump = simulate->count("--dump-replicate") > 0;

  try {
    if (*estimate) {
      run_estimate(est);
    } else if (*simulate) {
      run_simulate(sim);
    } else if (*compare) {
      run_compare(cmp);
    } else if (*coverage) {
      run_coverage(cov);
    } else if (*consistency) {
      run_consistency(con);
    }
    return 0;
  } catch (const nof1::ParseError& e) {
    emit_error("parse", e.what(), e.line());
    return 2;
  } catch (const nof1::ConfigError& e) {
    emit_error("config", e.what());
    return 2;
  } catch (const nof1::DimensionError& e) {
    emit_error("dimension", e.what());
    return 1;
  } catch (const nof1::DomainError& e) {
    emit_error("domain", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("runtime", e.what());
    return 1;
  }
}
