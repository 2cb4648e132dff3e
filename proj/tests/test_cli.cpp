// Copyright (c) 2026 The nof1 Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line binary: exit codes, report plumbing
// and the estimate round trip through the observation CSV format.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#ifndef NOF1_CLI_PATH
#error "NOF1_CLI_PATH must point at the nof1 binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string out_path = "cli_out_" + std::to_string(counter) + ".txt";
  const std::string err_path = "cli_err_" + std::to_string(counter) + ".txt";
  ++counter;
  const std::string cmd = std::string(NOF1_CLI_PATH) + " " + args + " >" +
                          out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

const char* kSimulateCfg =
    "[design]\n"
    "kind = rapid_bernoulli\n"
    "horizon = 24\n"
    "[simulate]\n"
    "model = circular\n"
    "estimator = mom\n"
    "estimand = lag_k\n"
    "lag_k = 3\n"
    "[response]\n"
    "coefficients = 1.0\n"
    "rates = 0.5\n"
    "[error]\n"
    "kind = sinusoid\n"
    "amplitude = 0.2\n"
    "period = 7\n"
    "[mc]\n"
    "replicates = 60\n"
    "seed = 424242\n";

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("estimate --help").exit_code == 0);

  CHECK(run_cli("").exit_code == 2);           // a subcommand is required
  CHECK(run_cli("frobnicate").exit_code == 2); // unknown subcommand
  CHECK(run_cli("estimate").exit_code == 2);   // missing --input
  CHECK(run_cli("simulate -c nowhere.cfg").exit_code == 2);
  // --dump-replicate and --dump-csv only travel together
  write_file("cli_sim.cfg", kSimulateCfg);
  CHECK(run_cli("simulate -c cli_sim.cfg --dump-replicate 1").exit_code ==
        2);
}

TEST_CASE("config errors surface as json on stderr with exit 2") {
  write_file("cli_bad.cfg", "[design]\nhorizon = very\n");
  const auto r = run_cli("simulate -c cli_bad.cfg");
  CHECK(r.exit_code == 2);
  const auto j = nlohmann::json::parse(r.err);
  CHECK(j.at("error") == "config");
  CHECK(j.at("message").get<std::string>().find("design.horizon") !=
        std::string::npos);

  write_file("cli_bad2.cfg", "[design\nhorizon = 2\n");
  const auto r2 = run_cli("simulate -c cli_bad2.cfg");
  CHECK(r2.exit_code == 2);
  const auto j2 = nlohmann::json::parse(r2.err);
  CHECK(j2.at("error") == "parse");
  CHECK(j2.at("line") == 1);
}

TEST_CASE("domain errors exit 1") {
  write_file("cli_one_day.csv", "t,x,y\n0,1,0.5\n");
  const auto r = run_cli("estimate -i cli_one_day.csv -e flip");
  CHECK(r.exit_code == 1);
  const auto j = nlohmann::json::parse(r.err);
  CHECK(j.at("error") == "domain");
}

TEST_CASE("simulate summary json is complete and file output matches") {
  write_file("cli_sim.cfg", kSimulateCfg);
  const auto r = run_cli("simulate -c cli_sim.cfg -o cli_sim_out.json");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == slurp("cli_sim_out.json"));

  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("config").at("design") == "rapid_bernoulli");
  CHECK(j.at("config").at("estimand") == "lag_k");
  CHECK(j.at("estimates").at("n") == 60);
  CHECK(j.at("estimates").contains("mean"));
  CHECK(j.at("avg_responses").contains("sd"));
  std::remove("cli_sim_out.json");
}

TEST_CASE("dump-replicate round trips through the estimate subcommand") {
  write_file("cli_sim.cfg", kSimulateCfg);
  const auto dump = run_cli(
      "simulate -c cli_sim.cfg --dump-replicate 17 --dump-csv cli_rep.csv");
  REQUIRE(dump.exit_code == 0);
  const auto dj = nlohmann::json::parse(dump.out);
  CHECK(dj.at("replicate") == 17);
  CHECK(dj.at("model") == "circular");
  const double dumped_estimate = dj.at("estimate").get<double>();

  const auto est = run_cli(
      "estimate -i cli_rep.csv -m circular -e lag_k --lag 3");
  REQUIRE(est.exit_code == 0);
  const auto ej = nlohmann::json::parse(est.out);
  // same estimator code path on a lossless serialization: exact equality
  CHECK(ej.at("estimate").get<double>() == dumped_estimate);
  CHECK(ej.at("model") == "circular");
  CHECK(ej.at("estimand") == "lag_k");
  CHECK(ej.at("horizon") == 24);
  CHECK(ej.at("ci").at("lo").get<double>() <
        ej.at("ci").at("hi").get<double>());
  std::remove("cli_rep.csv");
}

TEST_CASE("coverage subcommand writes reports and svg") {
  write_file("cli_cov.cfg",
             "[response]\ncoefficients = 1.0\nrates = 0.5\n"
             "[coverage]\nmodel = circular\nhorizon = 48\nreplicates = 200\n"
             "truncation = 4\n"
             "[mc]\nseed = 7\n");
  const auto r = run_cli(
      "coverage -c cli_cov.cfg --plugin-ci --svg cli_cov.svg");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("horizon") == 48);
  CHECK(j.at("coverage").get<double>() > 0.8);
  CHECK(j.at("plugin_coverage").get<double>() > 0.8);
  CHECK(j.contains("histogram"));
  const std::string svg = slurp("cli_cov.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  std::remove("cli_cov.svg");
}

TEST_CASE("consistency subcommand reports rows and slope") {
  write_file("cli_con.cfg",
             "[response]\ncoefficients = 1.0\nrates = 0.5\n"
             "[consistency]\nmodel = circular\nhorizons = 32, 128\n"
             "replicates = 40\ntruncation = 4\n"
             "[mc]\nseed = 11\n");
  const auto r = run_cli("consistency -c cli_con.cfg");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("rows").size() == 2);
  CHECK(j.at("rows")[0].at("horizon") == 32);
  CHECK(j.at("rows")[1].at("horizon") == 128);
  CHECK(j.at("rows")[1].at("median_sup_error").get<double>() <
        j.at("rows")[0].at("median_sup_error").get<double>());
  CHECK(j.contains("log_slope"));
}

TEST_CASE("compare-designs runs a small table") {
  write_file("cli_cmp.cfg",
             "[pair]\na = 2\nb = 1\nerror_form = response\n"
             "[response]\ncoefficients = 1.0\nrates = 0.5\n"
             "[design]\nhorizon = 35\nwashout = 5\nblock = 2\n"
             "[mc]\nreplicates = 120\nseed = 5\n");
  const auto r = run_cli("compare-designs -c cli_cmp.cfg");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("rows").size() == 5);
  CHECK(j.at("rows")[0].at("design") == "rapid_bernoulli");
  CHECK(j.at("rows")[4].at("design") == "standard_cum");
}

TEST_CASE("thread count leaves the bytes untouched") {
  write_file("cli_sim.cfg", kSimulateCfg);
  const auto one = run_cli("simulate -c cli_sim.cfg --threads 1");
  const auto four = run_cli("simulate -c cli_sim.cfg --threads 4");
  REQUIRE(one.exit_code == 0);
  REQUIRE(four.exit_code == 0);
  CHECK(one.out == four.out);
}
