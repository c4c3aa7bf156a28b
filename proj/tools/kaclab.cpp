/*
   Copyright 2026 The kaclab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// kaclab: command line driver for the random-polynomial experiments.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "kac/extremal_stats.hpp"
#include "kac/limit_laws.hpp"
#include "kac/mc_harness.hpp"

namespace {

struct CommonFlags {
  std::optional<std::string> model;
  std::optional<std::size_t> n;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> rho;
  std::optional<std::string> out;
  std::optional<unsigned> workers;
  std::optional<std::size_t> bins;
  std::optional<std::string> config;
  std::optional<std::string> degrees;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--model", f.model, "coefficient law, e.g. complex_gaussian or uniform_annulus:inner=1,outer=2");
  cmd->add_option("--n", f.n, "polynomial degree (default 500)");
  cmd->add_option("--trials", f.trials, "number of trials (default 10000)");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--rho", f.rho, "disk radius");
  cmd->add_option("--out", f.out, "output CSV path; reports go next to it");
  cmd->add_option("--workers", f.workers, "worker threads");
  cmd->add_option("--bins", f.bins, "histogram bins (default 40)");
  cmd->add_option("--config", f.config, "key=value config file; flags override it");
}

kac::ExperimentConfig build_config(const CommonFlags& f, kac::ExperimentKind kind) {
  kac::ExperimentConfig c;
  c.kind = kind;
  if (f.config) c = kac::ExperimentConfig::from_file(*f.config, c);
  c.kind = kind;
  if (f.model) c.model = kac::CoefficientModel::parse(*f.model);
  if (f.n) c.n = *f.n;
  if (f.trials) c.trials = *f.trials;
  if (f.seed) c.master_seed = *f.seed;
  if (f.rho) c.rho = *f.rho;
  if (f.out) c.out = *f.out;
  if (f.workers) c.workers = *f.workers;
  if (f.bins) c.bins = *f.bins;
  if (f.degrees) c.set("degrees", *f.degrees);
  return c;
}

int finish(const kac::ExperimentReport& report) {
  kac::write_report_json(std::cout, report);
  if (!report.config.out.empty()) std::cerr << "wrote " << report.config.out << '\n';
  return report.all_passed() ? 0 : 1;
}

int limit_cdf_cmd(std::size_t points, double budget, const std::optional<std::string>& out) {
  if (out) {
    std::ofstream f(*out);
    if (!f) throw kac::Error(kac::ErrorCode::Io, "cannot write " + *out);
    f << "# budget=" << budget << '\n';
    kac::write_limit_table(f, points, budget);
  } else {
    kac::write_limit_table(std::cout, points, budget);
  }
  return 0;
}

int gaf_moduli_cmd(const CommonFlags& flags) {
  auto c = build_config(flags, kac::ExperimentKind::Extremes);
  c.validate();
  struct Row {
    double min_modulus = 0.0;
    std::size_t count = 0;
  };
  const double rho = c.rho;
  const auto batch = kac::run_trials<Row>(c.master_seed, c.trials, c.workers,
                                          [rho](kac::RandomStream& rng, std::uint64_t) {
    Row row;
    row.count = kac::sample_gaf_moduli(rng, rho).moduli.size();
    row.min_modulus = kac::sample_gaf_min_modulus(rng);
    return row;
  });
  std::vector<double> mins, counts;
  for (const auto& r : batch.results) {
    mins.push_back(r.min_modulus);
    counts.push_back(static_cast<double>(r.count));
  }
  const double ks = kac::ks_against_cdf(mins, [](double t) { return kac::limit_cdf(t); });
  double mean = 0.0, var = 0.0;
  for (double v : counts) mean += v;
  mean /= static_cast<double>(counts.size());
  for (double v : counts) var += (v - mean) * (v - mean);
  const double t = static_cast<double>(counts.size());
  const double se = counts.size() > 1 ? std::sqrt(var / (t - 1.0) / t) : 0.0;
  const double predicted = kac::gaf_expected_count(rho);

  kac::ExperimentReport report;
  report.config = c;
  report.summary["ks_min_modulus_vs_limit"] = ks;
  report.summary["mean_count"] = mean;
  report.summary["mean_count_standard_error"] = se;
  report.summary["predicted_count"] = predicted;
  report.certificates.push_back({"ks_min_modulus_vs_limit_cdf", ks, 0.02, ks < 0.02});
  report.certificates.push_back({"mean_count_within_3se", std::abs(mean - predicted), 3.0 * se,
                                 std::abs(mean - predicted) <= 3.0 * se});
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) throw kac::Error(kac::ErrorCode::Io, "cannot write " + c.out);
    kac::write_config_header(f, c);
    f.precision(17);
    f << "trial_id,count,min_modulus\n";
    for (std::size_t i = 0; i < batch.results.size(); ++i)
      f << i << ',' << batch.results[i].count << ',' << batch.results[i].min_modulus << '\n';
    std::ofstream j(c.out + ".json");
    kac::write_report_json(j, report);
  }
  return finish(report);
}

int tail_cmd(const CommonFlags& flags, const std::optional<std::string>& input) {
  auto c = build_config(flags, kac::ExperimentKind::Extremes);
  std::vector<kac::ExtremalSample> samples;
  if (input) {
    std::ifstream in(*input);
    if (!in) throw kac::Error(kac::ErrorCode::Io, "cannot read " + *input);
    samples = kac::read_extremal_csv(in);
    if (samples.empty()) throw kac::Error(kac::ErrorCode::InvalidArgument, "no samples in " + *input);
  } else {
    c.validate();
    samples = kac::sample_extremes(c.model, c.n, c.trials, c.master_seed, c.workers).results;
  }
  std::vector<double> x1, xn;
  for (const auto& s : samples) {
    x1.push_back(s.x1);
    xn.push_back(s.xn);
  }
  kac::ExperimentReport report;
  report.config = c;
  const auto diag = kac::diagnose_tail(xn, c.model);
  if (const auto* est = std::get_if<kac::TailEstimate>(&diag)) {
    report.summary["hill_alpha"] = est->alpha_hat;
    report.summary["hill_k"] = static_cast<double>(est->k_used);
    report.summary["hill_standard_error"] = est->standard_error;
  } else {
    report.summary["root_modulus_bound"] = std::get<kac::BoundedSupport>(diag).bound;
  }
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.01 * std::pow(10.0, i / 20.0));
  try {
    report.summary["small_t_exponent"] = kac::small_t_exponent(x1, grid);
  } catch (const kac::Error& e) {
    if (e.code() != kac::ErrorCode::InsufficientMass) throw;
  }
  if (const auto k = c.model.zero_exponent()) {
    report.summary["declared_zero_exponent"] = k->k;
    std::vector<double> caps;
    for (int i = 0; i <= 4; ++i) caps.push_back(std::pow(10.0, i));
    const auto slopes = kac::log_log_slopes(caps, kac::truncated_moment_curve(xn, k->k, caps));
    report.summary["truncated_moment_last_slope"] = slopes.back();
  }
  return finish(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo laboratory for extremal zeros of random Kac polynomials"};
  app.require_subcommand(1);

  CommonFlags flags;
  struct Sub {
    const char* name;
    const char* help;
    kac::ExperimentKind kind;
  };
  const Sub experiments[] = {
      {"extremes", "x1 and xn per trial", kac::ExperimentKind::Extremes},
      {"limit-compare", "x1 against the complex Gaussian limit law", kac::ExperimentKind::LimitCompare},
      {"intensity", "in-disk zero counts against the Bergman intensity", kac::ExperimentKind::Intensity},
      {"stability", "zero matching across truncation degrees", kac::ExperimentKind::Stability},
      {"figure1", "x1 histograms, exponential vs radial exponential coefficients", kac::ExperimentKind::Figure1},
      {"figure2", "x1 histogram with the limit density", kac::ExperimentKind::Figure2},
      {"coulomb-check", "Coulomb-gas log-density evaluator checks", kac::ExperimentKind::CoulombCheck},
  };
  std::vector<std::pair<CLI::App*, kac::ExperimentKind>> runners;
  for (const auto& s : experiments) {
    auto* cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, flags);
    if (s.kind == kac::ExperimentKind::Stability)
      cmd->add_option("--degrees", flags.degrees, "comma-separated degree ladder (default n/2,n)");
    runners.emplace_back(cmd, s.kind);
  }

  std::size_t points = 99;
  double budget = 1e-14;
  std::optional<std::string> limit_out;
  auto* limit = app.add_subcommand("limit-cdf", "tabulate F(t) and its density");
  limit->add_option("--points", points, "interior grid points");
  limit->add_option("--budget", budget, "truncation error budget");
  limit->add_option("--out", limit_out, "output CSV path");

  auto* gaf = app.add_subcommand("gaf-moduli", "sample the moduli law U_k^(1/2k)");
  add_common(gaf, flags);

  std::optional<std::string> tail_input;
  auto* tail = app.add_subcommand("tail", "tail index and small-t diagnostics");
  add_common(tail, flags);
  tail->add_option("--input", tail_input, "extremes CSV to analyse instead of sampling");

  CLI11_PARSE(app, argc, argv);

  try {
    if (limit->parsed()) return limit_cdf_cmd(points, budget, limit_out);
    if (gaf->parsed()) return gaf_moduli_cmd(flags);
    if (tail->parsed()) return tail_cmd(flags, tail_input);
    for (const auto& [cmd, kind] : runners)
      if (cmd->parsed()) return finish(kac::run_experiment(build_config(flags, kind)));
  } catch (const std::exception& e) {
    std::cerr << "kaclab: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
