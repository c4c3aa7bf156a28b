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

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>

#include "kac/limit_laws.hpp"
#include "kac/mc_harness.hpp"

namespace kac {

namespace {

using Clock = std::chrono::steady_clock;

void certify(ExperimentReport& r, std::string name, double value, double threshold, bool passed) {
  r.certificates.push_back({std::move(name), value, threshold, passed});
}

template <class T>
void note_replacements(ExperimentReport& r, const TrialBatch<T>& batch) {
  r.replaced_trials += batch.replaced.size();
  r.replaced_ids.insert(r.replaced_ids.end(), batch.replaced.begin(), batch.replaced.end());
}

double mean_of(std::span<const double> v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

bool is_complex_gaussian(const CoefficientModel& m) {
  return m.kind() == CoefficientKind::ComplexGaussian;
}

void require_complex_gaussian(const ExperimentConfig& c) {
  if (!is_complex_gaussian(c.model))
    throw Error(ErrorCode::InvalidArgument,
                std::string(experiment_name(c.kind)) + " compares against the complex Gaussian limit");
}

struct X1Xn {
  std::vector<double> x1, xn;
};

X1Xn split(std::span<const ExtremalSample> s) {
  X1Xn out;
  for (const auto& e : s) {
    out.x1.push_back(e.x1);
    out.xn.push_back(e.xn);
  }
  return out;
}

void summarize_extremes(ExperimentReport& r, const X1Xn& d, const CoefficientModel& model) {
  r.summary["mean_x1"] = mean_of(d.x1);
  std::vector<double> inv;
  for (double v : d.x1) inv.push_back(1.0 / v);
  // Same ensemble on both sides, so this is a diagnostic, not a test.
  r.summary["ks_xn_vs_inverse_x1"] = ks_two_sample(d.xn, inv);
  if (d.xn.size() >= 4) {
    const auto diag = diagnose_tail(d.xn, model);
    if (const auto* est = std::get_if<TailEstimate>(&diag)) {
      r.summary["hill_alpha"] = est->alpha_hat;
      r.summary["hill_k"] = static_cast<double>(est->k_used);
      r.summary["hill_standard_error"] = est->standard_error;
    } else {
      r.summary["root_modulus_bound"] = std::get<BoundedSupport>(diag).bound;
    }
  }
}

void certify_batch(ExperimentReport& r) {
  const double rate = static_cast<double>(r.replaced_trials) /
                      static_cast<double>(std::max<std::size_t>(1, r.config.trials));
  certify(r, "replaced_trial_rate", rate, 1e-3, rate <= 1e-3);
}

void run_extremes(const ExperimentConfig& c, ExperimentReport& r, std::ostream* csv) {
  const auto batch = sample_extremes(c.model, c.n, c.trials, c.master_seed, c.workers);
  note_replacements(r, batch);
  const auto d = split(batch.results);
  summarize_extremes(r, d, c.model);
  if (c.kind == ExperimentKind::LimitCompare) {
    require_complex_gaussian(c);
    const double ks = ks_against_cdf(d.x1, [](double t) { return t < 1.0 ? limit_cdf(t) : 1.0; });
    r.summary["ks_x1_vs_limit"] = ks;
    certify(r, "ks_x1_vs_limit_cdf", ks, 0.03, ks < 0.03);
    const auto fig = figure2_data(d.x1, c.bins);
    r.summary["histogram_sup_distance"] = fig.sup_distance;
    certify(r, "histogram_vs_limit_density", fig.sup_distance, 0.1, fig.sup_distance < 0.1);
  }
  if (csv) write_extremal_csv(*csv, batch.results);
}

void run_figure1(const ExperimentConfig& c, ExperimentReport& r, std::ostream* csv) {
  const auto exp_batch = sample_extremes(CoefficientModel::exponential_real(1.0), c.n, c.trials,
                                         c.master_seed, c.workers);
  const auto rad_batch = sample_extremes(CoefficientModel::radial_exponential(1.0), c.n, c.trials,
                                         c.master_seed + 1, c.workers);
  note_replacements(r, exp_batch);
  note_replacements(r, rad_batch);
  const auto fig = figure1_data(split(exp_batch.results).x1, split(rad_batch.results).x1, c.bins);
  r.summary["first_decile_mass_exponential"] = fig.first_decile_exponential;
  r.summary["first_decile_mass_radial"] = fig.first_decile_radial;
  certify(r, "radial_first_decile_below_half", fig.first_decile_radial,
          0.5 * fig.first_decile_exponential,
          fig.first_decile_radial < 0.5 * fig.first_decile_exponential);
  if (csv) {
    const auto old = csv->precision(17);
    *csv << "model,bin_lo,bin_hi,density\n";
    for (const auto* h : {&fig.exponential, &fig.radial}) {
      const char* name = h == &fig.exponential ? "exponential_real" : "radial_exponential";
      for (std::size_t i = 0; i < h->density.size(); ++i)
        *csv << name << ',' << h->edges[i] << ',' << h->edges[i + 1] << ',' << h->density[i] << '\n';
    }
    csv->precision(old);
  }
}

void run_figure2(const ExperimentConfig& c, ExperimentReport& r, std::ostream* csv) {
  require_complex_gaussian(c);
  const auto batch = sample_extremes(c.model, c.n, c.trials, c.master_seed, c.workers);
  note_replacements(r, batch);
  const auto d = split(batch.results);
  const auto fig = figure2_data(d.x1, c.bins);
  r.summary["histogram_sup_distance"] = fig.sup_distance;
  certify(r, "histogram_vs_limit_density", fig.sup_distance, 0.1, fig.sup_distance < 0.1);
  if (csv) {
    const auto old = csv->precision(17);
    *csv << "bin_lo,bin_hi,density,limit_density\n";
    for (std::size_t i = 0; i < fig.x1.density.size(); ++i)
      *csv << fig.x1.edges[i] << ',' << fig.x1.edges[i + 1] << ',' << fig.x1.density[i] << ','
           << fig.limit_density_mid[i] << '\n';
    csv->precision(old);
  }
}

void run_intensity(const ExperimentConfig& c, ExperimentReport& r, std::ostream* csv) {
  const auto batch = sample_snapshots(c.model, c.n, c.rho, c.trials, c.master_seed, c.workers);
  note_replacements(r, batch);
  const auto& snaps = batch.results;

  std::vector<double> counts;
  double re_sum = 0.0, re_sq = 0.0;
  for (const auto& s : snaps) {
    counts.push_back(static_cast<double>(s.zeros.size()));
    const double v = linear_statistic(s, Monomial{1, 0}).real();
    re_sum += v;
    re_sq += v * v;
  }
  const double t = static_cast<double>(snaps.size());
  const double mean = mean_of(counts);
  double var = 0.0;
  for (double v : counts) var += (v - mean) * (v - mean);
  const double se = snaps.size() > 1 ? std::sqrt(var / (t - 1.0) / t) : 0.0;
  const double predicted = gaf_expected_count(c.rho);
  r.summary["mean_count"] = mean;
  r.summary["mean_count_standard_error"] = se;
  r.summary["predicted_count"] = predicted;
  const double z_mean = re_sum / t;
  const double z_se = snaps.size() > 1 ? std::sqrt(std::max(0.0, re_sq / t - z_mean * z_mean) / (t - 1.0)) : 0.0;
  r.summary["mean_re_sum_z"] = z_mean;
  r.summary["mean_re_sum_z_standard_error"] = z_se;

  const bool cg = is_complex_gaussian(c.model);
  if (cg)
    certify(r, "mean_count_within_3se", std::abs(mean - predicted), 3.0 * se,
            std::abs(mean - predicted) <= 3.0 * se);
  if (c.model.is_rotation_invariant())
    certify(r, "linear_statistic_z_centered", std::abs(z_mean), 3.0 * z_se,
            std::abs(z_mean) <= 3.0 * z_se);

  std::vector<double> edges(c.bins + 1);
  for (std::size_t i = 0; i <= c.bins; ++i)
    edges[i] = c.rho * static_cast<double>(i) / static_cast<double>(c.bins);
  edges.back() = c.rho;
  if (snaps.size() >= 100) {
    const auto h = radial_intensity_histogram(snaps, edges);
    if (cg) {
      double worst = 0.0;
      bool ok = true;
      for (std::size_t b = 0; b < c.bins; ++b) {
        const double dev = std::abs(h.mean_count[b] - h.predicted[b]);
        const double band = 3.0 * h.standard_error[b];
        worst = std::max(worst, band > 0.0 ? dev / band : (dev > 0.0 ? INFINITY : 0.0));
        ok = ok && dev <= band;
      }
      certify(r, "radial_bins_within_3se", worst, 1.0, ok);
    }
    if (csv) {
      const auto old = csv->precision(17);
      *csv << "bin_lo,bin_hi,mean_count,standard_error,predicted\n";
      for (std::size_t b = 0; b < c.bins; ++b)
        *csv << h.edges[b] << ',' << h.edges[b + 1] << ',' << h.mean_count[b] << ','
             << h.standard_error[b] << ',' << h.predicted[b] << '\n';
      csv->precision(old);
    }
  } else if (csv) {
    write_snapshot_csv(*csv, snaps);
  }
}

void run_stability(const ExperimentConfig& c, ExperimentReport& r, std::ostream* csv) {
  const auto ladder = c.degree_ladder();
  const auto batch = sample_stability(c.model, ladder, c.rho, c.trials, c.master_seed, c.workers);
  note_replacements(r, batch);
  std::size_t stable = 0, jittered = 0;
  double worst = 0.0;
  for (const auto& rep : batch.results) {
    if (rep.stable(1e-6)) ++stable;
    if (rep.rho_jitters > 0) ++jittered;
    for (const auto& p : rep.pairs) worst = std::max(worst, p.max_displacement);
  }
  const double frac = static_cast<double>(stable) / static_cast<double>(batch.results.size());
  r.summary["stable_fraction"] = frac;
  r.summary["jittered_seeds"] = static_cast<double>(jittered);
  r.summary["max_displacement"] = worst;
  certify(r, "stable_fraction", frac, 0.99, frac >= 0.99);
  if (csv) write_stability_table(*csv, batch.results);
}

void run_coulomb(const ExperimentConfig& c, ExperimentReport& r, std::ostream* csv) {
  double single = 0.0;
  for (const Complex z : {Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(0.5, 0.5)}) {
    const Complex roots[] = {z};
    single = std::max(single, std::abs(coulomb_log_density(roots) + 2.0 * std::log1p(std::norm(z))));
  }
  r.summary["single_root_error"] = single;
  certify(r, "single_root_closed_form", single, 1e-10, single <= 1e-10);

  struct Row {
    double theta = 0.0, value = 0.0, rotated = 0.0;
  };
  const auto batch = run_trials<Row>(c.master_seed, c.trials, c.workers,
                                     [&](RandomStream& rng, std::uint64_t) {
    const Polynomial p(sample_coefficients(c.model, rng, c.n + 1));
    auto roots = solve(p).roots;
    Row row;
    row.theta = 2.0 * std::numbers::pi * rng.uniform();
    row.value = coulomb_log_density(roots);
    const Complex w = std::polar(1.0, row.theta);
    for (auto& z : roots) z *= w;
    row.rotated = coulomb_log_density(roots);
    return row;
  });
  note_replacements(r, batch);
  double worst = 0.0;
  for (const auto& row : batch.results)
    worst = std::max(worst, std::abs(row.rotated - row.value) / std::max(1.0, std::abs(row.value)));
  r.summary["rotation_relative_error"] = worst;
  certify(r, "rotation_invariance", worst, 1e-11, worst <= 1e-11);
  if (csv) {
    const auto old = csv->precision(17);
    *csv << "trial_id,theta,log_density,rotated\n";
    for (std::size_t i = 0; i < batch.results.size(); ++i) {
      const auto& row = batch.results[i];
      *csv << i << ',' << row.theta << ',' << row.value << ',' << row.rotated << '\n';
    }
    csv->precision(old);
  }
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport report;
  report.config = config;
  report.data_path = config.out;

  std::ostringstream body;
  std::ostream* csv = config.out.empty() ? nullptr : &body;
  const auto start = Clock::now();
  switch (config.kind) {
    case ExperimentKind::Extremes:
    case ExperimentKind::LimitCompare: run_extremes(config, report, csv); break;
    case ExperimentKind::Figure1: run_figure1(config, report, csv); break;
    case ExperimentKind::Figure2: run_figure2(config, report, csv); break;
    case ExperimentKind::Intensity: run_intensity(config, report, csv); break;
    case ExperimentKind::Stability: run_stability(config, report, csv); break;
    case ExperimentKind::CoulombCheck: run_coulomb(config, report, csv); break;
  }
  certify_batch(report);
  report.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  const double total_trials =
      static_cast<double>(config.trials) * (config.kind == ExperimentKind::Figure1 ? 2.0 : 1.0);
  report.trials_per_second = report.wall_seconds > 0.0 ? total_trials / report.wall_seconds : 0.0;

  if (!config.out.empty()) {
    auto open = [](const std::string& path) {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw Error(ErrorCode::Io, "cannot write " + path);
      return f;
    };
    {
      auto f = open(config.out);
      write_config_header(f, config);
      f << body.str();
    }
    {
      auto f = open(config.out + ".json");
      write_report_json(f, report);
    }
    {
      auto f = open(config.out + ".metrics.json");
      write_metrics_json(f, report);
    }
  }
  return report;
}

}  // namespace kac
