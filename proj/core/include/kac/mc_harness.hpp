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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "kac/coeff_models.hpp"
#include "kac/errors.hpp"
#include "kac/extremal_stats.hpp"
#include "kac/point_process.hpp"
#include "kac/polynomial.hpp"
#include "kac/rng.hpp"

namespace kac {

enum class ExperimentKind { Extremes, LimitCompare, Intensity, Stability, Figure1, Figure2, CoulombCheck };

std::string_view experiment_name(ExperimentKind kind) noexcept;
ExperimentKind parse_experiment_kind(std::string_view text);

/// Replacement trials draw from stream trial_id + kReplacementOffset * attempt.
inline constexpr std::uint64_t kReplacementOffset = std::uint64_t{1} << 32;

struct ExperimentConfig {
  CoefficientModel model = CoefficientModel::complex_gaussian();
  std::size_t n = 500;
  std::size_t trials = 10000;
  std::uint64_t master_seed = 20240601;
  ExperimentKind kind = ExperimentKind::Extremes;
  std::string out;        // primary CSV; the JSON report goes to out + ".json"
  unsigned workers = 1;
  std::size_t bins = 40;
  double rho = 0.7;
  /// Degree ladder for `stability`; empty means {n/2, n}.
  std::vector<std::size_t> degrees;

  /// Throws InvalidArgument on out-of-range fields.
  void validate() const;

  /// Fields that determine the results, in a fixed order. Worker count and
  /// output path are deliberately absent: they never change a result byte.
  std::vector<std::pair<std::string, std::string>> echo() const;

  std::vector<std::size_t> degree_ladder() const;

  /// `key=value` lines; `#` starts a comment. Unknown keys throw ParseError.
  /// Keys not mentioned keep their value from `base`.
  static ExperimentConfig from_text(std::istream& in, ExperimentConfig base);
  static ExperimentConfig from_text(std::istream& in);
  static ExperimentConfig from_file(const std::string& path, ExperimentConfig base);
  static ExperimentConfig from_file(const std::string& path);
  /// Apply one key=value assignment.
  void set(std::string_view key, std::string_view value);
};

struct Histogram {
  std::vector<double> edges;
  std::vector<double> density;
  std::size_t total = 0;    // values offered
  std::size_t counted = 0;  // values inside the range
};

/// Density-normalized histogram over [lo, hi] (last bin closed): the bins
/// integrate to 1 over the range. Values outside are counted in `total` but
/// not binned. Empty input gives all-zero densities.
Histogram histogram(std::span<const double> values, std::size_t bins, double lo = 0.0,
                    double hi = 1.0);

/// Mass of the histogram on [lo, hi) for bins lying fully inside it.
double histogram_mass(const Histogram& h, double lo, double hi);

/// One named pass/fail check carried by every report.
struct Certificate {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::map<std::string, double> summary;
  std::vector<Certificate> certificates;
  std::size_t replaced_trials = 0;
  std::vector<std::uint64_t> replaced_ids;
  std::string data_path;
  // Timing; reported in the metrics sidecar only.
  double wall_seconds = 0.0;
  double trials_per_second = 0.0;

  bool all_passed() const noexcept;
};

/// Results of a trial batch in trial-id order.
template <class T>
struct TrialBatch {
  std::vector<T> results;
  std::vector<std::uint64_t> replaced;  // trial ids that needed a fresh stream
};

/// Runs `fn(stream, trial_id)` for trial ids [0, trials) on `workers`
/// threads pulling ids from a shared counter. A trial that throws
/// NonConvergence or BoundaryRoot is re-run on stream trial_id + 2^32 (then
/// + 2*2^32, ...). More than 0.1% failed attempts, or any other exception,
/// aborts the batch. Output depends only on (master_seed, trials, fn).
template <class T, class Fn>
TrialBatch<T> run_trials(std::uint64_t master_seed, std::size_t trials, unsigned workers, Fn&& fn) {
  TrialBatch<T> batch;
  batch.results.resize(trials);
  std::vector<unsigned char> flagged(trials, 0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> failures{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      if (stop.load(std::memory_order_relaxed)) return;
      const std::size_t id = next.fetch_add(1, std::memory_order_relaxed);
      if (id >= trials) return;
      try {
        for (std::uint64_t attempt = 0;; ++attempt) {
          RandomStream rng = RandomStream::for_trial(master_seed, id + attempt * kReplacementOffset);
          try {
            batch.results[id] = fn(rng, static_cast<std::uint64_t>(id));
            break;
          } catch (const Error& e) {
            if (e.code() != ErrorCode::NonConvergence && e.code() != ErrorCode::BoundaryRoot) throw;
            flagged[id] = 1;
            if ((failures.fetch_add(1) + 1) * 1000 > trials)
              throw Error(ErrorCode::TooManyFailures,
                          "more than 0.1% of trials failed to converge");
          }
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        stop = true;
        return;
      }
    }
  };

  const unsigned w = std::max(1u, workers);
  if (w == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < w; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  for (std::size_t i = 0; i < trials; ++i)
    if (flagged[i]) batch.replaced.push_back(i);
  return batch;
}

/// Extremal samples for `trials` independent degree-n polynomials.
TrialBatch<ExtremalSample> sample_extremes(const CoefficientModel& model, std::size_t n,
                                           std::size_t trials, std::uint64_t master_seed,
                                           unsigned workers, const SolveOptions& opts = {});

/// In-disk snapshots at radius rho. A snapshot with a root on the circle is
/// re-drawn like a non-converged trial.
TrialBatch<DiskProcessSnapshot> sample_snapshots(const CoefficientModel& model, std::size_t n,
                                                 double rho, std::size_t trials,
                                                 std::uint64_t master_seed, unsigned workers,
                                                 const SolveOptions& opts = {});

/// Stability reports for `seeds` coefficient streams over one degree ladder.
TrialBatch<StabilityReport> sample_stability(const CoefficientModel& model,
                                             std::span<const std::size_t> degrees, double rho,
                                             std::size_t seeds, std::uint64_t master_seed,
                                             unsigned workers, const SolveOptions& opts = {});

/// Data behind `figure1`: x1 histograms for two laws on (0, 1).
struct FigureOneData {
  Histogram exponential;
  Histogram radial;
  double first_decile_exponential = 0.0;
  double first_decile_radial = 0.0;
};
FigureOneData figure1_data(std::span<const double> x1_exponential,
                           std::span<const double> x1_radial, std::size_t bins = 40);

/// Data behind `figure2`: x1 histogram beside the limit density at bin midpoints.
struct FigureTwoData {
  Histogram x1;
  std::vector<double> limit_density_mid;
  double sup_distance = 0.0;
};
FigureTwoData figure2_data(std::span<const double> x1, std::size_t bins = 40);

/// Runs one experiment end to end: trials, certificates, CSV at
/// config.out, JSON report at config.out + ".json" and timing at
/// config.out + ".metrics.json". With an empty `out` nothing is written.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// `# key=value` lines for every echoed config field.
void write_config_header(std::ostream& out, const ExperimentConfig& config);
/// Deterministic JSON report (no timing).
void write_report_json(std::ostream& out, const ExperimentReport& report);
/// Timing, worker count and output path.
void write_metrics_json(std::ostream& out, const ExperimentReport& report);
void write_histogram_csv(std::ostream& out, const Histogram& h);

}  // namespace kac
