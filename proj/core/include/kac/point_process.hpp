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

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kac/coeff_models.hpp"
#include "kac/polynomial.hpp"

namespace kac {

/// Zeros of one polynomial that fall strictly inside |z| < rho.
struct DiskProcessSnapshot {
  std::size_t n = 0;
  double rho = 0.0;
  std::vector<Complex> zeros;
  std::uint64_t seed = 0;
};

/// Filters a root multiset to |z| < rho. Throws BoundaryRoot if a root is
/// within 1e-9 of the circle |z| = rho; rho must lie in (0, 1).
DiskProcessSnapshot in_disk_zeros(std::span<const Complex> roots, double rho, std::size_t n = 0,
                                  std::uint64_t seed = 0);
inline DiskProcessSnapshot in_disk_zeros(const RootSet& roots, double rho, std::size_t n = 0,
                                         std::uint64_t seed = 0) {
  return in_disk_zeros(roots.roots, rho, n == 0 ? roots.size() : n, seed);
}

/// z^m conj(z)^l, zero outside the snapshot disk.
struct Monomial {
  int m = 0;
  int l = 0;
};

/// exp(1 - 1/(1 - (|z|/support)^2)) inside |z| < support, zero outside:
/// smooth, compactly supported, equal to 1 at the origin.
struct RadialBump {
  double support = 0.5;
};

using TestFunction = std::variant<Monomial, RadialBump>;

Complex evaluate_test_function(const TestFunction& f, Complex z, double rho);

/// sum_k f(z_k) over the snapshot.
Complex linear_statistic(const DiskProcessSnapshot& snapshot, const TestFunction& f);

/// Zeros of P_n inside |z| < rho for each requested degree, all truncations
/// of one shared coefficient sequence a_0..a_N.
struct DegreePair {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t count_from = 0;
  std::size_t count_to = 0;
  std::size_t matched = 0;
  std::size_t unmatched = 0;  // zeros of either level with no partner within the threshold
  double max_displacement = 0.0;
};

struct StabilityReport {
  std::string model;
  std::uint64_t seed = 0;
  double rho = 0.0;           // radius actually used (after any jitter)
  double requested_rho = 0.0;
  int rho_jitters = 0;        // how many times BoundaryRoot forced a re-draw of rho
  std::vector<std::size_t> degrees;
  std::vector<std::size_t> counts;
  std::vector<DegreePair> pairs;

  /// Equal counts and all displacements below `tolerance` for every pair.
  bool stable(double tolerance) const;
};

/// Greedy nearest-neighbour matching threshold between degree levels.
inline constexpr double kMatchThreshold = 1e-3;

StabilityReport hurwitz_stability(const CoefficientModel& model, std::uint64_t seed, double rho,
                                  std::span<const std::size_t> degrees,
                                  const SolveOptions& opts = {});

/// Same, from an explicit coefficient sequence (length > max degree).
StabilityReport hurwitz_stability(std::span<const Complex> coefficients, double rho,
                                  std::span<const std::size_t> degrees,
                                  const SolveOptions& opts = {});

/// Greedy matching of two zero sets: repeatedly pair the globally closest
/// remaining (a, b) while that distance is below threshold.
struct Matching {
  std::size_t matched = 0;
  std::size_t unmatched = 0;
  double max_displacement = 0.0;
};
Matching match_zeros(std::span<const Complex> a, std::span<const Complex> b,
                     double threshold = kMatchThreshold);

struct RadialHistogram {
  std::vector<double> edges;          // bins [edges[i], edges[i+1])
  std::vector<double> mean_count;     // per-trial mean count per bin
  std::vector<double> standard_error; // sample sd / sqrt(trials)
  std::vector<double> predicted;      // Bergman ring mass per bin
  std::size_t trials = 0;
};

/// Per-bin mean counts over snapshots with standard errors, next to the
/// Bergman prediction r^2/(1-r^2) differenced at the edges. Needs >= 100
/// snapshots and strictly increasing edges within [0, 1).
RadialHistogram radial_intensity_histogram(std::span<const DiskProcessSnapshot> snapshots,
                                           std::span<const double> edges);

/// Per-snapshot bin counts for |z| in the given edges (used by the histogram
/// and by the count-additivity check).
std::vector<std::size_t> radial_bin_counts(const DiskProcessSnapshot& snapshot,
                                           std::span<const double> edges);

/// CSV `seed,n,rho,re,im`, one row per zero.
void write_snapshot_csv(std::ostream& out, std::span<const DiskProcessSnapshot> snapshots);

/// Plain-text table, one line per degree pair.
void write_stability_table(std::ostream& out, std::span<const StabilityReport> reports);

}  // namespace kac
