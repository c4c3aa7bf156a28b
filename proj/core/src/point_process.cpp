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

#include "kac/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <tuple>

#include "kac/errors.hpp"

namespace kac {

DiskProcessSnapshot in_disk_zeros(std::span<const Complex> roots, double rho, std::size_t n,
                                  std::uint64_t seed) {
  if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorCode::InvalidArgument, "rho must lie in (0, 1)");
  DiskProcessSnapshot snap;
  snap.n = n == 0 ? roots.size() : n;
  snap.rho = rho;
  snap.seed = seed;
  for (const Complex& z : roots) {
    const double m = std::abs(z);
    if (std::abs(m - rho) <= 1e-9) {
      std::ostringstream msg;
      msg << "zero of modulus " << std::setprecision(17) << m << " on the circle |z| = " << rho;
      throw Error(ErrorCode::BoundaryRoot, msg.str());
    }
    if (m < rho) snap.zeros.push_back(z);
  }
  return snap;
}

Complex evaluate_test_function(const TestFunction& f, Complex z, double rho) {
  if (std::abs(z) >= rho) return 0.0;
  return std::visit(
      [z](const auto& fn) -> Complex {
        using T = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<T, Monomial>) {
          return std::pow(z, fn.m) * std::pow(std::conj(z), fn.l);
        } else {
          const double r = std::abs(z) / fn.support;
          if (r >= 1.0) return 0.0;
          return std::exp(1.0 - 1.0 / (1.0 - r * r));
        }
      },
      f);
}

Complex linear_statistic(const DiskProcessSnapshot& snapshot, const TestFunction& f) {
  Complex sum = 0.0;
  for (const Complex& z : snapshot.zeros) sum += evaluate_test_function(f, z, snapshot.rho);
  return sum;
}

Matching match_zeros(std::span<const Complex> a, std::span<const Complex> b, double threshold) {
  std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = std::abs(a[i] - b[j]);
      if (d < threshold) candidates.emplace_back(d, i, j);
    }
  std::sort(candidates.begin(), candidates.end());
  std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
  Matching m;
  for (const auto& [d, i, j] : candidates) {
    if (used_a[i] || used_b[j]) continue;
    used_a[i] = used_b[j] = true;
    ++m.matched;
    m.max_displacement = std::max(m.max_displacement, d);
  }
  m.unmatched = (a.size() - m.matched) + (b.size() - m.matched);
  return m;
}

bool StabilityReport::stable(double tolerance) const {
  for (const auto& p : pairs)
    if (p.count_from != p.count_to || p.unmatched != 0 || !(p.max_displacement < tolerance))
      return false;
  return true;
}

StabilityReport hurwitz_stability(std::span<const Complex> coefficients, double rho,
                                  std::span<const std::size_t> degrees, const SolveOptions& opts) {
  if (!(rho > 0.0 && rho <= 0.95))
    throw Error(ErrorCode::InvalidArgument, "stability radius must lie in (0, 0.95]");
  if (degrees.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one degree");
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 2) throw Error(ErrorCode::InvalidArgument, "degrees must be >= 2");
    if (i > 0 && degrees[i] < degrees[i - 1])
      throw Error(ErrorCode::InvalidArgument, "degrees must be non-decreasing");
  }
  if (coefficients.size() <= degrees.back())
    throw Error(ErrorCode::InvalidArgument, "coefficient sequence shorter than the largest degree");

  // Solve every level once; radius jitter only re-filters.
  std::vector<std::vector<Complex>> roots;
  for (std::size_t d : degrees) {
    const Polynomial p(std::vector<Complex>(coefficients.begin(),
                                            coefficients.begin() + static_cast<std::ptrdiff_t>(d + 1)));
    roots.push_back(solve(p, opts).roots);
  }

  StabilityReport report;
  report.requested_rho = rho;
  report.degrees.assign(degrees.begin(), degrees.end());
  constexpr int kMaxJitters = 16;
  for (int attempt = 0; attempt <= kMaxJitters; ++attempt) {
    // rho, rho + 1e-3, rho - 1e-3, rho + 2e-3, ...
    const int step = (attempt + 1) / 2;
    const double sign = attempt % 2 == 1 ? 1.0 : -1.0;
    const double radius = std::min(0.95, rho + sign * 1e-3 * step);
    try {
      std::vector<DiskProcessSnapshot> snaps;
      for (std::size_t i = 0; i < degrees.size(); ++i)
        snaps.push_back(in_disk_zeros(roots[i], radius, degrees[i]));
      report.rho = radius;
      report.rho_jitters = attempt;
      report.counts.clear();
      report.pairs.clear();
      for (const auto& s : snaps) report.counts.push_back(s.zeros.size());
      for (std::size_t i = 0; i + 1 < snaps.size(); ++i) {
        const Matching m = match_zeros(snaps[i].zeros, snaps[i + 1].zeros);
        report.pairs.push_back({degrees[i], degrees[i + 1], snaps[i].zeros.size(),
                                snaps[i + 1].zeros.size(), m.matched, m.unmatched,
                                m.max_displacement});
      }
      return report;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BoundaryRoot) throw;
    }
  }
  throw Error(ErrorCode::BoundaryRoot, "zeros on the contour for every jittered radius");
}

StabilityReport hurwitz_stability(const CoefficientModel& model, std::uint64_t seed, double rho,
                                  std::span<const std::size_t> degrees, const SolveOptions& opts) {
  if (degrees.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one degree");
  RandomStream rng(seed, 0);
  const auto coeffs = sample_coefficients(model, rng, *std::max_element(degrees.begin(), degrees.end()) + 1);
  StabilityReport report = hurwitz_stability(coeffs, rho, degrees, opts);
  report.model = model.to_string();
  report.seed = seed;
  return report;
}

std::vector<std::size_t> radial_bin_counts(const DiskProcessSnapshot& snapshot,
                                           std::span<const double> edges) {
  std::vector<std::size_t> counts(edges.size() > 0 ? edges.size() - 1 : 0, 0);
  for (const Complex& z : snapshot.zeros) {
    const double r = std::abs(z);
    const auto it = std::upper_bound(edges.begin(), edges.end(), r);
    if (it == edges.begin() || it == edges.end()) continue;
    ++counts[static_cast<std::size_t>(it - edges.begin()) - 1];
  }
  return counts;
}

RadialHistogram radial_intensity_histogram(std::span<const DiskProcessSnapshot> snapshots,
                                           std::span<const double> edges) {
  if (snapshots.size() < 100)
    throw Error(ErrorCode::InvalidArgument, "radial histogram needs at least 100 snapshots");
  if (edges.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least one bin");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!(edges[i] >= 0.0 && edges[i] < 1.0))
      throw Error(ErrorCode::InvalidArgument, "bin edges must lie in [0, 1)");
    if (i > 0 && !(edges[i] > edges[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "bin edges must increase strictly");
  }
  for (const auto& s : snapshots)
    if (s.rho < edges.back())
      throw Error(ErrorCode::InvalidArgument, "snapshot radius smaller than the last bin edge");

  const std::size_t bins = edges.size() - 1;
  std::vector<double> sum(bins, 0.0), sum_sq(bins, 0.0);
  for (const auto& s : snapshots) {
    const auto counts = radial_bin_counts(s, edges);
    for (std::size_t b = 0; b < bins; ++b) {
      const double c = static_cast<double>(counts[b]);
      sum[b] += c;
      sum_sq[b] += c * c;
    }
  }
  RadialHistogram h;
  h.edges.assign(edges.begin(), edges.end());
  h.trials = snapshots.size();
  const double n = static_cast<double>(snapshots.size());
  for (std::size_t b = 0; b < bins; ++b) {
    const double mean = sum[b] / n;
    const double var = std::max(0.0, (sum_sq[b] - n * mean * mean) / (n - 1.0));
    h.mean_count.push_back(mean);
    h.standard_error.push_back(std::sqrt(var / n));
    h.predicted.push_back((edges[b + 1] * edges[b + 1]) / (1.0 - edges[b + 1] * edges[b + 1]) -
                          (edges[b] * edges[b]) / (1.0 - edges[b] * edges[b]));
  }
  return h;
}

void write_snapshot_csv(std::ostream& out, std::span<const DiskProcessSnapshot> snapshots) {
  const auto old = out.precision(17);
  out << "seed,n,rho,re,im\n";
  for (const auto& s : snapshots)
    for (const Complex& z : s.zeros)
      out << s.seed << ',' << s.n << ',' << s.rho << ',' << z.real() << ',' << z.imag() << '\n';
  out.precision(old);
}

void write_stability_table(std::ostream& out, std::span<const StabilityReport> reports) {
  out << std::left << std::setw(10) << "seed" << std::setw(8) << "from" << std::setw(8) << "to"
      << std::setw(8) << "rho" << std::setw(10) << "count_lo" << std::setw(10) << "count_hi"
      << std::setw(10) << "unmatched" << "max_displacement\n";
  for (const auto& r : reports) {
    for (const auto& p : r.pairs) {
      std::ostringstream rho;
      rho << std::setprecision(4) << r.rho;
      out << std::setw(10) << r.seed << std::setw(8) << p.from << std::setw(8) << p.to
          << std::setw(8) << rho.str() << std::setw(10) << p.count_from << std::setw(10) << p.count_to
          << std::setw(10) << p.unmatched << std::scientific << std::setprecision(3)
          << p.max_displacement << std::defaultfloat << '\n';
    }
  }
}

}  // namespace kac
