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

#include "kac/mc_harness.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "kac/limit_laws.hpp"

namespace kac {

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw Error(ErrorCode::ParseError, "bad value for " + std::string(key) + ": '" + std::string(text) + "'");
  return value;
}

constexpr std::pair<ExperimentKind, std::string_view> kKindNames[] = {
    {ExperimentKind::Extremes, "extremes"},         {ExperimentKind::LimitCompare, "limit_compare"},
    {ExperimentKind::Intensity, "intensity"},       {ExperimentKind::Stability, "stability"},
    {ExperimentKind::Figure1, "figure1"},           {ExperimentKind::Figure2, "figure2"},
    {ExperimentKind::CoulombCheck, "coulomb_check"},
};

}  // namespace

std::string_view experiment_name(ExperimentKind kind) noexcept {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  std::string norm(trim(text));
  for (char& c : norm)
    if (c == '-') c = '_';
  for (const auto& [k, name] : kKindNames)
    if (name == norm) return k;
  throw Error(ErrorCode::ParseError, "unknown experiment kind '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "degree must be >= 1");
  if (workers < 1) throw Error(ErrorCode::InvalidArgument, "workers must be >= 1");
  if (bins < 1) throw Error(ErrorCode::InvalidArgument, "bins must be >= 1");
  if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorCode::InvalidArgument, "rho must lie in (0, 1)");
  if (kind == ExperimentKind::Stability) {
    if (rho > 0.95) throw Error(ErrorCode::InvalidArgument, "stability radius is capped at 0.95");
    const auto ladder = degree_ladder();
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      if (ladder[i] < 2) throw Error(ErrorCode::InvalidArgument, "stability degrees must be >= 2");
      if (i > 0 && ladder[i] < ladder[i - 1])
        throw Error(ErrorCode::InvalidArgument, "stability degrees must be non-decreasing");
    }
  }
}

std::vector<std::size_t> ExperimentConfig::degree_ladder() const {
  if (!degrees.empty()) return degrees;
  return {n / 2, n};
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out = {
      {"experiment", std::string(experiment_name(kind))},
      {"model", model.to_string()},
      {"n", std::to_string(n)},
      {"trials", std::to_string(trials)},
      {"seed", std::to_string(master_seed)},
      {"bins", std::to_string(bins)},
      {"rho", format_double(rho)},
  };
  if (kind == ExperimentKind::Stability) {
    std::string list;
    for (std::size_t d : degree_ladder()) list += (list.empty() ? "" : ",") + std::to_string(d);
    out.emplace_back("degrees", list);
  }
  return out;
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "model") {
    model = CoefficientModel::parse(value);
  } else if (key == "n") {
    n = parse_number<std::size_t>(key, value);
  } else if (key == "trials") {
    trials = parse_number<std::size_t>(key, value);
  } else if (key == "seed" || key == "master_seed") {
    master_seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "experiment" || key == "kind") {
    kind = parse_experiment_kind(value);
  } else if (key == "out") {
    out = std::string(value);
  } else if (key == "workers") {
    workers = parse_number<unsigned>(key, value);
  } else if (key == "bins") {
    bins = parse_number<std::size_t>(key, value);
  } else if (key == "rho") {
    rho = parse_number<double>(key, value);
  } else if (key == "degrees") {
    degrees.clear();
    std::size_t start = 0;
    while (start <= value.size()) {
      const std::size_t comma = std::min(value.find(',', start), value.size());
      degrees.push_back(parse_number<std::size_t>(key, value.substr(start, comma - start)));
      start = comma + 1;
    }
  } else {
    throw Error(ErrorCode::ParseError, "unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig ExperimentConfig::from_text(std::istream& in, ExperimentConfig base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected key=value");
    base.set(view.substr(0, eq), view.substr(eq + 1));
  }
  return base;
}

ExperimentConfig ExperimentConfig::from_text(std::istream& in) { return from_text(in, ExperimentConfig{}); }

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  return from_file(path, ExperimentConfig{});
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config file " + path);
  return from_text(in, std::move(base));
}

Histogram histogram(std::span<const double> values, std::size_t bins, double lo, double hi) {
  if (bins < 1) throw Error(ErrorCode::InvalidArgument, "histogram needs at least one bin");
  if (!(hi > lo)) throw Error(ErrorCode::InvalidArgument, "histogram range is degenerate");
  Histogram h;
  h.edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = lo + width * static_cast<double>(i);
  h.edges.back() = hi;
  std::vector<std::size_t> counts(bins, 0);
  h.total = values.size();
  for (double v : values) {
    if (!(v >= lo && v <= hi)) continue;
    auto b = static_cast<std::size_t>((v - lo) / width);
    if (b >= bins) b = bins - 1;
    ++counts[b];
    ++h.counted;
  }
  h.density.assign(bins, 0.0);
  if (h.counted > 0)
    for (std::size_t i = 0; i < bins; ++i)
      h.density[i] = static_cast<double>(counts[i]) / (static_cast<double>(h.counted) * width);
  return h;
}

double histogram_mass(const Histogram& h, double lo, double hi) {
  double mass = 0.0;
  for (std::size_t i = 0; i < h.density.size(); ++i) {
    const double a = h.edges[i];
    const double b = h.edges[i + 1];
    const double slack = 1e-12 * (b - a);
    if (a >= lo - slack && b <= hi + slack) mass += h.density[i] * (b - a);
  }
  return mass;
}

bool ExperimentReport::all_passed() const noexcept {
  return std::all_of(certificates.begin(), certificates.end(),
                     [](const Certificate& c) { return c.passed; });
}

TrialBatch<ExtremalSample> sample_extremes(const CoefficientModel& model, std::size_t n,
                                           std::size_t trials, std::uint64_t master_seed,
                                           unsigned workers, const SolveOptions& opts) {
  const std::string name = model.to_string();
  return run_trials<ExtremalSample>(master_seed, trials, workers,
                                    [&](RandomStream& rng, std::uint64_t id) {
    const Polynomial p(sample_coefficients(model, rng, n + 1));
    const Extremes e = extremes_of(solve(p, opts));
    return ExtremalSample{id, n, e.x1, e.xn, name, rng.stream_id()};
  });
}

TrialBatch<DiskProcessSnapshot> sample_snapshots(const CoefficientModel& model, std::size_t n,
                                                 double rho, std::size_t trials,
                                                 std::uint64_t master_seed, unsigned workers,
                                                 const SolveOptions& opts) {
  return run_trials<DiskProcessSnapshot>(master_seed, trials, workers,
                                         [&](RandomStream& rng, std::uint64_t) {
    const Polynomial p(sample_coefficients(model, rng, n + 1));
    return in_disk_zeros(solve(p, opts), rho, n, rng.stream_id());
  });
}

TrialBatch<StabilityReport> sample_stability(const CoefficientModel& model,
                                             std::span<const std::size_t> degrees, double rho,
                                             std::size_t seeds, std::uint64_t master_seed,
                                             unsigned workers, const SolveOptions& opts) {
  if (degrees.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one degree");
  const std::size_t top = *std::max_element(degrees.begin(), degrees.end());
  const std::string name = model.to_string();
  return run_trials<StabilityReport>(master_seed, seeds, workers,
                                     [&](RandomStream& rng, std::uint64_t) {
    const auto coeffs = sample_coefficients(model, rng, top + 1);
    StabilityReport r = hurwitz_stability(coeffs, rho, degrees, opts);
    r.model = name;
    r.seed = rng.stream_id();
    return r;
  });
}

FigureOneData figure1_data(std::span<const double> x1_exponential,
                           std::span<const double> x1_radial, std::size_t bins) {
  FigureOneData d;
  d.exponential = histogram(x1_exponential, bins);
  d.radial = histogram(x1_radial, bins);
  d.first_decile_exponential = histogram_mass(d.exponential, 0.0, 0.1);
  d.first_decile_radial = histogram_mass(d.radial, 0.0, 0.1);
  return d;
}

FigureTwoData figure2_data(std::span<const double> x1, std::size_t bins) {
  FigureTwoData d;
  d.x1 = histogram(x1, bins);
  for (std::size_t i = 0; i < bins; ++i) {
    const double mid = 0.5 * (d.x1.edges[i] + d.x1.edges[i + 1]);
    const double f = limit_density(mid);
    d.limit_density_mid.push_back(f);
    d.sup_distance = std::max(d.sup_distance, std::abs(d.x1.density[i] - f));
  }
  return d;
}

void write_config_header(std::ostream& out, const ExperimentConfig& config) {
  for (const auto& [k, v] : config.echo()) out << "# " << k << '=' << v << '\n';
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  const auto old = out.precision(17);
  out << "bin_lo,bin_hi,density\n";
  for (std::size_t i = 0; i < h.density.size(); ++i)
    out << h.edges[i] << ',' << h.edges[i + 1] << ',' << h.density[i] << '\n';
  out.precision(old);
}

void write_report_json(std::ostream& out, const ExperimentReport& report) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json cfg;
  for (const auto& [k, v] : report.config.echo()) cfg[k] = v;
  j["config"] = cfg;
  j["summary"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.summary) j["summary"][k] = v;
  j["certificates"] = nlohmann::ordered_json::array();
  for (const auto& c : report.certificates)
    j["certificates"].push_back(
        {{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"passed", c.passed}});
  j["replaced_trials"] = report.replaced_trials;
  j["replaced_ids"] = report.replaced_ids;
  j["all_passed"] = report.all_passed();
  out << j.dump(2) << '\n';
}

void write_metrics_json(std::ostream& out, const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["experiment"] = std::string(experiment_name(report.config.kind));
  j["workers"] = report.config.workers;
  j["data_path"] = report.data_path;
  j["wall_seconds"] = report.wall_seconds;
  j["trials_per_second"] = report.trials_per_second;
  out << j.dump(2) << '\n';
}

}  // namespace kac
