#include "cubemix/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>


namespace cubemix {
namespace {

using Counts = std::array<std::uint64_t, kDistanceSupport>;

// Resampling an array with replacement is the same as drawing indices into it
// sorted by value; the cumulative counts play the role of the sorted array.
Counts resample(const Counts& cumulative, std::uint64_t total, RngStream& rng) {
  Counts out{};
  for (std::uint64_t i = 0; i < total; ++i) {
    const std::uint64_t u = rng.uniform_below(total);
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    ++out[static_cast<std::size_t>(it - cumulative.begin())];
  }
  return out;
}

Counts cumulative_of(const EmpiricalDistribution& e) {
  Counts c{};
  std::uint64_t run = 0;
  for (int k = 0; k < kDistanceSupport; ++k) {
    run += e.counts[k];
    c[k] = run;
  }
  return c;
}

double tv_counts(const Counts& a, std::uint64_t na, const Counts& b, std::uint64_t nb) {
  double s = 0.0;
  for (int k = 0; k < kDistanceSupport; ++k)
    s += std::abs(static_cast<double>(a[k]) / static_cast<double>(na) - static_cast<double>(b[k]) / static_cast<double>(nb));
  return 0.5 * s;
}

double percentile(std::vector<double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Law EmpiricalDistribution::probabilities() const {
  Law p{};
  for (int k = 0; k < kDistanceSupport; ++k) p[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
  return p;
}

EmpiricalDistribution empirical(std::span<const int> samples) {
  if (samples.empty()) throw std::invalid_argument("empirical: no samples");
  EmpiricalDistribution e;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const int v = samples[i];
    if (v < 0 || v >= kDistanceSupport) throw SampleRangeError(i, v);
    ++e.counts[v];
  }
  e.total = samples.size();
  return e;
}

double tv(const Law& p, const Law& q) {
  double s = 0.0;
  for (int k = 0; k < kDistanceSupport; ++k) s += std::abs(p[k] - q[k]);
  return 0.5 * s;
}

double tv(const EmpiricalDistribution& p, const EmpiricalDistribution& q) {
  return tv_counts(p.counts, p.total, q.counts, q.total);
}

Law point_mass_law(int value) {
  if (value < 0 || value >= kDistanceSupport) throw std::out_of_range("point_mass_law: value outside 0..20");
  Law p{};
  p[value] = 1.0;
  return p;
}

Law law_from(std::span<const double> values) {
  if (values.size() > kDistanceSupport) throw std::out_of_range("law_from: support larger than 0..20");
  Law p{};
  std::copy(values.begin(), values.end(), p.begin());
  return p;
}

TvEstimate bootstrap_tv(std::span<const int> a, std::span<const int> b, int resamples, const RngStream& rng,
                        Exec exec) {
  if (resamples < 2) throw std::invalid_argument("bootstrap_tv: need at least 2 resamples");
  const EmpiricalDistribution ea = empirical(a);
  const EmpiricalDistribution eb = empirical(b);
  const Counts ca = cumulative_of(ea);
  const Counts cb = cumulative_of(eb);

  TvEstimate est;
  est.point = tv(ea, eb);
  est.resamples = resamples;
  std::vector<double> reps(static_cast<std::size_t>(resamples));
  const bool par = exec == Exec::Parallel;
#pragma omp parallel for schedule(dynamic, 8) if (par)
  for (int r = 0; r < resamples; ++r) {
    RngStream local = rng.split(static_cast<std::uint64_t>(r));
    const Counts ra = resample(ca, ea.total, local);
    const Counts rb = resample(cb, eb.total, local);
    reps[r] = tv_counts(ra, ea.total, rb, eb.total);
  }

  double mean = 0.0;
  for (double v : reps) mean += v;
  mean /= resamples;
  double ss = 0.0;
  for (double v : reps) ss += (v - mean) * (v - mean);
  est.std_error = std::sqrt(ss / (resamples - 1));
  std::sort(reps.begin(), reps.end());
  est.ci_low = percentile(reps, 0.025);
  est.ci_high = percentile(reps, 0.975);
  return est;
}

void DecayCurve::check() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && points[i].n <= points[i - 1].n) throw std::invalid_argument("decay curve steps must increase");
    if (!(points[i].tv >= 0.0 && points[i].tv <= 1.0)) throw std::invalid_argument("decay curve tv outside [0, 1]");
  }
}

std::optional<int> mixing_threshold(const DecayCurve& curve, double epsilon) {
  for (const DecayPoint& p : curve.points)
    if (p.tv <= epsilon) return p.n;
  return std::nullopt;
}

std::vector<ThresholdRow> threshold_report(const DecayCurve& curve) {
  std::vector<ThresholdRow> rows;
  for (double eps : kThresholdEpsilons) rows.push_back({eps, mixing_threshold(curve, eps)});
  return rows;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_decay_csv(std::ostream& out, const DecayCurve& curve) {
  out << "n,tv,stderr\n";
  for (const DecayPoint& p : curve.points) {
    out << p.n << ',' << format_number(p.tv) << ',';
    if (p.std_error) out << format_number(*p.std_error);
    out << '\n';
  }
}

DecayCurve read_decay_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "n,tv,stderr") throw std::invalid_argument("decay CSV: bad header");
  DecayCurve curve;
  bool any_stderr = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 3) throw std::invalid_argument("decay CSV: expected 3 columns in '" + line + "'");
    DecayPoint p;
    p.n = std::stoi(cells[0]);
    p.tv = std::stod(cells[1]);
    if (!cells[2].empty()) {
      p.std_error = std::stod(cells[2]);
      any_stderr = true;
    }
    curve.points.push_back(p);
  }
  curve.source = any_stderr ? DecayCurve::Source::MonteCarlo : DecayCurve::Source::Exact;
  curve.check();
  return curve;
}

void write_threshold_csv(std::ostream& out, const std::vector<ThresholdRow>& rows) {
  out << "epsilon,n\n";
  for (const ThresholdRow& r : rows) {
    out << format_number(r.epsilon) << ',';
    if (r.n) out << *r.n;
    out << '\n';
  }
}

}  // namespace cubemix
