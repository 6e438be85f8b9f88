// Distributions on the distance support {0..20}, total variation, bootstrap
// error bars and mixing-time threshold extraction.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubemix/kernels.hpp"
#include "cubemix/rng.hpp"

namespace cubemix {

/// God's number is 20, so distances live in 0..20.
inline constexpr int kDistanceSupport = 21;

using Law = std::array<double, kDistanceSupport>;

class SampleRangeError : public std::out_of_range {
 public:
  SampleRangeError(std::size_t index, int value)
      : std::out_of_range("sample " + std::to_string(index) + " has value " + std::to_string(value) +
                          " outside 0..20"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

struct EmpiricalDistribution {
  std::array<std::uint64_t, kDistanceSupport> counts{};
  std::uint64_t total = 0;

  Law probabilities() const;
};

/// Throws std::invalid_argument on empty input, SampleRangeError on a value outside 0..20.
EmpiricalDistribution empirical(std::span<const int> samples);

double tv(const Law& p, const Law& q);
double tv(const EmpiricalDistribution& p, const EmpiricalDistribution& q);

Law point_mass_law(int value);
Law law_from(std::span<const double> values);

struct TvEstimate {
  double point = 0.0;
  double std_error = 0.0;  // bootstrap standard deviation, reported as "±"
  double ci_low = 0.0;     // 2.5th percentile of replicates
  double ci_high = 0.0;    // 97.5th percentile of replicates
  int resamples = 0;
};

/// Plug-in TV between the two empirical laws, with replicates that resample
/// each side with replacement at its own size. Replicate r draws from
/// rng.split(r), so the result does not depend on the thread count.
TvEstimate bootstrap_tv(std::span<const int> a, std::span<const int> b, int resamples, const RngStream& rng,
                        Exec exec = Exec::Parallel);

struct DecayPoint {
  int n = 0;
  double tv = 0.0;
  std::optional<double> std_error;
};

struct DecayCurve {
  enum class Source { Exact, MonteCarlo };
  Source source = Source::Exact;
  std::vector<DecayPoint> points;

  /// Throws std::invalid_argument unless steps strictly increase and tv lies in [0, 1].
  void check() const;
};

inline constexpr std::array<double, 6> kThresholdEpsilons = {0.5, 0.4, 0.3, 0.25, 0.2, 0.1};

/// First n with tv <= epsilon, even if the curve rises again afterwards.
std::optional<int> mixing_threshold(const DecayCurve& curve, double epsilon);

struct ThresholdRow {
  double epsilon = 0.0;
  std::optional<int> n;
};

std::vector<ThresholdRow> threshold_report(const DecayCurve& curve);

/// Nine significant digits, as used in every CSV this project writes.
std::string format_number(double v);

void write_decay_csv(std::ostream& out, const DecayCurve& curve);
DecayCurve read_decay_csv(std::istream& in);
void write_threshold_csv(std::ostream& out, const std::vector<ThresholdRow>& rows);

}  // namespace cubemix
