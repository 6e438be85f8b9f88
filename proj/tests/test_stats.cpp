#include <omp.h>

#include <cmath>
#include <sstream>

#include "doctest.h"

#include "cubemix/stats.hpp"

using namespace cubemix;

namespace {

std::vector<int> draws(std::uint64_t seed, int n, std::initializer_list<double> weights) {
  RngStream rng(seed, 0);
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform01();
    int k = 0;
    for (double w : weights) {
      if (u < w) break;
      u -= w;
      ++k;
    }
    out.push_back(k);
  }
  return out;
}

}  // namespace

TEST_CASE("empirical distributions") {
  const std::vector<int> s = {0, 1, 1, 20};
  const EmpiricalDistribution e = empirical(s);
  CHECK(e.total == 4);
  CHECK(e.counts[1] == 2);
  CHECK(e.probabilities()[20] == 0.25);
  CHECK_THROWS_AS(empirical(std::vector<int>{}), std::invalid_argument);
  try {
    empirical(std::vector<int>{3, 4, 21});
    FAIL("expected a range error");
  } catch (const SampleRangeError& err) {
    CHECK(err.index() == 2);
  }
  CHECK_THROWS_AS(empirical(std::vector<int>{-1}), SampleRangeError);
}

TEST_CASE("total variation basics") {
  CHECK(tv(point_mass_law(3), point_mass_law(3)) == 0.0);
  CHECK(tv(point_mass_law(3), point_mass_law(4)) == 1.0);
  const std::vector<double> pv = {0.5, 0.5}, qv = {0.25, 0.25, 0.5};
  const Law p = law_from(pv), q = law_from(qv);
  CHECK(tv(p, q) == doctest::Approx(0.5));
  CHECK(tv(p, q) == tv(q, p));
  const Law r = point_mass_law(0);
  CHECK(tv(p, r) <= tv(p, q) + tv(q, r) + 1e-15);
  CHECK_THROWS_AS(point_mass_law(21), std::out_of_range);
}

TEST_CASE("bootstrap of degenerate samples") {
  const std::vector<int> a(500, 17), b(800, 17);
  const TvEstimate e = bootstrap_tv(a, b, 200, RngStream(1, 2));
  CHECK(e.point == 0.0);
  CHECK(e.std_error == 0.0);
  CHECK(e.ci_low == 0.0);
  CHECK(e.ci_high == 0.0);
  CHECK(e.resamples == 200);

  const std::vector<int> c(300, 5);
  const TvEstimate f = bootstrap_tv(a, c, 50, RngStream(1, 2));
  CHECK(f.point == 1.0);
  CHECK(f.std_error == 0.0);
}

TEST_CASE("bootstrap point estimate is the plug-in TV and is reproducible") {
  const auto a = draws(3, 4000, {0.2, 0.3, 0.5});
  const auto b = draws(4, 5000, {0.3, 0.3, 0.4});
  const TvEstimate e1 = bootstrap_tv(a, b, 300, RngStream(9, 1));
  const TvEstimate e2 = bootstrap_tv(a, b, 300, RngStream(9, 1));
  CHECK(e1.point == tv(empirical(a), empirical(b)));
  CHECK(e1.point == e2.point);
  CHECK(e1.std_error == e2.std_error);
  CHECK(e1.ci_low == e2.ci_low);
  CHECK(e1.ci_high == e2.ci_high);
  CHECK(e1.std_error > 0.0);
  CHECK(e1.ci_low <= e1.ci_high);

  const TvEstimate other = bootstrap_tv(a, b, 300, RngStream(10, 1));
  CHECK(other.point == e1.point);
  CHECK(other.std_error != e1.std_error);

  const int saved = omp_get_max_threads();
  omp_set_num_threads(3);
  const TvEstimate par = bootstrap_tv(a, b, 300, RngStream(9, 1), Exec::Parallel);
  const TvEstimate ser = bootstrap_tv(a, b, 300, RngStream(9, 1), Exec::Serial);
  omp_set_num_threads(saved);
  CHECK(par.std_error == ser.std_error);
  CHECK(par.ci_low == ser.ci_low);
  CHECK(par.ci_high == ser.ci_high);
  CHECK_THROWS_AS(bootstrap_tv(a, b, 1, RngStream(9, 1)), std::invalid_argument);
}

TEST_CASE("bootstrap standard error has the right scale") {
  // On two-point laws the plug-in TV is |p_a - p_b|, a difference of two
  // independent proportions.
  const auto a = draws(5, 20000, {0.5, 0.5});
  const auto b = draws(6, 20000, {0.3, 0.7});
  const TvEstimate e = bootstrap_tv(a, b, 400, RngStream(2, 2));
  const double analytic = std::sqrt(0.25 / 20000 + 0.21 / 20000);
  CHECK(e.std_error == doctest::Approx(analytic).epsilon(0.2));
}

TEST_CASE("mixing thresholds take the first crossing") {
  DecayCurve c;
  c.points = {{1, 0.9, {}}, {2, 0.45, {}}, {3, 0.55, {}}, {4, 0.2, {}}};
  CHECK(mixing_threshold(c, 0.5) == 2);
  CHECK(mixing_threshold(c, 0.25) == 4);
  CHECK(mixing_threshold(c, 0.1) == std::nullopt);
  const auto rows = threshold_report(c);
  REQUIRE(rows.size() == kThresholdEpsilons.size());
  CHECK(rows[0].epsilon == 0.5);
  CHECK(rows[0].n == 2);

  std::ostringstream out;
  write_threshold_csv(out, rows);
  CHECK(out.str().rfind("epsilon,n\n0.5,2\n0.4,4\n", 0) == 0);
  CHECK(out.str().find("0.1,\n") != std::string::npos);
}

TEST_CASE("decay curve CSV") {
  DecayCurve mc;
  mc.source = DecayCurve::Source::MonteCarlo;
  mc.points = {{1, 0.123456789123, 0.000697}, {2, 0.5, 0.01}, {5, 0.6, 0.02}};
  std::ostringstream out;
  write_decay_csv(out, mc);
  CHECK(out.str() == "n,tv,stderr\n1,0.123456789,0.000697\n2,0.5,0.01\n5,0.6,0.02\n");
  std::istringstream in(out.str());
  const DecayCurve back = read_decay_csv(in);
  CHECK(back.source == DecayCurve::Source::MonteCarlo);
  REQUIRE(back.points.size() == 3);
  CHECK(back.points[0].tv == doctest::Approx(0.123456789123).epsilon(1e-9));
  CHECK(back.points[2].tv == 0.6);  // rises are preserved

  DecayCurve ex;
  ex.points = {{0, 1.0, {}}, {1, 0.75, {}}};
  std::ostringstream eo;
  write_decay_csv(eo, ex);
  CHECK(eo.str() == "n,tv,stderr\n0,1,\n1,0.75,\n");
  std::istringstream ei(eo.str());
  CHECK(read_decay_csv(ei).source == DecayCurve::Source::Exact);

  std::istringstream bad("n,tv\n1,0.5\n");
  CHECK_THROWS_AS(read_decay_csv(bad), std::invalid_argument);
  DecayCurve unordered;
  unordered.points = {{2, 0.5, {}}, {1, 0.4, {}}};
  CHECK_THROWS_AS(unordered.check(), std::invalid_argument);
  DecayCurve out_of_range;
  out_of_range.points = {{1, 1.5, {}}};
  CHECK_THROWS_AS(out_of_range.check(), std::invalid_argument);
}
