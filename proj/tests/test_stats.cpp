#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rskshape/rng.hpp"
#include "rskshape/stats.hpp"

using namespace rsk;

namespace {
double std_normal_cdf(double v) { return 0.5 * std::erfc(-v / std::sqrt(2.0)); }
}  // namespace

TEST_CASE("ks two-sample basics") {
  const auto a = stats::ecdf({1.0, 2.0, 3.0});
  CHECK(stats::ks_two_sample(a, a) == doctest::Approx(0.0));

  const auto zeros = stats::ecdf(std::vector<double>(100, 0.0));
  const auto ones = stats::ecdf(std::vector<double>(100, 1.0));
  CHECK(stats::ks_two_sample(zeros, ones) == doctest::Approx(1.0));

  RandomStream rs(61, 0);
  std::vector<double> x(2000), y(3000);
  for (double& v : x) v = rs.normal();
  for (double& v : y) v = rs.normal() + 0.3;
  const auto ex = stats::ecdf(x);
  const auto ey = stats::ecdf(y);
  CHECK(stats::ks_two_sample(ex, ey) == doctest::Approx(stats::ks_two_sample(ey, ex)));
  const double d = stats::ks_two_sample(ex, ey);
  CHECK(d > 0.0);
  CHECK(d <= 1.0);

  CHECK_THROWS_AS(stats::ecdf({}), std::invalid_argument);
}

TEST_CASE("ks against the normal cdf") {
  RandomStream rs(62, 0);
  std::vector<double> x(100000);
  for (double& v : x) v = rs.normal();
  const double d = stats::ks_vs_cdf(stats::ecdf(std::move(x)), std_normal_cdf);
  CHECK(d < 0.006);  // 99% quantile of the Kolmogorov law at n = 1e5 is ~0.0052
}

TEST_CASE("ks with heavy ties") {
  // integer-valued samples against a continuous reference
  const auto a = stats::ecdf({1, 1, 1, 2, 2, 3});
  const auto b = stats::ecdf({1, 2, 2, 2, 3, 3});
  const double d = stats::ks_two_sample(a, b);
  // F_a(1)=1/2, F_b(1)=1/6 -> gap 1/3; identical beyond
  CHECK(d == doctest::Approx(1.0 / 3));
}

TEST_CASE("moments closed forms") {
  const auto e = stats::ecdf({1.0, 2.0, 3.0, 4.0});
  const auto m = stats::moments(e);
  CHECK(m.mean == doctest::Approx(2.5));
  CHECK(m.var == doctest::Approx(5.0 / 3.0));
  CHECK(m.skew == doctest::Approx(0.0));

  const auto single = stats::moments(stats::ecdf({7.0}));
  CHECK(single.mean == doctest::Approx(7.0));
  CHECK(single.var == doctest::Approx(0.0));
}

TEST_CASE("quantiles") {
  const auto e = stats::ecdf({4.0, 1.0, 3.0, 2.0});
  CHECK(stats::quantile(e, 0.0) == doctest::Approx(1.0));
  CHECK(stats::quantile(e, 1.0) == doctest::Approx(4.0));
  CHECK(stats::quantile(e, 0.5) == doctest::Approx(2.5));
  CHECK_THROWS_AS(stats::quantile(e, 1.5), std::invalid_argument);
}

TEST_CASE("histogram export") {
  const auto e = stats::ecdf({0.0, 0.25, 0.5, 0.75, 1.0});
  std::ostringstream os;
  stats::write_histogram_csv(os, e, 2);
  const std::string out = os.str();
  CHECK(out.rfind("bin_left,bin_right,count,density", 0) == 0);
  CHECK(std::count(out.begin(), out.end(), '\n') == 3);
}
