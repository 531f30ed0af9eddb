#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rskshape/brownian.hpp"
#include "rskshape/linalg.hpp"
#include "rskshape/rmt.hpp"
#include "rskshape/rng.hpp"
#include "rskshape/stats.hpp"

using namespace rsk;
using linalg::Mat;

namespace {

// Independent check of the spectrum via the real symmetric embedding,
// written from scratch here so the test does not share the library path.
std::vector<double> eig_via_embedding(const rmt::HermitianSample& h) {
  const int m = h.m;
  Mat e(2 * m, 2 * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const auto z = h.at(i, j);
      e(i, j) = z.real();
      e(m + i, m + j) = z.real();
      e(i, m + j) = -z.imag();
      e(m + i, j) = z.imag();
    }
  std::vector<double> w;
  Mat v;
  linalg::sym_eigen(e, w, v);
  std::sort(w.begin(), w.end(), std::greater<double>());
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < w.size(); i += 2) out.push_back(0.5 * (w[i] + w[i + 1]));
  return out;
}

double h0_cdf(double v) {  // cdf of the traceless 2x2 largest eigenvalue
  if (v <= 0.0) return 0.0;
  return std::erf(v) - 2.0 * v * std::exp(-v * v) / std::sqrt(std::acos(-1.0));
}

}  // namespace

TEST_CASE("gue sampling basics") {
  RandomStream rs(91, 0);
  const auto h1 = rmt::sample_gue(1, rs);
  CHECK(rmt::eig_hermitian(h1).size() == 1);

  const auto t1 = rmt::sample_traceless_gue(1, rs);
  CHECK(t1.diag[0] == doctest::Approx(0.0));

  for (int rep = 0; rep < 50; ++rep) {
    const auto h = rmt::sample_traceless_gue(2 + rep % 5, rs);
    REQUIRE(std::fabs(h.trace()) < 1e-12);
  }
}

TEST_CASE("closed-form 2x2 eigenvalues") {
  rmt::HermitianSample h;
  h.m = 2;
  h.diag = {0.0, 0.0};
  h.upper = {{1.0, 0.0}};
  const auto w = rmt::eig_hermitian(h);
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(w[1] == doctest::Approx(-1.0));

  rmt::HermitianSample d;
  d.m = 3;
  d.diag = {3.0, 1.0, 2.0};
  d.upper = {{0, 0}, {0, 0}, {0, 0}};
  const auto wd = rmt::eig_hermitian(d);
  CHECK(wd == std::vector<double>{3.0, 2.0, 1.0});
}

TEST_CASE("spectra agree with the embedding and keep the trace") {
  RandomStream rs(92, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const int m = 2 + static_cast<int>(rs.next_u32() % 5);
    const auto h = rmt::sample_gue(m, rs);
    const auto w = rmt::eig_hermitian(h);
    const auto ref = eig_via_embedding(h);
    REQUIRE(w.size() == ref.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      REQUIRE(w[i] == doctest::Approx(ref[i]).epsilon(1e-10).scale(1.0));
    double sum = 0.0;
    for (double x : w) sum += x;
    REQUIRE(std::fabs(sum - h.trace()) < 1e-9);
    REQUIRE(std::is_sorted(w.rbegin(), w.rend()));
  }
}

TEST_CASE("eigen residuals") {
  RandomStream rs(93, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const auto h = rmt::sample_gue(2 + rep % 6, rs);
    REQUIRE(rmt::eig_residual(h) < 1e-8);
  }
}

TEST_CASE("two-block sampler") {
  RandomStream rs(94, 0);
  const Mat zero(2, 2);
  const auto z = rmt::sample_two_block(zero, rs);
  CHECK(z.first == doctest::Approx(0.0));
  CHECK(z.second == doctest::Approx(0.0));

  // identity covariance with zero correlation reduces to the 2x2 ensemble
  const long long trials = 20000;
  const auto pairs = rmt::mc_two_block(Mat::identity(2), trials, 95);
  std::vector<double> l1(static_cast<std::size_t>(trials));
  for (long long t = 0; t < trials; ++t) l1[static_cast<std::size_t>(t)] = pairs[static_cast<std::size_t>(t)].first;
  const double ks = stats::ks_vs_cdf(stats::ecdf(l1), rmt::gue2_g1_cdf);
  CHECK(ks < 0.02);

  Mat bad(2, 2);
  bad(0, 0) = 1.0;
  bad(0, 1) = bad(1, 0) = 2.0;
  bad(1, 1) = 1.0;
  CHECK_THROWS_AS(rmt::sample_two_block(bad, rs), std::invalid_argument);
}

TEST_CASE("bridge-max law: exact sampler and survival") {
  CHECK(rmt::vbb_survival(0.0, 0.0, 0.0) == doctest::Approx(1.0));
  CHECK(rmt::vbb_survival(1.0, 0.0, 0.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(rmt::vbb_survival(0.5, 0.7, -0.2) == doctest::Approx(1.0));  // below max(b1,b2)

  RandomStream rs(96, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const double b1 = rs.normal(), b2 = rs.normal();
    REQUIRE(rmt::vbb_exact_sample(b1, b2, rs) >= std::max(b1, b2));
  }

  const long long trials = 50000;
  const auto samples = rmt::mc_vbb_exact(0.4, -0.3, trials, 97);
  const auto dist = stats::ecdf(samples);
  double gap = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double a = 0.4 + 0.05 + 1.95 * i / 19.0;
    const auto it = std::lower_bound(dist.sorted.begin(), dist.sorted.end(), a);
    const double emp =
        static_cast<double>(dist.sorted.end() - it) / static_cast<double>(trials);
    gap = std::max(gap, std::fabs(emp - rmt::vbb_survival(a, 0.4, -0.3)));
  }
  CHECK(gap < 0.01);
}

TEST_CASE("closed-form densities") {
  // normalization by Simpson quadrature
  const int steps = 4000;
  const double lo = -10.0, hi = 10.0;
  const double hstep = (hi - lo) / steps;
  double integral = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double v = lo + i * hstep;
    const double wgt = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    integral += wgt * rmt::gue2_g1(v);
  }
  integral *= hstep / 3.0;
  CHECK(std::fabs(integral - 1.0) < 1e-8);

  // cdf antiderivative matches quadrature at a few points
  for (double v : {-1.5, -0.3, 0.0, 0.7, 2.1}) {
    double acc = 0.0;
    const int ns = 4000;
    const double a0 = -10.0, h2 = (v - a0) / ns;
    for (int i = 0; i <= ns; ++i) {
      const double x = a0 + i * h2;
      const double wgt = (i == 0 || i == ns) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += wgt * rmt::gue2_g1(x);
    }
    acc *= h2 / 3.0;
    REQUIRE(std::fabs(acc - rmt::gue2_g1_cdf(v)) < 1e-9);
  }

  CHECK(rmt::gue2_h(1.0, 0.0) ==
        doctest::Approx(4.0 / std::sqrt(std::acos(-1.0)) * std::exp(-1.0)));
  CHECK_THROWS_AS(rmt::gue2_h(0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(rmt::gue2_g2(0.0, 1.0), std::invalid_argument);
  CHECK(rmt::gue2_g2(1.0, 0.5) > 0.0);

  // h(.|0) integrates to one as well
  double hint = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double v = 0.0 + i * (8.0 / steps);
    const double wgt = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    hint += wgt * rmt::gue2_h(v, 0.0);
  }
  hint *= (8.0 / steps) / 3.0;
  CHECK(std::fabs(hint - 1.0) < 1e-8);
}

TEST_CASE("gue largest eigenvalue matches its density") {
  const auto lmax = rmt::mc_gue_lmax(2, 30000, 98);
  CHECK(stats::ks_vs_cdf(stats::ecdf(lmax), rmt::gue2_g1_cdf) < 0.015);

  const auto tless = [&] {
    std::vector<double> out(30000);
    for (int t = 0; t < 30000; ++t) {
      RandomStream rs(99, static_cast<std::uint64_t>(t));
      out[static_cast<std::size_t>(t)] = rmt::eig_hermitian(rmt::sample_traceless_gue(2, rs))[0];
    }
    return out;
  }();
  CHECK(stats::ks_vs_cdf(stats::ecdf(tless), h0_cdf) < 0.015);
}

TEST_CASE("transform tables") {
  rmt::T53Params p;
  p.a0 = 0.5;
  p.a1 = 0.3;
  p.a2 = 0.2;
  const Mat a3 = rmt::t53_transform(rmt::T53Case::cyclic3, p);
  CHECK(a3(0, 0) == doctest::Approx(0.5));
  CHECK(a3(0, 1) == doctest::Approx(0.2));
  CHECK(a3(0, 2) == doctest::Approx(0.3));
  CHECK(a3(1, 0) == doctest::Approx(0.3));
  const double alpha = rmt::t53_offdiag_scale(rmt::T53Case::cyclic3, p);
  CHECK(alpha == doctest::Approx(std::sqrt(0.25 + 0.09 + 0.04 - 0.15 - 0.1 - 0.06)));
  // modulus of the nontrivial dft coefficient agrees
  const std::complex<double> u = std::polar(1.0, 2.0 * std::acos(-1.0) / 3.0);
  CHECK(alpha == doctest::Approx(std::abs(0.5 + 0.3 * u + 0.2 * u * u)).epsilon(1e-12));

  rmt::T53Params pp;
  pp.m = 3;
  pp.a = 2.0;
  pp.perm = {1, 2, 0};
  const Mat ap = rmt::t53_transform(rmt::T53Case::permutation, pp);
  CHECK(ap(1, 0) == doctest::Approx(2.0));
  CHECK(ap(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("degenerate circulant transform gives a pure gaussian pair") {
  rmt::T53Params p;
  p.a0 = p.a1 = p.a2 = 0.2;
  CHECK(rmt::t53_offdiag_scale(rmt::T53Case::cyclic3, p) == doctest::Approx(0.0));
  const long long trials = 20000;
  const auto [d, l] = rmt::mc_theorem53(rmt::T53Case::cyclic3, p, 64, trials, 100);
  const auto md = stats::moments(stats::ecdf(d));
  const auto ml = stats::moments(stats::ecdf(l));
  const double var = 3.0 * 0.2 * 0.2;  // N(0, m a^2)
  CHECK(std::fabs(md.mean) < 4.0 * std::sqrt(var / trials));
  CHECK(std::fabs(ml.mean) < 4.0 * std::sqrt(var / trials));
  CHECK(std::fabs(md.var - var) < 4.0 * var * std::sqrt(2.0 / trials));
  CHECK(std::fabs(ml.var - var) < 4.0 * var * std::sqrt(2.0 / trials));
  CHECK(stats::ks_two_sample(stats::ecdf(d), stats::ecdf(l)) < 0.02);
}

TEST_CASE("paired transform draws are reproducible") {
  rmt::T53Params p;
  p.a0 = 0.7;
  p.a1 = 0.3;
  const auto x = rmt::theorem53_pair(rmt::T53Case::cyclic2, p, 128, 101, 9);
  const auto y = rmt::theorem53_pair(rmt::T53Case::cyclic2, p, 128, 101, 9);
  CHECK(x.first == y.first);
  CHECK(x.second == y.second);
}

TEST_CASE("two-letter circulant transform matches its spectrum law") {
  rmt::T53Params p;
  p.a0 = 0.7;
  p.a1 = 0.3;
  const auto [d, l] = rmt::mc_theorem53(rmt::T53Case::cyclic2, p, 256, 20000, 102);
  CHECK(stats::ks_two_sample(stats::ecdf(d), stats::ecdf(l)) < 0.03);
}
