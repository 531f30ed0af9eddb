#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rskshape/linalg.hpp"
#include "rskshape/rng.hpp"

using namespace rsk;
using linalg::Mat;

TEST_CASE("lu solve and inverse") {
  RandomStream rs(21, 0);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 2 + static_cast<int>(rs.next_u32() % 7);
    Mat a(n, n);
    for (double& v : a.a) v = rs.normal();
    // every other instance: leave the matrix generic so pivoting is exercised
    if (rep % 2 == 0)
      for (int i = 0; i < n; ++i) a(i, i) += n;
    std::vector<double> b(static_cast<std::size_t>(n));
    for (double& v : b) v = rs.normal();
    const auto f = linalg::lu_factor(a);
    const auto x = linalg::lu_solve(f, b);
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += a(i, j) * x[static_cast<std::size_t>(j)];
      REQUIRE(acc == doctest::Approx(b[static_cast<std::size_t>(i)]).epsilon(1e-10));
    }
    const Mat inv = linalg::inverse(a);
    REQUIRE(linalg::max_abs_diff(a * inv, Mat::identity(n)) < 1e-10);
  }
}

TEST_CASE("singular matrix throws") {
  Mat a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 4.0;
  CHECK_THROWS_AS(linalg::lu_factor(a), std::runtime_error);
}

TEST_CASE("jacobi eigendecomposition reconstructs symmetric matrices") {
  RandomStream rs(22, 0);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 2 + static_cast<int>(rs.next_u32() % 11);
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) a(i, j) = a(j, i) = rs.normal();
    std::vector<double> w;
    Mat v;
    linalg::sym_eigen(a, w, v);
    REQUIRE(linalg::max_abs_diff(transpose(v) * v, Mat::identity(n)) < 1e-12);
    Mat recon(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += v(i, k) * w[static_cast<std::size_t>(k)] * v(j, k);
        recon(i, j) = acc;
      }
    REQUIRE(linalg::max_abs_diff(recon, a) < 1e-12 * std::max(1.0, linalg::max_abs(a)) * n);
  }
}

TEST_CASE("known eigenvalues") {
  Mat a(2, 2);
  a(0, 0) = 2.0;
  a(0, 1) = a(1, 0) = 1.0;
  a(1, 1) = 2.0;
  std::vector<double> w;
  Mat v;
  linalg::sym_eigen(a, w, v);
  std::sort(w.begin(), w.end());
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(w[1] == doctest::Approx(3.0));
}
