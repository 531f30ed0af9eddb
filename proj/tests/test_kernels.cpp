#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rskshape/brownian.hpp"
#include "rskshape/kernels/combine.hpp"
#include "rskshape/kernels/dispatch.hpp"
#include "rskshape/kernels/staircase.hpp"
#include "rskshape/linalg.hpp"
#include "rskshape/rng.hpp"

using namespace rsk;

namespace {

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

linalg::Mat random_weights(int d, int n, RandomStream& rs) {
  linalg::Mat w(d, n);
  for (double& v : w.a) v = rs.normal();
  return w;
}

struct IsaGuard {
  kernels::Isa prior = kernels::active_isa();
  ~IsaGuard() { kernels::force_isa(prior); }
};

}  // namespace

TEST_CASE("staircase table sizes") {
  for (int d = 1; d <= 6; ++d)
    for (int s = 1; s <= d; ++s)
      CHECK(kernels::StaircaseTable::get(d, s).count == binom(d, s));
  CHECK_THROWS_AS(kernels::StaircaseTable::get(2, 3), std::invalid_argument);
}

TEST_CASE("staircase dp equals direct tuple enumeration") {
  RandomStream rs(7, 0);
  for (int d = 1; d <= 4; ++d)
    for (int s = 1; s <= std::min(d, 3); ++s)
      for (int n = 1; n <= 6; ++n)
        for (int rep = 0; rep < 8; ++rep) {
          const linalg::Mat w = random_weights(d, n, rs);
          const double dp = brownian::max_staircase(w, s);
          const double ref = brownian::max_staircase_enumerate(w, s);
          REQUIRE(std::fabs(dp - ref) < 1e-10);
        }
}

TEST_CASE("staircase forced cases") {
  RandomStream rs(8, 0);
  const linalg::Mat w = random_weights(3, 5, rs);
  double total = 0.0;
  for (double v : w.a) total += v;
  CHECK(brownian::max_staircase(w, 3) == doctest::Approx(total));

  linalg::Mat swap_reward(2, 2);
  swap_reward(0, 0) = 1.0;
  swap_reward(1, 1) = 1.0;
  CHECK(brownian::max_staircase(swap_reward, 1) == doctest::Approx(2.0));
}

TEST_CASE("batched lanes match single-path scalar bitwise") {
  RandomStream rs(9, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 1 + static_cast<int>(rs.next_u32() % 5);
    const int s = 1 + static_cast<int>(rs.next_u32() % static_cast<unsigned>(d));
    const int n = 1 + static_cast<int>(rs.next_u32() % 40);
    std::vector<linalg::Mat> w;
    std::vector<const double*> rows;
    for (int l = 0; l < 7; ++l) {  // deliberately not a multiple of 4
      w.push_back(random_weights(d, n, rs));
      for (int c = 0; c < d; ++c) rows.push_back(w.back().row(c));
    }
    std::vector<double> multi(7);
    kernels::staircase_max_multi(rows.data(), 7, d, n, s, multi.data());
    for (int l = 0; l < 7; ++l) {
      const double single =
          kernels::staircase_max_scalar(rows.data() + static_cast<std::size_t>(l) * d, d, n, s);
      REQUIRE(multi[static_cast<std::size_t>(l)] == single);
    }
  }
}

TEST_CASE("scalar and avx2 staircase agree bitwise") {
  if (!kernels::avx2_available()) return;
  IsaGuard guard;
  RandomStream rs(10, 0);
  for (int rep = 0; rep < 30; ++rep) {
    const int d = 1 + static_cast<int>(rs.next_u32() % 6);
    const int s = 1 + static_cast<int>(rs.next_u32() % static_cast<unsigned>(d));
    const int n = 1 + static_cast<int>(rs.next_u32() % 80);
    std::vector<linalg::Mat> w;
    std::vector<const double*> rows;
    for (int l = 0; l < 4; ++l) {
      w.push_back(random_weights(d, n, rs));
      for (int c = 0; c < d; ++c) rows.push_back(w.back().row(c));
    }
    double out_scalar[4], out_avx2[4];
    kernels::force_isa(kernels::Isa::scalar);
    kernels::staircase_max_multi(rows.data(), 4, d, n, s, out_scalar);
    kernels::force_isa(kernels::Isa::avx2);
    kernels::staircase_max_multi(rows.data(), 4, d, n, s, out_avx2);
    for (int l = 0; l < 4; ++l) REQUIRE(out_scalar[l] == out_avx2[l]);
  }
}

TEST_CASE("linear_combine matches naive and is isa-stable") {
  RandomStream rs(11, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const int k = 1 + static_cast<int>(rs.next_u32() % 8);
    const int n = 1 + static_cast<int>(rs.next_u32() % 200);
    std::vector<std::vector<double>> src(static_cast<std::size_t>(k), std::vector<double>(n));
    std::vector<const double*> ptrs(static_cast<std::size_t>(k));
    std::vector<double> coeffs(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      for (double& v : src[static_cast<std::size_t>(i)]) v = rs.normal();
      ptrs[static_cast<std::size_t>(i)] = src[static_cast<std::size_t>(i)].data();
      coeffs[static_cast<std::size_t>(i)] = rs.normal();
    }
    std::vector<double> ref(n);
    kernels::linear_combine_scalar(ref.data(), ptrs.data(), coeffs.data(), k, n);
    for (int q = 0; q < n; ++q) {
      double acc = 0.0;
      for (int i = 0; i < k; ++i) acc += coeffs[static_cast<std::size_t>(i)] * ptrs[static_cast<std::size_t>(i)][q];
      REQUIRE(ref[static_cast<std::size_t>(q)] == doctest::Approx(acc).epsilon(1e-15));
    }
    if (kernels::avx2_available()) {
      std::vector<double> simd(n);
      kernels::linear_combine_avx2(simd.data(), ptrs.data(), coeffs.data(), k, n);
      for (int q = 0; q < n; ++q) REQUIRE(simd[static_cast<std::size_t>(q)] == ref[static_cast<std::size_t>(q)]);
    }
  }
}

TEST_CASE("isa dispatch") {
  CHECK((kernels::active_isa() == kernels::Isa::scalar ||
         kernels::active_isa() == kernels::Isa::avx2));
  if (!kernels::avx2_available())
    CHECK_THROWS_AS(kernels::force_isa(kernels::Isa::avx2), std::invalid_argument);
}
