#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rskshape/markov.hpp"

using namespace rsk;
using markov::TransitionMatrix;

namespace {

TransitionMatrix example_cyclic_4() {
  return TransitionMatrix::cyclic({0.4, 0.1, 0.2, 0.3});
}

TransitionMatrix example_symmetric_3() {
  return TransitionMatrix(3, {0.4, 0.6, 0.0, 0.6, 0.0, 0.4, 0.0, 0.4, 0.6});
}

TransitionMatrix random_chain(int m, RandomStream& rs) {
  std::vector<double> e(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
      const double v = 0.05 + rs.uniform();
      e[static_cast<std::size_t>(i) * m + j] = v;
      sum += v;
    }
    for (int j = 0; j < m; ++j) e[static_cast<std::size_t>(i) * m + j] /= sum;
  }
  return TransitionMatrix(m, std::move(e));
}

}  // namespace

TEST_CASE("construction rejects bad rows") {
  CHECK_THROWS_AS(TransitionMatrix(2, {1.1, -0.1, 0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(TransitionMatrix(2, {0.6, 0.5, 0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(TransitionMatrix(2, {1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("classification flags") {
  const auto uniform = TransitionMatrix::iid({1.0 / 3, 1.0 / 3, 1.0 / 3});
  const auto cu = markov::classify(uniform);
  CHECK(cu.irreducible);
  CHECK(cu.aperiodic);
  CHECK(cu.doubly_stochastic);
  CHECK(cu.cyclic);  // constant rows are circulant
  CHECK(cu.reversible);

  const auto c4 = markov::classify(example_cyclic_4());
  CHECK(c4.irreducible);
  CHECK(c4.aperiodic);
  CHECK(c4.doubly_stochastic);
  CHECK(c4.cyclic);
  CHECK_FALSE(c4.reversible);

  const TransitionMatrix swap2(2, {0.0, 1.0, 1.0, 0.0});
  const auto cs = markov::classify(swap2);
  CHECK(cs.irreducible);
  CHECK_FALSE(cs.aperiodic);
  CHECK(cs.doubly_stochastic);
  CHECK(cs.cyclic);
}

TEST_CASE("cyclic layout pins the first column") {
  const auto p = example_cyclic_4();
  const double expected[4][4] = {{0.4, 0.3, 0.2, 0.1},
                                 {0.1, 0.4, 0.3, 0.2},
                                 {0.2, 0.1, 0.4, 0.3},
                                 {0.3, 0.2, 0.1, 0.4}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(p(i, j) == doctest::Approx(expected[i][j]));

  const auto id = TransitionMatrix::cyclic({1.0, 0.0, 0.0, 0.0});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(id(i, j) == (i == j ? 1.0 : 0.0));

  const auto unif = TransitionMatrix::cyclic({0.25, 0.25, 0.25, 0.25});
  const auto iid = TransitionMatrix::iid({0.25, 0.25, 0.25, 0.25});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(unif(i, j) == doctest::Approx(iid(i, j)));
}

TEST_CASE("stationary distributions") {
  const auto pi_sym = markov::stationary(example_symmetric_3());
  for (double x : pi_sym) CHECK(x == doctest::Approx(1.0 / 3).epsilon(1e-12));

  const auto pi0 = std::vector<double>{0.5, 0.3, 0.2};
  const auto pi_iid = markov::stationary(TransitionMatrix::iid(pi0));
  for (int i = 0; i < 3; ++i)
    CHECK(pi_iid[static_cast<std::size_t>(i)] ==
          doctest::Approx(pi0[static_cast<std::size_t>(i)]).epsilon(1e-12));

  const TransitionMatrix two(2, {0.9, 0.1, 0.2, 0.8});
  const auto pi2 = markov::stationary(two);
  CHECK(pi2[0] == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(pi2[1] == doctest::Approx(1.0 / 3).epsilon(1e-12));

  const TransitionMatrix reducible(2, {1.0, 0.0, 0.0, 1.0});
  CHECK_THROWS_AS(markov::stationary(reducible), std::runtime_error);
}

TEST_CASE("stationary residual over random chains") {
  RandomStream rs(31, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const int m = 2 + static_cast<int>(rs.next_u32() % 5);
    const auto p = random_chain(m, rs);
    const auto pi = markov::stationary(p);
    for (int j = 0; j < m; ++j) {
      double acc = -pi[static_cast<std::size_t>(j)];
      for (int i = 0; i < m; ++i) acc += pi[static_cast<std::size_t>(i)] * p(i, j);
      REQUIRE(std::fabs(acc) < 1e-10);
    }
  }
}

TEST_CASE("lazy chains") {
  RandomStream rs(32, 0);
  const auto p0 = random_chain(4, rs);
  const auto same = TransitionMatrix::lazy(p0, 1.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(same(i, j) == doctest::Approx(p0(i, j)));

  const auto lazy = TransitionMatrix::lazy(p0, 0.3);
  const auto pi0 = markov::stationary(p0);
  const auto pil = markov::stationary(lazy);
  for (int i = 0; i < 4; ++i)
    CHECK(pil[static_cast<std::size_t>(i)] ==
          doctest::Approx(pi0[static_cast<std::size_t>(i)]).epsilon(1e-10));

  CHECK_THROWS_AS(TransitionMatrix::lazy(p0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(TransitionMatrix::lazy(p0, 1.5), std::invalid_argument);
}

TEST_CASE("cyclic chains are doubly stochastic") {
  RandomStream rs(33, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const int m = 2 + static_cast<int>(rs.next_u32() % 6);
    std::vector<double> a(static_cast<std::size_t>(m));
    double sum = 0.0;
    for (double& v : a) {
      v = rs.next_u32() % 4 == 0 ? 0.0 : rs.uniform();  // allow zeros
      sum += v;
    }
    if (sum == 0.0) {
      a[0] = 1.0;
      sum = 1.0;
    }
    for (double& v : a) v /= sum;
    CHECK(markov::classify(TransitionMatrix::cyclic(a)).doubly_stochastic);
  }
}

TEST_CASE("word sampling is deterministic") {
  const auto p = example_cyclic_4();
  const auto w1 = markov::sample_word(p, markov::Start::stationary(), 500, 99, 5);
  const auto w2 = markov::sample_word(p, markov::Start::stationary(), 500, 99, 5);
  CHECK(w1.letters == w2.letters);
  const auto w3 = markov::sample_word(p, markov::Start::stationary(), 500, 99, 6);
  CHECK(w1.letters != w3.letters);

  const auto ws = markov::sample_word(p, markov::Start::state(2), 10, 1, 0);
  CHECK(ws.length() == 10);
  for (auto l : ws.letters) CHECK((l >= 1 && l <= 4));
}

TEST_CASE("letter frequencies approach the stationary law") {
  // iid uniform m=2: binomial std error ~ 0.0016 at n = 1e5
  const auto iid2 = TransitionMatrix::iid({0.5, 0.5});
  const long long n = 100000;
  const auto w = markov::sample_word(iid2, markov::Start::stationary(), n, 7, 0);
  long long ones = 0;
  for (auto l : w.letters) ones += l == 1;
  CHECK(std::fabs(static_cast<double>(ones) / n - 0.5) < 0.01);

  // documented mixing allowance c = 4 for the 4-letter circulant example
  const auto p = example_cyclic_4();
  const auto w4 = markov::sample_word(p, markov::Start::stationary(), n, 8, 0);
  long long count[4] = {0, 0, 0, 0};
  for (auto l : w4.letters) ++count[l - 1];
  for (int r = 0; r < 4; ++r) {
    const double freq = static_cast<double>(count[r]) / n;
    REQUIRE(std::fabs(freq - 0.25) <
            4.0 * std::sqrt(0.25 * 0.75 * 4.0 / static_cast<double>(n)));
  }
}

TEST_CASE("chain specs from json") {
  const auto cyc = markov::chain_from_json(
      {{"kind", "cyclic"}, {"a", {0.4, 0.1, 0.2, 0.3}}});
  CHECK(cyc(0, 1) == doctest::Approx(0.3));

  const auto iid = markov::chain_from_json({{"kind", "iid"}, {"pi", {0.5, 0.5}}});
  CHECK(iid(1, 0) == doctest::Approx(0.5));

  const auto lazy = markov::chain_from_json(
      {{"kind", "lazy"},
       {"delta", 0.5},
       {"p0", {{"kind", "iid"}, {"pi", {0.5, 0.5}}}}});
  CHECK(lazy(0, 0) == doctest::Approx(0.75));

  const auto expl = markov::chain_from_json(markov::chain_to_json(cyc));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(expl(i, j) == doctest::Approx(cyc(i, j)));

  CHECK_THROWS_AS(markov::chain_from_json({{"kind", "nope"}}), std::invalid_argument);
}
