#include "rskshape/kernels/staircase.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "rskshape/kernels/dispatch.hpp"

namespace rsk::kernels {

namespace {

std::unique_ptr<StaircaseTable> build_table(int d, int s) {
  auto table = std::make_unique<StaircaseTable>();
  table->d = d;
  table->s = s;

  // Enumerate strictly increasing s-tuples over 0..d-1 in lexicographic
  // order; lexicographic order guarantees pred[j][t] < t, so one ascending
  // pass per dimension propagates the running maxima along decrement chains.
  std::vector<std::vector<std::int8_t>> tuples;
  std::vector<std::int8_t> cur(s);
  for (int j = 0; j < s; ++j) cur[j] = static_cast<std::int8_t>(j);
  std::map<std::vector<std::int8_t>, int> index;
  while (true) {
    index.emplace(cur, static_cast<int>(tuples.size()));
    tuples.push_back(cur);
    int j = s - 1;
    while (j >= 0 && cur[j] == d - s + j) --j;
    if (j < 0) break;
    ++cur[j];
    for (int i = j + 1; i < s; ++i) cur[i] = static_cast<std::int8_t>(cur[i - 1] + 1);
  }

  const int count = static_cast<int>(tuples.size());
  table->count = count;
  table->comp.resize(static_cast<std::size_t>(count) * s);
  table->pred.assign(static_cast<std::size_t>(s) * count, -1);
  for (int t = 0; t < count; ++t) {
    for (int j = 0; j < s; ++j) {
      table->comp[static_cast<std::size_t>(t) * s + j] = tuples[t][j];
      const int lower = (j == 0) ? 0 : tuples[t][j - 1] + 1;
      if (tuples[t][j] - 1 >= lower) {
        auto down = tuples[t];
        --down[j];
        table->pred[static_cast<std::size_t>(j) * count + t] = index.at(down);
      }
    }
  }
  return table;
}

}  // namespace

const StaircaseTable& StaircaseTable::get(int d, int s) {
  if (s < 1 || d < 1 || s > d || d > 16)
    throw std::invalid_argument("staircase: need 1 <= s <= d <= 16");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<StaircaseTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[(d << 8) | s];
  if (!slot) slot = build_table(d, s);
  return *slot;
}

double staircase_max_scalar(const double* const* rows, int d, int n, int s) {
  const StaircaseTable& st = StaircaseTable::get(d, s);
  const int count = st.count;
  std::vector<double> dp(static_cast<std::size_t>(count), 0.0);
  for (int q = 0; q < n; ++q) {
    // Downward-set maxima: sweep dimensions from last to first. After the
    // sweeps dp[t] = max over all states componentwise <= t.
    for (int j = s - 1; j >= 0; --j) {
      const std::int32_t* pr = st.pred.data() + static_cast<std::size_t>(j) * count;
      for (int t = 0; t < count; ++t) {
        const int p = pr[t];
        if (p >= 0 && dp[p] > dp[t]) dp[t] = dp[p];
      }
    }
    for (int t = 0; t < count; ++t) {
      const std::int8_t* c = st.comp.data() + static_cast<std::size_t>(t) * s;
      double acc = dp[t];
      for (int j = 0; j < s; ++j) acc += rows[c[j]][q];
      dp[t] = acc;
    }
  }
  double best = dp[0];
  for (int t = 1; t < count; ++t) best = std::max(best, dp[t]);
  return best;
}

double staircase_max(const double* const* rows, int d, int n, int s) {
  return staircase_max_scalar(rows, d, n, s);
}

void staircase_max_batch4_scalar(const StaircaseTable& st, const double* w,
                                 int n, double out[4]) {
  const int count = st.count;
  const int s = st.s;
  std::vector<double> dp(static_cast<std::size_t>(count) * 4, 0.0);
  for (int q = 0; q < n; ++q) {
    for (int j = s - 1; j >= 0; --j) {
      const std::int32_t* pr = st.pred.data() + static_cast<std::size_t>(j) * count;
      for (int t = 0; t < count; ++t) {
        const int p = pr[t];
        if (p < 0) continue;
        double* a = dp.data() + static_cast<std::size_t>(t) * 4;
        const double* b = dp.data() + static_cast<std::size_t>(p) * 4;
        for (int l = 0; l < 4; ++l) a[l] = std::max(a[l], b[l]);
      }
    }
    for (int t = 0; t < count; ++t) {
      const std::int8_t* c = st.comp.data() + static_cast<std::size_t>(t) * s;
      double* a = dp.data() + static_cast<std::size_t>(t) * 4;
      for (int j = 0; j < s; ++j) {
        const double* wc = w + (static_cast<std::size_t>(c[j]) * n + q) * 4;
        for (int l = 0; l < 4; ++l) a[l] += wc[l];
      }
    }
  }
  for (int l = 0; l < 4; ++l) out[l] = dp[l];
  for (int t = 1; t < count; ++t)
    for (int l = 0; l < 4; ++l)
      out[l] = std::max(out[l], dp[static_cast<std::size_t>(t) * 4 + l]);
}

void staircase_max_multi(const double* const* rows, int lanes, int d, int n,
                         int s, double* out) {
  const StaircaseTable& st = StaircaseTable::get(d, s);
  const bool use_avx2 = active_isa() == Isa::avx2;
  thread_local std::vector<double> scratch;
  scratch.assign(static_cast<std::size_t>(d) * n * 4, 0.0);

  int l0 = 0;
  while (lanes - l0 >= 4) {
    for (int c = 0; c < d; ++c)
      for (int q = 0; q < n; ++q)
        for (int l = 0; l < 4; ++l)
          scratch[(static_cast<std::size_t>(c) * n + q) * 4 + l] =
              rows[static_cast<std::size_t>(l0 + l) * d + c][q];
#if defined(RSKSHAPE_HAVE_AVX2)
    if (use_avx2)
      staircase_max_batch4_avx2(st, scratch.data(), n, out + l0);
    else
      staircase_max_batch4_scalar(st, scratch.data(), n, out + l0);
#else
    (void)use_avx2;
    staircase_max_batch4_scalar(st, scratch.data(), n, out + l0);
#endif
    l0 += 4;
  }
  for (; l0 < lanes; ++l0)
    out[l0] = staircase_max_scalar(rows + static_cast<std::size_t>(l0) * d, d, n, s);
}

}  // namespace rsk::kernels
