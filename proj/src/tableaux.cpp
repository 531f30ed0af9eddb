#include "rskshape/tableaux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace rsk::tableaux {

YoungShape rsk_shape(const markov::Word& w) {
  const int m = w.alphabet;
  std::vector<std::vector<int>> counts;  // counts[row][letter-1]
  for (const std::uint8_t letter : w.letters) {
    int x = letter;
    for (std::size_t row = 0;; ++row) {
      if (row == counts.size()) counts.emplace_back(m, 0);
      std::vector<int>& c = counts[row];
      int bumped = 0;
      for (int y = x + 1; y <= m; ++y) {
        if (c[y - 1] > 0) {
          bumped = y;
          break;
        }
      }
      ++c[x - 1];
      if (bumped == 0) break;
      --c[bumped - 1];
      x = bumped;
    }
  }
  YoungShape shape;
  shape.rows.reserve(counts.size());
  for (const std::vector<int>& c : counts) {
    long long len = 0;
    for (int v : c) len += v;
    shape.rows.push_back(len);
  }
  return shape;
}

long long li_weak(const markov::Word& w) {
  const int m = w.alphabet;
  std::vector<long long> dp(m, 0);
  for (const std::uint8_t letter : w.letters) {
    const int x = letter - 1;
    long long best = 0;
    for (int r = 0; r <= x; ++r) best = std::max(best, dp[r]);
    dp[x] = best + 1;
  }
  long long best = 0;
  for (long long v : dp) best = std::max(best, v);
  return best;
}

namespace {

constexpr long long kOracleMaxLength = 12;

// Free cells of the constrained index set, row-major. For row j (1-based)
// the free columns are l = j .. m-r+j-1; cells left of that are pinned to 0,
// cells right of it to n. Constraints: k[j][l-1] <= k[j][l] and
// k[j+1][l+1] <= k[j][l].
struct TupleSearch {
  int r, m, n;
  const std::vector<std::vector<int>>* prefix;  // (*prefix)[letter][k]
  std::vector<std::vector<int>> k;              // k[j][l], l = 0..m
  long long best = 0;

  int cell_value(int j, int l) const { return k[j - 1][l]; }

  void run() {
    for (int j = 1; j <= r; ++j) {
      for (int l = 0; l <= m; ++l)
        k[j - 1][l] = (l <= j - 1) ? 0 : (l >= m - r + j ? n : -1);
    }
    descend(1, 1);
  }

  void descend(int j, int l) {
    if (j > r) {
      evaluate();
      return;
    }
    if (l > m - r + j - 1) {  // row done (or row has no free cells)
      descend(j + 1, j + 1);
      return;
    }
    const int lower = k[j - 1][l - 1];
    const int upper = (j >= 2) ? k[j - 2][l - 1] : n;
    for (int v = lower; v <= upper; ++v) {
      k[j - 1][l] = v;
      descend(j, l + 1);
    }
    k[j - 1][l] = -1;
  }

  void evaluate() {
    const std::vector<std::vector<int>>& a = *prefix;
    long long total = 0;
    for (int j = 1; j <= r; ++j)
      for (int l = j; l <= m - r + j; ++l)
        total += a[l - 1][k[j - 1][l]] - a[l - 1][k[j - 1][l - 1]];
    best = std::max(best, total);
  }
};

}  // namespace

long long top_rows_bruteforce(const markov::Word& w, int r) {
  const int m = w.alphabet;
  const long long n = w.length();
  if (n > kOracleMaxLength)
    throw std::invalid_argument("top_rows_bruteforce: instance too large (n <= 12)");
  if (r < 1 || r > m) throw std::invalid_argument("top_rows_bruteforce: bad r");

  std::vector<std::vector<int>> prefix(m, std::vector<int>(n + 1, 0));
  for (long long i = 0; i < n; ++i) {
    for (int l = 0; l < m; ++l) prefix[l][i + 1] = prefix[l][i];
    ++prefix[w.letters[i] - 1][i + 1];
  }
  TupleSearch search;
  search.r = r;
  search.m = m;
  search.n = static_cast<int>(n);
  search.prefix = &prefix;
  search.k.assign(r, std::vector<int>(m + 1, -1));
  search.run();
  return search.best;
}

long long disjoint_subseq_bruteforce(const markov::Word& w, int r) {
  const long long n = w.length();
  if (n > kOracleMaxLength)
    throw std::invalid_argument("disjoint_subseq_bruteforce: instance too large (n <= 12)");
  if (r < 1) throw std::invalid_argument("disjoint_subseq_bruteforce: bad r");

  if (w.alphabet > 15)
    throw std::invalid_argument("disjoint_subseq_bruteforce: alphabet too large");

  // State: sorted tails of the r subsequences (0 = still empty), packed in
  // 4-bit nibbles. Appending letter x to a subsequence keeps it weakly
  // increasing iff its tail is <= x. More slots than letters never help.
  std::unordered_map<std::uint64_t, long long> memo;
  const int rr = static_cast<int>(std::min<long long>(r, kOracleMaxLength));

  struct Rec {
    const markov::Word* w;
    int r;
    std::unordered_map<std::uint64_t, long long>* memo;

    static std::uint64_t pack(const std::vector<int>& tails) {
      std::uint64_t key = 0;
      for (int t : tails) key = (key << 4) | static_cast<std::uint64_t>(t);
      return key;
    }

    long long go(std::size_t pos, std::vector<int>& tails) {
      if (pos == w->letters.size()) return 0;
      const std::uint64_t key =
          (static_cast<std::uint64_t>(pos) << 48) | pack(tails);
      if (auto it = memo->find(key); it != memo->end()) return it->second;
      const int x = w->letters[pos];
      long long best = go(pos + 1, tails);  // skip this letter
      int prev = -1;
      for (int slot = 0; slot < r; ++slot) {
        const int tail = tails[slot];
        if (tail > x) break;       // sorted: nothing further fits
        if (tail == prev) continue;  // symmetric choice
        prev = tail;
        std::vector<int> next = tails;
        next[slot] = x;
        std::sort(next.begin(), next.end());
        best = std::max(best, 1 + go(pos + 1, next));
      }
      (*memo)[key] = best;
      return best;
    }
  };

  Rec rec{&w, rr, &memo};
  std::vector<int> tails(rr, 0);
  return rec.go(0, tails);
}

std::vector<double> rescaled_shape(const YoungShape& shape, long long n,
                                   const std::vector<double>& pi,
                                   const cov::ShapeProfile& prof) {
  const int m = static_cast<int>(pi.size());
  if (prof.size() != m) throw std::invalid_argument("rescaled_shape: profile mismatch");
  if (n < 1) throw std::invalid_argument("rescaled_shape: need n >= 1");
  std::vector<double> values(m);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  for (int k = 1; k <= m; ++k)
    values[k - 1] =
        (static_cast<double>(shape.row(k)) - static_cast<double>(n) * pi[prof.tau[k - 1]]) /
        sqrt_n;
  return values;
}

std::vector<double> rescaled_shape(const markov::Word& w,
                                   const std::vector<double>& pi,
                                   const cov::ShapeProfile& prof) {
  return rescaled_shape(rsk_shape(w), w.length(), pi, prof);
}

}  // namespace rsk::tableaux
