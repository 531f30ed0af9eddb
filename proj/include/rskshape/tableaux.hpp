#pragma once

#include <vector>

#include "rskshape/covariance.hpp"
#include "rskshape/markov.hpp"

namespace rsk::tableaux {

struct YoungShape {
  std::vector<long long> rows;  // weakly decreasing, at most m rows

  long long cells() const {
    long long s = 0;
    for (long long r : rows) s += r;
    return s;
  }
  long long row(int j) const {  // 1-based, 0 beyond the last row
    return (j >= 1 && j <= static_cast<int>(rows.size())) ? rows[j - 1] : 0;
  }
  long long top_rows(int r) const {  // sum of the first r row lengths
    long long s = 0;
    for (int j = 1; j <= r; ++j) s += row(j);
    return s;
  }
};

// Shape of the insertion tableau under row insertion for words: the bumped
// entry is the leftmost one strictly greater, rows stay weakly increasing.
// Rows are stored as per-letter counts, so one insertion costs O(m) per
// visited row.
YoungShape rsk_shape(const markov::Word& w);

// Length of the longest weakly increasing subsequence; O(n m) with
// dp[x] <- max(dp[1..x]) + 1 per letter x. Equals the top row of rsk_shape.
long long li_weak(const markov::Word& w);

// Exhaustive maximization of the block-count sum over the constrained index
// tuples (monotone within a row, interleaved between rows, boundary cells
// pinned to 0/n). Oracle only; guarded to n <= 12.
long long top_rows_bruteforce(const markov::Word& w, int r);

// Best total length of at most r disjoint weakly increasing subsequences,
// by exhaustive search over letter-to-subsequence assignments (memoized on
// the sorted tuple of subsequence tails). Oracle only; guarded to n <= 12.
long long disjoint_subseq_bruteforce(const markov::Word& w, int r);

// Componentwise (lambda_k - n pi_{tau(k)}) / sqrt(n), rows beyond the shape
// counted as zero-length.
std::vector<double> rescaled_shape(const YoungShape& shape, long long n,
                                   const std::vector<double>& pi,
                                   const cov::ShapeProfile& prof);
std::vector<double> rescaled_shape(const markov::Word& w,
                                   const std::vector<double>& pi,
                                   const cov::ShapeProfile& prof);

}  // namespace rsk::tableaux
