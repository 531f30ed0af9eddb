#pragma once

#include <cstdint>
#include <vector>

namespace rsk::kernels {

// DP state table for the staircase maximizer.
//
// A state is a strictly increasing s-tuple (c_0 < c_1 < ... < c_{s-1}) of
// 0-based component indices with c_j in [j, d-s+j]. A feasible assignment
// maps every time cell q to a state, weakly nondecreasing componentwise in
// q; the maximizer's value is the best total weight of such an assignment.
//
// pred[j*count + t] is the state obtained from t by decrementing c_j (valid
// exactly when c_j - 1 > c_{j-1}), or -1. Decrement chains reach every
// componentwise-smaller state, which is what the prefix-max sweeps in the
// kernels rely on.
struct StaircaseTable {
  int d = 0;
  int s = 0;
  int count = 0;                    // C(d, s)
  std::vector<std::int8_t> comp;    // comp[t*s + j], lexicographic state order
  std::vector<std::int32_t> pred;   // pred[j*count + t]

  // Cached, thread-safe. Throws std::invalid_argument on bad (d, s).
  static const StaircaseTable& get(int d, int s);
};

// Maximum total weight over monotone slice assignments of s strictly
// increasing component labels to n time cells. rows[c] points to the n
// per-cell weights of component c.
double staircase_max(const double* const* rows, int d, int n, int s);

// Batch of `lanes` independent instances sharing (d, n, s): lane l's
// component c is rows[l*d + c]. Dispatches to the active ISA; every lane
// produces bit-identical results to staircase_max on the same input.
void staircase_max_multi(const double* const* rows, int lanes, int d, int n,
                         int s, double* out);

// Reference and SIMD entry points, exposed for equivalence tests. The
// 4-lane kernels consume interleaved weights w[(c*n + q)*4 + lane].
double staircase_max_scalar(const double* const* rows, int d, int n, int s);
void staircase_max_batch4_scalar(const StaircaseTable& st, const double* w,
                                 int n, double out[4]);
void staircase_max_batch4_avx2(const StaircaseTable& st, const double* w,
                               int n, double out[4]);

}  // namespace rsk::kernels
