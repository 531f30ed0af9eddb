// AVX2 variant of the 4-lane staircase DP. Compiled with -mavx2 and
// -ffp-contract=off; only add/max are used on lane data, so results are
// bit-identical to the scalar reference.

#include <immintrin.h>

#include <vector>

#include "rskshape/kernels/staircase.hpp"

namespace rsk::kernels {

void staircase_max_batch4_avx2(const StaircaseTable& st, const double* w,
                               int n, double out[4]) {
  const int count = st.count;
  const int s = st.s;
  thread_local std::vector<double> dp_store;
  dp_store.assign(static_cast<std::size_t>(count) * 4, 0.0);
  double* dp = dp_store.data();
  for (int q = 0; q < n; ++q) {
    for (int j = s - 1; j >= 0; --j) {
      const std::int32_t* pr = st.pred.data() + static_cast<std::size_t>(j) * count;
      for (int t = 0; t < count; ++t) {
        const int p = pr[t];
        if (p < 0) continue;
        const __m256d a = _mm256_loadu_pd(dp + static_cast<std::size_t>(t) * 4);
        const __m256d b = _mm256_loadu_pd(dp + static_cast<std::size_t>(p) * 4);
        _mm256_storeu_pd(dp + static_cast<std::size_t>(t) * 4, _mm256_max_pd(a, b));
      }
    }
    for (int t = 0; t < count; ++t) {
      const std::int8_t* c = st.comp.data() + static_cast<std::size_t>(t) * s;
      __m256d acc = _mm256_loadu_pd(dp + static_cast<std::size_t>(t) * 4);
      for (int j = 0; j < s; ++j) {
        acc = _mm256_add_pd(
            acc, _mm256_loadu_pd(w + (static_cast<std::size_t>(c[j]) * n + q) * 4));
      }
      _mm256_storeu_pd(dp + static_cast<std::size_t>(t) * 4, acc);
    }
  }
  __m256d best = _mm256_loadu_pd(dp);
  for (int t = 1; t < count; ++t)
    best = _mm256_max_pd(best, _mm256_loadu_pd(dp + static_cast<std::size_t>(t) * 4));
  _mm256_storeu_pd(out, best);
}

}  // namespace rsk::kernels
