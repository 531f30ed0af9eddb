// AVX2 variant of linear_combine; compiled with -mavx2 -ffp-contract=off.
// Per output element the multiply/add order matches the scalar reference.

#include <immintrin.h>

#include "rskshape/kernels/combine.hpp"

namespace rsk::kernels {

void linear_combine_avx2(double* dst, const double* const* srcs,
                         const double* coeffs, int k, int n) {
  int q = 0;
  for (; q + 4 <= n; q += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (int i = 0; i < k; ++i) {
      const __m256d c = _mm256_set1_pd(coeffs[i]);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(c, _mm256_loadu_pd(srcs[i] + q)));
    }
    _mm256_storeu_pd(dst + q, acc);
  }
  for (; q < n; ++q) {
    double acc = 0.0;
    for (int i = 0; i < k; ++i) acc = acc + coeffs[i] * srcs[i][q];
    dst[q] = acc;
  }
}

}  // namespace rsk::kernels
