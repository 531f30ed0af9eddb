#include "rskshape/kernels/combine.hpp"

#include "rskshape/kernels/dispatch.hpp"

namespace rsk::kernels {

void linear_combine_scalar(double* dst, const double* const* srcs,
                           const double* coeffs, int k, int n) {
  for (int q = 0; q < n; ++q) {
    double acc = 0.0;
    for (int i = 0; i < k; ++i) acc = acc + coeffs[i] * srcs[i][q];
    dst[q] = acc;
  }
}

void linear_combine(double* dst, const double* const* srcs,
                    const double* coeffs, int k, int n) {
#if defined(RSKSHAPE_HAVE_AVX2)
  if (active_isa() == Isa::avx2) {
    linear_combine_avx2(dst, srcs, coeffs, k, n);
    return;
  }
#endif
  linear_combine_scalar(dst, srcs, coeffs, k, n);
}

}  // namespace rsk::kernels
