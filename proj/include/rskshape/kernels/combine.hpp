#pragma once

namespace rsk::kernels {

// dst[q] = sum_k coeffs[k] * srcs[k][q] for q in [0, n), accumulated in
// fixed k order with separate multiply and add (no FMA contraction), so the
// scalar and SIMD variants agree bitwise.
void linear_combine(double* dst, const double* const* srcs,
                    const double* coeffs, int k, int n);

void linear_combine_scalar(double* dst, const double* const* srcs,
                           const double* coeffs, int k, int n);
void linear_combine_avx2(double* dst, const double* const* srcs,
                         const double* coeffs, int k, int n);

}  // namespace rsk::kernels
