#pragma once

#include <cstddef>
#include <vector>

namespace rsk::linalg {

// Small dense row-major matrix. Everything here targets desk-scale sizes
// (alphabets of at most a dozen letters); no blocking, no pivot refinement.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c, double fill = 0.0)
      : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  double* row(int i) { return a.data() + static_cast<std::size_t>(i) * cols; }
  const double* row(int i) const { return a.data() + static_cast<std::size_t>(i) * cols; }

  static Mat identity(int n);
};

Mat operator*(const Mat& x, const Mat& y);
Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(double c, const Mat& x);
Mat transpose(const Mat& x);
double max_abs(const Mat& x);
double max_abs_diff(const Mat& x, const Mat& y);

// LU with partial pivoting. Throws std::runtime_error when a pivot falls
// below rel_tol * max|A|.
struct Lu {
  Mat lu;
  std::vector<int> piv;
  double min_pivot = 0.0;
};
Lu lu_factor(Mat a, double rel_tol = 1e-13);
std::vector<double> lu_solve(const Lu& f, std::vector<double> b);
Mat lu_solve(const Lu& f, const Mat& b);
Mat inverse(const Mat& a, double rel_tol = 1e-13);

// Symmetric eigendecomposition by cyclic Jacobi rotations: a = v diag(w) v^T
// with v's columns orthonormal eigenvectors. Eigenvalues unsorted.
void sym_eigen(const Mat& a, std::vector<double>& w, Mat& v);

}  // namespace rsk::linalg
