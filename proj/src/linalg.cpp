#include "rskshape/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace rsk::linalg {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat operator*(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matmul: shape mismatch");
  Mat out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const double v = x(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < y.cols; ++j) out(i, j) += v * y(k, j);
    }
  return out;
}

Mat operator+(const Mat& x, const Mat& y) {
  Mat out = x;
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += y.a[i];
  return out;
}

Mat operator-(const Mat& x, const Mat& y) {
  Mat out = x;
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] -= y.a[i];
  return out;
}

Mat operator*(double c, const Mat& x) {
  Mat out = x;
  for (double& v : out.a) v *= c;
  return out;
}

Mat transpose(const Mat& x) {
  Mat out(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) out(j, i) = x(i, j);
  return out;
}

double max_abs(const Mat& x) {
  double m = 0.0;
  for (double v : x.a) m = std::max(m, std::fabs(v));
  return m;
}

double max_abs_diff(const Mat& x, const Mat& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    m = std::max(m, std::fabs(x.a[i] - y.a[i]));
  return m;
}

Lu lu_factor(Mat a, double rel_tol) {
  if (a.rows != a.cols) throw std::invalid_argument("lu_factor: square only");
  const int n = a.rows;
  const double scale = std::max(max_abs(a), 1e-300);
  Lu f;
  f.piv.resize(n);
  f.min_pivot = scale;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(a(i, k)) > std::fabs(a(p, k))) p = i;
    f.piv[k] = p;
    if (p != k)
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
    const double pivot = a(k, k);
    f.min_pivot = std::min(f.min_pivot, std::fabs(pivot));
    if (std::fabs(pivot) < rel_tol * scale)
      throw std::runtime_error("lu_factor: matrix is singular to working precision");
    for (int i = k + 1; i < n; ++i) {
      a(i, k) /= pivot;
      const double m = a(i, k);
      if (m == 0.0) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
    }
  }
  f.lu = std::move(a);
  return f;
}

std::vector<double> lu_solve(const Lu& f, std::vector<double> b) {
  const int n = f.lu.rows;
  // interchanges first (the stored multipliers are in final row order)
  for (int k = 0; k < n; ++k) std::swap(b[k], b[f.piv[k]]);
  for (int k = 0; k < n; ++k)
    for (int i = k + 1; i < n; ++i) b[i] -= f.lu(i, k) * b[k];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) b[i] -= f.lu(i, j) * b[j];
    b[i] /= f.lu(i, i);
  }
  return b;
}

Mat lu_solve(const Lu& f, const Mat& b) {
  const int n = f.lu.rows;
  Mat out(n, b.cols);
  std::vector<double> col(n);
  for (int j = 0; j < b.cols; ++j) {
    for (int i = 0; i < n; ++i) col[i] = b(i, j);
    col = lu_solve(f, std::move(col));
    for (int i = 0; i < n; ++i) out(i, j) = col[i];
  }
  return out;
}

Mat inverse(const Mat& a, double rel_tol) {
  return lu_solve(lu_factor(a, rel_tol), Mat::identity(a.rows));
}

void sym_eigen(const Mat& a0, std::vector<double>& w, Mat& v) {
  if (a0.rows != a0.cols) throw std::invalid_argument("sym_eigen: square only");
  const int n = a0.rows;
  Mat a = a0;
  v = Mat::identity(n);
  const double scale = std::max(max_abs(a), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) < 1e-15 * scale * n) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::fabs(theta) > 1e12) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i != p && i != q) {
            const double aip = a(i, p), aiq = a(i, q);
            a(i, p) = aip - s * (aiq + tau * aip);
            a(i, q) = aiq + s * (aip - tau * aiq);
            a(p, i) = a(i, p);
            a(q, i) = a(i, q);
          }
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = vip - s * (viq + tau * vip);
          v(i, q) = viq + s * (vip - tau * viq);
        }
      }
    }
  }
  w.resize(n);
  for (int i = 0; i < n; ++i) w[i] = a(i, i);
}

}  // namespace rsk::linalg
