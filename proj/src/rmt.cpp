#include "rskshape/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rskshape/kernels/staircase.hpp"
#include "rskshape/parallel.hpp"

namespace rsk::rmt {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;
constexpr long long kMcChunk = 256;

}  // namespace

std::complex<double> HermitianSample::at(int i, int j) const {
  if (i == j) return {diag[i], 0.0};
  if (i < j) return upper[static_cast<std::size_t>(i) * (2 * m - i - 1) / 2 + (j - i - 1)];
  return std::conj(at(j, i));
}

double HermitianSample::trace() const {
  double t = 0.0;
  for (double d : diag) t += d;
  return t;
}

HermitianSample sample_gue(int m, RandomStream& rs) {
  if (m < 1) throw std::invalid_argument("sample_gue: need m >= 1");
  HermitianSample h;
  h.m = m;
  h.diag.resize(m);
  h.upper.resize(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (int i = 0; i < m; ++i) h.diag[i] = rs.normal();
  for (auto& z : h.upper)
    z = {kSqrtHalf * rs.normal(), kSqrtHalf * rs.normal()};
  return h;
}

HermitianSample sample_gue(int m, std::uint64_t seed, std::uint64_t stream) {
  RandomStream rs(seed, stream);
  return sample_gue(m, rs);
}

HermitianSample sample_traceless_gue(int m, RandomStream& rs) {
  HermitianSample h = sample_gue(m, rs);
  const double shift = h.trace() / m;
  for (double& d : h.diag) d -= shift;
  return h;
}

namespace {

// Real symmetric embedding [[A,-B],[B,A]] of H = A + iB; its spectrum is
// that of H doubled.
linalg::Mat embed(const HermitianSample& h) {
  const int m = h.m;
  linalg::Mat e(2 * m, 2 * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const std::complex<double> z = h.at(i, j);
      e(i, j) = z.real();
      e(m + i, m + j) = z.real();
      e(i, m + j) = -z.imag();
      e(m + i, j) = z.imag();
    }
  return e;
}

std::vector<double> collapse_pairs(std::vector<double> w) {
  std::sort(w.begin(), w.end(), std::greater<double>());
  std::vector<double> out;
  out.reserve(w.size() / 2);
  for (std::size_t i = 0; i + 1 < w.size(); i += 2)
    out.push_back(0.5 * (w[i] + w[i + 1]));
  return out;
}

}  // namespace

std::vector<double> eig_hermitian(const HermitianSample& h) {
  const int m = h.m;
  if (m == 1) return {h.diag[0]};
  if (m == 2) {
    const double mean = 0.5 * (h.diag[0] + h.diag[1]);
    const double half_gap = 0.5 * (h.diag[0] - h.diag[1]);
    const double rad = std::sqrt(half_gap * half_gap + std::norm(h.upper[0]));
    return {mean + rad, mean - rad};
  }
  std::vector<double> w;
  linalg::Mat v;
  linalg::sym_eigen(embed(h), w, v);
  return collapse_pairs(std::move(w));
}

double eig_residual(const HermitianSample& h) {
  const linalg::Mat e = embed(h);
  std::vector<double> w;
  linalg::Mat v;
  linalg::sym_eigen(e, w, v);
  const int n = e.rows;
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double acc = -w[k] * v(i, k);
      for (int j = 0; j < n; ++j) acc += e(i, j) * v(j, k);
      norm2 += acc * acc;
    }
    worst = std::max(worst, std::sqrt(norm2));
  }
  return worst;
}

std::pair<double, double> sample_two_block(const Mat& sigma2, RandomStream& rs) {
  if (sigma2.rows != 2 || sigma2.cols != 2)
    throw std::invalid_argument("sample_two_block: need a 2x2 covariance");
  const double v1 = sigma2(0, 0), v2 = sigma2(1, 1), c12 = 0.5 * (sigma2(0, 1) + sigma2(1, 0));
  if (v1 < -1e-12 || v2 < -1e-12 || v1 * v2 - c12 * c12 < -1e-12)
    throw std::invalid_argument("sample_two_block: covariance is not PSD");

  const double z1 = rs.normal(), z2 = rs.normal();
  const double s1 = std::sqrt(std::max(v1, 0.0));
  double x1, x2;
  if (s1 > 0.0) {
    x1 = s1 * z1;
    const double resid = std::max(v2 - (c12 / v1) * c12, 0.0);
    x2 = (c12 / s1) * z1 + std::sqrt(resid) * z2;
  } else {
    x1 = 0.0;
    x2 = std::sqrt(std::max(v2, 0.0)) * z2;
  }
  const double off_var = std::max((v1 - 2.0 * c12 + v2) / 4.0, 0.0);
  const double off_sd = std::sqrt(off_var);
  const double y = off_sd * rs.normal();
  const double z = off_sd * rs.normal();

  const double mean = 0.5 * (x1 + x2);
  const double half_gap = 0.5 * (x1 - x2);
  const double rad = std::sqrt(half_gap * half_gap + y * y + z * z);
  return {mean + rad, mean - rad};
}

double vbb_exact_sample(double b1, double b2, RandomStream& rs) {
  const double e = -std::log(rs.uniform());
  const double half_gap = 0.5 * (b1 - b2);
  return 0.5 * (b1 + b2) + std::sqrt(half_gap * half_gap + e);
}

double vbb_survival(double a, double b1, double b2) {
  if (a <= std::max(b1, b2)) return 1.0;
  return std::exp(-(a - b1) * (a - b2));
}

namespace {
double std_phi(double v) {
  static const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::acos(-1.0));
  return inv_sqrt_2pi * std::exp(-0.5 * v * v);
}
double std_Phi(double v) { return 0.5 * std::erfc(-v * kSqrtHalf); }
}  // namespace

double gue2_g1(double v) {
  return std_phi(v) * ((1.0 + v * v) * std_Phi(v) + v * std_phi(v));
}

double gue2_g1_cdf(double v) {
  const double p = std_phi(v), c = std_Phi(v);
  return c * c - v * p * c - p * p;
}

double gue2_g2(double v, double x2) {
  if (x2 > v) throw std::invalid_argument("gue2_g2: need x2 <= v");
  return std_phi(v) * (std_phi(x2) + v * std_Phi(x2));
}

double gue2_h(double v, double w1) {
  if (v < w1 / 2.0) throw std::invalid_argument("gue2_h: need v >= w1/2");
  const double u = v - w1 / 2.0;
  return 4.0 / std::sqrt(std::acos(-1.0)) * u * u * std::exp(-u * u);
}

Mat t53_transform(T53Case c, const T53Params& p) {
  switch (c) {
    case T53Case::permutation: {
      const int m = p.m;
      std::vector<int> perm = p.perm;
      if (perm.empty()) {
        perm.resize(m);
        for (int i = 0; i < m; ++i) perm[i] = i;
      }
      if (static_cast<int>(perm.size()) != m)
        throw std::invalid_argument("t53: permutation size mismatch");
      Mat a(m, m);
      for (int j = 0; j < m; ++j) a(perm[j], j) = p.a;
      return a;
    }
    case T53Case::rank_one: {
      const int m = static_cast<int>(p.b.size());
      if (m < 1) throw std::invalid_argument("t53: rank_one needs b");
      Mat a(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = (i == j ? p.a : 0.0) + p.b[j];
      return a;
    }
    case T53Case::cyclic2: {
      Mat a(2, 2);
      a(0, 0) = a(1, 1) = p.a0;
      a(0, 1) = a(1, 0) = p.a1;
      return a;
    }
    case T53Case::cyclic3: {
      Mat a(3, 3);
      const double v[3] = {p.a0, p.a1, p.a2};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = v[((i - j) % 3 + 3) % 3];
      return a;
    }
  }
  throw std::invalid_argument("t53: unknown case");
}

double t53_offdiag_scale(T53Case c, const T53Params& p) {
  switch (c) {
    case T53Case::permutation:
      return p.a;
    case T53Case::rank_one:
      return p.a;
    case T53Case::cyclic2:
      return p.a0 - p.a1;
    case T53Case::cyclic3:
      return std::sqrt(p.a0 * p.a0 + p.a1 * p.a1 + p.a2 * p.a2 -
                       (p.a0 * p.a1 + p.a0 * p.a2 + p.a1 * p.a2));
  }
  throw std::invalid_argument("t53: unknown case");
}

namespace {

double t53_lmax_draw(const Mat& a, double f, RandomStream& rs) {
  const int m = a.rows;
  // X = A xi ~ N(0, A A^T), then f * (GUE with zeroed diagonal) + Diag(X).
  std::vector<double> xi(m);
  for (int i = 0; i < m; ++i) xi[i] = rs.normal();
  HermitianSample h;
  h.m = m;
  h.diag.resize(m);
  for (int i = 0; i < m; ++i) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += a(i, j) * xi[j];
    h.diag[i] = acc;
  }
  h.upper.resize(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (auto& z : h.upper)
    z = {f * kSqrtHalf * rs.normal(), f * kSqrtHalf * rs.normal()};
  return eig_hermitian(h)[0];
}

}  // namespace

std::pair<double, double> theorem53_pair(T53Case c, const T53Params& p,
                                         int cells, std::uint64_t seed,
                                         std::uint64_t stream) {
  const Mat a = t53_transform(c, p);
  const double f = t53_offdiag_scale(c, p);

  RandomStream rs_path(seed, 2 * stream);
  const brownian::PathGrid grid = brownian::sample_paths(a, cells, rs_path);
  std::vector<const double*> rows(a.rows);
  for (int k = 0; k < a.rows; ++k) rows[k] = grid.inc_row(k);
  const double dtilde = kernels::staircase_max(rows.data(), a.rows, cells, 1);

  RandomStream rs_mat(seed, 2 * stream + 1);
  return {dtilde, t53_lmax_draw(a, f, rs_mat)};
}

std::vector<double> mc_gue_lmax(int m, long long trials, std::uint64_t seed,
                                McOptions opt) {
  std::vector<double> out(static_cast<std::size_t>(trials));
  parallel::for_chunks(trials, kMcChunk, opt.threads,
                       [&](long long b, long long e, long long) {
    for (long long t = b; t < e; ++t) {
      RandomStream rs(seed, static_cast<std::uint64_t>(t));
      out[static_cast<std::size_t>(t)] = eig_hermitian(sample_gue(m, rs))[0];
    }
  });
  return out;
}

std::vector<std::pair<double, double>> mc_two_block(const Mat& sigma2,
                                                    long long trials,
                                                    std::uint64_t seed,
                                                    McOptions opt) {
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(trials));
  parallel::for_chunks(trials, kMcChunk, opt.threads,
                       [&](long long b, long long e, long long) {
    for (long long t = b; t < e; ++t) {
      RandomStream rs(seed, static_cast<std::uint64_t>(t));
      out[static_cast<std::size_t>(t)] = sample_two_block(sigma2, rs);
    }
  });
  return out;
}

std::vector<double> mc_vbb_exact(double b1, double b2, long long trials,
                                 std::uint64_t seed, McOptions opt) {
  std::vector<double> out(static_cast<std::size_t>(trials));
  parallel::for_chunks(trials, kMcChunk, opt.threads,
                       [&](long long b, long long e, long long) {
    for (long long t = b; t < e; ++t) {
      RandomStream rs(seed, static_cast<std::uint64_t>(t));
      out[static_cast<std::size_t>(t)] = vbb_exact_sample(b1, b2, rs);
    }
  });
  return out;
}

std::pair<std::vector<double>, std::vector<double>> mc_theorem53(
    T53Case c, const T53Params& p, int cells, long long trials,
    std::uint64_t seed, McOptions opt) {
  const Mat a = t53_transform(c, p);
  const double f = t53_offdiag_scale(c, p);

  brownian::McOptions bopt;
  bopt.threads = opt.threads;
  bopt.stream_offset = 0;
  bopt.stream_stride = 2;
  std::vector<double> dsamples =
      brownian::mc_staircase(a, 1, cells, trials, seed, bopt);

  std::vector<double> lsamples(static_cast<std::size_t>(trials));
  parallel::for_chunks(trials, kMcChunk, opt.threads,
                       [&](long long b, long long e, long long) {
    for (long long t = b; t < e; ++t) {
      RandomStream rs(seed, 2 * static_cast<std::uint64_t>(t) + 1);
      lsamples[static_cast<std::size_t>(t)] = t53_lmax_draw(a, f, rs);
    }
  });
  return {std::move(dsamples), std::move(lsamples)};
}

}  // namespace rsk::rmt
