#include "rskshape/brownian.hpp"

#include <cmath>
#include <stdexcept>

#include "rskshape/kernels/combine.hpp"
#include "rskshape/kernels/staircase.hpp"
#include "rskshape/parallel.hpp"

namespace rsk::brownian {

namespace {
constexpr int kMaxComponents = 8;  // staircase state space guard
constexpr long long kMcChunk = 64;
}  // namespace

Mat sqrt_factor(const Mat& sigma) {
  const int m = sigma.rows;
  if (sigma.cols != m) throw std::invalid_argument("sqrt_factor: square only");
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::fabs(sigma(i, j) - sigma(j, i)) > 1e-12)
        throw std::invalid_argument("sqrt_factor: matrix is not symmetric");

  std::vector<double> w;
  Mat v;
  linalg::sym_eigen(sigma, w, v);
  double scale = 0.0;
  for (double x : w) scale = std::max(scale, std::fabs(x));
  std::vector<double> root(m);
  for (int i = 0; i < m; ++i) {
    if (w[i] < -1e-9) throw std::invalid_argument("sqrt_factor: matrix is not PSD");
    const double wi = (w[i] < 1e-12 * std::max(scale, 1.0)) ? 0.0 : w[i];
    root[i] = std::sqrt(wi);
  }
  Mat c(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double acc = 0.0;
      for (int k = 0; k < m; ++k) acc += v(i, k) * root[k] * v(j, k);
      c(i, j) = acc;
    }
  if (linalg::max_abs_diff(c * transpose(c), sigma) > 1e-9)
    throw std::runtime_error("sqrt_factor: root does not reproduce the matrix");
  return c;
}

void sample_paths_into(PathGrid& grid, const Mat& factor, int cells, RandomStream& rs) {
  const int m = factor.rows;
  if (factor.cols != m) throw std::invalid_argument("sample_paths: square factor only");
  if (cells < 1) throw std::invalid_argument("sample_paths: need cells >= 1");
  grid.cells = cells;
  grid.components = m;
  grid.inc.resize(static_cast<std::size_t>(m) * cells);
  grid.cum.resize(static_cast<std::size_t>(m) * (cells + 1));

  thread_local std::vector<double> gauss;
  gauss.resize(static_cast<std::size_t>(m) * cells);
  // One standard normal m-vector per cell.
  for (int q = 0; q < cells; ++q)
    for (int c = 0; c < m; ++c)
      gauss[static_cast<std::size_t>(c) * cells + q] = rs.normal();

  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(cells));
  std::vector<const double*> srcs(m);
  for (int c = 0; c < m; ++c) srcs[c] = gauss.data() + static_cast<std::size_t>(c) * cells;
  std::vector<double> coeffs(m);
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) coeffs[i] = factor(k, i) * inv_sqrt_n;
    kernels::linear_combine(grid.inc.data() + static_cast<std::size_t>(k) * cells,
                            srcs.data(), coeffs.data(), m, cells);
  }
  for (int c = 0; c < m; ++c) {
    double acc = 0.0;
    grid.cum[static_cast<std::size_t>(c) * (cells + 1)] = 0.0;
    const double* row = grid.inc_row(c);
    for (int q = 0; q < cells; ++q) {
      acc += row[q];
      grid.cum[static_cast<std::size_t>(c) * (cells + 1) + q + 1] = acc;
    }
  }
}

PathGrid sample_paths(const Mat& factor, int cells, RandomStream& rs) {
  PathGrid grid;
  sample_paths_into(grid, factor, cells, rs);
  return grid;
}

PathGrid sample_paths(const Mat& factor, int cells, std::uint64_t seed,
                      std::uint64_t stream) {
  RandomStream rs(seed, stream);
  return sample_paths(factor, cells, rs);
}

double max_staircase(const Mat& weights, int s) {
  const int d = weights.rows;
  if (s < 1 || s > d) throw std::invalid_argument("max_staircase: need 1 <= s <= d");
  std::vector<const double*> rows(d);
  for (int c = 0; c < d; ++c) rows[c] = weights.row(c);
  return kernels::staircase_max(rows.data(), d, weights.cols, s);
}

namespace {

// Enumerates the tuples (t_{j,l}) with t_{j,l} = 0 for l <= j-1, = 1 for
// l >= d-s+j, monotone in l within a row and t_{j+1,l+1} <= t_{j,l}, on the
// grid {0, 1/N, ..., 1}. k holds grid indices.
struct GridTupleSearch {
  int s, d, n;
  const Mat* cum;  // (d) x (n+1) prefix sums
  std::vector<std::vector<int>> k;
  double best;

  void run() {
    best = -1e300;
    for (int j = 1; j <= s; ++j)
      for (int l = 0; l <= d; ++l)
        k[j - 1][l] = (l <= j - 1) ? 0 : (l >= d - s + j ? n : -1);
    descend(1, 1);
  }

  void descend(int j, int l) {
    if (j > s) {
      evaluate();
      return;
    }
    if (l > d - s + j - 1) {
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
    double total = 0.0;
    for (int j = 1; j <= s; ++j)
      for (int l = j; l <= d - s + j; ++l)
        total += (*cum)(l - 1, k[j - 1][l]) - (*cum)(l - 1, k[j - 1][l - 1]);
    best = std::max(best, total);
  }
};

}  // namespace

double max_staircase_enumerate(const Mat& weights, int s) {
  const int d = weights.rows;
  const int n = weights.cols;
  if (s < 1 || s > d) throw std::invalid_argument("max_staircase_enumerate: need 1 <= s <= d");
  if (n > 10 || d > 6) throw std::invalid_argument("max_staircase_enumerate: instance too large");
  Mat cum(d, n + 1);
  for (int c = 0; c < d; ++c) {
    double acc = 0.0;
    cum(c, 0) = 0.0;
    for (int q = 0; q < n; ++q) {
      acc += weights(c, q);
      cum(c, q + 1) = acc;
    }
  }
  GridTupleSearch search;
  search.s = s;
  search.d = d;
  search.n = n;
  search.cum = &cum;
  search.k.assign(s, std::vector<int>(d + 1, -1));
  search.run();
  return search.best;
}

namespace {

struct FunctionalSpec {
  int mr = 0, dr = 0, s = 0;
  const int* tau = nullptr;
};

FunctionalSpec functional_spec(const cov::ShapeProfile& prof, int r) {
  const int m = prof.size();
  if (r < 1 || r > m) throw std::invalid_argument("v_functional: r out of range");
  FunctionalSpec f;
  f.mr = prof.m_r[r - 1];
  f.dr = prof.d_r[r - 1];
  f.s = r - f.mr;
  f.tau = prof.tau.data();
  if (f.dr > kMaxComponents)
    throw std::invalid_argument("v_functional: tied block larger than 8 components");
  return f;
}

double gauss_part(const PathGrid& grid, const FunctionalSpec& f) {
  double acc = 0.0;
  for (int i = 0; i < f.mr; ++i) acc += grid.terminal(f.tau[i]);
  return acc;
}

}  // namespace

double v_functional(const PathGrid& grid, const cov::ShapeProfile& prof, int r) {
  if (grid.components != prof.size())
    throw std::invalid_argument("v_functional: grid/profile dimension mismatch");
  const FunctionalSpec f = functional_spec(prof, r);
  const double* rows[kMaxComponents];
  for (int i = 0; i < f.dr; ++i) rows[i] = grid.inc_row(f.tau[f.mr + i]);
  return gauss_part(grid, f) +
         kernels::staircase_max(rows, f.dr, grid.cells, f.s);
}

std::vector<double> v_all(const PathGrid& grid, const cov::ShapeProfile& prof) {
  const int m = prof.size();
  std::vector<double> v(m);
  for (int r = 1; r <= m; ++r) v[r - 1] = v_functional(grid, prof, r);
  return v;
}

std::vector<double> row_functionals(const PathGrid& grid, const cov::ShapeProfile& prof) {
  std::vector<double> r = v_all(grid, prof);
  for (int k = static_cast<int>(r.size()) - 1; k >= 1; --k) r[k] -= r[k - 1];
  return r;
}

DH d_h_rm(int r, int m, int cells, RandomStream& rs) {
  if (m < 1 || m > kMaxComponents) throw std::invalid_argument("d_h_rm: need 1 <= m <= 8");
  if (r < 1 || r > m) throw std::invalid_argument("d_h_rm: need 1 <= r <= m");
  const PathGrid grid = sample_paths(Mat::identity(m), cells, rs);
  const double* rows[kMaxComponents];
  for (int c = 0; c < m; ++c) rows[c] = grid.inc_row(c);
  DH out;
  out.d = kernels::staircase_max(rows, m, cells, r);
  double total = 0.0;
  for (int c = 0; c < m; ++c) total += grid.terminal(c);
  out.h = -(static_cast<double>(r) / m) * total + out.d;
  return out;
}

DH d_h_rm(int r, int m, int cells, std::uint64_t seed, std::uint64_t stream) {
  RandomStream rs(seed, stream);
  return d_h_rm(r, m, cells, rs);
}

double bridge_v(double b1, double b2, int cells, RandomStream& rs) {
  const PathGrid grid = sample_paths(Mat::identity(2), cells, rs);
  const double t1 = grid.terminal(0);
  const double t2 = grid.terminal(1);
  double best = 0.0;  // the t = 0 grid point
  for (int q = 1; q <= cells; ++q) {
    const double t = static_cast<double>(q) / cells;
    const double diff =
        (grid.value(0, q) - t * t1 + b1 * t) - (grid.value(1, q) - t * t2 + b2 * t);
    if (diff > best) best = diff;
  }
  return b2 + best;
}

double bridge_v(double b1, double b2, int cells, std::uint64_t seed, std::uint64_t stream) {
  RandomStream rs(seed, stream);
  return bridge_v(b1, b2, cells, rs);
}

namespace {

// Shared lane-batched loop: prepares 4 grids at a time and evaluates the
// staircase part with the batch kernel. emit(trial, lane_grid, staircase_value).
template <typename Emit>
void mc_staircase_loop(const Mat& factor, const std::vector<int>& comps, int s,
                       int cells, long long trials, std::uint64_t seed,
                       const brownian::McOptions& opt, Emit emit) {
  const int d = static_cast<int>(comps.size());
  parallel::for_chunks(trials, kMcChunk, opt.threads,
                       [&](long long begin, long long end, long long) {
    PathGrid grids[4];
    const double* rows[4 * kMaxComponents];
    double out[4];
    long long t0 = begin;
    while (t0 < end) {
      const int lanes = static_cast<int>(std::min<long long>(4, end - t0));
      for (int l = 0; l < lanes; ++l) {
        RandomStream rs(seed, opt.stream_offset +
                                  opt.stream_stride * static_cast<std::uint64_t>(t0 + l));
        sample_paths_into(grids[l], factor, cells, rs);
        for (int c = 0; c < d; ++c)
          rows[static_cast<std::size_t>(l) * d + c] = grids[l].inc_row(comps[c]);
      }
      kernels::staircase_max_multi(rows, lanes, d, cells, s, out);
      for (int l = 0; l < lanes; ++l) emit(t0 + l, grids[l], out[l]);
      t0 += lanes;
    }
  });
}

}  // namespace

std::vector<double> mc_v_functional(const Mat& sigma, const cov::ShapeProfile& prof,
                                    int r, int cells, long long trials,
                                    std::uint64_t seed, McOptions opt) {
  const Mat c = sqrt_factor(sigma);
  const FunctionalSpec f = functional_spec(prof, r);
  std::vector<int> comps(f.tau + f.mr, f.tau + f.mr + f.dr);
  std::vector<double> samples(static_cast<std::size_t>(trials));
  mc_staircase_loop(c, comps, f.s, cells, trials, seed, opt,
                    [&](long long trial, const PathGrid& grid, double stair) {
                      samples[static_cast<std::size_t>(trial)] =
                          gauss_part(grid, f) + stair;
                    });
  return samples;
}

std::vector<double> mc_v_all(const Mat& sigma, const cov::ShapeProfile& prof,
                             int cells, long long trials, std::uint64_t seed,
                             McOptions opt) {
  const Mat c = sqrt_factor(sigma);
  const int m = prof.size();
  std::vector<double> samples(static_cast<std::size_t>(trials) * m);
  parallel::for_chunks(trials, kMcChunk, opt.threads,
                       [&](long long begin, long long end, long long) {
    PathGrid grids[4];
    const double* rows[4 * kMaxComponents];
    double out[4];
    long long t0 = begin;
    while (t0 < end) {
      const int lanes = static_cast<int>(std::min<long long>(4, end - t0));
      for (int l = 0; l < lanes; ++l) {
        RandomStream rs(seed, opt.stream_offset +
                                  opt.stream_stride * static_cast<std::uint64_t>(t0 + l));
        sample_paths_into(grids[l], c, cells, rs);
      }
      for (int r = 1; r <= m; ++r) {
        const FunctionalSpec f = functional_spec(prof, r);
        for (int l = 0; l < lanes; ++l)
          for (int i = 0; i < f.dr; ++i)
            rows[static_cast<std::size_t>(l) * f.dr + i] =
                grids[l].inc_row(f.tau[f.mr + i]);
        kernels::staircase_max_multi(rows, lanes, f.dr, cells, f.s, out);
        for (int l = 0; l < lanes; ++l)
          samples[static_cast<std::size_t>(t0 + l) * m + r - 1] =
              gauss_part(grids[l], f) + out[l];
      }
      t0 += lanes;
    }
  });
  return samples;
}

std::vector<double> mc_bridge(double b1, double b2, int cells, long long trials,
                              std::uint64_t seed, McOptions opt) {
  std::vector<double> samples(static_cast<std::size_t>(trials));
  parallel::for_chunks(trials, kMcChunk, opt.threads,
                       [&](long long begin, long long end, long long) {
    for (long long t = begin; t < end; ++t) {
      RandomStream rs(seed, opt.stream_offset +
                                opt.stream_stride * static_cast<std::uint64_t>(t));
      samples[static_cast<std::size_t>(t)] = bridge_v(b1, b2, cells, rs);
    }
  });
  return samples;
}

std::vector<double> mc_staircase(const Mat& factor, int s, int cells,
                                 long long trials, std::uint64_t seed,
                                 McOptions opt) {
  const int m = factor.rows;
  if (m > kMaxComponents) throw std::invalid_argument("mc_staircase: need m <= 8");
  std::vector<int> comps(m);
  for (int c = 0; c < m; ++c) comps[c] = c;
  std::vector<double> samples(static_cast<std::size_t>(trials));
  mc_staircase_loop(factor, comps, s, cells, trials, seed, opt,
                    [&](long long trial, const PathGrid&, double stair) {
                      samples[static_cast<std::size_t>(trial)] = stair;
                    });
  return samples;
}

std::vector<DH> mc_d_h(int r, int m, int cells, long long trials,
                       std::uint64_t seed, McOptions opt) {
  if (m < 1 || m > kMaxComponents) throw std::invalid_argument("mc_d_h: need 1 <= m <= 8");
  std::vector<int> comps(m);
  for (int c = 0; c < m; ++c) comps[c] = c;
  std::vector<DH> samples(static_cast<std::size_t>(trials));
  mc_staircase_loop(Mat::identity(m), comps, r, cells, trials, seed, opt,
                    [&](long long trial, const PathGrid& grid, double stair) {
                      double total = 0.0;
                      for (int c = 0; c < m; ++c) total += grid.terminal(c);
                      samples[static_cast<std::size_t>(trial)] = {
                          stair, -(static_cast<double>(r) / m) * total + stair};
                    });
  return samples;
}

}  // namespace rsk::brownian
