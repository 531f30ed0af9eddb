#pragma once

#include <cstdint>
#include <vector>

#include "rskshape/covariance.hpp"
#include "rskshape/linalg.hpp"
#include "rskshape/rng.hpp"

namespace rsk::brownian {

using linalg::Mat;

// Discretized correlated Brownian paths on [0,1]: cell q carries the
// increment over ((q-1)/N, q/N], stored component-major. cum holds the
// prefix sums (cum[c][0] = 0), so cum is the path at the grid points.
struct PathGrid {
  int cells = 0;
  int components = 0;
  std::vector<double> inc;  // [c * cells + q]
  std::vector<double> cum;  // [c * (cells+1) + q]

  const double* inc_row(int c) const { return inc.data() + static_cast<std::size_t>(c) * cells; }
  double value(int c, int q) const { return cum[static_cast<std::size_t>(c) * (cells + 1) + q]; }
  double terminal(int c) const { return value(c, cells); }
};

// Symmetric PSD square root C of sigma (C C^T = sigma) via the Jacobi
// eigensolver; eigenvalues in [-1e-9, 0) are clamped to zero (and kernel
// noise below 1e-12 * scale is flushed so zero-sum covariances give
// zero-sum paths). Throws when sigma has an eigenvalue below -1e-9 or the
// root fails to reproduce sigma to 1e-9.
Mat sqrt_factor(const Mat& sigma);

// increments[q] = (1/sqrt(N)) * factor * G_q with G_q iid standard normal
// m-vectors. factor may be any m x m matrix (not only a PSD root), giving
// paths with covariance t * factor factor^T.
PathGrid sample_paths(const Mat& factor, int cells, RandomStream& rs);
PathGrid sample_paths(const Mat& factor, int cells, std::uint64_t seed,
                      std::uint64_t stream);
void sample_paths_into(PathGrid& grid, const Mat& factor, int cells,
                       RandomStream& rs);

// Exact maximum over monotone slice assignments of s strictly increasing
// component labels; weights is d x N (row c = per-cell weights of
// component c).
double max_staircase(const Mat& weights, int s);

// Reference oracle: direct enumeration of the constrained grid-valued
// interval tuples (monotone within a row, interleaved between rows,
// boundary cells pinned to 0/1), evaluating each tuple from the prefix
// sums. Exponential cost; intended for tiny instances only.
double max_staircase_enumerate(const Mat& weights, int s);

// The r-th partial-sum functional on a grid generated from the covariance
// that prof was derived from: the terminal values of the m_r dominant
// components plus the staircase maximum over the d_r tied components with
// s = r - m_r rows.
double v_functional(const PathGrid& grid, const cov::ShapeProfile& prof, int r);

// (V^1, ..., V^m) on the same path, and the row increments R^k = V^k -
// V^{k-1} (R^1 = V^1).
std::vector<double> v_all(const PathGrid& grid, const cov::ShapeProfile& prof);
std::vector<double> row_functionals(const PathGrid& grid,
                                    const cov::ShapeProfile& prof);

struct DH {
  double d = 0.0;  // staircase maximum of standard m-dimensional BM, s = r
  double h = 0.0;  // -(r/m) sum_i B^i(1) + D on the same path
};
DH d_h_rm(int r, int m, int cells, RandomStream& rs);
DH d_h_rm(int r, int m, int cells, std::uint64_t seed, std::uint64_t stream);

// Two independent standard bridges built by the pinned transform
// B(t) - t B(1) + b t of sampled BMs; returns b2 + max over the grid of
// (bridge1 - bridge2).
double bridge_v(double b1, double b2, int cells, RandomStream& rs);
double bridge_v(double b1, double b2, int cells, std::uint64_t seed,
                std::uint64_t stream);

// Monte Carlo drivers. Trial k draws from RandomStream(seed,
// stream_offset + stream_stride * k); chunking is fixed, so outputs do not
// depend on the thread count, and the lane-batched DP is bit-identical to
// the scalar path.
struct McOptions {
  int threads = 0;
  std::uint64_t stream_offset = 0;
  std::uint64_t stream_stride = 1;
};

std::vector<double> mc_v_functional(const Mat& sigma,
                                    const cov::ShapeProfile& prof, int r,
                                    int cells, long long trials,
                                    std::uint64_t seed, McOptions opt = {});

// trials x m row-major: V^1..V^m per trial on one path.
std::vector<double> mc_v_all(const Mat& sigma, const cov::ShapeProfile& prof,
                             int cells, long long trials, std::uint64_t seed,
                             McOptions opt = {});

std::vector<double> mc_bridge(double b1, double b2, int cells,
                              long long trials, std::uint64_t seed,
                              McOptions opt = {});

// Staircase maximum over all m components of grids generated from factor,
// s rows per assignment (the D-functional when factor = I).
std::vector<double> mc_staircase(const Mat& factor, int s, int cells,
                                 long long trials, std::uint64_t seed,
                                 McOptions opt = {});

std::vector<DH> mc_d_h(int r, int m, int cells, long long trials,
                       std::uint64_t seed, McOptions opt = {});

}  // namespace rsk::brownian
