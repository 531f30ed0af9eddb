#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "rskshape/brownian.hpp"
#include "rskshape/linalg.hpp"
#include "rskshape/rng.hpp"

namespace rsk::rmt {

using linalg::Mat;

// Hermitian Gaussian matrix: diagonal iid N(0,1), real and imaginary parts
// of each upper entry iid N(0,1/2). The traceless variant subtracts
// (trace/m) I.
struct HermitianSample {
  int m = 0;
  std::vector<double> diag;
  std::vector<std::complex<double>> upper;  // (i,j), i<j, row-major

  std::complex<double> at(int i, int j) const;
  double trace() const;
};

HermitianSample sample_gue(int m, RandomStream& rs);
HermitianSample sample_gue(int m, std::uint64_t seed, std::uint64_t stream);
HermitianSample sample_traceless_gue(int m, RandomStream& rs);

// Spectrum, descending. m = 2 uses the quadratic closed form; m >= 3 embeds
// H = A + iB into the 2m x 2m real symmetric [[A,-B],[B,A]], eigensolves by
// Jacobi, and collapses the doubled spectrum by pairing adjacent values.
std::vector<double> eig_hermitian(const HermitianSample& h);

// Residual max_k ||H v_k - lambda_k v_k||_2 over the spectrum (test support).
double eig_residual(const HermitianSample& h);

// The 2x2 block of the two-block law: diagonal (X1,X2) ~ N(0, sigma2),
// off-diagonal Y+iZ with Y,Z iid N(0, (s1^2 - 2 rho s1 s2 + s2^2)/4)
// independent of the diagonal. Returns the ordered spectrum (l1 >= l2).
std::pair<double, double> sample_two_block(const Mat& sigma2, RandomStream& rs);

// Exact sampler of the bridge-max law: the larger root of
// (l - b1)(l - b2) = E, E ~ Exponential(1).
double vbb_exact_sample(double b1, double b2, RandomStream& rs);

// P(V_bb >= a) = exp(-(a - b1)(a - b2)) for a >= max(b1, b2), 1 below.
double vbb_survival(double a, double b1, double b2);

// Largest-eigenvalue closed forms for the 2x2 ensemble (standard normal
// density phi / cdf Phi):
//   g1(v) = phi(v) ((1 + v^2) Phi(v) + v phi(v))           density of l_max
//   g2(v, x2) = phi(v) (phi(x2) + v Phi(x2)),  x2 <= v     joint with X2
//   h(v | w1) = (4/sqrt(pi)) (v - w1/2)^2 exp(-(v - w1/2)^2), v >= w1/2
// h's exponent is negative: that is the normalizable version and the one
// consistent with the w1 = 0 specialization.
double gue2_g1(double v);
double gue2_g1_cdf(double v);  // Phi(v)^2 - v phi(v) Phi(v) - phi(v)^2
double gue2_g2(double v, double x2);
double gue2_h(double v, double w1);

enum class T53Case { permutation, rank_one, cyclic2, cyclic3 };

struct T53Params {
  int m = 2;                  // permutation / rank_one
  double a = 1.0;             // scale for permutation / rank_one
  std::vector<double> b;      // rank_one offset vector
  std::vector<int> perm;      // permutation (0-based); identity if empty
  double a0 = 0, a1 = 0, a2 = 0;  // cyclic coefficients
};

// The transform matrix A, its covariance AA^T, and the off-diagonal scale f.
Mat t53_transform(T53Case c, const T53Params& p);
double t53_offdiag_scale(T53Case c, const T53Params& p);

// One paired draw: the staircase functional of A-transformed BM on `cells`
// grid cells, and the largest eigenvalue of f*M0 + Diag(X), X ~ N(0, AA^T),
// sampled from independent sub-streams (equality holds in law only).
std::pair<double, double> theorem53_pair(T53Case c, const T53Params& p,
                                         int cells, std::uint64_t seed,
                                         std::uint64_t stream);

struct McOptions {
  int threads = 0;
};

std::vector<double> mc_gue_lmax(int m, long long trials, std::uint64_t seed,
                                McOptions opt = {});
std::vector<std::pair<double, double>> mc_two_block(const Mat& sigma2,
                                                    long long trials,
                                                    std::uint64_t seed,
                                                    McOptions opt = {});
std::vector<double> mc_vbb_exact(double b1, double b2, long long trials,
                                 std::uint64_t seed, McOptions opt = {});
// first = staircase side, second = eigenvalue side
std::pair<std::vector<double>, std::vector<double>> mc_theorem53(
    T53Case c, const T53Params& p, int cells, long long trials,
    std::uint64_t seed, McOptions opt = {});

}  // namespace rsk::rmt
