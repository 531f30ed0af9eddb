#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "rskshape/linalg.hpp"
#include "rskshape/markov.hpp"

namespace rsk::cov {

using linalg::Mat;

// Asymptotic covariance of the centered occupation counts, via the
// fundamental matrix Z = (I - P + 1 pi^T)^{-1}:
//
//   Sigma = Pi Z + Z^T Pi - Pi - pi pi^T,   Pi = diag(pi).
//
// This needs one real linear solve and no Jordan/eigen decomposition.
// Throws std::runtime_error when I - P + 1 pi^T is singular or severely
// ill-conditioned (an eigenvalue of P too close to 1 beyond the Perron root).
Mat sigma_markov(const markov::TransitionMatrix& p, const std::vector<double>& pi);
Mat sigma_markov(const markov::TransitionMatrix& p);

// Closed form for iid letters: diag(pi) - pi pi^T.
Mat sigma_iid(const std::vector<double>& pi);

// Uniform-alphabet iid covariance ((m-1)/m^2 on the diagonal).
Mat sigma_iid_uniform(int m);

struct CorrelationMatrix {
  int m = 0;
  Mat rho;
  std::vector<bool> degenerate;  // rows with sigma_r below 1e-12

  bool any_degenerate() const;
};

// rho_{rs} = sigma_{rs} / (sigma_r sigma_s). Degenerate rows are flagged,
// their off-diagonal entries set to 0 (undefined), diagonal kept at 1.
CorrelationMatrix correlation(const Mat& sigma);

// Bookkeeping of the stationary distribution sorted in decreasing order:
// tau is the sorting permutation (ties broken by original index), nu the
// cumulative sums, m_r the number of strictly larger probabilities, d_r the
// multiplicity of the r-th largest. m_r/d_r are indexed by r = 0..m-1.
struct ShapeProfile {
  std::vector<int> tau;     // 0-based permutation
  std::vector<double> nu;
  std::vector<int> m_r;
  std::vector<int> d_r;

  int size() const { return static_cast<int>(tau.size()); }
};

// Probabilities closer than tie_tol are treated as equal (grouped by
// adjacent gaps after sorting).
ShapeProfile profile(const std::vector<double>& pi, double tie_tol = 1e-12);

// Exact-rational variant for inputs where ties must be decided exactly;
// pi_r = num[r] / den[r].
ShapeProfile profile_exact(const std::vector<long long>& num,
                           const std::vector<long long>& den);

// Spectral data of a circulant chain: lambdas[j] is the DFT of a at
// frequency j (lambdas[0] = 1), gammas[j-1] = lambda_j / (1 - lambda_j) for
// j >= 1 (0-based frequency), betas[j] = cos(2 pi j / m).
struct CyclicSpectrum {
  int m = 0;
  std::vector<std::complex<double>> lambdas;
  std::vector<std::complex<double>> gammas;
  std::vector<double> betas;
};

CyclicSpectrum cyclic_spectrum(const std::vector<double>& a);

// Covariance of a circulant chain assembled from the Toeplitz basis
// M^(j), using the conjugate-pair split (odd/even alphabet size). Throws
// when some non-Perron eigenvalue has modulus >= 1 - 1e-12 (periodic or
// reducible circulant).
Mat sigma_cyclic(const std::vector<double>& a);

// The permutation-symmetric basis matrix M^(1) and the Toeplitz matrices
// M^(j), j >= 2 (1-based j as in the circulant decomposition).
Mat toeplitz_basis(int m, int j);

// Returns gamma iff all Re(lambda_j/(1-lambda_j)), j >= 2, agree within
// tol; then Sigma = (1 + 2 gamma) * sigma_iid_uniform(m).
std::optional<double> kuperberg_gamma(const std::vector<double>& a,
                                      double tol = 1e-9);

// For symmetric doubly stochastic P: returns alpha iff
// P = alpha P_iid + (1 - alpha) I with 0 < alpha <= m/(m-1).
// Throws std::invalid_argument on non-symmetric input.
std::optional<double> symmetric_alpha(const markov::TransitionMatrix& p,
                                      double tol = 1e-9);

// Covariance of the lazy chain (1-delta) I + delta P0 from the base
// covariance: (Sigma0 + (1-delta) Sigma_iid(pi0)) / delta.
Mat interpolate_sigma(const Mat& sigma0, const std::vector<double>& pi0,
                      double delta);

struct EmpiricalSigma {
  Mat sigma;
  long long trials = 0;
  bool degenerate = false;  // too few trials for full expected rank
};

// Monte Carlo estimate: stationary-start words of length n, T = counts -
// n pi, Sigma_hat = E[T T^T] / n with the known zero mean. Deterministic in
// (seed); independent of thread count.
EmpiricalSigma empirical_sigma(const markov::TransitionMatrix& p, long long n,
                               long long trials, std::uint64_t seed,
                               int threads = 0);

struct CovarianceChecks {
  double symmetry = 0.0;        // max |S - S^T|
  double min_eigenvalue = 0.0;
  double kernel_residual = 0.0; // max |S 1|
  bool psd = false;
};

CovarianceChecks check_covariance(const Mat& sigma);

}  // namespace rsk::cov
