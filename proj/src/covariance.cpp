#include "rskshape/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rskshape/parallel.hpp"

namespace rsk::cov {

Mat sigma_markov(const markov::TransitionMatrix& p, const std::vector<double>& pi) {
  const int m = p.size();
  if (static_cast<int>(pi.size()) != m)
    throw std::invalid_argument("sigma_markov: pi size mismatch");
  linalg::Mat a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      a(i, j) = (i == j ? 1.0 : 0.0) - p(i, j) + pi[j];
  linalg::Lu f;
  try {
    f = linalg::lu_factor(a, 1e-12);
  } catch (const std::runtime_error&) {
    throw std::runtime_error(
        "sigma_markov: I - P + 1 pi^T is singular (eigenvalue of P at 1 "
        "beyond the Perron root)");
  }
  const Mat z = linalg::lu_solve(f, Mat::identity(m));
  if (linalg::max_abs(z) > 1e10)
    throw std::runtime_error("sigma_markov: chain too close to periodic/reducible");
  Mat s(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      s(i, j) = pi[i] * z(i, j) + pi[j] * z(j, i) - (i == j ? pi[i] : 0.0) -
                pi[i] * pi[j];
  return s;
}

Mat sigma_markov(const markov::TransitionMatrix& p) {
  return sigma_markov(p, markov::stationary(p));
}

Mat sigma_iid(const std::vector<double>& pi) {
  const int m = static_cast<int>(pi.size());
  Mat s(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      s(i, j) = (i == j ? pi[i] : 0.0) - pi[i] * pi[j];
  return s;
}

Mat sigma_iid_uniform(int m) {
  return sigma_iid(std::vector<double>(m, 1.0 / m));
}

bool CorrelationMatrix::any_degenerate() const {
  for (bool b : degenerate)
    if (b) return true;
  return false;
}

CorrelationMatrix correlation(const Mat& sigma) {
  const int m = sigma.rows;
  CorrelationMatrix c;
  c.m = m;
  c.rho = Mat(m, m);
  c.degenerate.assign(m, false);
  std::vector<double> sd(m);
  for (int i = 0; i < m; ++i) {
    sd[i] = std::sqrt(std::max(sigma(i, i), 0.0));
    c.degenerate[i] = sd[i] < 1e-12;
  }
  for (int i = 0; i < m; ++i) {
    c.rho(i, i) = 1.0;
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      c.rho(i, j) = (c.degenerate[i] || c.degenerate[j])
                        ? 0.0
                        : sigma(i, j) / (sd[i] * sd[j]);
    }
  }
  return c;
}

namespace {

ShapeProfile profile_from_order(const std::vector<int>& tau,
                                const std::vector<double>& pi,
                                const std::vector<int>& group_of) {
  const int m = static_cast<int>(tau.size());
  ShapeProfile prof;
  prof.tau = tau;
  prof.nu.resize(m);
  prof.m_r.resize(m);
  prof.d_r.resize(m);

  std::vector<int> group_start(m, 0), group_size(m, 0);
  for (int r = 0; r < m; ++r) ++group_size[group_of[r]];
  for (int g = 1; g < m; ++g)
    group_start[g] = group_start[g - 1] + group_size[g - 1];

  double acc = 0.0;
  for (int r = 0; r < m; ++r) {
    acc += pi[tau[r]];
    prof.nu[r] = acc;
    prof.m_r[r] = group_start[group_of[r]];
    prof.d_r[r] = group_size[group_of[r]];
  }
  return prof;
}

}  // namespace

ShapeProfile profile(const std::vector<double>& pi, double tie_tol) {
  const int m = static_cast<int>(pi.size());
  if (m == 0) throw std::invalid_argument("profile: empty pi");
  std::vector<int> tau(m);
  std::iota(tau.begin(), tau.end(), 0);
  std::stable_sort(tau.begin(), tau.end(), [&](int i, int j) {
    if (pi[i] != pi[j]) return pi[i] > pi[j];
    return i < j;
  });
  // Adjacent-gap grouping; exact ties stay exact, near ties within tie_tol
  // are merged.
  std::vector<int> group_of(m, 0);
  for (int r = 1; r < m; ++r) {
    const bool same = pi[tau[r - 1]] - pi[tau[r]] <= tie_tol;
    group_of[r] = group_of[r - 1] + (same ? 0 : 1);
  }
  return profile_from_order(tau, pi, group_of);
}

ShapeProfile profile_exact(const std::vector<long long>& num,
                           const std::vector<long long>& den) {
  const int m = static_cast<int>(num.size());
  if (m == 0 || den.size() != num.size())
    throw std::invalid_argument("profile_exact: bad input");
  for (int i = 0; i < m; ++i)
    if (den[i] <= 0 || num[i] < 0)
      throw std::invalid_argument("profile_exact: need num >= 0, den > 0");
  auto cmp = [&](int i, int j) {  // pi_i vs pi_j by cross multiplication
    const __int128 lhs = static_cast<__int128>(num[i]) * den[j];
    const __int128 rhs = static_cast<__int128>(num[j]) * den[i];
    if (lhs != rhs) return lhs > rhs;
    return i < j;
  };
  std::vector<int> tau(m);
  std::iota(tau.begin(), tau.end(), 0);
  std::stable_sort(tau.begin(), tau.end(), cmp);
  std::vector<int> group_of(m, 0);
  for (int r = 1; r < m; ++r) {
    const int i = tau[r - 1], j = tau[r];
    const bool same = static_cast<__int128>(num[i]) * den[j] ==
                      static_cast<__int128>(num[j]) * den[i];
    group_of[r] = group_of[r - 1] + (same ? 0 : 1);
  }
  std::vector<double> pi(m);
  for (int i = 0; i < m; ++i)
    pi[i] = static_cast<double>(num[i]) / static_cast<double>(den[i]);
  return profile_from_order(tau, pi, group_of);
}

CyclicSpectrum cyclic_spectrum(const std::vector<double>& a) {
  const int m = static_cast<int>(a.size());
  if (m < 2) throw std::invalid_argument("cyclic_spectrum: need m >= 2");
  CyclicSpectrum sp;
  sp.m = m;
  sp.lambdas.resize(m);
  sp.betas.resize(m + 1);
  const double twopi = 2.0 * std::acos(-1.0);
  for (int j = 0; j < m; ++j) {
    std::complex<double> acc(0.0, 0.0);
    for (int k = 0; k < m; ++k) {
      const double ang = twopi * ((static_cast<long long>(k) * j) % m) / m;
      acc += a[k] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    sp.lambdas[j] = acc;
  }
  sp.gammas.resize(m - 1);
  for (int j = 1; j < m; ++j)
    sp.gammas[j - 1] = sp.lambdas[j] / (1.0 - sp.lambdas[j]);
  for (int j = 0; j <= m; ++j) sp.betas[j] = std::cos(twopi * j / m);
  return sp;
}

Mat toeplitz_basis(int m, int j) {
  Mat out(m, m);
  if (j == 1) {
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l)
        out(k, l) = (k == l) ? 1.0 : -1.0 / (m - 1);
    return out;
  }
  const double twopi = 2.0 * std::acos(-1.0);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      const long long idx = static_cast<long long>(j - 1) * std::abs(k - l);
      out(k, l) = std::cos(twopi * (idx % m) / m);
    }
  return out;
}

Mat sigma_cyclic(const std::vector<double>& a) {
  const int m = static_cast<int>(a.size());
  const CyclicSpectrum sp = cyclic_spectrum(a);
  for (int j = 1; j < m; ++j)
    if (std::abs(sp.lambdas[j]) >= 1.0 - 1e-12)
      throw std::runtime_error("sigma_cyclic: chain is periodic or reducible");

  Mat s = ((m - 1.0) / (static_cast<double>(m) * m)) * toeplitz_basis(m, 1);
  const int m0 = m / 2;
  if (m % 2 == 1) {
    for (int j = 2; j <= m0 + 1; ++j)
      s = s + (4.0 / (static_cast<double>(m) * m)) * sp.gammas[j - 2].real() *
                  toeplitz_basis(m, j);
  } else {
    for (int j = 2; j <= m0; ++j)
      s = s + (4.0 / (static_cast<double>(m) * m)) * sp.gammas[j - 2].real() *
                  toeplitz_basis(m, j);
    s = s + (2.0 / (static_cast<double>(m) * m)) * sp.gammas[m0 - 1].real() *
                toeplitz_basis(m, m0 + 1);
  }
  return s;
}

std::optional<double> kuperberg_gamma(const std::vector<double>& a, double tol) {
  const CyclicSpectrum sp = cyclic_spectrum(a);
  const int m = sp.m;
  double mean = 0.0;
  for (int j = 1; j < m; ++j) mean += sp.gammas[j - 1].real();
  mean /= (m - 1);
  for (int j = 1; j < m; ++j)
    if (std::fabs(sp.gammas[j - 1].real() - mean) >= tol) return std::nullopt;
  return mean;
}

std::optional<double> symmetric_alpha(const markov::TransitionMatrix& p, double tol) {
  const int m = p.size();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::fabs(p(i, j) - p(j, i)) > markov::kMatrixFlagTol)
        throw std::invalid_argument("symmetric_alpha: matrix is not symmetric");

  double off_sum = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) off_sum += p(i, j);
  const double alpha = off_sum * m / (static_cast<double>(m) * m - m);
  if (!(alpha > 0.0 && alpha <= static_cast<double>(m) / (m - 1) + 1e-12))
    return std::nullopt;
  for (int i = 0; i < m; ++i) {
    if (std::fabs(p(i, i) - (1.0 - alpha * (m - 1) / m)) > tol) return std::nullopt;
    for (int j = 0; j < m; ++j)
      if (i != j && std::fabs(p(i, j) - alpha / m) > tol) return std::nullopt;
  }
  return alpha;
}

Mat interpolate_sigma(const Mat& sigma0, const std::vector<double>& pi0, double delta) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("interpolate_sigma: need 0 < delta <= 1");
  return (1.0 / delta) * (sigma0 + (1.0 - delta) * sigma_iid(pi0));
}

EmpiricalSigma empirical_sigma(const markov::TransitionMatrix& p, long long n,
                               long long trials, std::uint64_t seed, int threads) {
  const int m = p.size();
  if (n < 1 || trials < 1)
    throw std::invalid_argument("empirical_sigma: need n >= 1, trials >= 1");
  const std::vector<double> pi = markov::stationary(p);

  const long long chunk = 64;
  const long long nchunks = (trials + chunk - 1) / chunk;
  std::vector<Mat> partial(static_cast<std::size_t>(nchunks), Mat(m, m));
  parallel::for_chunks(trials, chunk, threads, [&](long long begin, long long end, long long ci) {
    Mat& acc = partial[static_cast<std::size_t>(ci)];
    std::vector<double> t(m);
    for (long long trial = begin; trial < end; ++trial) {
      const markov::Word w =
          markov::sample_word(p, markov::Start::stationary(), n, seed,
                              static_cast<std::uint64_t>(trial));
      std::fill(t.begin(), t.end(), 0.0);
      for (const std::uint8_t letter : w.letters) t[letter - 1] += 1.0;
      for (int r = 0; r < m; ++r) t[r] -= pi[r] * static_cast<double>(n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) acc(i, j) += t[i] * t[j];
    }
  });

  EmpiricalSigma out;
  out.sigma = Mat(m, m);
  for (const Mat& part : partial) out.sigma = out.sigma + part;
  out.sigma = (1.0 / (static_cast<double>(trials) * static_cast<double>(n))) * out.sigma;
  out.trials = trials;
  out.degenerate = trials < m;
  return out;
}

CovarianceChecks check_covariance(const Mat& sigma) {
  const int m = sigma.rows;
  CovarianceChecks c;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      c.symmetry = std::max(c.symmetry, std::fabs(sigma(i, j) - sigma(j, i)));
  for (int i = 0; i < m; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < m; ++j) rowsum += sigma(i, j);
    c.kernel_residual = std::max(c.kernel_residual, std::fabs(rowsum));
  }
  std::vector<double> w;
  Mat v;
  linalg::sym_eigen(sigma, w, v);
  c.min_eigenvalue = *std::min_element(w.begin(), w.end());
  c.psd = c.min_eigenvalue > -1e-9;
  return c;
}

}  // namespace rsk::cov
