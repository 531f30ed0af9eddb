#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

namespace rsk::stats {

struct EmpiricalDistribution {
  std::vector<double> sorted;  // ascending

  long long count() const { return static_cast<long long>(sorted.size()); }
  double min() const { return sorted.front(); }
  double max() const { return sorted.back(); }
};

// Sorts a copy of the samples. Throws std::invalid_argument on empty input.
EmpiricalDistribution ecdf(std::vector<double> samples);

// Two-sample sup-norm KS statistic on the merged grid (tie-safe).
double ks_two_sample(const EmpiricalDistribution& e1, const EmpiricalDistribution& e2);

// One-sample KS against a monotone cdf with values in [0,1].
double ks_vs_cdf(const EmpiricalDistribution& e, const std::function<double(double)>& cdf);

struct Moments {
  double mean = 0.0;
  double var = 0.0;   // unbiased (n-1) when n > 1
  double skew = 0.0;  // 0 when var vanishes
};

// Compensated summation throughout.
Moments moments(const EmpiricalDistribution& e);

double quantile(const EmpiricalDistribution& e, double p);

// CSV columns: bin_left,bin_right,count,density.
void write_histogram_csv(std::ostream& os, const EmpiricalDistribution& e, int bins);

}  // namespace rsk::stats
