#include "rskshape/stats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace rsk::stats {

EmpiricalDistribution ecdf(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("ecdf: empty sample set");
  std::sort(samples.begin(), samples.end());
  return {std::move(samples)};
}

double ks_two_sample(const EmpiricalDistribution& e1, const EmpiricalDistribution& e2) {
  const std::vector<double>& a = e1.sorted;
  const std::vector<double>& b = e2.sorted;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_vs_cdf(const EmpiricalDistribution& e, const std::function<double(double)>& cdf) {
  const std::vector<double>& x = e.sorted;
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

namespace {

double kahan_sum(const std::vector<double>& x, const std::function<double(double)>& f) {
  double sum = 0.0, comp = 0.0;
  for (double v : x) {
    const double y = f(v) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

Moments moments(const EmpiricalDistribution& e) {
  const std::vector<double>& x = e.sorted;
  const double n = static_cast<double>(x.size());
  Moments m;
  m.mean = kahan_sum(x, [](double v) { return v; }) / n;
  if (x.size() < 2) return m;
  const double mu = m.mean;
  const double m2 = kahan_sum(x, [mu](double v) { return (v - mu) * (v - mu); });
  const double m3 = kahan_sum(x, [mu](double v) { return (v - mu) * (v - mu) * (v - mu); });
  m.var = m2 / (n - 1.0);
  const double sd = std::sqrt(m2 / n);
  m.skew = sd > 0.0 ? (m3 / n) / (sd * sd * sd) : 0.0;
  return m;
}

double quantile(const EmpiricalDistribution& e, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p outside [0,1]");
  const std::vector<double>& x = e.sorted;
  if (x.size() == 1) return x[0];
  const double pos = p * (static_cast<double>(x.size()) - 1.0);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= x.size()) return x.back();
  const double frac = pos - static_cast<double>(lo);
  return x[lo] * (1.0 - frac) + x[lo + 1] * frac;
}

void write_histogram_csv(std::ostream& os, const EmpiricalDistribution& e, int bins) {
  if (bins < 1) throw std::invalid_argument("write_histogram_csv: bins < 1");
  const double lo = e.min();
  const double hi = e.max();
  const double width = (hi > lo) ? (hi - lo) / bins : 1.0;
  std::vector<long long> count(static_cast<std::size_t>(bins), 0);
  for (double v : e.sorted) {
    int b = static_cast<int>((v - lo) / width);
    if (b < 0) b = 0;
    if (b >= bins) b = bins - 1;
    ++count[static_cast<std::size_t>(b)];
  }
  os << "bin_left,bin_right,count,density\n";
  const double n = static_cast<double>(e.count());
  for (int b = 0; b < bins; ++b) {
    const double left = lo + b * width;
    os << left << ',' << left + width << ',' << count[static_cast<std::size_t>(b)]
       << ',' << static_cast<double>(count[static_cast<std::size_t>(b)]) / (n * width) << '\n';
  }
}

}  // namespace rsk::stats
