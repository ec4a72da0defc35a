#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>

namespace bispec {

// Mergeable mean/variance accumulator (Chan et al. pairwise update).
struct RunningStats {
  long long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }

  void merge(const RunningStats& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const long long n = count + o.count;
    const double d = o.mean - mean;
    mean += d * o.count / n;
    m2 += o.m2 + d * d * static_cast<double>(count) * o.count / n;
    count = n;
  }

  double variance() const { return count > 1 ? m2 / (count - 1) : 0.0; }
  double stderr_mean() const { return count > 0 ? std::sqrt(variance() / count) : 0.0; }
};

inline double sample_covariance(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  if (n < 2) return 0.0;
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += (a[i] - ma) * (b[i] - mb);
  return s / (n - 1);
}

inline double poisson_pmf(double mean, long long k) {
  if (k < 0) return 0.0;
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  return boost::math::pdf(boost::math::poisson_distribution<>(mean), static_cast<double>(k));
}

inline double poisson_quantile(double mean, double p) {
  if (mean == 0.0) return 0.0;
  return boost::math::quantile(boost::math::poisson_distribution<>(mean), p);
}

inline double chi_square_critical(int dof, double alpha) {
  return boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), alpha));
}

inline double normal_cdf(double x, double variance) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

// Total variation between the empirical law of integer samples and a pmf on {0,1,2,...}.
inline double tv_to_pmf(const std::vector<long long>& xs, const std::function<double(long long)>& pmf) {
  std::map<long long, double> emp;
  for (long long x : xs) emp[x] += 1.0 / xs.size();
  double covered = 0.0, sum = 0.0;
  long long hi = emp.empty() ? 0 : emp.rbegin()->first;
  for (long long k = std::min<long long>(0, emp.empty() ? 0 : emp.begin()->first); k <= hi; ++k) {
    const double p = pmf(k);
    covered += p;
    auto it = emp.find(k);
    sum += std::abs((it == emp.end() ? 0.0 : it->second) - p);
  }
  sum += std::max(0.0, 1.0 - covered);  // model mass above the largest observation
  return std::min(1.0, 0.5 * sum);
}

// Total variation between two empirical laws after binning with the given map.
inline double tv_between(const std::vector<double>& a, const std::vector<double>& b,
                         const std::function<long long(double)>& bin) {
  std::map<long long, double> p;
  for (double x : a) p[bin(x)] += 1.0 / a.size();
  for (double x : b) p[bin(x)] -= 1.0 / b.size();
  double s = 0.0;
  for (auto& [k, v] : p) s += std::abs(v);
  return std::min(1.0, 0.5 * s);
}

// Kolmogorov-Smirnov sup distance between the empirical CDF of xs and a model CDF.
// cdf_left is the left limit of the model CDF; it only differs from cdf at model atoms.
inline double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf,
                          const std::function<double(double)>& cdf_left = {}) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size();) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    const double left = cdf_left ? cdf_left(xs[i]) : cdf(xs[i]);
    d = std::max({d, std::abs(left - i / n), std::abs(cdf(xs[i]) - j / n)});
    i = j;
  }
  return std::min(1.0, d);
}

}  // namespace bispec
