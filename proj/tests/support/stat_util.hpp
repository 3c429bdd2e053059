#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace testsupport {

// Two-sample Kolmogorov-Smirnov statistic sup_x |F1(x) - F2(x)|.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    const double fa = static_cast<double>(i) / a.size();
    const double fb = static_cast<double>(j) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

// Critical KS distance at significance alpha, large-sample approximation.
inline double ks_critical(std::size_t n1, std::size_t n2, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt((n1 + n2) / static_cast<double>(n1 * n2));
}

// Pearson chi-square statistic for observed counts against equal expected
// bin occupancy.
inline double chi_square_uniform(const std::vector<std::size_t>& counts,
                                 std::size_t total) {
  const double expected = static_cast<double>(total) / counts.size();
  double stat = 0;
  for (std::size_t c : counts) {
    const double d = c - expected;
    stat += d * d / expected;
  }
  return stat;
}

// Sample mean.
inline double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / v.size();
}

// Unbiased sample variance.
inline double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

// Excess kurtosis estimate; zero for a Gaussian.
inline double excess_kurtosis(const std::vector<double>& v) {
  const double m = mean(v);
  double m2 = 0, m4 = 0;
  for (double x : v) {
    const double d = x - m;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= v.size();
  m4 /= v.size();
  return m4 / (m2 * m2) - 3.0;
}

} // namespace testsupport
