#pragma once

// Reference computations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace parlmine::testing {

// Two-sided exact Mann-Whitney p for tie-free data by enumerating every
// assignment of n1 of the n1+n2 ranks to the first sample.
inline double brute_force_mann_whitney_p(double u_observed, int n1, int n2) {
  const int n = n1 + n2;
  const double mu = n1 * n2 / 2.0;
  const double observed = std::fabs(u_observed - mu);
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != n1) continue;
    long rank_sum = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) rank_sum += i + 1;
    }
    const double u = static_cast<double>(rank_sum) - n1 * (n1 + 1) / 2.0;
    ++total;
    if (std::fabs(u - mu) >= observed - 1e-9) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

// U for sample a by direct pair counting (ties count one half).
inline double pair_count_u(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0.0;
  for (double x : a) {
    for (double y : b) {
      if (x > y) u += 1.0;
      else if (x == y) u += 0.5;
    }
  }
  return u;
}

inline double naive_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

inline double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  long double m = 0;
  for (double x : v) m += x;
  m /= v.size();
  long double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return static_cast<double>(std::sqrt(ss / (v.size() - 1)));
}

}  // namespace parlmine::testing
