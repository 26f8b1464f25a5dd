#include "parlmine/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <nlohmann/json.hpp>

#include "parlmine/error.hpp"

namespace parlmine::stats {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kEps = 1e-15;

// Continued fraction for I_x(a,b) (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

double clamp_p(double p) { return std::clamp(p, std::numeric_limits<double>::min(), 1.0); }

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Midranks of the pooled sample; returns rank sum of the first `n1` values
// and the tie term sum(t^3 - t).
std::pair<double, double> rank_sum(std::span<const double> a, std::span<const double> b) {
  std::vector<std::pair<double, bool>> pooled;
  pooled.reserve(a.size() + b.size());
  for (double v : a) pooled.emplace_back(v, true);
  for (double v : b) pooled.emplace_back(v, false);
  std::sort(pooled.begin(), pooled.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  double r1 = 0.0;
  double tie_sum = 0.0;
  std::size_t i = 0;
  while (i < pooled.size()) {
    std::size_t j = i;
    while (j + 1 < pooled.size() && pooled[j + 1].first == pooled[i].first) ++j;
    const double t = static_cast<double>(j - i + 1);
    const double midrank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) {
      if (pooled[k].second) r1 += midrank;
    }
    tie_sum += t * t * t - t;
    i = j + 1;
  }
  return {r1, tie_sum};
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided(double t, double df) {
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return incomplete_beta(0.5 * df, 0.5, x);
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(Errc::LengthMismatch,
                "series lengths differ (" + std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
  }
  const std::size_t n = x.size();
  if (n < 3) throw Error(Errc::DegenerateInput, "at least three paired observations are required");
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(Errc::DegenerateInput, "constant series has no correlation");
  CorrelationResult out;
  out.n = n;
  out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(n - 2);
  const double one_minus_r2 = 1.0 - out.r * out.r;
  const double t = one_minus_r2 <= 0.0 ? std::copysign(std::numeric_limits<double>::infinity(), out.r)
                                       : out.r * std::sqrt(df / one_minus_r2);
  out.p_value = clamp_p(student_t_two_sided(t, df));
  out.significant = out.p_value < kSignificanceLevel;
  return out;
}

double mann_whitney_normal_p(double u, std::size_t n1, std::size_t n2, double tie_sum) {
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  const double total = a + b;
  const double mu = 0.5 * a * b;
  double var = a * b / 12.0 * (total + 1.0);
  if (total > 1.0) var = a * b / 12.0 * ((total + 1.0) - tie_sum / (total * (total - 1.0)));
  if (var <= 0.0) return 1.0;
  const double z = std::max(std::fabs(u - mu) - 0.5, 0.0) / std::sqrt(var);
  return clamp_p(std::erfc(z / std::sqrt(2.0)));
}

double mann_whitney_exact_p(double u, std::size_t n1, std::size_t n2) {
  const std::size_t max_u = n1 * n2;
  // counts[i][j][k]: arrangements of i first-sample and j second-sample
  // values whose U equals k.
  std::vector<std::vector<std::vector<double>>> counts(
      n1 + 1, std::vector<std::vector<double>>(n2 + 1, std::vector<double>()));
  for (std::size_t i = 0; i <= n1; ++i) {
    for (std::size_t j = 0; j <= n2; ++j) {
      auto& cell = counts[i][j];
      cell.assign(i * j + 1, 0.0);
      if (i == 0 || j == 0) {
        cell[0] = 1.0;
        continue;
      }
      // Largest value is from the first sample (adds j to U) or from the second.
      const auto& with_first = counts[i - 1][j];
      for (std::size_t k = 0; k < with_first.size(); ++k) cell[k + j] += with_first[k];
      const auto& with_second = counts[i][j - 1];
      for (std::size_t k = 0; k < with_second.size(); ++k) cell[k] += with_second[k];
    }
  }
  const auto& dist = counts[n1][n2];
  const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
  const long long twice_dev = std::llabs(std::llround(2.0 * u) - static_cast<long long>(max_u));
  double tail = 0.0;
  for (std::size_t k = 0; k <= max_u; ++k) {
    if (std::llabs(2 * static_cast<long long>(k) - static_cast<long long>(max_u)) >= twice_dev) tail += dist[k];
  }
  return clamp_p(tail / total);
}

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(Errc::EmptySample, "both samples need at least one observation");
  const auto [r1, tie_sum] = rank_sum(a, b);
  MannWhitneyResult out;
  out.n1 = a.size();
  out.n2 = b.size();
  const double n1 = static_cast<double>(out.n1);
  out.u_statistic = r1 - n1 * (n1 + 1.0) / 2.0;
  if (tie_sum == 0.0 && out.n1 + out.n2 <= kExactMannWhitneyMaxTotal) {
    out.method = PValueMethod::Exact;
    out.p_value = mann_whitney_exact_p(out.u_statistic, out.n1, out.n2);
  } else {
    out.method = PValueMethod::NormalApproximation;
    out.p_value = mann_whitney_normal_p(out.u_statistic, out.n1, out.n2, tie_sum);
  }
  return out;
}

CorrelationResult correlate_series(const metrics::YearlySeries& s1, const metrics::YearlySeries& s2) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& [year, v] : s1.points) {
    auto it = s2.points.find(year);
    if (it == s2.points.end()) continue;
    x.push_back(v);
    y.push_back(it->second);
  }
  if (x.size() < 3) {
    throw Error(Errc::InsufficientOverlap, "series '" + s1.metric_name + "' and '" + s2.metric_name + "' share " +
                                               std::to_string(x.size()) + " years; at least 3 are required");
  }
  return pearson(x, y);
}

std::string to_json(const CorrelationResult& r) {
  nlohmann::ordered_json j;
  j["r"] = r.r;
  j["p_value"] = r.p_value;
  j["n"] = r.n;
  j["significant"] = r.significant;
  return j.dump(2) + "\n";
}

std::string to_json(const MannWhitneyResult& r) {
  nlohmann::ordered_json j;
  j["u_statistic"] = r.u_statistic;
  j["p_value"] = r.p_value;
  j["n1"] = r.n1;
  j["n2"] = r.n2;
  j["method"] = r.method == PValueMethod::Exact ? "exact" : "normal";
  return j.dump(2) + "\n";
}

}  // namespace parlmine::stats
