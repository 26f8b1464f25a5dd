#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "parlmine/metrics.hpp"

namespace parlmine::stats {

inline constexpr double kSignificanceLevel = 0.05;

struct CorrelationResult {
  double r = 0.0;
  double p_value = 1.0;  // two-sided
  std::size_t n = 0;
  bool significant = false;  // p_value < kSignificanceLevel
};

enum class PValueMethod { Exact, NormalApproximation };

struct MannWhitneyResult {
  double u_statistic = 0.0;  // for the first sample
  double p_value = 1.0;      // two-sided
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  PValueMethod method = PValueMethod::NormalApproximation;
};

// Samples with at most this many observations in total and no ties use the
// exact null distribution of U; everything else uses the normal approximation.
inline constexpr std::size_t kExactMannWhitneyMaxTotal = 30;

// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

// Two-sided tail probability P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided(double t, double df);

// Throws Error{LengthMismatch} or Error{DegenerateInput}.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

// Throws Error{EmptySample}.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

// Two-sided normal-approximation p-value with continuity correction.
// `tie_sum` is the sum of t^3 - t over tie groups of the pooled sample.
double mann_whitney_normal_p(double u, std::size_t n1, std::size_t n2, double tie_sum = 0.0);

// Two-sided exact p-value P(|U - mu| >= |u - mu|) for tie-free samples.
double mann_whitney_exact_p(double u, std::size_t n1, std::size_t n2);

// Pairs the series on their common years (ascending). Throws
// Error{InsufficientOverlap} when fewer than three years are shared.
CorrelationResult correlate_series(const metrics::YearlySeries& s1, const metrics::YearlySeries& s2);

std::string to_json(const CorrelationResult& result);
std::string to_json(const MannWhitneyResult& result);

}  // namespace parlmine::stats
