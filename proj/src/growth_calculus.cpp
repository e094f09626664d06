#include "coneh/growth_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "coneh/error.hpp"
#include "coneh/special_functions.hpp"

namespace coneh {

namespace {

void require_matching_dimension(const CrossSection& x, int n, const char* what) {
  if (n != x.cone_dimension()) {
    std::ostringstream msg;
    msg << what << ": n=" << n << " does not match the cone dimension " << x.cone_dimension()
        << " of " << x.describe();
    throw invalid_argument(msg.str());
  }
}

// Upper and lower counts at growth order k, evaluated at the resonance's own
// eigenvalue when k lies within tol of it.
struct LevelCounts {
  std::int64_t upper;
  std::int64_t lower;
  ResonanceCheck check;
  double level;  // eigenvalue level used
};

LevelCounts level_counts(const CrossSection& x, int n, double k, double tol) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw invalid_argument("growth order k must be finite and >= 0");
  const ResonanceCheck check = is_resonant(x, k, tol);
  const double level = check.resonant ? check.nearest.eigenvalue : eigenvalue_from_exponent(k, n);
  if (level > x.certified_bound()) {
    throw ResolutionInsufficient("growth level beyond certified spectrum", x.certified_bound());
  }
  const std::int64_t upper = counting(x, level);
  const std::int64_t lower = std::max<std::int64_t>(1, counting_left(x, level));
  return {upper, lower, check, level};
}

}  // namespace

GrowthReport hk_bounds(const CrossSection& x, int n, double k, double tol) {
  require_matching_dimension(x, n, "hk_bounds");
  const LevelCounts counts = level_counts(x, n, k, tol);

  GrowthReport report;
  report.k = k;
  report.n = n;
  report.upper = counts.upper;
  report.lower = counts.lower;
  report.cone_dimension = counts.upper;
  report.resonant = counts.check.resonant;
  report.nearest_resonance = counts.check.nearest.beta;
  report.resonance_distance = counts.check.distance;

  const auto lambda1 = first_positive_eigenvalue(x);
  report.liouville = lambda1 && eigenvalue_from_exponent(k, n) < *lambda1 && counts.level < *lambda1;
  if (report.liouville) {
    report.upper = 1;
    report.lower = 1;
    report.exact = 1;
  } else if (!report.resonant) {
    report.exact = report.upper;
  }
  return report;
}

std::vector<StaircaseStep> hk_staircase(const CrossSection& x, int n, double k_max) {
  require_matching_dimension(x, n, "hk_staircase");
  if (!(k_max > 0.0)) throw invalid_argument("hk_staircase: k_max must be > 0");
  const ResonantSet set = resonant_set_upto(x, k_max);

  std::vector<StaircaseStep> steps;
  StaircaseStep current;
  current.k_lo = 0.0;
  current.lo_closed = false;
  current.h = counting(x, 0.0);
  for (const auto& member : set.members) {
    if (member.beta <= 0.0) continue;
    current.k_hi = member.beta;
    steps.push_back(current);
    current = StaircaseStep{};
    current.k_lo = member.beta;
    current.lo_closed = true;
    current.h = counting(x, member.eigenvalue);
    current.jump = member.multiplicity;
  }
  current.k_hi = k_max;
  current.hi_closed = true;
  steps.push_back(current);
  return steps;
}

double asymptotic_volume_ratio(const CrossSection& x, int n) {
  require_matching_dimension(x, n, "asymptotic_volume_ratio");
  return measure(x) / n;
}

double asymptotic_ratio(const CrossSection& x, int n) {
  const double alpha = asymptotic_volume_ratio(x, n);
  return 2.0 * alpha / (factorial(n - 1) * unit_ball_volume(n));
}

double cesaro_limit(const CrossSection& x, int n) {
  const double alpha = asymptotic_volume_ratio(x, n);
  return 2.0 * alpha / (factorial(n) * unit_ball_volume(n));
}

std::vector<RatioSample> empirical_ratio_convergence(const CrossSection& x, int n,
                                                     std::span<const double> k_list) {
  require_matching_dimension(x, n, "empirical_ratio_convergence");
  const double point_limit = asymptotic_ratio(x, n);
  const double sum_limit = cesaro_limit(x, n);

  std::vector<RatioSample> out;
  out.reserve(k_list.size());
  for (const double k : k_list) {
    if (!(k > 0.0)) throw invalid_argument("empirical_ratio_convergence: k must be > 0");
    const GrowthReport report = hk_bounds(x, n, k);

    RatioSample sample;
    sample.k = k;
    sample.resonant = report.resonant;
    sample.h = report.exact.value_or(report.upper);
    sample.pointwise_ratio = static_cast<double>(sample.h) * std::pow(k, 1.0 - n);
    sample.pointwise_limit = point_limit;
    sample.pointwise_deviation = std::abs(sample.pointwise_ratio - point_limit) / point_limit;

    // Sample h at t + δ for t = 0..⌊k⌋-1. δ is half the smallest gap from a
    // sample point to the next resonance above it, capped at 1/4, so every
    // t + δ sits strictly inside a constant piece of the staircase.
    const auto terms = static_cast<std::int64_t>(std::floor(k));
    double delta = 0.25;
    for (std::int64_t t = 0; t < terms; ++t) {
      const double level = eigenvalue_from_exponent(static_cast<double>(t), n);
      if (auto next = eigenvalue_above(x, level)) {
        delta = std::min(delta, 0.5 * (exponent_from_eigenvalue(next->lambda, n) - static_cast<double>(t)));
      }
    }
    double sum = 0.0;
    for (std::int64_t t = 0; t < terms; ++t) {
      const double shifted = static_cast<double>(t) + delta;
      sum += static_cast<double>(counting(x, eigenvalue_from_exponent(shifted, n)));
    }
    sample.cesaro_offset = delta;
    sample.cesaro_ratio = sum * std::pow(k, -static_cast<double>(n));
    sample.cesaro_limit = sum_limit;
    sample.cesaro_deviation = std::abs(sample.cesaro_ratio - sum_limit) / sum_limit;
    out.push_back(sample);
  }
  return out;
}

WeylSample weyl_ratio(const CrossSection& x, int n, double lambda) {
  require_matching_dimension(x, n, "weyl_ratio");
  if (!(lambda > 0.0)) throw invalid_argument("weyl_ratio: lambda must be > 0");
  WeylSample s;
  s.lambda = lambda;
  s.count = counting(x, lambda);
  s.ratio = static_cast<double>(s.count) * std::pow(lambda, -(n - 1) / 2.0);
  const double alpha = asymptotic_volume_ratio(x, n);
  s.limit = n * unit_ball_volume(n - 1) * alpha / std::pow(2.0 * std::numbers::pi, n - 1);
  s.deviation = std::abs(s.ratio - s.limit) / s.limit;
  return s;
}

CollapsedReport collapsed_bounds(const CrossSection& x, int n, int m, double k, double tol) {
  if (m < 2 || m > n) {
    throw invalid_argument("collapsed_bounds: need 2 <= m <= n, got m=" + std::to_string(m) +
                           ", n=" + std::to_string(n));
  }
  require_matching_dimension(x, m, "collapsed_bounds (m is the cone dimension of X)");

  // The shifted upper argument is the level of exponent k + (n-m)/2 on an
  // m-dimensional cone: (k+(n-m)/2)(k+(n-m)/2+m-2).
  const double shifted_k = k + 0.5 * (n - m);
  const LevelCounts at_k = level_counts(x, m, k, tol);
  const LevelCounts at_shifted = level_counts(x, m, shifted_k, tol);

  CollapsedReport report;
  report.k = k;
  report.n = n;
  report.m = m;
  report.V = measure(x);
  report.lower = at_k.lower;
  report.upper = at_shifted.upper;
  report.upper_argument = eigenvalue_from_exponent(shifted_k, m);
  report.limit_ratio = 2.0 * report.V / (factorial(m) * unit_ball_volume(m));

  const auto lambda1 = first_positive_eigenvalue(x);
  if (lambda1 && eigenvalue_from_exponent(shifted_k, m) < *lambda1 && at_shifted.level < *lambda1) {
    report.upper = 1;
    report.lower = 1;
  }
  return report;
}

}  // namespace coneh
