#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "coneh/cross_section.hpp"
#include "coneh/exponent.hpp"

namespace coneh {

/// Bounds on h_k, the dimension of harmonic functions of growth order ≤ k on
/// a manifold whose tangent cone at infinity is C(X).
struct GrowthReport {
  double k = 0.0;
  int n = 0;
  std::int64_t lower = 0;  // sup over β < k of N_X(β(β+n-2)), at least 1
  std::int64_t upper = 0;  // N_X(k(k+n-2))
  std::optional<std::int64_t> exact;  // present when k is non-resonant or in the Liouville regime
  /// dim ℋ_k(C(X)) on the cone itself, exact for every k. For the round
  /// sphere S^{n-1} the cone is R^n, so this is h_k(R^n).
  std::int64_t cone_dimension = 0;
  bool resonant = false;
  bool liouville = false;  // k(k+n-2) < λ₁
  double nearest_resonance = 0.0;
  double resonance_distance = 0.0;
};

GrowthReport hk_bounds(const CrossSection& x, int n, double k,
                       double tol = kDefaultResonanceTolerance);

/// One constant piece of k ↦ h_k. The piece is closed at k_lo exactly when
/// k_lo is a resonance (h jumps there by `jump`), and closed at k_hi only for
/// the last piece.
struct StaircaseStep {
  double k_lo = 0.0;
  double k_hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;
  std::int64_t h = 0;
  std::int64_t jump = 0;
};

std::vector<StaircaseStep> hk_staircase(const CrossSection& x, int n, double k_max);

/// lim k^{1-n} h_k = 2α/((n-1)! ω_n) with α = ℋ^{n-1}(X)/n.
double asymptotic_ratio(const CrossSection& x, int n);
/// lim k^{-n} Σ_{i=1}^{k} h_{i-1} = 2α/(n! ω_n).
double cesaro_limit(const CrossSection& x, int n);
/// α = ℋ^{n-1}(X)/n.
double asymptotic_volume_ratio(const CrossSection& x, int n);

struct RatioSample {
  double k = 0.0;
  std::int64_t h = 0;
  double pointwise_ratio = 0.0;     // k^{1-n} h_k
  double pointwise_limit = 0.0;
  double pointwise_deviation = 0.0; // relative
  bool resonant = false;            // h taken at the resonance (staircase convention)
  double cesaro_ratio = 0.0;        // k^{-n} Σ_{i=1}^{⌊k⌋} h_{i-1+δ}
  double cesaro_limit = 0.0;
  double cesaro_deviation = 0.0;    // relative
  double cesaro_offset = 0.0;       // δ
};

std::vector<RatioSample> empirical_ratio_convergence(const CrossSection& x, int n,
                                                     std::span<const double> k_list);

struct WeylSample {
  double lambda = 0.0;
  std::int64_t count = 0;
  double ratio = 0.0;
  double limit = 0.0;
  double deviation = 0.0;  // |ratio - limit| / limit
};

/// N_X(λ) λ^{-(n-1)/2} against n ω_{n-1} α / (2π)^{n-1}.
WeylSample weyl_ratio(const CrossSection& x, int n, double lambda);

/// Bounds when the tangent cone C(X) has Hausdorff dimension m < n. X is the
/// (m-1)-dimensional cross-section; V = ℋ^{m-1}(X). Assumes the renormalized
/// limit measure is unique and proportional to ℋ^m.
struct CollapsedReport {
  double k = 0.0;
  int n = 0;
  int m = 0;
  double V = 0.0;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  double upper_argument = 0.0;  // (k+(n-m)/2)(k+(n+m)/2-2)
  double limit_ratio = 0.0;     // 2V/(m! ω_m)
};

CollapsedReport collapsed_bounds(const CrossSection& x, int n, int m, double k,
                                 double tol = kDefaultResonanceTolerance);

}  // namespace coneh
