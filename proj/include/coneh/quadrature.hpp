#pragma once

#include <functional>

namespace coneh {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  bool converged = true;
};

/// Adaptive Simpson with interval bisection. An interval is accepted when
/// |S_left + S_right - S_whole| ≤ 15·tol_local, tol_local halving per level.
/// Intervals still unresolved at max_depth are accepted and mark the result
/// as not converged. No interval is accepted above min_depth, so features
/// narrower than the first few panels are not missed.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol = 1e-10, int max_depth = 40, int min_depth = 0);

}  // namespace coneh
