#include "coneh/quadrature.hpp"

#include <cmath>

namespace coneh {

namespace {

struct Simpson {
  const std::function<double(double)>& f;
  int max_depth;
  int min_depth;
  QuadratureResult result;

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                 int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    result.evaluations += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= min_depth && std::abs(delta) <= 15.0 * tol) {
      result.error_estimate += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= max_depth) {
      result.converged = false;
      result.error_estimate += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int max_depth, int min_depth) {
  Simpson s{f, max_depth, min_depth, {}};
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  s.result.evaluations = 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  s.result.value = s.recurse(a, b, fa, fm, fb, whole, abs_tol, 0);
  return s.result;
}

}  // namespace coneh
