#include "coneh/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "coneh/error.hpp"

namespace coneh {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::resolution_insufficient: return "resolution-insufficient";
    case ErrorKind::numeric_failure: return "numeric-failure";
    case ErrorKind::degenerate_input: return "degenerate-input";
    case ErrorKind::precondition_violation: return "precondition-violation";
    case ErrorKind::unsupported_cross_section: return "unsupported-cross-section";
    case ErrorKind::parse_error: return "parse-error";
  }
  return "unknown";
}

double factorial(int n) {
  if (n < 0) throw invalid_argument("factorial of a negative integer");
  double result = 1.0;
  for (int i = 2; i <= n; ++i) result *= i;
  return result;
}

double gamma_half_integer(int half_steps) {
  if (half_steps <= 0) throw invalid_argument("gamma_half_integer needs a positive argument");
  if (half_steps % 2 == 0) return factorial(half_steps / 2 - 1);
  // Γ(k + 1/2) = (1/2)(3/2)...(k - 1/2) √π
  const int k = (half_steps - 1) / 2;
  double result = std::sqrt(std::numbers::pi);
  for (int i = 0; i < k; ++i) result *= (i + 0.5);
  return result;
}

double unit_ball_volume(int n) {
  if (n < 0) throw invalid_argument("unit_ball_volume needs n >= 0");
  if (n == 0) return 1.0;
  double pi_power = 1.0;
  for (int i = 0; i < n / 2; ++i) pi_power *= std::numbers::pi;
  if (n % 2 == 1) pi_power *= std::sqrt(std::numbers::pi);
  return pi_power / gamma_half_integer(n + 2);
}

double unit_sphere_measure(int d) {
  if (d < 0) throw invalid_argument("unit_sphere_measure needs d >= 0");
  return (d + 1) * unit_ball_volume(d + 1);
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is exact at every step; guard the product.
    const std::int64_t factor = n - k + i;
    if (result > std::numeric_limits<std::int64_t>::max() / factor) {
      throw invalid_argument("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                             ") overflows 64-bit counts");
    }
    result = result * factor / i;
  }
  return result;
}

}  // namespace coneh
