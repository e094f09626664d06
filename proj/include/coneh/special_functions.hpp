#pragma once

#include <cstdint>

namespace coneh {

/// Gamma function at x = half_steps / 2 for positive integer half_steps, from
/// the closed forms Γ(k) = (k-1)! and Γ(k+1/2) = (2k)! √π / (4^k k!).
double gamma_half_integer(int half_steps);

/// Volume of the unit ball in R^n, π^{n/2} / Γ(n/2 + 1). n = 0 gives 1.
double unit_ball_volume(int n);

/// Hausdorff measure of the unit d-sphere, (d+1)·ω_{d+1}.
double unit_sphere_measure(int d);

double factorial(int n);

/// Exact binomial coefficient C(n, k); zero when k < 0 or k > n or n < 0.
/// Throws invalid-argument if the result does not fit in 63 bits.
std::int64_t binomial(std::int64_t n, std::int64_t k);

}  // namespace coneh
