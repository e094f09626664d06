#pragma once

namespace coneh {

/// Homogeneity exponent of a cross-section eigenvalue: the unique α ≥ 0 with
/// α(α + n - 2) = λ, so that r^α φ is harmonic on the n-dimensional cone.
double exponent_from_eigenvalue(double lambda, int n);

/// α(α + n - 2). Exact inverse of exponent_from_eigenvalue on α ≥ 0.
double eigenvalue_from_exponent(double alpha, int n);

}  // namespace coneh
