#pragma once

#include <cstdint>
#include <vector>

namespace oracle {

/// dim of harmonic polynomials of degree ≤ d on R^n, from the kernel of the
/// Laplacian P_l → P_{l-2} on monomials, ranked mod a large prime.
std::int64_t harmonic_dimension_by_rank(int n, int d);

/// Σ_{l≤d} [C(n+l-1, l) - C(n+l-3, l-2)].
std::int64_t harmonic_dimension_by_formula(int n, int d);

/// Eigenvalue j of the m-point periodic second difference on a circle of length L.
double periodic_difference_eigenvalue(double length, int m, int j);

/// 1 + 2⌊L√λ/(2π)⌋.
std::int64_t circle_count(double length, double lambda);

/// Unit-ball volume via std::tgamma.
double ball_volume(int n);

/// All eigenvalues of a small dense symmetric matrix by cyclic Jacobi rotations.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int m);

}  // namespace oracle
