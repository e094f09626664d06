#pragma once

#include <span>
#include <vector>

namespace coneh {

/// Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL.
/// `diagonal` has size m, `off_diagonal` size m-1 (entry i couples i and
/// i+1). Returns all eigenvalues sorted ascending. Throws numeric-failure if
/// an eigenvalue does not converge within the iteration cap.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diagonal,
                                            std::span<const double> off_diagonal,
                                            int max_iterations_per_value = 60);

/// Dense symmetric eigenvalues (row-major m×m, only the lower triangle is
/// read): Householder tridiagonalization followed by tridiagonal QL. O(m³).
std::vector<double> dense_symmetric_eigenvalues(std::span<const double> matrix, std::size_t m);

/// Eigenvalues of a symmetric periodic tridiagonal matrix: diagonal d_i and
/// couplings c_i between i and (i+1) mod m, including the corner c_{m-1}.
/// The rows are reordered 0, m-1, 1, m-2, ... which makes the matrix
/// pentadiagonal; Givens bulge chasing then reduces it to tridiagonal form in
/// O(m²) before QL. Requires m ≥ 3.
std::vector<double> periodic_tridiagonal_eigenvalues(std::span<const double> diagonal,
                                                     std::span<const double> coupling);

}  // namespace coneh
