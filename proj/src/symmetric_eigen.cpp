#include "coneh/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coneh/error.hpp"

namespace coneh {

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diagonal,
                                            std::span<const double> off_diagonal,
                                            int max_iterations_per_value) {
  const std::size_t n = diagonal.size();
  if (n == 0) return {};
  if (off_diagonal.size() + 1 != n) {
    throw invalid_argument("tridiagonal_eigenvalues: off-diagonal must have size m-1");
  }
  std::vector<double> d(diagonal.begin(), diagonal.end());
  std::vector<double> e(n, 0.0);
  std::copy(off_diagonal.begin(), off_diagonal.end(), e.begin());
  const double eps = std::numeric_limits<double>::epsilon();

  for (std::size_t l = 0; l < n; ++l) {
    int iterations = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (iterations++ == max_iterations_per_value) {
        throw NumericFailure("tridiagonal QL did not converge for eigenvalue index " +
                                 std::to_string(l),
                             d[l]);
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool deflated = false;
      for (std::size_t ii = m; ii-- > l;) {
        double f = s * e[ii];
        const double b = c * e[ii];
        r = std::hypot(f, g);
        e[ii + 1] = r;
        if (r == 0.0) {
          d[ii + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[ii + 1] - p;
        r = (d[ii] - g) * s + 2.0 * c * b;
        p = s * r;
        d[ii + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> dense_symmetric_eigenvalues(std::span<const double> matrix, std::size_t m) {
  if (matrix.size() != m * m) throw invalid_argument("dense_symmetric_eigenvalues: size mismatch");
  if (m == 0) return {};
  std::vector<double> a(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      a[i * m + j] = matrix[i * m + j];
      a[j * m + i] = matrix[i * m + j];
    }
  }
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * m + j]; };

  std::vector<double> v(m), w(m);
  // Householder reflections zero column k below the subdiagonal.
  for (std::size_t k = 0; k + 2 < m; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k + 1; i < m; ++i) alpha += at(i, k) * at(i, k);
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (at(k + 1, k) > 0.0) alpha = -alpha;
    std::fill(v.begin(), v.end(), 0.0);
    v[k + 1] = at(k + 1, k) - alpha;
    for (std::size_t i = k + 2; i < m; ++i) v[i] = at(i, k);
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < m; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;
    // A ← H A H with H = I - β v vᵀ, applied as A - v wᵀ - w vᵀ.
    for (std::size_t i = k; i < m; ++i) {
      double sum = 0.0;
      for (std::size_t j = k + 1; j < m; ++j) sum += at(i, j) * v[j];
      w[i] = beta * sum;
    }
    double vw = 0.0;
    for (std::size_t i = k + 1; i < m; ++i) vw += v[i] * w[i];
    const double half = 0.5 * beta * vw;
    for (std::size_t i = k; i < m; ++i) w[i] -= half * v[i];
    for (std::size_t i = k; i < m; ++i) {
      for (std::size_t j = k; j < m; ++j) at(i, j) -= v[i] * w[j] + w[i] * v[j];
    }
  }
  std::vector<double> diag(m), off(m - 1);
  for (std::size_t i = 0; i < m; ++i) diag[i] = at(i, i);
  for (std::size_t i = 0; i + 1 < m; ++i) off[i] = at(i + 1, i);
  return tridiagonal_eigenvalues(diag, off);
}

namespace {

// Symmetric band matrix, lower storage up to offset kWidth.
class BandMatrix {
 public:
  static constexpr std::size_t kWidth = 3;

  explicit BandMatrix(std::size_t m) : m_(m), band_((kWidth + 1) * m, 0.0) {}

  std::size_t size() const { return m_; }

  double get(std::size_t i, std::size_t j) const {
    if (i < j) std::swap(i, j);
    const std::size_t d = i - j;
    if (d > kWidth) return 0.0;
    return band_[d * m_ + j];
  }

  void set(std::size_t i, std::size_t j, double value) {
    if (i < j) std::swap(i, j);
    const std::size_t d = i - j;
    if (d > kWidth) {
      if (value != 0.0) throw NumericFailure("band reduction fill escaped the band");
      return;
    }
    band_[d * m_ + j] = value;
  }

  // A ← G A Gᵀ for the rotation acting on rows/columns p and p+1 with
  // [c s; -s c].
  void rotate(std::size_t p, double c, double s) {
    const std::size_t q = p + 1;
    const std::size_t lo = p >= kWidth ? p - kWidth : 0;
    const std::size_t hi = std::min(m_ - 1, q + kWidth);
    for (std::size_t k = lo; k <= hi; ++k) {
      if (k == p || k == q) continue;
      const double x = get(p, k);
      const double y = get(q, k);
      if (x == 0.0 && y == 0.0) continue;
      set(p, k, c * x + s * y);
      set(q, k, -s * x + c * y);
    }
    const double a = get(p, p);
    const double b = get(q, q);
    const double e = get(q, p);
    set(p, p, c * c * a + 2.0 * c * s * e + s * s * b);
    set(q, q, s * s * a - 2.0 * c * s * e + c * c * b);
    set(q, p, c * s * (b - a) + (c * c - s * s) * e);
  }

  // Rotation in plane (row-1, row) that zeros A(row, col) against A(row-1, col).
  void annihilate(std::size_t row, std::size_t col) {
    const double x = get(row - 1, col);
    const double y = get(row, col);
    if (y == 0.0) return;
    const double r = std::hypot(x, y);
    rotate(row - 1, x / r, y / r);
    set(row, col, 0.0);
  }

 private:
  std::size_t m_;
  std::vector<double> band_;
};

}  // namespace

std::vector<double> periodic_tridiagonal_eigenvalues(std::span<const double> diagonal,
                                                     std::span<const double> coupling) {
  const std::size_t m = diagonal.size();
  if (m < 3 || coupling.size() != m) {
    throw invalid_argument("periodic_tridiagonal_eigenvalues: need m >= 3 and m couplings");
  }
  // position of node k in the zigzag order 0, m-1, 1, m-2, ...
  std::vector<std::size_t> pos(m);
  for (std::size_t k = 0; k < m; ++k) pos[k] = k < (m + 1) / 2 ? 2 * k : 2 * (m - 1 - k) + 1;

  BandMatrix band(m);
  for (std::size_t k = 0; k < m; ++k) {
    band.set(pos[k], pos[k], diagonal[k]);
    const std::size_t next = (k + 1) % m;
    band.set(pos[k], pos[next], band.get(pos[k], pos[next]) + coupling[k]);
  }

  // Pentadiagonal → tridiagonal: zero A(j+2, j), then chase the bulge that
  // appears two rows further down each time.
  for (std::size_t j = 0; j + 2 < m; ++j) {
    band.annihilate(j + 2, j);
    std::size_t row = j + 4;
    std::size_t col = j + 1;
    while (row < m) {
      band.annihilate(row, col);
      col = row - 1;
      row += 2;
    }
  }

  std::vector<double> diag(m), off(m - 1);
  for (std::size_t i = 0; i < m; ++i) diag[i] = band.get(i, i);
  for (std::size_t i = 0; i + 1 < m; ++i) off[i] = band.get(i + 1, i);
  return tridiagonal_eigenvalues(diag, off);
}

}  // namespace coneh
