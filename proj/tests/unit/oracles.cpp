#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace oracle {

namespace {

constexpr std::int64_t kPrime = 1000000007;

std::int64_t power_mod(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  b %= kPrime;
  while (e > 0) {
    if (e & 1) r = r * b % kPrime;
    b = b * b % kPrime;
    e >>= 1;
  }
  return r;
}

void monomials(int n, int degree, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == n - 1) {
    current.push_back(degree);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int a = degree; a >= 0; --a) {
    current.push_back(a);
    monomials(n, degree - a, current, out);
    current.pop_back();
  }
}

std::vector<std::vector<int>> monomials(int n, int degree) {
  std::vector<std::vector<int>> out;
  if (degree < 0) return out;
  std::vector<int> current;
  monomials(n, degree, current, out);
  return out;
}

std::int64_t rank_mod_p(std::vector<std::vector<std::int64_t>> rows, std::size_t cols) {
  std::int64_t rank = 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r]);
    const std::int64_t inv = power_mod(rows[r][c], kPrime - 2);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const std::int64_t f = rows[i][c] * inv % kPrime;
      for (std::size_t k = c; k < cols; ++k) {
        rows[i][k] = ((rows[i][k] - f * rows[r][k]) % kPrime + kPrime) % kPrime;
      }
    }
    ++r;
    ++rank;
  }
  return rank;
}

std::int64_t choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::int64_t harmonic_dimension_by_rank(int n, int d) {
  std::int64_t total = 0;
  for (int l = 0; l <= d; ++l) {
    const auto src = monomials(n, l);
    const auto dst = monomials(n, l - 2);
    if (dst.empty()) {
      total += static_cast<std::int64_t>(src.size());
      continue;
    }
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < dst.size(); ++i) index[dst[i]] = i;
    // Rows are the images Δ(x^a), one per source monomial; rank(Δ) = row rank.
    std::vector<std::vector<std::int64_t>> rows(src.size(), std::vector<std::int64_t>(dst.size(), 0));
    for (std::size_t s = 0; s < src.size(); ++s) {
      for (int i = 0; i < n; ++i) {
        const int a = src[s][i];
        if (a < 2) continue;
        auto target = src[s];
        target[i] -= 2;
        rows[s][index.at(target)] = (rows[s][index.at(target)] + a * (a - 1)) % kPrime;
      }
    }
    total += static_cast<std::int64_t>(src.size()) - rank_mod_p(std::move(rows), dst.size());
  }
  return total;
}

std::int64_t harmonic_dimension_by_formula(int n, int d) {
  std::int64_t total = 0;
  for (int l = 0; l <= d; ++l) total += choose(n + l - 1, l) - choose(n + l - 3, l - 2);
  return total;
}

double periodic_difference_eigenvalue(double length, int m, int j) {
  const double h = length / m;
  const double s = std::sin(std::numbers::pi * j / m);
  return 4.0 / (h * h) * s * s;
}

std::int64_t circle_count(double length, double lambda) {
  return 1 + 2 * static_cast<std::int64_t>(std::floor(length * std::sqrt(lambda) / (2.0 * std::numbers::pi)));
}

double ball_volume(int n) { return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0); }

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int m) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * m + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < m; ++p) {
      for (int q = p + 1; q < m; ++q) {
        if (at(p, q) == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < m; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < m; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> out(m);
  for (int i = 0; i < m; ++i) out[i] = at(i, i);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
