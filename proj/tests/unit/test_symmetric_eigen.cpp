#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "coneh/error.hpp"
#include "coneh/symmetric_eigen.hpp"
#include "oracles.hpp"

using namespace coneh;

namespace {

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("tridiagonal QL against Jacobi") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int m : {1, 2, 3, 7, 20, 41}) {
    std::vector<double> d(m), e(m > 0 ? m - 1 : 0), dense(m * m, 0.0);
    for (int i = 0; i < m; ++i) dense[i * m + i] = d[i] = u(rng);
    for (int i = 0; i + 1 < m; ++i) dense[i * m + i + 1] = dense[(i + 1) * m + i] = e[i] = u(rng);
    CHECK(max_diff(tridiagonal_eigenvalues(d, e), oracle::jacobi_eigenvalues(dense, m)) <= 1e-12 * 6 * m);
  }
}

TEST_CASE("dense Householder route against Jacobi") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int m : {2, 5, 16, 33}) {
    std::vector<double> a(m * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j <= i; ++j) a[i * m + j] = a[j * m + i] = u(rng);
    CHECK(max_diff(dense_symmetric_eigenvalues(a, m), oracle::jacobi_eigenvalues(a, m)) <= 1e-12 * m);
  }
}

TEST_CASE("periodic banded route against dense") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.5, 2);
  for (int m : {3, 4, 5, 8, 17, 64, 128}) {
    std::vector<double> d(m), c(m), dense(m * m, 0.0);
    for (int i = 0; i < m; ++i) c[i] = -u(rng);
    for (int i = 0; i < m; ++i) {
      d[i] = 4.0 * u(rng);
      dense[i * m + i] += d[i];
      const int j = (i + 1) % m;
      dense[i * m + j] += c[i];
      dense[j * m + i] += c[i];
    }
    const auto band = periodic_tridiagonal_eigenvalues(d, c);
    const auto ref = oracle::jacobi_eigenvalues(dense, m);
    CHECK(max_diff(band, ref) <= 1e-12 * 16 * m);
    CHECK(max_diff(band, dense_symmetric_eigenvalues(dense, m)) <= 1e-12 * 16 * m);
  }
  CHECK_THROWS_AS(periodic_tridiagonal_eigenvalues(std::vector<double>{1, 2}, std::vector<double>{1, 1}), Error);
}

TEST_CASE("closed-form periodic second difference") {
  const int m = 256;
  std::vector<double> d(m, 2.0), c(m, -1.0);
  const auto ev = periodic_tridiagonal_eigenvalues(d, c);
  std::vector<double> expected;
  for (int j = 0; j < m; ++j) expected.push_back(oracle::periodic_difference_eigenvalue(m, m, j));
  std::sort(expected.begin(), expected.end());
  CHECK(max_diff(ev, expected) <= 1e-12 * 4);
}
