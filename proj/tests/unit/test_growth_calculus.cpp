#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "coneh/error.hpp"
#include "coneh/exponent.hpp"
#include "coneh/growth_calculus.hpp"
#include "oracles.hpp"

using namespace coneh;
using std::numbers::pi;

namespace {

CrossSection random_explicit(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> gap(0.3, 5.0);
  std::uniform_int_distribution<int> mult(1, 6);
  std::vector<SpectralEntry> e{{0, 1}};
  double lambda = 0.0;
  for (int i = 0; i < 30; ++i) {
    lambda += gap(rng);
    e.push_back({lambda, mult(rng)});
  }
  return CrossSection::explicit_spectrum(Spectrum(n, e, lambda + 1), 1.0 + gap(rng));
}

}  // namespace

TEST_CASE("hk_bounds examples") {
  auto r = hk_bounds(CrossSection::circle(2 * pi), 2, 2.5);
  CHECK(r.lower == 5);
  CHECK(r.upper == 5);
  REQUIRE(r.exact.has_value());
  CHECK(*r.exact == 5);

  r = hk_bounds(CrossSection::sphere(2), 3, 2);
  CHECK(r.lower == 4);
  CHECK(r.upper == 9);
  CHECK(!r.exact.has_value());
  CHECK(r.resonant);
  CHECK(r.cone_dimension == 9);

  r = hk_bounds(CrossSection::circle(pi), 2, 1.5);
  CHECK(r.lower == 1);
  CHECK(r.upper == 1);
  REQUIRE(r.exact.has_value());
  CHECK(*r.exact == 1);
  CHECK(r.liouville);

  CHECK_THROWS_AS(hk_bounds(CrossSection::sphere(2), 2, 1.0), Error);
}

TEST_CASE("hk_staircase examples") {
  auto s = hk_staircase(CrossSection::circle(2 * pi), 2, 2.5);
  REQUIRE(s.size() == 3);
  CHECK(s[0].h == 1);
  CHECK(s[0].k_hi == 1.0);
  CHECK(s[1].h == 3);
  CHECK(s[1].lo_closed);
  CHECK(s[1].jump == 2);
  CHECK(s[2].h == 5);
  CHECK(s[2].k_hi == 2.5);
  CHECK(s[2].hi_closed);

  s = hk_staircase(CrossSection::circle(pi), 2, 1.9);
  REQUIRE(s.size() == 1);
  CHECK(s[0].h == 1);

  s = hk_staircase(CrossSection::sphere(2), 3, 1.5);
  REQUIRE(s.size() == 2);
  CHECK(s[0].h == 1);
  CHECK(s[1].h == 4);
  CHECK(s[1].k_lo == 1.0);
}

TEST_CASE("asymptotic ratio examples") {
  for (int n = 2; n <= 8; ++n) {
    double fact = 1;
    for (int i = 2; i <= n - 1; ++i) fact *= i;
    CHECK(asymptotic_ratio(CrossSection::sphere(n - 1), n) == doctest::Approx(2 / fact).epsilon(1e-14));
    CHECK(asymptotic_volume_ratio(CrossSection::sphere(n - 1), n) ==
          doctest::Approx(oracle::ball_volume(n)).epsilon(1e-14));
  }
  CHECK(asymptotic_ratio(CrossSection::circle(pi), 2) == doctest::Approx(1).epsilon(1e-15));
  CHECK(asymptotic_ratio(CrossSection::circle(2 * pi), 2) == doctest::Approx(2).epsilon(1e-15));
  CHECK(cesaro_limit(CrossSection::sphere(1), 2) == doctest::Approx(1).epsilon(1e-15));
}

TEST_CASE("empirical ratio examples") {
  const double k1[] = {1e4 + 0.5};
  auto r = empirical_ratio_convergence(CrossSection::circle(2 * pi), 2, k1);
  CHECK(r[0].pointwise_ratio == doctest::Approx(20001.0 / (1e4 + 0.5)).epsilon(1e-15));
  CHECK(r[0].pointwise_deviation <= 1e-4);
  const double k2[] = {1e4 + 0.25};
  r = empirical_ratio_convergence(CrossSection::circle(pi), 2, k2);
  CHECK(std::abs(r[0].pointwise_ratio - 1) <= 1e-4);
  const double k3[] = {1e3};
  r = empirical_ratio_convergence(CrossSection::sphere(1), 2, k3);
  CHECK(r[0].cesaro_ratio == doctest::Approx(1).epsilon(1e-14));
}

TEST_CASE("weyl examples") {
  auto w = weyl_ratio(CrossSection::sphere(2), 3, 1e4);
  CHECK(w.limit == doctest::Approx(1).epsilon(1e-14));
  CHECK(w.deviation <= 0.03);
  w = weyl_ratio(CrossSection::circle(1.5), 2, 1e6);
  CHECK(w.limit == doctest::Approx(1.5 / pi).epsilon(1e-14));
  CHECK(w.deviation <= 0.03);
  w = weyl_ratio(CrossSection::circle(pi), 2, 2.0);
  CHECK(w.count == 1);
  CHECK(w.ratio == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-15));
}

TEST_CASE("collapsed examples") {
  const auto c = collapsed_bounds(CrossSection::circle(pi), 3, 2, 2.25);
  CHECK(c.upper_argument == doctest::Approx(7.5625).epsilon(1e-15));
  CHECK(c.upper == 3);
  CHECK(c.limit_ratio == 1.0);
  CHECK_THROWS_AS(collapsed_bounds(CrossSection::circle(pi), 3, 4, 1.0), Error);
  CHECK_THROWS_AS(collapsed_bounds(CrossSection::circle(pi), 3, 1, 1.0), Error);
  const auto same = collapsed_bounds(CrossSection::sphere(2), 3, 3, 2.5);
  const auto hk = hk_bounds(CrossSection::sphere(2), 3, 2.5);
  CHECK(same.upper_argument == eigenvalue_from_exponent(2.5, 3));
  CHECK(same.upper == hk.upper);
  CHECK(same.lower == hk.lower);
}

TEST_CASE("property: report invariants") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 5;
    const auto x = random_explicit(rng, n);
    const double top = exponent_from_eigenvalue(x.certified_bound(), n);
    const double k = top * unit(rng);
    const auto r = hk_bounds(x, n, k);
    CHECK(r.lower <= r.upper);
    CHECK(r.lower >= 1);
    if (r.exact) {
      CHECK(r.lower == r.upper);
      CHECK(*r.exact == r.upper);
    }
    if (r.resonant && !r.liouville && r.nearest_resonance > 0) {
      const double lambda = eigenvalue_from_exponent(r.nearest_resonance, n);
      CHECK(r.upper - r.lower == counting(x, lambda) - counting_left(x, lambda));
    }
    // Exactly at a resonance, the gap is the multiplicity.
    const auto set = resonant_set_upto(x, top);
    const auto& m = set.members[1 + trial % (set.members.size() - 1)];
    const auto at = hk_bounds(x, n, m.beta);
    CHECK(at.resonant);
    CHECK(!at.exact.has_value());
    CHECK(at.upper - at.lower == m.multiplicity);
  }
}

TEST_CASE("property: upper bound is nondecreasing and jumps only at resonances") {
  for (const auto& x : {CrossSection::sphere(2), CrossSection::circle(1.1), CrossSection::sphere(4)}) {
    const int n = x.cone_dimension();
    const auto set = resonant_set_upto(x, 10);
    std::int64_t prev = 1;
    double prev_k = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double k = 0.005 * i;
      const auto r = hk_bounds(x, n, k);
      CHECK(r.upper >= prev);
      if (r.upper != prev) {
        // Some resonance lies in (prev_k, k], and the jump is its total multiplicity.
        std::int64_t jump = 0;
        for (const auto& m : set.members) {
          if (m.beta > prev_k && m.beta <= k) jump += m.multiplicity;
        }
        CHECK(jump == r.upper - prev);
      }
      prev = r.upper;
      prev_k = k;
    }
    for (const auto& step : hk_staircase(x, n, 10)) {
      if (step.lo_closed) {
        const double lambda = eigenvalue_from_exponent(step.k_lo, n);
        CHECK(step.jump == counting(x, lambda) - counting_left(x, lambda));
      }
    }
  }
}

TEST_CASE("property: Liouville regime") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 4;
    const auto x = random_explicit(rng, n);
    const double l1 = *first_positive_eigenvalue(x);
    std::uniform_real_distribution<double> kd(0, exponent_from_eigenvalue(l1, n));
    const double k = kd(rng);
    if (!(eigenvalue_from_exponent(k, n) < l1)) continue;
    const auto r = hk_bounds(x, n, k);
    CHECK(r.upper == 1);
    CHECK(r.exact == 1);
  }
}

TEST_CASE("property: collapsed reduction at m = n") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    const auto x = trial % 2 ? random_explicit(rng, n) : CrossSection::sphere(n - 1);
    const double k = 12 * unit(rng) * (trial % 2 ? exponent_from_eigenvalue(x.certified_bound(), n) / 12 : 1.0);
    const auto c = collapsed_bounds(x, n, n, k);
    const auto h = hk_bounds(x, n, k);
    CHECK(c.upper == h.upper);
    CHECK(c.lower == h.lower);
  }
}

TEST_CASE("acceptance-scale ratios") {
  for (double L : {pi / 2, pi, 2 * pi}) {
    const double k[] = {1e4 + 0.37};
    const auto r = empirical_ratio_convergence(CrossSection::circle(L), 2, k);
    CHECK(!r[0].resonant);
    CHECK(r[0].pointwise_deviation <= 1e-3);
    CHECK(r[0].pointwise_limit == doctest::Approx(L / pi).epsilon(1e-15));
  }
  const double ks[] = {1e3 + 0.5};
  CHECK(empirical_ratio_convergence(CrossSection::sphere(2), 3, ks)[0].pointwise_deviation <= 5e-3);
}
