#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "coneh/cross_section.hpp"
#include "coneh/error.hpp"
#include "coneh/exponent.hpp"
#include "oracles.hpp"

using namespace coneh;
using std::numbers::pi;

namespace {

std::vector<SpectralEntry> entries(const Spectrum& s) { return {s.entries().begin(), s.entries().end()}; }

}  // namespace

TEST_CASE("spectrum_upto examples") {
  CHECK(entries(spectrum_upto(CrossSection::sphere(2), 7)) ==
        std::vector<SpectralEntry>{{0, 1}, {2, 3}, {6, 5}});
  CHECK(entries(spectrum_upto(CrossSection::circle(2 * pi), 4.5)) ==
        std::vector<SpectralEntry>{{0, 1}, {1, 2}, {4, 2}});
  const auto s = entries(spectrum_upto(CrossSection::circle(pi), 17));
  REQUIRE(s.size() == 3);
  CHECK(s[1].lambda == doctest::Approx(4).epsilon(1e-15));
  CHECK(s[2].lambda == doctest::Approx(16).epsilon(1e-15));
  CHECK(s[2].multiplicity == 2);
  CHECK_THROWS_AS(spectrum_upto(CrossSection::sphere(2), 0.0), Error);
}

TEST_CASE("sphere multiplicities match the harmonic polynomial rank oracle") {
  for (int d = 1; d <= 4; ++d) {
    const auto s = entries(spectrum_upto(CrossSection::sphere(d), 8.0 * (8 + d - 1)));
    std::int64_t prev = 0;
    for (int l = 0; l <= 8; ++l) {
      const std::int64_t dim = oracle::harmonic_dimension_by_rank(d + 1, l);
      CHECK(s[l].multiplicity == dim - prev);
      prev = dim;
    }
  }
}

TEST_CASE("counting examples") {
  CHECK(counting(CrossSection::sphere(2), 6) == 9);
  CHECK(counting(CrossSection::circle(2 * pi), 0) == 1);
  CHECK(counting(CrossSection::circle(pi), 5) == 3);
  CHECK(counting_left(CrossSection::circle(2 * pi), 4) == 3);
  CHECK(counting_left(CrossSection::sphere(2), 6) == 4);
  CHECK(counting_left(CrossSection::circle(pi), 5) == 3);
  CHECK(counting_left(CrossSection::circle(pi), 0) == 0);
}

TEST_CASE("measure examples") {
  CHECK(measure(CrossSection::sphere(2)) == doctest::Approx(4 * pi).epsilon(1e-15));
  CHECK(measure(CrossSection::circle(pi)) == pi);
  CHECK(measure(CrossSection::sphere(1)) == doctest::Approx(2 * pi).epsilon(1e-15));
}

TEST_CASE("resonant set examples") {
  CHECK(resonant_set_upto(CrossSection::circle(2 * pi), 2.5).exponents() == std::vector<double>{0, 1, 2});
  CHECK(resonant_set_upto(CrossSection::sphere(2), 2.2).exponents() == std::vector<double>{0, 1, 2});
  CHECK(resonant_set_upto(CrossSection::circle(pi), 1.9).exponents() == std::vector<double>{0});
}

TEST_CASE("is_resonant examples") {
  auto r = is_resonant(CrossSection::circle(2 * pi), 2.0, 1e-9);
  CHECK(r.resonant);
  CHECK(r.nearest.beta == 2.0);
  r = is_resonant(CrossSection::circle(2 * pi), 2.5, 1e-9);
  CHECK(!r.resonant);
  CHECK(r.nearest.beta == 2.0);
  r = is_resonant(CrossSection::sphere(2), 0.999999, 1e-3);
  CHECK(r.resonant);
  CHECK(r.nearest.beta == 1.0);
}

TEST_CASE("circle validation") {
  CHECK_THROWS_AS(CrossSection::circle(7.0), Error);
  CHECK_THROWS_AS(CrossSection::circle(0.0), Error);
  CHECK_NOTHROW(CrossSection::circle(2 * pi));
  CHECK_THROWS_AS(CrossSection::sphere(0), Error);
}

TEST_CASE("property: jump at each eigenvalue equals its multiplicity") {
  for (const auto& x : {CrossSection::sphere(1), CrossSection::sphere(2), CrossSection::sphere(4),
                        CrossSection::circle(pi), CrossSection::circle(1.3)}) {
    const Spectrum s = spectrum_upto(x, 500);
    std::int64_t prev = 0;
    for (const auto& e : s.entries()) {
      CHECK(counting(x, e.lambda) - counting_left(x, e.lambda) == e.multiplicity);
      CHECK(counting_left(x, e.lambda) == prev);
      prev = counting(x, e.lambda);
    }
  }
}

TEST_CASE("property: sphere counting equals harmonic polynomial dimension") {
  for (int n = 2; n <= 6; ++n) {
    const auto x = CrossSection::sphere(n - 1);
    for (int k = 0; k <= 50; ++k) {
      const double level = double(k) * (k + n - 2);
      CHECK(counting(x, level) == oracle::harmonic_dimension_by_formula(n, k));
      if (k <= 8 && n <= 4) CHECK(counting(x, level) == oracle::harmonic_dimension_by_rank(n, k));
    }
  }
}

TEST_CASE("property: circle counting formula on random samples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> len(0.1, 2 * pi);
  std::uniform_real_distribution<double> lam(1e-3, 1e5);
  for (int trial = 0; trial < 2000; ++trial) {
    const double L = len(rng);
    const double lambda = lam(rng);
    const auto x = CrossSection::circle(L);
    CHECK(counting(x, lambda) == oracle::circle_count(L, lambda));
  }
}

TEST_CASE("property: resonant set members map back into the spectrum") {
  for (const auto& x : {CrossSection::sphere(2), CrossSection::sphere(3), CrossSection::circle(1.7)}) {
    const int n = x.cone_dimension();
    const double b = 12.5;
    const auto set = resonant_set_upto(x, b);
    std::int64_t total = 0;
    for (const auto& m : set.members) {
      CHECK(counting(x, m.eigenvalue) - counting_left(x, m.eigenvalue) == m.multiplicity);
      CHECK(eigenvalue_from_exponent(m.beta, n) == doctest::Approx(m.eigenvalue).epsilon(1e-14));
      total += m.multiplicity;
    }
    CHECK(total == counting(x, eigenvalue_from_exponent(b, n)));
  }
}

TEST_CASE("explicit spectrum") {
  Spectrum s(4, {{0, 1}, {3, 2}, {10, 7}}, 12.0);
  const auto x = CrossSection::explicit_spectrum(s, 5.0);
  CHECK(x.cone_dimension() == 4);
  CHECK(measure(x) == 5.0);
  CHECK(counting(x, 10) == 10);
  CHECK(first_positive_eigenvalue(x) == 3.0);
  CHECK_THROWS_AS(counting(x, 13), ResolutionInsufficient);
  CHECK_THROWS_AS(CrossSection::explicit_spectrum(s, -1.0), Error);
}

TEST_CASE("parse_cross_section grammar") {
  CHECK(parse_cross_section("sphere:2", 10).cone_dimension() == 3);
  CHECK(std::get<Circle>(parse_cross_section("circle:3.14159265358979", 10).variant()).length == 3.14159265358979);
  CHECK_THROWS_AS(parse_cross_section("torus:1", 10), Error);
  CHECK_THROWS_AS(parse_cross_section("circle:abc", 10), Error);
  CHECK_THROWS_AS(parse_cross_section("sphere:1.5", 10), Error);
}
