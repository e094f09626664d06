#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "coneh/error.hpp"
#include "coneh/exponent.hpp"
#include "coneh/special_functions.hpp"
#include "coneh/spectrum.hpp"
#include "coneh/spectrum_io.hpp"
#include "oracles.hpp"

using namespace coneh;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::invalid_argument;
}

}  // namespace

TEST_CASE("unit ball volume matches tgamma") {
  CHECK(unit_ball_volume(2) == std::numbers::pi);
  for (int n = 0; n <= 12; ++n) {
    CHECK(unit_ball_volume(n) == doctest::Approx(oracle::ball_volume(n)).epsilon(1e-14));
  }
  CHECK(unit_sphere_measure(2) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(unit_sphere_measure(1) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(-1, 0) == 0);
  CHECK(binomial(60, 30) == 118264581564861424LL);
  CHECK_THROWS_AS(binomial(200, 100), Error);
}

TEST_CASE("exponent map examples and round trip") {
  CHECK(exponent_from_eigenvalue(0.0, 5) == 0.0);
  CHECK(exponent_from_eigenvalue(2.0, 3) == 1.0);
  CHECK(exponent_from_eigenvalue(4.0, 2) == 2.0);
  CHECK(eigenvalue_from_exponent(1.0, 3) == 2.0);
  CHECK(eigenvalue_from_exponent(0.0, 7) == 0.0);
  CHECK(kind_of([] { exponent_from_eigenvalue(-1.0, 3); }) == ErrorKind::invalid_argument);
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    for (int i = 0; i <= 1000; ++i) {
      const double alpha = 0.1 * i;
      const double back = exponent_from_eigenvalue(eigenvalue_from_exponent(alpha, n), n);
      worst = std::max(worst, std::abs(back - alpha) / std::max(alpha, 1e-300));
    }
  }
  CHECK(worst <= 1e-14);
  // Integer eigenvalues of spheres invert exactly.
  for (int d = 1; d <= 6; ++d) {
    for (int l = 0; l <= 200; ++l) CHECK(exponent_from_eigenvalue(double(l) * (l + d - 1), d + 1) == l);
  }
}

TEST_CASE("Spectrum invariants") {
  Spectrum s(3, {{0, 1}, {2, 3}, {6, 5}}, 7.0);
  CHECK(s.count(0) == 1);
  CHECK(s.count(6) == 9);
  CHECK(s.count_below(6) == 4);
  CHECK(s.count(6.9) == 9);
  CHECK(s.first_positive() == 2.0);
  CHECK(s.at_most(5.9).lambda == 2.0);
  CHECK(!s.above(6.5).has_value());
  CHECK(s.above(2.0)->lambda == 6.0);
  CHECK(kind_of([&] { (void)s.count(8.0); }) == ErrorKind::resolution_insufficient);
  CHECK(s.truncated(3.0).size() == 2);

  CHECK_THROWS(Spectrum(3, {{0, 2}}, 1.0));
  CHECK_THROWS(Spectrum(3, {{1, 1}}, 1.0));
  CHECK_THROWS(Spectrum(3, {{0, 1}, {2, 1}, {1, 1}}, 3.0));
  CHECK_THROWS(Spectrum(3, {{0, 1}, {2, 0}}, 3.0));
  CHECK_THROWS(Spectrum(3, {{0, 1}, {4, 1}}, 3.0));
  CHECK_THROWS(Spectrum(1, {{0, 1}}, 3.0));
}

TEST_CASE("clustering") {
  const std::vector<double> v{0.0, 1.0, 1.0 + 1e-10, 4.0, 4.0 + 4e-9, 4.1};
  const auto groups = cluster_eigenvalues(v);
  REQUIRE(groups.size() == 4);
  CHECK(groups[1].multiplicity == 2);
  CHECK(groups[2].multiplicity == 2);
  CHECK(groups[2].lambda == doctest::Approx(4.0 + 2e-9).epsilon(1e-15));
  CHECK(groups[3].multiplicity == 1);
  CHECK(cluster_starts(v) == std::vector<std::size_t>{0, 1, 3, 5});
}

TEST_CASE("spectrum JSON round trip") {
  Spectrum s(3, {{0, 1}, {2, 3}, {6, 5}}, 7.0);
  const std::string text = spectrum_to_json(s, 4.0 * std::numbers::pi, {0, 1e-7, 2e-7}).dump(2);
  const SpectrumFile f = parse_spectrum_json(text);
  CHECK(f.spectrum.ambient_dim() == 3);
  CHECK(f.spectrum.size() == 3);
  CHECK(f.spectrum.entries()[2].multiplicity == 5);
  CHECK(f.measure == 4.0 * std::numbers::pi);
  CHECK(f.error_bars.size() == 3);
  CHECK(f.spectrum.truncation_bound() == 7.0);
}

TEST_CASE("spectrum loader rejects bad input with a line number") {
  const std::string unsorted =
      "{\n"
      "  \"ambient_dim\": 2,\n"
      "  \"measure\": 3.0,\n"
      "  \"truncation_bound\": 10,\n"
      "  \"entries\": [\n"
      "    {\"lambda\": 0, \"mult\": 1},\n"
      "    {\"lambda\": 4, \"mult\": 2},\n"
      "    {\"lambda\": 1, \"mult\": 2}\n"
      "  ]\n"
      "}\n";
  try {
    parse_spectrum_json(unsorted);
    FAIL("accepted unsorted spectrum");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse_error);
    CHECK(std::string(e.what()).find("line 8") != std::string::npos);
  }
  const std::string nonzero =
      "{\"ambient_dim\": 2, \"measure\": 3.0, \"truncation_bound\": 10,\n"
      " \"entries\": [\n"
      "  {\"lambda\": 1, \"mult\": 1}]}\n";
  try {
    parse_spectrum_json(nonzero);
    FAIL("accepted lambda0 != 0");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse_error);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    parse_spectrum_json("{\n\"ambient_dim\": 2,\n oops }");
    FAIL("accepted malformed JSON");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse_error);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(line_of_offset("a\nb\nc", 4) == 3);
}
