#include "coneh/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "coneh/cone_grid_verifier.hpp"
#include "coneh/cone_harmonics.hpp"
#include "coneh/cross_section.hpp"
#include "coneh/eigensolver_1d.hpp"
#include "coneh/error.hpp"
#include "coneh/exponent.hpp"
#include "coneh/growth_calculus.hpp"
#include "coneh/parallel.hpp"

namespace coneh {

namespace {

using std::numbers::pi;

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t check, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(check), static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Runs `trials` independent trials; each returns an empty string on success
// or a description of the first failure.
SelftestCheck trial_check(const std::string& name, std::uint64_t seed, std::uint64_t id, std::int64_t trials,
                          const std::function<std::string(std::mt19937_64&)>& trial) {
  SelftestCheck check;
  check.name = name;
  check.trials = trials;
  std::vector<std::string> failures;
  try {
    failures = parallel_map(static_cast<std::size_t>(trials), [&](std::size_t t) {
      auto rng = stream(seed, id, t);
      return trial(rng);
    });
  } catch (const std::exception& e) {
    check.detail = std::string("exception: ") + e.what();
    return check;
  }
  std::int64_t failed = 0;
  for (const auto& f : failures) {
    if (f.empty()) continue;
    if (failed == 0) check.detail = f;
    ++failed;
  }
  check.passed = failed == 0;
  if (failed > 0) check.detail = std::to_string(failed) + " failed; first: " + check.detail;
  return check;
}

CrossSection random_explicit(std::mt19937_64& rng, int n) {
  std::vector<SpectralEntry> e{{0, 1}};
  double lambda = 0.0;
  for (int i = 0; i < 25; ++i) {
    lambda += uniform(rng, 0.2, 4.0);
    e.push_back({lambda, std::uniform_int_distribution<std::int64_t>(1, 6)(rng)});
  }
  return CrossSection::explicit_spectrum(Spectrum(n, std::move(e), lambda + 1.0), uniform(rng, 0.5, 10));
}

ConeHarmonic random_harmonic(std::mt19937_64& rng, int max_modes, double max_alpha) {
  const int count = std::uniform_int_distribution<int>(1, max_modes)(rng);
  std::vector<Mode> modes;
  for (int i = 0; i < count; ++i) {
    double a = 0.0;
    while (a <= 0.0) a = uniform(rng, 0.0, max_alpha);
    modes.push_back({a, uniform(rng, -10, 10), i + 1});
  }
  return ConeHarmonic(2 + std::uniform_int_distribution<int>(0, 3)(rng), std::move(modes));
}

// Pascal-triangle dimension of harmonic polynomials of degree ≤ d on R^n.
std::int64_t harmonic_dimension(int n, int d) {
  std::vector<std::vector<std::int64_t>> c(n + d + 1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i].assign(i + 1, 1);
    for (std::size_t j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  auto C = [&](int a, int b) -> std::int64_t { return a < 0 || b < 0 || b > a ? 0 : c[a][b]; };
  std::int64_t total = 0;
  for (int l = 0; l <= d; ++l) total += C(n + l - 1, l) - C(n + l - 3, l - 2);
  return total;
}

std::string describe(const char* what, double got, double want) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << ": got " << got << ", expected " << want;
  return msg.str();
}

}  // namespace

bool SelftestReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SelftestCheck& c) { return c.passed; });
}

SelftestReport run_selftest(std::uint64_t seed) {
  SelftestReport report;
  report.seed = seed;
  auto& out = report.checks;

  {
    SelftestCheck c;
    c.name = "sphere_counting_equals_harmonic_dimension";
    c.trials = 5 * 51;
    c.passed = true;
    for (int n = 2; n <= 6 && c.passed; ++n) {
      const auto x = CrossSection::sphere(n - 1);
      for (int k = 0; k <= 50; ++k) {
        const auto h = hk_bounds(x, n, k);
        if (h.cone_dimension != harmonic_dimension(n, k)) {
          c.passed = false;
          c.detail = describe("cone dimension", double(h.cone_dimension), double(harmonic_dimension(n, k)));
          break;
        }
      }
    }
    out.push_back(c);
  }

  out.push_back(trial_check("circle_counting_formula", seed, 2, 2000, [](std::mt19937_64& rng) {
    const double L = uniform(rng, 0.1, 2 * pi);
    const double lambda = uniform(rng, 1e-3, 1e6);
    const auto want = 1 + 2 * static_cast<std::int64_t>(std::floor(L * std::sqrt(lambda) / (2 * pi)));
    const auto got = counting(CrossSection::circle(L), lambda);
    return got == want ? std::string() : describe("N(lambda)", double(got), double(want));
  }));

  out.push_back(trial_check("jump_equals_multiplicity", seed, 3, 200, [](std::mt19937_64& rng) {
    const int n = std::uniform_int_distribution<int>(2, 6)(rng);
    const auto x = random_explicit(rng, n);
    const Spectrum levels = spectrum_upto(x, x.certified_bound());
    for (const auto& e : levels.entries()) {
      if (counting(x, e.lambda) - counting_left(x, e.lambda) != e.multiplicity) {
        return describe("jump", double(counting(x, e.lambda) - counting_left(x, e.lambda)), double(e.multiplicity));
      }
    }
    return std::string();
  }));

  out.push_back(trial_check("exponent_round_trip", seed, 4, 2000, [](std::mt19937_64& rng) {
    const int n = std::uniform_int_distribution<int>(2, 10)(rng);
    const double alpha = uniform(rng, 0, 100);
    const double back = exponent_from_eigenvalue(eigenvalue_from_exponent(alpha, n), n);
    return std::abs(back - alpha) <= 1e-14 * std::max(alpha, 1e-300) ? std::string()
                                                                      : describe("alpha", back, alpha);
  }));

  out.push_back(trial_check("liouville_regime", seed, 5, 200, [](std::mt19937_64& rng) {
    const int n = std::uniform_int_distribution<int>(2, 6)(rng);
    const auto x = random_explicit(rng, n);
    const double l1 = *first_positive_eigenvalue(x);
    const double k = uniform(rng, 0, exponent_from_eigenvalue(l1, n));
    if (!(eigenvalue_from_exponent(k, n) < l1)) return std::string();
    const auto r = hk_bounds(x, n, k);
    return r.upper == 1 && r.exact == 1 ? std::string() : describe("h_k", double(r.upper), 1);
  }));

  out.push_back(trial_check("collapsed_reduction", seed, 6, 200, [](std::mt19937_64& rng) {
    const int n = std::uniform_int_distribution<int>(2, 6)(rng);
    const auto x = random_explicit(rng, n);
    const double k = uniform(rng, 0, exponent_from_eigenvalue(x.certified_bound(), n));
    const auto c = collapsed_bounds(x, n, n, k);
    const auto h = hk_bounds(x, n, k);
    if (c.upper != h.upper) return describe("upper", double(c.upper), double(h.upper));
    if (c.lower != h.lower) return describe("lower", double(c.lower), double(h.lower));
    return std::string();
  }));

  out.push_back(trial_check("frequency_monotone_and_identity", seed, 7, 200, [](std::mt19937_64& rng) {
    const auto u = random_harmonic(rng, 16, 10);
    double prev = -1.0;
    for (int i = 0; i < 64; ++i) {
      const double s = std::pow(10.0, -3.0 + 6.0 * i / 63.0);
      const double U = frequency(u, s);
      if (U < prev - 1e-10) return describe("U decreased to", U, prev);
      prev = U;
    }
    const double r = uniform(rng, 0.05, 5);
    const double res = frequency_identity_check(u, r, r * uniform(rng, 1.01, 100)).residual;
    return res <= 1e-8 ? std::string() : describe("identity residual", res, 1e-8);
  }));

  out.push_back(trial_check("three_circles_under_cap", seed, 8, 10000, [](std::mt19937_64& rng) {
    static const CrossSection xs[] = {CrossSection::sphere(1), CrossSection::sphere(2),
                                      CrossSection::sphere(3), CrossSection::circle(2.1)};
    const auto& x = xs[std::uniform_int_distribution<int>(0, 3)(rng)];
    const auto set = resonant_set_upto(x, 8);
    const auto top = std::uniform_int_distribution<std::size_t>(1, set.members.size() - 1)(rng);
    std::vector<Mode> modes;
    for (std::size_t i = 1; i <= top; ++i) {
      if (i == top || rng() % 2) modes.push_back({set.members[i].beta, uniform(rng, -10, 10), std::int64_t(i)});
    }
    const ConeHarmonic u(x.cone_dimension(), std::move(modes));
    const double k = set.members[top].beta + (rng() % 2 ? uniform(rng, 0, 0.2) : 0.0);
    const auto r = three_circles_ratio(u, uniform(rng, 1e-2, 1e2), k, &x);
    return r.satisfied ? std::string() : describe("ratio", r.ratio, r.bound);
  }));

  {
    SelftestCheck c;
    c.name = "eigensolver_convergence_order";
    c.trials = 20;
    c.passed = true;
    try {
      for (double L : {2 * pi, pi}) {
        std::vector<std::vector<double>> ev;
        for (std::size_t m : {256u, 512u, 1024u}) ev.push_back(eigenvalues(assemble(MetricCircle::constant(L), m), 21));
        for (int j = 1; j <= 10 && c.passed; ++j) {
          const double exact = std::pow(2 * pi * j / L, 2);
          for (int t = 0; t + 1 < 3; ++t) {
            const double ratio = std::abs(ev[t][2 * j] - exact) / std::abs(ev[t + 1][2 * j] - exact);
            if (ratio < 3.6 || ratio > 4.4) {
              c.passed = false;
              c.detail = describe("error ratio", ratio, 4.0);
              break;
            }
          }
        }
      }
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = std::string("exception: ") + e.what();
    }
    out.push_back(c);
  }

  {
    SelftestCheck c;
    c.name = "grid_convergence_order";
    c.trials = 2;
    c.passed = true;
    const std::vector<int> res{32, 64, 128, 256};
    for (auto [alpha, L] : {std::pair{1.0, 2 * pi}, std::pair{2.0, pi}}) {
      const auto r = convergence_order({alpha, 1, 1.0}, L, 1.0, 2.0, res);
      if (r.skipped || r.warning || r.order < 1.8 || r.order > 2.2) {
        c.passed = false;
        c.detail = describe("order", r.order, 2.0);
      }
    }
    out.push_back(c);
  }

  {
    SelftestCheck c;
    c.name = "grid_negative_control";
    c.trials = 3;
    c.passed = true;
    for (int m : {32, 64, 128}) {
      const auto grid = ConeGrid::sample([](double r, double) { return r * r; }, 2 * pi, 0.5, 2.0, m, m);
      const double res = laplacian_residual(grid).max_norm;
      if (!(res >= 0.1)) {
        c.passed = false;
        c.detail = describe("residual", res, 4.0);
      }
    }
    out.push_back(c);
  }
  return report;
}

}  // namespace coneh
