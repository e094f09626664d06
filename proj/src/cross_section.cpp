#include "coneh/cross_section.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "coneh/error.hpp"
#include "coneh/exponent.hpp"
#include "coneh/special_functions.hpp"
#include "coneh/spectrum_io.hpp"

namespace coneh {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Closed-form spectrum of the unit d-sphere: λ_l = l(l+d-1).
struct SphereSpectrum {
  int d;

  double eigenvalue(std::int64_t l) const {
    const auto ld = static_cast<double>(l);
    return ld * (ld + d - 1.0);
  }
  std::int64_t multiplicity(std::int64_t l) const {
    return binomial(l + d, d) - binomial(l + d - 2, d);
  }
  // Σ_{l ≤ top} mult(l), telescoped.
  std::int64_t cumulative(std::int64_t top) const {
    if (top < 0) return 0;
    return binomial(top + d, d) + binomial(top + d - 1, d);
  }
  // Largest l with λ_l ≤ lambda (lambda ≥ 0).
  std::int64_t top_at_most(double lambda) const {
    auto l = static_cast<std::int64_t>(std::floor(exponent_from_eigenvalue(lambda, d + 1)));
    while (eigenvalue(l + 1) <= lambda) ++l;
    while (l > 0 && eigenvalue(l) > lambda) --l;
    return l;
  }
  // Largest l with λ_l < lambda, or -1.
  std::int64_t top_below(double lambda) const {
    if (lambda <= 0.0) return -1;
    std::int64_t l = top_at_most(lambda);
    if (eigenvalue(l) == lambda) --l;
    return l;
  }
};

// Closed-form spectrum of a circle of length L: λ_j = (2πj/L)², mult 2 for j ≥ 1.
struct CircleSpectrum {
  double frequency;  // 2π/L

  double eigenvalue(std::int64_t j) const {
    const double w = static_cast<double>(j) * frequency;
    return w * w;
  }
  std::int64_t multiplicity(std::int64_t j) const { return j == 0 ? 1 : 2; }
  std::int64_t cumulative(std::int64_t top) const { return top < 0 ? 0 : 1 + 2 * top; }
  std::int64_t top_at_most(double lambda) const {
    auto j = static_cast<std::int64_t>(std::floor(std::sqrt(lambda) / frequency));
    while (eigenvalue(j + 1) <= lambda) ++j;
    while (j > 0 && eigenvalue(j) > lambda) --j;
    return j;
  }
  std::int64_t top_below(double lambda) const {
    if (lambda <= 0.0) return -1;
    std::int64_t j = top_at_most(lambda);
    if (eigenvalue(j) == lambda) --j;
    return j;
  }
};

const Spectrum& stored_spectrum(const CrossSection& x) {
  if (const auto* e = std::get_if<ExplicitSpectrum>(&x.variant())) return *e->spectrum;
  return std::get<MetricCircleNumeric>(x.variant()).certified->spectrum;
}

template <class F>
auto with_closed_form(const CrossSection& x, F&& f) {
  return std::visit(
      overloaded{
          [&](const RoundSphere& s) { return f(SphereSpectrum{s.dim}); },
          [&](const Circle& c) { return f(CircleSpectrum{kTwoPi / c.length}); },
          [&](const auto&) -> decltype(f(SphereSpectrum{1})) {
            throw std::logic_error("with_closed_form on a stored spectrum");
          },
      },
      x.variant());
}

void require_lambda(double lambda, const char* what) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw invalid_argument(std::string(what) + ": lambda must be a finite number >= 0");
  }
}

double parse_decimal(const std::string& text, const std::string& context) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw invalid_argument(context + ": not a number: '" + text + "'");
  }
  if (used != text.size()) throw invalid_argument(context + ": trailing characters in '" + text + "'");
  return value;
}

}  // namespace

CrossSection CrossSection::sphere(int dim) {
  if (dim < 1) throw invalid_argument("sphere: dimension must be >= 1");
  return CrossSection(RoundSphere{dim});
}

CrossSection CrossSection::circle(double length) {
  if (!(length > 0.0) || length > kTwoPi * (1.0 + 1e-15)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "circle: length " << length << " must lie in (0, 2*pi]";
    throw invalid_argument(msg.str());
  }
  return CrossSection(Circle{length});
}

CrossSection CrossSection::metric_circle(MetricCircle circle, double lambda_max,
                                         const CertificationOptions& options) {
  auto certified = std::make_shared<const CertifiedSpectrum>(certified_spectrum(circle, lambda_max, options));
  return CrossSection(MetricCircleNumeric{std::make_shared<const MetricCircle>(std::move(circle)),
                                          std::move(certified)});
}

CrossSection CrossSection::explicit_spectrum(Spectrum spectrum, double measure) {
  if (!(measure > 0.0)) throw invalid_argument("explicit spectrum: measure must be positive");
  return CrossSection(ExplicitSpectrum{std::make_shared<const Spectrum>(std::move(spectrum)), measure});
}

int CrossSection::cone_dimension() const noexcept {
  return std::visit(overloaded{
                        [](const RoundSphere& s) { return s.dim + 1; },
                        [](const Circle&) { return 2; },
                        [](const MetricCircleNumeric&) { return 2; },
                        [](const ExplicitSpectrum& e) { return e.spectrum->ambient_dim(); },
                    },
                    variant_);
}

double CrossSection::certified_bound() const noexcept {
  if (is_closed_form()) return std::numeric_limits<double>::infinity();
  return stored_spectrum(*this).truncation_bound();
}

bool CrossSection::is_closed_form() const noexcept {
  return std::holds_alternative<RoundSphere>(variant_) || std::holds_alternative<Circle>(variant_);
}

std::string CrossSection::describe() const {
  std::ostringstream out;
  out.precision(17);
  std::visit(overloaded{
                 [&](const RoundSphere& s) { out << "sphere:" << s.dim; },
                 [&](const Circle& c) { out << "circle:" << c.length; },
                 [&](const MetricCircleNumeric& m) {
                   out << "metric-circle(length=" << m.circle->total_length()
                       << ", certified_to=" << m.certified->spectrum.truncation_bound() << ")";
                 },
                 [&](const ExplicitSpectrum& e) {
                   out << "spectrum(n=" << e.spectrum->ambient_dim()
                       << ", entries=" << e.spectrum->size() << ")";
                 },
             },
             variant_);
  return out.str();
}

std::vector<double> CrossSection::error_bars() const {
  if (const auto* m = std::get_if<MetricCircleNumeric>(&variant_)) return m->certified->error_bars;
  return {};
}

Spectrum spectrum_upto(const CrossSection& x, double lambda_max) {
  if (!(lambda_max > 0.0)) throw invalid_argument("spectrum_upto: lambda_max must be > 0");
  if (!x.is_closed_form()) return stored_spectrum(x).truncated(lambda_max);
  return with_closed_form(x, [&](const auto& closed) {
    std::vector<SpectralEntry> entries;
    for (std::int64_t l = 0; closed.eigenvalue(l) <= lambda_max; ++l) {
      entries.push_back({closed.eigenvalue(l), closed.multiplicity(l)});
    }
    return Spectrum(x.cone_dimension(), std::move(entries), lambda_max);
  });
}

std::int64_t counting(const CrossSection& x, double lambda) {
  require_lambda(lambda, "counting");
  if (!x.is_closed_form()) return stored_spectrum(x).count(lambda);
  return with_closed_form(x, [&](const auto& closed) { return closed.cumulative(closed.top_at_most(lambda)); });
}

std::int64_t counting_left(const CrossSection& x, double lambda) {
  require_lambda(lambda, "counting_left");
  if (!x.is_closed_form()) return stored_spectrum(x).count_below(lambda);
  return with_closed_form(x, [&](const auto& closed) { return closed.cumulative(closed.top_below(lambda)); });
}

double measure(const CrossSection& x) {
  return std::visit(overloaded{
                        [](const RoundSphere& s) { return unit_sphere_measure(s.dim); },
                        [](const Circle& c) { return c.length; },
                        [](const MetricCircleNumeric& m) { return m.circle->total_length(); },
                        [](const ExplicitSpectrum& e) { return e.measure; },
                    },
                    x.variant());
}

SpectralEntry eigenvalue_at_most(const CrossSection& x, double lambda) {
  require_lambda(lambda, "eigenvalue_at_most");
  if (!x.is_closed_form()) return stored_spectrum(x).at_most(lambda);
  return with_closed_form(x, [&](const auto& closed) {
    const std::int64_t top = closed.top_at_most(lambda);
    return SpectralEntry{closed.eigenvalue(top), closed.multiplicity(top)};
  });
}

std::optional<SpectralEntry> eigenvalue_above(const CrossSection& x, double lambda) {
  require_lambda(lambda, "eigenvalue_above");
  if (!x.is_closed_form()) return stored_spectrum(x).above(lambda);
  return with_closed_form(x, [&](const auto& closed) -> std::optional<SpectralEntry> {
    const std::int64_t next = closed.top_at_most(lambda) + 1;
    return SpectralEntry{closed.eigenvalue(next), closed.multiplicity(next)};
  });
}

std::optional<double> first_positive_eigenvalue(const CrossSection& x) {
  auto next = eigenvalue_above(x, 0.0);
  if (!next) return std::nullopt;
  return next->lambda;
}

std::vector<double> ResonantSet::exponents() const {
  std::vector<double> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.beta);
  return out;
}

ResonantSet resonant_set_upto(const CrossSection& x, double beta_max) {
  if (!(beta_max >= 0.0)) throw invalid_argument("resonant_set_upto: beta_max must be >= 0");
  const int n = x.cone_dimension();
  double lambda_max = eigenvalue_from_exponent(beta_max, n);
  // Round-trip rounding through the exponent map may land a hair past the bound.
  if (lambda_max > x.certified_bound() && lambda_max <= x.certified_bound() * (1.0 + 1e-14)) {
    lambda_max = x.certified_bound();
  }
  if (lambda_max > x.certified_bound()) {
    std::ostringstream msg;
    msg << "resonant_set_upto: beta_max=" << beta_max << " needs eigenvalues up to " << lambda_max
        << " but the spectrum is certified only to " << x.certified_bound();
    throw ResolutionInsufficient(msg.str(), x.certified_bound());
  }
  ResonantSet out;
  if (lambda_max == 0.0) {
    out.members.push_back({0.0, 0.0, 1});
    return out;
  }
  const Spectrum levels = spectrum_upto(x, lambda_max);
  for (const auto& e : levels.entries()) {
    out.members.push_back({exponent_from_eigenvalue(e.lambda, n), e.lambda, e.multiplicity});
  }
  return out;
}

ResonanceCheck is_resonant(const CrossSection& x, double k, double tol) {
  if (!(tol >= 0.0)) throw invalid_argument("is_resonant: tol must be >= 0");
  if (!(k >= 0.0)) throw invalid_argument("is_resonant: k must be >= 0");
  const int n = x.cone_dimension();
  const double lambda = eigenvalue_from_exponent(k, n);
  if (lambda > x.certified_bound()) {
    std::ostringstream msg;
    msg << "is_resonant: k=" << k << " needs eigenvalues up to " << lambda
        << " but the spectrum is certified only to " << x.certified_bound();
    throw ResolutionInsufficient(msg.str(), x.certified_bound());
  }
  const SpectralEntry below = eigenvalue_at_most(x, lambda);
  ResonantExponent nearest{exponent_from_eigenvalue(below.lambda, n), below.lambda, below.multiplicity};
  double distance = k - nearest.beta;
  if (auto above = eigenvalue_above(x, lambda)) {
    const double beta = exponent_from_eigenvalue(above->lambda, n);
    if (beta - k < distance) {
      nearest = {beta, above->lambda, above->multiplicity};
      distance = beta - k;
    }
  }
  return {distance <= tol, nearest, distance};
}

CrossSection parse_cross_section(const std::string& descriptor, double lambda_max) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos) {
    throw invalid_argument("cross-section must be sphere:<d> | circle:<L> | metric-circle:<file> | spectrum:<file>");
  }
  const std::string kind = descriptor.substr(0, colon);
  const std::string arg = descriptor.substr(colon + 1);
  if (kind == "sphere") {
    const double d = parse_decimal(arg, "sphere");
    if (d != std::floor(d)) throw invalid_argument("sphere: dimension must be an integer");
    return CrossSection::sphere(static_cast<int>(d));
  }
  if (kind == "circle") return CrossSection::circle(parse_decimal(arg, "circle"));
  if (kind == "metric-circle") return CrossSection::metric_circle(load_density_file(arg), lambda_max);
  if (kind == "spectrum") {
    auto file = load_spectrum_file(arg);
    return CrossSection::explicit_spectrum(std::move(file.spectrum), file.measure);
  }
  throw invalid_argument("unknown cross-section kind '" + kind + "'");
}

}  // namespace coneh
