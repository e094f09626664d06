#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coneh/eigensolver_1d.hpp"
#include "coneh/spectrum.hpp"

namespace coneh {

struct RoundSphere {
  int dim;  // d = n - 1
};

struct Circle {
  double length;  // L ∈ (0, 2π]
};

struct MetricCircleNumeric {
  std::shared_ptr<const MetricCircle> circle;
  std::shared_ptr<const CertifiedSpectrum> certified;
};

/// A spectrum supplied by the caller. No curvature condition on the
/// underlying space is checked; admissibility as the cross-section of a
/// nonnegatively curved cone is the caller's responsibility.
struct ExplicitSpectrum {
  std::shared_ptr<const Spectrum> spectrum;
  double measure;
};

/// A cross-section (X, d_X, m_X) of a Euclidean cone C(X). Immutable.
class CrossSection {
 public:
  using Variant = std::variant<RoundSphere, Circle, MetricCircleNumeric, ExplicitSpectrum>;

  static CrossSection sphere(int dim);
  static CrossSection circle(double length);
  /// Certifies the spectrum of `circle` up to lambda_max at construction.
  static CrossSection metric_circle(MetricCircle circle, double lambda_max,
                                    const CertificationOptions& options = {});
  static CrossSection explicit_spectrum(Spectrum spectrum, double measure);

  const Variant& variant() const noexcept { return variant_; }

  /// n = dim(X) + 1, the dimension of the cone.
  int cone_dimension() const noexcept;
  /// Eigenvalues up to this bound are guaranteed complete (∞ for closed forms).
  double certified_bound() const noexcept;
  bool is_closed_form() const noexcept;
  std::string describe() const;

  /// Error bars of a numeric spectrum, one per entry; empty for exact data.
  std::vector<double> error_bars() const;

 private:
  explicit CrossSection(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

Spectrum spectrum_upto(const CrossSection& x, double lambda_max);

/// N_X(λ) = #{i : λ_i ≤ λ}, with multiplicity, including λ₀ = 0.
std::int64_t counting(const CrossSection& x, double lambda);
/// #{i : λ_i < λ}.
std::int64_t counting_left(const CrossSection& x, double lambda);

/// ℋ^{n-1}(X).
double measure(const CrossSection& x);

/// Largest eigenvalue ≤ λ, with its multiplicity.
SpectralEntry eigenvalue_at_most(const CrossSection& x, double lambda);
/// Smallest eigenvalue > λ; empty if it is not certified.
std::optional<SpectralEntry> eigenvalue_above(const CrossSection& x, double lambda);

/// λ₁, the first nonzero eigenvalue (empty if beyond a numeric bound).
std::optional<double> first_positive_eigenvalue(const CrossSection& x);

struct ResonantExponent {
  double beta;
  double eigenvalue;
  std::int64_t multiplicity;
};

/// The resonant set 𝒟_X ∩ [0, beta_max], each β obtained by inverting a
/// stored eigenvalue through the exponent map.
struct ResonantSet {
  std::vector<ResonantExponent> members;

  std::vector<double> exponents() const;
};

ResonantSet resonant_set_upto(const CrossSection& x, double beta_max);

struct ResonanceCheck {
  bool resonant;
  ResonantExponent nearest;
  double distance;
};

inline constexpr double kDefaultResonanceTolerance = 1e-9;

ResonanceCheck is_resonant(const CrossSection& x, double k,
                           double tol = kDefaultResonanceTolerance);

/// Parses the CLI grammar sphere:<d> | circle:<L> | metric-circle:<file> |
/// spectrum:<file>. Numeric cross-sections are certified up to lambda_max.
CrossSection parse_cross_section(const std::string& descriptor, double lambda_max);

}  // namespace coneh
