#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "coneh/spectrum.hpp"

namespace coneh {

/// A circle with line element a(θ)dθ, a sampled at m₀ uniform points of [0, 2π).
/// The total length ∫a is the periodic trapezoid sum and may not exceed 2π.
class MetricCircle {
 public:
  explicit MetricCircle(std::vector<double> density_samples);

  static MetricCircle constant(double total_length, std::size_t samples = 16);

  const std::vector<double>& density() const noexcept { return density_; }
  double total_length() const noexcept { return total_length_; }

  /// Density at arbitrary θ by periodic linear interpolation of the samples.
  double density_at(double theta) const;

  /// θ ↦ -θ, i.e. sample i ↦ sample (m₀ - i) mod m₀.
  MetricCircle reversed() const;

 private:
  std::vector<double> density_;
  double total_length_;
};

/// Parses a density file: either a JSON array of samples or CSV rows
/// "theta_index,a_value" (an optional header line is skipped).
MetricCircle parse_density(std::string_view text);
MetricCircle load_density_file(const std::string& path);

/// Symmetric periodic second-difference operator W^{-1/2} K W^{-1/2} on m
/// uniform θ nodes. K is the stiffness matrix with edge conductances
/// 1/ℓ_{i+1/2}, where ℓ_{i+1/2} is the edge length; W holds the lumped node
/// lengths. K has zero row sums; for constant density W is a multiple of the
/// identity and the operator itself has zero row sums.
struct DiscreteOperator {
  std::vector<double> diagonal;     // size m
  std::vector<double> coupling;     // coupling[i] joins i and (i+1) mod m
  std::vector<double> conductance;  // 1/ℓ_{i+1/2}
  std::vector<double> node_mass;    // W_ii

  std::size_t size() const noexcept { return diagonal.size(); }
  /// Same operator plus c·Identity.
  DiscreteOperator shifted(double c) const;
};

/// Conservative finite-difference discretization of the Laplace–Beltrami
/// operator of the metric circle. m must be a power of two ≥ 16.
DiscreteOperator assemble(const MetricCircle& circle, std::size_t m);

/// Smallest `count` eigenvalues, ascending.
std::vector<double> eigenvalues(const DiscreteOperator& op, std::size_t count);

struct CertifiedSpectrum {
  Spectrum spectrum;
  std::vector<double> error_bars;  // one per spectrum entry
  double measure;
  std::size_t resolution;          // finer of the two resolutions used
};

struct CertificationOptions {
  double bar_tolerance = 1e-6;  // bars ≤ tol·max(1, λ)
  double cluster_tolerance = 1e-8;
  std::size_t initial_resolution = 16;
  std::size_t max_resolution = 4096;
};

/// Richardson-extrapolated spectrum up to lambda_max with error bars. Throws
/// resolution-insufficient when the bars cannot be met at max_resolution.
CertifiedSpectrum certified_spectrum(const MetricCircle& circle, double lambda_max,
                                     const CertificationOptions& options = {});

}  // namespace coneh
