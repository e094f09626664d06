#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "coneh/cone_harmonics.hpp"

namespace coneh {

/// Samples of a function on the annulus [r_min, r_max] × [0, L) of the cone
/// over a circle of length L. Radial nodes include both ends; angular nodes
/// are θ_j = jL/m_theta (periodic).
class ConeGrid {
 public:
  ConeGrid(double length, double r_min, double r_max, int m_r, int m_theta);

  static ConeGrid sample(const std::function<double(double r, double theta)>& u, double length,
                         double r_min, double r_max, int m_r, int m_theta);
  static ConeGrid sample(const ConeHarmonic& u, double length, double r_min, double r_max, int m_r,
                         int m_theta);

  double length() const noexcept { return length_; }
  double r_min() const noexcept { return r_min_; }
  double r_max() const noexcept { return r_max_; }
  int m_r() const noexcept { return m_r_; }
  int m_theta() const noexcept { return m_theta_; }
  double h_r() const noexcept { return (r_max_ - r_min_) / (m_r_ - 1); }
  double h_theta() const noexcept { return length_ / m_theta_; }
  double r(int i) const noexcept { return r_min_ + i * h_r(); }
  double theta(int j) const noexcept { return j * h_theta(); }

  double at(int i, int j) const { return values_[static_cast<std::size_t>(i) * m_theta_ + j]; }
  double& at(int i, int j) { return values_[static_cast<std::size_t>(i) * m_theta_ + j]; }

  /// Smallest active exponent when sampled from a mode sum (drives the tip bound).
  std::optional<double> min_exponent() const noexcept { return min_exponent_; }

  ConeGrid scaled(double t) const;

  /// CSV rows "r,theta,value" with a header line.
  void write_csv(std::ostream& out) const;

 private:
  double length_;
  double r_min_;
  double r_max_;
  int m_r_;
  int m_theta_;
  std::vector<double> values_;
  std::optional<double> min_exponent_;
};

struct ResidualNorms {
  double max_norm = 0.0;
  double l2_norm = 0.0;  // root mean square over interior nodes
};

/// Applies u_rr + u_r/r + u_θθ/r² (the n = 2 cone Laplacian) with centered
/// second-order differences at every interior radial node, periodic in θ.
ResidualNorms laplacian_residual(const ConeGrid& grid);

/// A single Fourier cone mode c·r^α·φ_j with φ_j = √(2/L)cos(2πjθ/L), or
/// the constant c/√L when j = 0.
struct GridMode {
  double alpha = 0.0;
  int j = 0;
  double c = 1.0;
};

struct ConvergenceReport {
  std::vector<int> resolutions;
  std::vector<double> h;
  std::vector<double> max_residuals;
  std::vector<double> l2_residuals;
  double order = 0.0;     // least-squares slope of log(max residual) against log(h)
  bool skipped = false;   // residuals at rounding level, no order fitted
  bool warning = false;   // residuals not monotonically decreasing
  std::string message;
};

/// Samples the mode on an m × m grid for every resolution m (a doubling
/// sequence of length ≥ 3) and fits the convergence order of the residual.
ConvergenceReport convergence_order(const GridMode& mode, double length, double r_min, double r_max,
                                    const std::vector<int>& resolutions);

struct GridAverage {
  double value = 0.0;
  /// Relative truncation from excising [0, r_min): (r_min/s)^{2α_min+2}, when known.
  std::optional<double> tip_bound;
};

/// Tensor-product trapezoid quadrature of u²·r over [r_min, s] × [0, L),
/// divided by s². Matches ball_average for harmonics with arclength-normalized
/// eigenfunctions. Requires r_min ≤ 0.01·s and s ≤ r_max.
GridAverage grid_J(const ConeGrid& grid, double s);

}  // namespace coneh
