#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace coneh {

struct SpectralEntry {
  double lambda = 0.0;
  std::int64_t multiplicity = 1;

  friend bool operator==(const SpectralEntry&, const SpectralEntry&) = default;
};

/// Grouped cross-section spectrum: strictly increasing eigenvalues with
/// multiplicities, starting at the simple eigenvalue 0. Every eigenvalue not
/// exceeding truncation_bound is present.
class Spectrum {
 public:
  Spectrum(int ambient_dim, std::vector<SpectralEntry> entries, double truncation_bound);

  int ambient_dim() const noexcept { return ambient_dim_; }
  double truncation_bound() const noexcept { return truncation_bound_; }
  std::span<const SpectralEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// #{i : λ_i ≤ lambda}, with multiplicity. Throws resolution-insufficient
  /// past the truncation bound.
  std::int64_t count(double lambda) const;
  /// #{i : λ_i < lambda}.
  std::int64_t count_below(double lambda) const;

  /// Largest stored eigenvalue ≤ lambda (always exists for lambda ≥ 0).
  const SpectralEntry& at_most(double lambda) const;
  /// Smallest stored eigenvalue > lambda; empty when it lies past the
  /// truncation bound.
  std::optional<SpectralEntry> above(double lambda) const;

  /// First nonzero eigenvalue, if certified.
  std::optional<double> first_positive() const;

  /// Restriction to eigenvalues ≤ lambda_max (lambda_max ≤ truncation bound).
  Spectrum truncated(double lambda_max) const;

 private:
  void check_range(double lambda) const;

  int ambient_dim_;
  std::vector<SpectralEntry> entries_;
  std::vector<std::int64_t> cumulative_;  // cumulative_[i] = Σ_{j≤i} mult_j
  double truncation_bound_;
};

/// Groups sorted eigenvalues into multiplicity classes. Two consecutive values
/// join the current group when they differ from its first member by at most
/// rel_tol·max(1, |first|). Each group is represented by its mean.
std::vector<SpectralEntry> cluster_eigenvalues(std::span<const double> sorted_values,
                                               double rel_tol = 1e-8);

/// Indices into sorted_values where each cluster from cluster_eigenvalues starts.
std::vector<std::size_t> cluster_starts(std::span<const double> sorted_values,
                                        double rel_tol = 1e-8);

}  // namespace coneh
