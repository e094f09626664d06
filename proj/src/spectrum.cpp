#include "coneh/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coneh/error.hpp"
#include "coneh/exponent.hpp"

namespace coneh {

double exponent_from_eigenvalue(double lambda, int n) {
  if (!(lambda >= 0.0)) throw invalid_argument("exponent_from_eigenvalue: lambda must be >= 0");
  if (n < 2) throw invalid_argument("exponent_from_eigenvalue: n must be >= 2");
  const double shift = n - 2.0;
  if (lambda == 0.0) return 0.0;
  // The positive root written without cancellation when n > 2.
  const double disc = std::sqrt(shift * shift + 4.0 * lambda);
  if (shift == 0.0) return disc / 2.0;
  return 2.0 * lambda / (shift + disc);
}

double eigenvalue_from_exponent(double alpha, int n) {
  if (!(alpha >= 0.0)) throw invalid_argument("eigenvalue_from_exponent: alpha must be >= 0");
  if (n < 2) throw invalid_argument("eigenvalue_from_exponent: n must be >= 2");
  return alpha * (alpha + (n - 2.0));
}

Spectrum::Spectrum(int ambient_dim, std::vector<SpectralEntry> entries, double truncation_bound)
    : ambient_dim_(ambient_dim), entries_(std::move(entries)), truncation_bound_(truncation_bound) {
  if (ambient_dim_ < 2) throw invalid_argument("spectrum: ambient_dim must be >= 2");
  if (!(truncation_bound_ >= 0.0)) throw invalid_argument("spectrum: truncation_bound must be >= 0");
  if (entries_.empty()) throw invalid_argument("spectrum: no entries");
  if (entries_.front().lambda != 0.0 || entries_.front().multiplicity != 1) {
    throw invalid_argument("spectrum: first entry must be (0, 1), a connected cross-section");
  }
  cumulative_.reserve(entries_.size());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.multiplicity < 1) {
      std::ostringstream msg;
      msg << "spectrum: entry " << i << " has multiplicity " << e.multiplicity;
      throw invalid_argument(msg.str());
    }
    if (i > 0 && !(e.lambda > entries_[i - 1].lambda)) {
      std::ostringstream msg;
      msg << "spectrum: entry " << i << " (lambda=" << e.lambda << ") is not strictly increasing";
      throw invalid_argument(msg.str());
    }
    if (e.lambda > truncation_bound_) {
      std::ostringstream msg;
      msg << "spectrum: entry " << i << " exceeds truncation_bound " << truncation_bound_;
      throw invalid_argument(msg.str());
    }
    total += e.multiplicity;
    cumulative_.push_back(total);
  }
}

void Spectrum::check_range(double lambda) const {
  if (!(lambda >= 0.0)) throw invalid_argument("counting: lambda must be >= 0");
  if (lambda > truncation_bound_) {
    std::ostringstream msg;
    msg << "lambda=" << lambda << " exceeds certified bound " << truncation_bound_;
    throw ResolutionInsufficient(msg.str(), truncation_bound_);
  }
}

std::int64_t Spectrum::count(double lambda) const {
  check_range(lambda);
  auto it = std::upper_bound(entries_.begin(), entries_.end(), lambda,
                             [](double v, const SpectralEntry& e) { return v < e.lambda; });
  if (it == entries_.begin()) return 0;
  return cumulative_[static_cast<std::size_t>(it - entries_.begin()) - 1];
}

std::int64_t Spectrum::count_below(double lambda) const {
  check_range(lambda);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), lambda,
                             [](const SpectralEntry& e, double v) { return e.lambda < v; });
  if (it == entries_.begin()) return 0;
  return cumulative_[static_cast<std::size_t>(it - entries_.begin()) - 1];
}

const SpectralEntry& Spectrum::at_most(double lambda) const {
  check_range(lambda);
  auto it = std::upper_bound(entries_.begin(), entries_.end(), lambda,
                             [](double v, const SpectralEntry& e) { return v < e.lambda; });
  return *(it - 1);
}

std::optional<SpectralEntry> Spectrum::above(double lambda) const {
  auto it = std::upper_bound(entries_.begin(), entries_.end(), lambda,
                             [](double v, const SpectralEntry& e) { return v < e.lambda; });
  if (it == entries_.end()) return std::nullopt;
  return *it;
}

std::optional<double> Spectrum::first_positive() const {
  if (entries_.size() < 2) return std::nullopt;
  return entries_[1].lambda;
}

Spectrum Spectrum::truncated(double lambda_max) const {
  if (lambda_max > truncation_bound_) {
    throw ResolutionInsufficient("truncation beyond certified bound", truncation_bound_);
  }
  std::vector<SpectralEntry> kept;
  for (const auto& e : entries_) {
    if (e.lambda > lambda_max) break;
    kept.push_back(e);
  }
  return Spectrum(ambient_dim_, std::move(kept), lambda_max);
}

std::vector<std::size_t> cluster_starts(std::span<const double> sorted_values, double rel_tol) {
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < sorted_values.size(); ++i) {
    if (starts.empty()) {
      starts.push_back(i);
      continue;
    }
    const double first = sorted_values[starts.back()];
    if (sorted_values[i] - first > rel_tol * std::max(1.0, std::abs(first))) starts.push_back(i);
  }
  return starts;
}

std::vector<SpectralEntry> cluster_eigenvalues(std::span<const double> sorted_values,
                                               double rel_tol) {
  const auto starts = cluster_starts(sorted_values, rel_tol);
  std::vector<SpectralEntry> groups;
  groups.reserve(starts.size());
  for (std::size_t g = 0; g < starts.size(); ++g) {
    const std::size_t begin = starts[g];
    const std::size_t end = g + 1 < starts.size() ? starts[g + 1] : sorted_values.size();
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += sorted_values[i];
    groups.push_back({sum / static_cast<double>(end - begin),
                      static_cast<std::int64_t>(end - begin)});
  }
  return groups;
}

}  // namespace coneh
