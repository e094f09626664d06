#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "coneh/cross_section.hpp"

namespace coneh {

/// One separated mode c·r^α·φ_i of a cone harmonic. mode_id indexes φ_i in
/// the cross-section spectrum (with multiplicity, 0 being the constant).
struct Mode {
  double alpha = 0.0;
  double c = 0.0;
  std::int64_t mode_id = 0;
};

/// A finite mode sum u(x, r) = constant + Σ c_i r^{α_i} φ_i(x) on the cone
/// C(X) of dimension n, with φ_i orthonormal on X. Modes are kept sorted by
/// exponent.
class ConeHarmonic {
 public:
  ConeHarmonic(int n, std::vector<Mode> modes, double constant = 0.0);

  int n() const noexcept { return n_; }
  double constant() const noexcept { return constant_; }
  std::span<const Mode> modes() const noexcept { return modes_; }

  /// Modes with nonzero coefficient.
  std::vector<Mode> active_modes() const;
  bool is_constant() const;

  ConeHarmonic scaled(double t) const;
  /// u - u(p_∞): the same modes with the constant term dropped.
  ConeHarmonic normalized() const;

  /// Checks every exponent against the spectrum of x: α(α+n-2) must be an
  /// eigenvalue to relative tolerance `tol` (exact data gives exact matches).
  void validate_against(const CrossSection& x, double tol = 1e-12) const;

 private:
  int n_;
  std::vector<Mode> modes_;
  double constant_;
};

ConeHarmonic cone_harmonic_from_json(const nlohmann::json& doc);
ConeHarmonic parse_cone_harmonic(std::string_view text);
nlohmann::ordered_json to_json(const ConeHarmonic& u);

/// I_u(s) = ∫_X u(·, s)² = Σ c_i² s^{2α_i}.
double boundary_mass(const ConeHarmonic& u, double s);
/// D_u(s) = s^{2-n} ∫_{B_s} |Du|² = Σ c_i² α_i s^{2α_i}.
double scaled_energy(const ConeHarmonic& u, double s);
/// U_u(s) = D_u(s) / I_u(s), evaluated with log-sum-exp scaling.
double frequency(const ConeHarmonic& u, double s);
/// J_u(s) = Σ c_i² s^{2α_i} / (2α_i + n), the ball average of u².
double ball_average(const ConeHarmonic& u, double s);
/// J_u(s) recomputed as s^{-n} ∫_0^s I_u(r) r^{n-1} dr by adaptive quadrature.
double ball_average_by_quadrature(const ConeHarmonic& u, double s, double abs_tol = 1e-13);

struct FrequencyIdentity {
  double residual = 0.0;   // |log I(s) - log I(r) - ∫_r^s 2U(t)/t dt|
  double log_ratio = 0.0;  // log I(s) - log I(r)
  double integral = 0.0;
  double quadrature_error = 0.0;
};

/// Evaluates I(s) = I(r) exp(∫_r^s 2U(t)/t dt) with adaptive Simpson
/// (absolute tolerance 1e-10, depth 40). Throws numeric-failure if the
/// quadrature does not converge.
FrequencyIdentity frequency_identity_check(const ConeHarmonic& u, double r, double s);

/// Largest β ∈ 𝒟_X with β ≤ k: the exponent of the top eigenvalue counted by
/// N_X(k(k+n-2)).
double admissible_cap(const CrossSection& x, double k, double tol = kDefaultResonanceTolerance);

struct ThreeCirclesResult {
  double ratio = 0.0;  // J(s) / J(s/2)
  double bound = 0.0;  // 2^{2α_N}
  double cap = 0.0;    // α_N
  bool satisfied = false;
};

/// Doubling bound J(s) ≤ 2^{2α_N} J(s/2) for u ∈ ℋ_k(C(X)). With a
/// cross-section, α_N is admissible_cap(x, k); without one, α_N = k. Every
/// active exponent must be ≤ k, otherwise precondition-violation.
ThreeCirclesResult three_circles_ratio(const ConeHarmonic& u, double s, double k,
                                       const CrossSection* x = nullptr);

struct NonMembershipWitness {
  double epsilon = 0.0;
  double log_s = 0.0;      // log of the radius where the witness is taken
  double log_excess = 0.0; // log( I(s) / (1+s)^{2(γ-ε)} ) - log(target)
  bool verified = false;
};

struct GrowthOrderReport {
  double gamma = 0.0;
  bool member_at_gamma = false;  // I(s) ≤ (Σ c_i²)(1 + s^{2γ}) on the sample grid
  double growth_rate_estimate = 0.0;  // U at a large radius, → γ
  std::vector<NonMembershipWitness> witnesses;
};

/// γ = max{α_i : c_i ≠ 0}; u ∈ ℋ_γ(C(X)) and u ∉ ℋ_{γ-ε}(C(X)) for ε > 0.
GrowthOrderReport sharp_growth_order(const ConeHarmonic& u,
                                     std::span<const double> epsilons = {});

/// φ for mode_id on a circle of length L, unit norm in L²(arclength):
/// id 0 → 1/√L, id 2j-1 → √(2/L) cos(2πjθ/L), id 2j → √(2/L) sin(2πjθ/L).
double circle_eigenfunction(double length, std::int64_t mode_id, double theta);
std::int64_t circle_frequency_index(std::int64_t mode_id);

/// u(θ, r) on the cone over a circle. Other cross-sections throw
/// unsupported-cross-section.
double evaluate(const ConeHarmonic& u, const CrossSection& x, double theta, double r);

}  // namespace coneh
