#include "coneh/cone_harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <variant>

#include "coneh/error.hpp"
#include "coneh/exponent.hpp"
#include "coneh/quadrature.hpp"

namespace coneh {

namespace {

void require_radius(double s, const char* what) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    std::ostringstream msg;
    msg << what << ": radius must be positive and finite, got " << s;
    throw invalid_argument(msg.str());
  }
}

// Active modes of a normalized, non-constant u.
std::vector<Mode> usable_modes(const ConeHarmonic& u, const char* what) {
  if (u.constant() != 0.0) {
    throw Error(ErrorKind::precondition_violation,
                std::string(what) + ": constant term must be zero (normalize u so that u(p_inf) = 0)");
  }
  std::vector<Mode> active = u.active_modes();
  if (active.empty()) {
    throw Error(ErrorKind::degenerate_input, std::string(what) + ": all mode coefficients are zero");
  }
  return active;
}

double max_abs_coefficient(const std::vector<Mode>& modes) {
  double top = 0.0;
  for (const Mode& m : modes) top = std::max(top, std::abs(m.c));
  return top;
}

// log Σ w_i (c_i/c_max)² s^{2α_i} with weight(mode) ≥ 0. Coefficients enter
// only through c_i/c_max, so scaling u by a power of two changes nothing.
template <class Weight>
double log_relative_sum(const std::vector<Mode>& modes, double s, Weight weight) {
  const double ls = std::log(s);
  const double cmax = max_abs_coefficient(modes);
  double top = -std::numeric_limits<double>::infinity();
  std::vector<double> logs;
  logs.reserve(modes.size());
  for (const Mode& m : modes) {
    const double w = weight(m);
    const double l = w > 0.0 ? std::log(w) + 2.0 * std::log(std::abs(m.c / cmax)) + 2.0 * m.alpha * ls
                             : -std::numeric_limits<double>::infinity();
    logs.push_back(l);
    top = std::max(top, l);
  }
  if (top == -std::numeric_limits<double>::infinity()) return top;
  double sum = 0.0;
  for (double l : logs) sum += std::exp(l - top);
  return top + std::log(sum);
}

template <class Weight>
double weighted_sum(const std::vector<Mode>& modes, double s, Weight weight) {
  double sum = 0.0;
  for (const Mode& m : modes) sum += weight(m) * m.c * m.c * std::pow(s, 2.0 * m.alpha);
  return sum;
}

double log_relative_mass(const std::vector<Mode>& modes, double s) {
  return log_relative_sum(modes, s, [](const Mode&) { return 1.0; });
}

double log_boundary_mass(const std::vector<Mode>& modes, double s) {
  return log_relative_mass(modes, s) + 2.0 * std::log(max_abs_coefficient(modes));
}

double frequency_of(const std::vector<Mode>& modes, double s) {
  const double ls = std::log(s);
  const double cmax = max_abs_coefficient(modes);
  double top = -std::numeric_limits<double>::infinity();
  for (const Mode& m : modes) top = std::max(top, 2.0 * std::log(std::abs(m.c / cmax)) + 2.0 * m.alpha * ls);
  double num = 0.0;
  double den = 0.0;
  for (const Mode& m : modes) {
    const double w = std::exp(2.0 * std::log(std::abs(m.c / cmax)) + 2.0 * m.alpha * ls - top);
    num += m.alpha * w;
    den += w;
  }
  return num / den;
}

double log_relative_ball_average(const std::vector<Mode>& modes, int n, double s) {
  return log_relative_sum(modes, s, [n](const Mode& m) { return 1.0 / (2.0 * m.alpha + n); });
}

}  // namespace

ConeHarmonic::ConeHarmonic(int n, std::vector<Mode> modes, double constant)
    : n_(n), modes_(std::move(modes)), constant_(constant) {
  if (n < 2) throw invalid_argument("ConeHarmonic: cone dimension must be >= 2");
  if (!std::isfinite(constant)) throw invalid_argument("ConeHarmonic: constant term must be finite");
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const Mode& m = modes_[i];
    if (!(m.alpha > 0.0) || !std::isfinite(m.alpha)) {
      std::ostringstream msg;
      msg << "ConeHarmonic: mode " << i << " has non-positive exponent " << m.alpha;
      throw invalid_argument(msg.str());
    }
    if (!std::isfinite(m.c)) throw invalid_argument("ConeHarmonic: coefficients must be finite");
    if (m.mode_id < 1) throw invalid_argument("ConeHarmonic: mode_id must be >= 1 (0 is the constant)");
  }
  std::stable_sort(modes_.begin(), modes_.end(),
                   [](const Mode& a, const Mode& b) { return a.alpha < b.alpha; });
}

std::vector<Mode> ConeHarmonic::active_modes() const {
  std::vector<Mode> out;
  for (const Mode& m : modes_) {
    if (m.c != 0.0) out.push_back(m);
  }
  return out;
}

bool ConeHarmonic::is_constant() const { return active_modes().empty(); }

ConeHarmonic ConeHarmonic::scaled(double t) const {
  std::vector<Mode> modes = modes_;
  for (Mode& m : modes) m.c *= t;
  return ConeHarmonic(n_, std::move(modes), constant_ * t);
}

ConeHarmonic ConeHarmonic::normalized() const { return ConeHarmonic(n_, modes_, 0.0); }

void ConeHarmonic::validate_against(const CrossSection& x, double tol) const {
  if (x.cone_dimension() != n_) {
    throw invalid_argument("ConeHarmonic: cone dimension does not match the cross-section");
  }
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const double lambda = eigenvalue_from_exponent(modes_[i].alpha, n_);
    const SpectralEntry below = eigenvalue_at_most(x, lambda * (1.0 + tol));
    if (std::abs(below.lambda - lambda) > tol * std::max(1.0, lambda)) {
      std::ostringstream msg;
      msg << "ConeHarmonic: mode " << i << " (alpha=" << modes_[i].alpha << ") gives " << lambda
          << ", which is not an eigenvalue of " << x.describe();
      throw Error(ErrorKind::precondition_violation, msg.str());
    }
  }
}

ConeHarmonic cone_harmonic_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw Error(ErrorKind::parse_error, "cone harmonic must be a JSON object");
    const int n = doc.at("n").get<int>();
    const double constant = doc.value("constant", 0.0);
    std::vector<Mode> modes;
    for (const auto& entry : doc.at("modes")) {
      Mode m;
      m.alpha = entry.at("alpha").get<double>();
      m.c = entry.at("c").get<double>();
      m.mode_id = entry.at("mode_id").get<std::int64_t>();
      modes.push_back(m);
    }
    return ConeHarmonic(n, std::move(modes), constant);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse_error, std::string("cone harmonic: ") + e.what());
  }
}

ConeHarmonic parse_cone_harmonic(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse_error, std::string("cone harmonic: ") + e.what());
  }
  return cone_harmonic_from_json(doc);
}

nlohmann::ordered_json to_json(const ConeHarmonic& u) {
  nlohmann::ordered_json doc;
  doc["n"] = u.n();
  doc["constant"] = u.constant();
  doc["modes"] = nlohmann::ordered_json::array();
  for (const Mode& m : u.modes()) {
    doc["modes"].push_back({{"alpha", m.alpha}, {"c", m.c}, {"mode_id", m.mode_id}});
  }
  return doc;
}

double boundary_mass(const ConeHarmonic& u, double s) {
  require_radius(s, "I");
  return weighted_sum(usable_modes(u, "I"), s, [](const Mode&) { return 1.0; });
}

double scaled_energy(const ConeHarmonic& u, double s) {
  require_radius(s, "D");
  return weighted_sum(usable_modes(u, "D"), s, [](const Mode& m) { return m.alpha; });
}

double frequency(const ConeHarmonic& u, double s) {
  require_radius(s, "U");
  return frequency_of(usable_modes(u, "U"), s);
}

double ball_average(const ConeHarmonic& u, double s) {
  require_radius(s, "J");
  const int n = u.n();
  return weighted_sum(usable_modes(u, "J"), s, [n](const Mode& m) { return 1.0 / (2.0 * m.alpha + n); });
}

double ball_average_by_quadrature(const ConeHarmonic& u, double s, double abs_tol) {
  require_radius(s, "J");
  const std::vector<Mode> modes = usable_modes(u, "J");
  const int n = u.n();
  // Substitute r = s·t so the integrand is I(s t) t^{n-1} on [0, 1].
  auto integrand = [&](double t) {
    if (t == 0.0) return 0.0;
    return weighted_sum(modes, s * t, [](const Mode&) { return 1.0; }) * std::pow(t, n - 1);
  };
  const QuadratureResult q = adaptive_simpson(integrand, 0.0, 1.0, abs_tol, 50);
  if (!q.converged) throw NumericFailure("J: radial quadrature did not converge", q.value);
  return q.value;
}

FrequencyIdentity frequency_identity_check(const ConeHarmonic& u, double r, double s) {
  require_radius(r, "frequency_identity_check");
  require_radius(s, "frequency_identity_check");
  if (!(r < s)) throw invalid_argument("frequency_identity_check: need 0 < r < s");
  const std::vector<Mode> modes = usable_modes(u, "frequency_identity_check");

  // 2U(t)/t integrated in log t: ∫_r^s 2U(t)/t dt = ∫_{log r}^{log s} 2U(e^τ) dτ.
  auto integrand = [&](double tau) { return 2.0 * frequency_of(modes, std::exp(tau)); };
  const QuadratureResult q = adaptive_simpson(integrand, std::log(r), std::log(s), 1e-10, 40, 6);

  FrequencyIdentity out;
  out.log_ratio = log_relative_mass(modes, s) - log_relative_mass(modes, r);
  out.integral = q.value;
  out.quadrature_error = q.error_estimate;
  out.residual = std::abs(out.log_ratio - out.integral);
  if (!q.converged) {
    throw NumericFailure("frequency_identity_check: quadrature did not converge", out.residual);
  }
  return out;
}

double admissible_cap(const CrossSection& x, double k, double tol) {
  if (!(k >= 0.0)) throw invalid_argument("admissible_cap: k must be >= 0");
  const int n = x.cone_dimension();
  const ResonanceCheck check = is_resonant(x, k, tol);
  if (check.resonant && check.nearest.beta >= k) return check.nearest.beta;
  const SpectralEntry top = eigenvalue_at_most(x, eigenvalue_from_exponent(k, n));
  return exponent_from_eigenvalue(top.lambda, n);
}

ThreeCirclesResult three_circles_ratio(const ConeHarmonic& u, double s, double k,
                                       const CrossSection* x) {
  require_radius(s, "three_circles_ratio");
  if (!(k >= 0.0) || !std::isfinite(k)) throw invalid_argument("three_circles_ratio: k must be >= 0");
  if (x && x->cone_dimension() != u.n()) {
    throw invalid_argument("three_circles_ratio: cone dimension does not match the cross-section");
  }
  const std::vector<Mode> modes = usable_modes(u, "three_circles_ratio");
  const double cap = x ? admissible_cap(*x, k) : k;
  const double limit = x ? std::max(k, cap) : k;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i].alpha > limit * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "three_circles_ratio: mode " << i << " (mode_id=" << modes[i].mode_id
          << ", alpha=" << modes[i].alpha << ") exceeds the cap " << limit << " at k=" << k;
      throw Error(ErrorKind::precondition_violation, msg.str());
    }
  }
  ThreeCirclesResult out;
  out.cap = cap;
  out.ratio = std::exp(log_relative_ball_average(modes, u.n(), s) - log_relative_ball_average(modes, u.n(), 0.5 * s));
  out.bound = std::exp2(2.0 * cap);
  out.satisfied = out.ratio <= out.bound * (1.0 + 1e-12);
  return out;
}

GrowthOrderReport sharp_growth_order(const ConeHarmonic& u, std::span<const double> epsilons) {
  const std::vector<Mode> modes = usable_modes(u.normalized(), "sharp_growth_order");
  GrowthOrderReport report;
  report.gamma = modes.back().alpha;
  for (const Mode& m : modes) report.gamma = std::max(report.gamma, m.alpha);

  double mass = 0.0;
  double top_c2 = 0.0;
  for (const Mode& m : modes) {
    mass += m.c * m.c;
    if (m.alpha == report.gamma) top_c2 += m.c * m.c;
  }

  // Membership at γ: s^{2α} ≤ 1 + s^{2γ} for α ≤ γ, so I(s) ≤ (Σc²)(1 + s^{2γ}).
  report.member_at_gamma = true;
  for (int i = -60; i <= 120; ++i) {
    const double s = std::pow(10.0, i / 10.0);
    const double log_i = log_boundary_mass(modes, s);
    const double log_bound = std::log(mass) + std::log1p(std::pow(s, 2.0 * report.gamma));
    if (log_i > log_bound + 1e-12) report.member_at_gamma = false;
  }
  report.growth_rate_estimate = frequency_of(modes, 1e6);

  static constexpr double kDefaultEpsilons[] = {1.0, 0.5, 0.1, 0.01};
  if (epsilons.empty()) epsilons = kDefaultEpsilons;
  // Non-membership below γ: I(s)/(1+s)^{2(γ-ε)} ≥ c_top² s^{2ε} 4^{-(γ-ε)} for s ≥ 1,
  // so it exceeds any fixed multiple of Σc² once s is large enough.
  const double log_target = std::log(1e6 * mass);
  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw invalid_argument("sharp_growth_order: epsilon must be > 0");
    const double g = report.gamma - eps;
    const double log_s = std::max(
        0.0, (log_target + 2.0 * std::max(0.0, g) * std::numbers::ln2 - std::log(top_c2)) / (2.0 * eps));
    NonMembershipWitness w;
    w.epsilon = eps;
    w.log_s = log_s + 1.0;
    const double s_log = w.log_s;
    // log I(e^{s_log}) computed from logs directly so large radii do not overflow.
    double top = -std::numeric_limits<double>::infinity();
    std::vector<double> logs;
    for (const Mode& m : modes) {
      logs.push_back(2.0 * std::log(std::abs(m.c)) + 2.0 * m.alpha * s_log);
      top = std::max(top, logs.back());
    }
    double sum = 0.0;
    for (double l : logs) sum += std::exp(l - top);
    const double log_i = top + std::log(sum);
    const double log_growth = 2.0 * g * (s_log + std::log1p(std::exp(-s_log)));
    w.log_excess = log_i - log_growth - log_target;
    w.verified = w.log_excess > 0.0;
    report.witnesses.push_back(w);
  }
  return report;
}

std::int64_t circle_frequency_index(std::int64_t mode_id) {
  if (mode_id < 0) throw invalid_argument("mode_id must be >= 0");
  return (mode_id + 1) / 2;
}

double circle_eigenfunction(double length, std::int64_t mode_id, double theta) {
  if (!(length > 0.0)) throw invalid_argument("circle length must be positive");
  if (mode_id == 0) return 1.0 / std::sqrt(length);
  const auto j = static_cast<double>(circle_frequency_index(mode_id));
  const double phase = 2.0 * std::numbers::pi * j * theta / length;
  const double norm = std::sqrt(2.0 / length);
  return norm * (mode_id % 2 == 1 ? std::cos(phase) : std::sin(phase));
}

double evaluate(const ConeHarmonic& u, const CrossSection& x, double theta, double r) {
  const auto* circle = std::get_if<Circle>(&x.variant());
  if (!circle) {
    throw Error(ErrorKind::unsupported_cross_section,
                "evaluate: eigenfunctions are only available on Circle(L), got " + x.describe());
  }
  if (u.n() != 2) throw invalid_argument("evaluate: cone over a circle has dimension 2");
  if (!(r >= 0.0)) throw invalid_argument("evaluate: r must be >= 0");
  const double L = circle->length;
  double value = u.constant();
  for (const Mode& m : u.modes()) {
    const double expected = 2.0 * std::numbers::pi * static_cast<double>(circle_frequency_index(m.mode_id)) / L;
    if (std::abs(m.alpha - expected) > 1e-9 * std::max(1.0, expected)) {
      std::ostringstream msg;
      msg << "evaluate: mode_id " << m.mode_id << " has exponent " << expected << " on circle:" << L
          << ", but the mode carries alpha=" << m.alpha;
      throw Error(ErrorKind::precondition_violation, msg.str());
    }
    if (m.c == 0.0) continue;
    value += m.c * std::pow(r, m.alpha) * circle_eigenfunction(L, m.mode_id, theta);
  }
  return value;
}

}  // namespace coneh
