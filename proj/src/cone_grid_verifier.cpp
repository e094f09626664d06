#include "coneh/cone_grid_verifier.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "coneh/error.hpp"
#include "coneh/parallel.hpp"

namespace coneh {

ConeGrid::ConeGrid(double length, double r_min, double r_max, int m_r, int m_theta)
    : length_(length), r_min_(r_min), r_max_(r_max), m_r_(m_r), m_theta_(m_theta) {
  if (!(length > 0.0)) throw invalid_argument("ConeGrid: circle length must be positive");
  if (!(r_min > 0.0) || !(r_max > r_min)) throw invalid_argument("ConeGrid: need 0 < r_min < r_max");
  if (m_r < 3 || m_theta < 3) throw invalid_argument("ConeGrid: resolution must be >= 3 in each direction");
  values_.assign(static_cast<std::size_t>(m_r) * m_theta, 0.0);
}

ConeGrid ConeGrid::sample(const std::function<double(double, double)>& u, double length, double r_min,
                          double r_max, int m_r, int m_theta) {
  ConeGrid grid(length, r_min, r_max, m_r, m_theta);
  for (int i = 0; i < m_r; ++i) {
    for (int j = 0; j < m_theta; ++j) grid.at(i, j) = u(grid.r(i), grid.theta(j));
  }
  return grid;
}

ConeGrid ConeGrid::sample(const ConeHarmonic& u, double length, double r_min, double r_max, int m_r,
                          int m_theta) {
  const CrossSection x = CrossSection::circle(length);
  ConeGrid grid = sample([&](double r, double theta) { return evaluate(u, x, theta, r); }, length, r_min,
                         r_max, m_r, m_theta);
  const auto active = u.active_modes();
  if (!active.empty()) grid.min_exponent_ = active.front().alpha;
  if (u.constant() != 0.0) grid.min_exponent_ = 0.0;
  return grid;
}

ConeGrid ConeGrid::scaled(double t) const {
  ConeGrid out = *this;
  for (double& v : out.values_) v *= t;
  return out;
}

void ConeGrid::write_csv(std::ostream& out) const {
  out << "r,theta,value\n";
  char buf[96];
  for (int i = 0; i < m_r_; ++i) {
    for (int j = 0; j < m_theta_; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r(i), theta(j), at(i, j));
      out << buf;
    }
  }
}

ResidualNorms laplacian_residual(const ConeGrid& grid) {
  const int mr = grid.m_r();
  const int mt = grid.m_theta();
  const double hr = grid.h_r();
  const double ht = grid.h_theta();
  struct Row {
    double max = 0.0;
    double sumsq = 0.0;
  };
  const auto rows = parallel_map(static_cast<std::size_t>(mr - 2), [&](std::size_t k) {
    const int i = static_cast<int>(k) + 1;
    const double r = grid.r(i);
    Row row;
    for (int j = 0; j < mt; ++j) {
      const int jm = (j + mt - 1) % mt;
      const int jp = (j + 1) % mt;
      const double u = grid.at(i, j);
      const double urr = (grid.at(i + 1, j) - 2.0 * u + grid.at(i - 1, j)) / (hr * hr);
      const double ur = (grid.at(i + 1, j) - grid.at(i - 1, j)) / (2.0 * hr);
      const double utt = (grid.at(i, jp) - 2.0 * u + grid.at(i, jm)) / (ht * ht);
      const double res = std::abs(urr + ur / r + utt / (r * r));
      row.max = std::max(row.max, res);
      row.sumsq += res * res;
    }
    return row;
  });
  ResidualNorms out;
  double sumsq = 0.0;
  for (const Row& row : rows) {
    out.max_norm = std::max(out.max_norm, row.max);
    sumsq += row.sumsq;
  }
  out.l2_norm = std::sqrt(sumsq / (static_cast<double>(mr - 2) * mt));
  return out;
}

ConvergenceReport convergence_order(const GridMode& mode, double length, double r_min, double r_max,
                                    const std::vector<int>& resolutions) {
  if (resolutions.size() < 3) throw invalid_argument("convergence_order: need at least 3 resolutions");
  for (std::size_t i = 1; i < resolutions.size(); ++i) {
    if (resolutions[i] != 2 * resolutions[i - 1]) {
      throw invalid_argument("convergence_order: resolutions must form a doubling sequence");
    }
  }
  if (mode.j < 0) throw invalid_argument("convergence_order: j must be >= 0");
  const double freq = 2.0 * std::numbers::pi * mode.j / length;
  const double norm = mode.j == 0 ? 1.0 / std::sqrt(length) : std::sqrt(2.0 / length);
  auto u = [&](double r, double theta) {
    return mode.c * norm * std::pow(r, mode.alpha) * (mode.j == 0 ? 1.0 : std::cos(freq * theta));
  };

  ConvergenceReport report;
  report.resolutions = resolutions;
  double scale = 0.0;
  for (int m : resolutions) {
    const ConeGrid grid = ConeGrid::sample(u, length, r_min, r_max, m, m);
    const ResidualNorms norms = laplacian_residual(grid);
    report.h.push_back(grid.h_theta());
    report.max_residuals.push_back(norms.max_norm);
    report.l2_residuals.push_back(norms.l2_norm);
    scale = std::max(scale, std::abs(u(r_max, 0.0)));
  }

  // Rounding floor of a second difference at the finest grid.
  const double hmin = std::min(report.h.back(), (r_max - r_min) / (resolutions.back() - 1));
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300) / (hmin * hmin);
  bool at_floor = true;
  for (double res : report.max_residuals) at_floor = at_floor && res <= floor;
  if (at_floor) {
    report.skipped = true;
    report.message = "residuals at rounding level; order not fitted";
    return report;
  }

  for (std::size_t i = 1; i < report.max_residuals.size(); ++i) {
    if (!(report.max_residuals[i] < report.max_residuals[i - 1])) report.warning = true;
  }
  if (report.warning) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "non-monotone residuals:";
    for (double res : report.max_residuals) msg << ' ' << res;
    report.message = msg.str();
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double count = static_cast<double>(report.h.size());
  for (std::size_t i = 0; i < report.h.size(); ++i) {
    const double x = std::log(report.h[i]);
    const double y = std::log(std::max(report.max_residuals[i], std::numeric_limits<double>::min()));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  report.order = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return report;
}

GridAverage grid_J(const ConeGrid& grid, double s) {
  if (!(s >= grid.r_min()) || !(s <= grid.r_max() * (1.0 + 1e-14))) {
    std::ostringstream msg;
    msg << "grid_J: s=" << s << " outside the window [" << grid.r_min() << ", " << grid.r_max() << "]";
    throw invalid_argument(msg.str());
  }
  if (!(grid.r_min() <= 0.01 * s)) {
    throw invalid_argument("grid_J: r_min must be <= 0.01*s to control the excised tip");
  }
  const int mt = grid.m_theta();
  const double ht = grid.h_theta();
  const double hr = grid.h_r();

  // Angular trapezoid sums ∫ u² dθ per radial node, times r.
  auto ring = [&](int i) {
    double sum = 0.0;
    for (int j = 0; j < mt; ++j) sum += grid.at(i, j) * grid.at(i, j);
    return sum * ht * grid.r(i);
  };

  const double pos = (s - grid.r_min()) / hr;
  const int last = std::min(grid.m_r() - 1, static_cast<int>(std::floor(pos)));
  double integral = 0.0;
  double prev = ring(0);
  for (int i = 1; i <= last; ++i) {
    const double cur = ring(i);
    integral += 0.5 * hr * (prev + cur);
    prev = cur;
  }
  const double frac = pos - last;
  if (frac > 1e-12 && last + 1 < grid.m_r()) {
    const double next = ring(last + 1);
    const double at_s = prev + frac * (next - prev);
    integral += 0.5 * frac * hr * (prev + at_s);
  }

  GridAverage out;
  out.value = integral / (s * s);
  if (auto a = grid.min_exponent()) out.tip_bound = std::pow(grid.r_min() / s, 2.0 * *a + 2.0);
  return out;
}

}  // namespace coneh
