#include "coneh/eigensolver_1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "coneh/error.hpp"
#include "coneh/spectrum_io.hpp"
#include "coneh/symmetric_eigen.hpp"

namespace coneh {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

}  // namespace

MetricCircle::MetricCircle(std::vector<double> density_samples)
    : density_(std::move(density_samples)) {
  if (density_.size() < 2) throw invalid_argument("metric circle: need at least two density samples");
  double sum = 0.0;
  for (std::size_t i = 0; i < density_.size(); ++i) {
    if (!(density_[i] > 0.0) || !std::isfinite(density_[i])) {
      throw invalid_argument("metric circle: density sample " + std::to_string(i) +
                             " is not strictly positive");
    }
    sum += density_[i];
  }
  total_length_ = kTwoPi * sum / static_cast<double>(density_.size());
  if (total_length_ > kTwoPi * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "metric circle: total length " << total_length_ << " exceeds 2*pi";
    throw invalid_argument(msg.str());
  }
}

MetricCircle MetricCircle::constant(double total_length, std::size_t samples) {
  return MetricCircle(std::vector<double>(samples, total_length / kTwoPi));
}

double MetricCircle::density_at(double theta) const {
  const auto m0 = static_cast<double>(density_.size());
  double t = theta / kTwoPi * m0;
  t -= m0 * std::floor(t / m0);
  const auto i = static_cast<std::size_t>(t) % density_.size();
  const double frac = t - std::floor(t);
  const std::size_t next = (i + 1) % density_.size();
  return density_[i] + frac * (density_[next] - density_[i]);
}

MetricCircle MetricCircle::reversed() const {
  const std::size_t m0 = density_.size();
  std::vector<double> out(m0);
  for (std::size_t i = 0; i < m0; ++i) out[i] = density_[(m0 - i) % m0];
  return MetricCircle(std::move(out));
}

MetricCircle parse_density(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw Error(ErrorKind::parse_error, "empty density input");
  if (text[first] == '[') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::parse_error,
                  "line " + std::to_string(line_of_offset(text, e.byte ? e.byte - 1 : 0)) + ": " + e.what());
    }
    std::vector<double> samples;
    for (const auto& v : doc) {
      if (!v.is_number()) throw Error(ErrorKind::parse_error, "density array must contain numbers");
      samples.push_back(v.get<double>());
    }
    return MetricCircle(std::move(samples));
  }

  std::vector<std::pair<long, double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string index_text, value_text;
    if (!std::getline(fields, index_text, ',') || !std::getline(fields, value_text)) {
      throw Error(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": expected theta_index,a_value");
    }
    try {
      std::size_t used = 0;
      const long index = std::stol(index_text, &used);
      const double value = std::stod(value_text);
      rows.emplace_back(index, value);
    } catch (const std::exception&) {
      if (rows.empty() && line_no == 1) continue;  // header
      throw Error(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": malformed number");
    }
  }
  std::sort(rows.begin(), rows.end());
  std::vector<double> samples;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != static_cast<long>(i)) {
      throw Error(ErrorKind::parse_error, "density CSV: theta indices must be 0..m-1 without gaps");
    }
    samples.push_back(rows[i].second);
  }
  return MetricCircle(std::move(samples));
}

MetricCircle load_density_file(const std::string& path) { return parse_density(read_text_file(path)); }

DiscreteOperator DiscreteOperator::shifted(double c) const {
  DiscreteOperator out = *this;
  for (double& d : out.diagonal) d += c;
  return out;
}

DiscreteOperator assemble(const MetricCircle& circle, std::size_t m) {
  if (m < 16 || !is_power_of_two(m)) {
    throw invalid_argument("assemble: resolution must be a power of two >= 16, got " + std::to_string(m));
  }
  const double dtheta = kTwoPi / static_cast<double>(m);
  std::vector<double> a(m);
  for (std::size_t i = 0; i < m; ++i) a[i] = circle.density_at(dtheta * static_cast<double>(i));

  DiscreteOperator op;
  op.conductance.resize(m);
  op.node_mass.resize(m);
  op.diagonal.resize(m);
  op.coupling.resize(m);
  // Edge conductance is the harmonic mean of the node conductances 1/(a_i dθ).
  for (std::size_t i = 0; i < m; ++i) {
    const double edge_length = 0.5 * dtheta * (a[i] + a[(i + 1) % m]);
    op.conductance[i] = 1.0 / edge_length;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t prev = (i + m - 1) % m;
    op.node_mass[i] = 0.5 * (1.0 / op.conductance[prev] + 1.0 / op.conductance[i]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t prev = (i + m - 1) % m;
    const std::size_t next = (i + 1) % m;
    op.diagonal[i] = (op.conductance[prev] + op.conductance[i]) / op.node_mass[i];
    op.coupling[i] = -op.conductance[i] / std::sqrt(op.node_mass[i] * op.node_mass[next]);
  }
  return op;
}

std::vector<double> eigenvalues(const DiscreteOperator& op, std::size_t count) {
  if (count > op.size()) {
    throw invalid_argument("eigenvalues: requested " + std::to_string(count) + " of " +
                           std::to_string(op.size()));
  }
  auto all = periodic_tridiagonal_eigenvalues(op.diagonal, op.coupling);
  all.resize(count);
  return all;
}

CertifiedSpectrum certified_spectrum(const MetricCircle& circle, double lambda_max,
                                     const CertificationOptions& options) {
  if (!(lambda_max > 0.0)) throw invalid_argument("certified_spectrum: lambda_max must be > 0");

  auto solve = [&](std::size_t m) { return eigenvalues(assemble(circle, m), m); };

  std::size_t m = options.initial_resolution;
  std::vector<double> coarse = solve(m);
  std::vector<double> previous_diff;
  std::vector<double> last_values, last_bars;

  while (2 * m <= options.max_resolution) {
    const std::vector<double> fine = solve(2 * m);

    // Indices that may map to continuum eigenvalues ≤ lambda_max.
    std::size_t count = 0;
    while (count < m && fine[count] <= 1.5 * lambda_max + 1.0) ++count;

    std::vector<double> values(count), bars(count), diffs(count);
    bool resolved = count < m;
    for (std::size_t i = 0; i < count; ++i) {
      const double diff = fine[i] - coarse[i];
      diffs[i] = diff;
      values[i] = fine[i] + diff / 3.0;
      const double scale = std::max(1.0, std::abs(values[i]));
      double bar = std::abs(diff);
      if (bar > 1e-12 * scale && i < previous_diff.size()) {
        const double ratio = previous_diff[i] / diff;
        if (ratio >= 2.0 && ratio <= 8.0) bar = std::abs(diff) / 3.0;
      }
      bars[i] = bar;
      if (values[i] <= lambda_max && bar > options.bar_tolerance * scale) resolved = false;
    }
    last_values = values;
    last_bars = bars;

    if (resolved) {
      std::vector<double> kept, kept_bars;
      for (std::size_t i = 0; i < count; ++i) {
        if (values[i] <= lambda_max) {
          kept.push_back(values[i]);
          kept_bars.push_back(bars[i]);
        }
      }
      const auto starts = cluster_starts(kept, options.cluster_tolerance);
      auto groups = cluster_eigenvalues(kept, options.cluster_tolerance);
      if (groups.empty() || groups.front().multiplicity != 1 ||
          std::abs(groups.front().lambda) > options.bar_tolerance) {
        throw NumericFailure("certified_spectrum: the lowest eigenvalue is not a simple zero",
                             groups.empty() ? 0.0 : groups.front().lambda);
      }
      groups.front().lambda = 0.0;
      std::vector<double> group_bars;
      for (std::size_t g = 0; g < starts.size(); ++g) {
        const std::size_t end = g + 1 < starts.size() ? starts[g + 1] : kept.size();
        double bar = 0.0;
        for (std::size_t i = starts[g]; i < end; ++i) bar = std::max(bar, kept_bars[i]);
        group_bars.push_back(bar);
      }
      group_bars.front() = std::max(group_bars.front(), std::abs(kept.front()));
      return {Spectrum(2, std::move(groups), lambda_max), std::move(group_bars),
              circle.total_length(), 2 * m};
    }

    previous_diff = diffs;
    coarse = fine;
    m *= 2;
  }

  // Largest λ below which every bar met the tolerance.
  double certified = 0.0;
  for (std::size_t i = 0; i < last_values.size(); ++i) {
    if (last_bars[i] > options.bar_tolerance * std::max(1.0, std::abs(last_values[i]))) break;
    certified = last_values[i];
  }
  std::ostringstream msg;
  msg << "certified_spectrum: error bars not met up to lambda_max=" << lambda_max
      << " at resolution " << options.max_resolution << "; certified up to " << certified;
  throw ResolutionInsufficient(msg.str(), certified, last_bars);
}

}  // namespace coneh
