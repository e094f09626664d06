#include "coneh/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <variant>

#include "coneh/cone_grid_verifier.hpp"
#include "coneh/cone_harmonics.hpp"
#include "coneh/cross_section.hpp"
#include "coneh/error.hpp"
#include "coneh/exponent.hpp"
#include "coneh/growth_calculus.hpp"
#include "coneh/selftest.hpp"
#include "coneh/spectrum_io.hpp"

#ifndef CONEH_VERSION
#define CONEH_VERSION "0.0.0"
#endif

namespace coneh::cli {

namespace {

using json = nlohmann::ordered_json;

struct Settings {
  std::string cross_section;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<double> lambda_max;
  std::string format = "json";
  std::string output;
  std::uint64_t seed = kDefaultSeed;

  std::vector<double> lambdas;
  std::optional<double> from, to;
  int steps = 11;
  std::optional<double> k;
  std::optional<double> k_max;
  std::vector<double> ks;
  std::string harmonic;
  std::vector<double> radii;

  double alpha = 1.0;
  int j = 1;
  double c = 1.0;
  double length = 2.0 * std::numbers::pi;
  double r_min = 1.0;
  double r_max = 2.0;
  std::vector<int> resolutions{32, 64, 128, 256};
  bool negative_control = false;
  std::string dump;
};

struct Report {
  json doc;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  int exit_code = kExitOk;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
std::string num(std::int64_t v) { return std::to_string(v); }
std::string flag(bool v) { return v ? "true" : "false"; }

double default_lambda_max(double needed) { return std::max(1.25 * needed, needed + 4.0); }

CrossSection load_cross_section(const Settings& s, double needed) {
  if (s.cross_section.empty()) throw invalid_argument("--cross-section is required");
  return parse_cross_section(s.cross_section, s.lambda_max.value_or(default_lambda_max(needed)));
}

int resolve_n(const Settings& s, const CrossSection& x) { return s.n.value_or(x.cone_dimension()); }

// Cone dimension implied by a cross-section string before loading, for
// sizing the certification range of numeric cross-sections.
int guess_dimension(const Settings& s) {
  if (s.n) return *s.n;
  if (s.cross_section.rfind("sphere:", 0) == 0) {
    try {
      return std::stoi(s.cross_section.substr(7)) + 1;
    } catch (...) {
    }
  }
  return 2;
}

json config_json(const std::string& command, const Settings& s) {
  json c;
  c["command"] = command;
  if (!s.cross_section.empty()) c["cross_section"] = s.cross_section;
  if (s.n) c["n"] = *s.n;
  if (s.m) c["m"] = *s.m;
  if (s.lambda_max) c["lambda_max"] = *s.lambda_max;
  if (!s.lambdas.empty()) c["lambda"] = s.lambdas;
  if (s.from) c["from"] = *s.from;
  if (s.to) c["to"] = *s.to;
  if (s.from || s.to) c["steps"] = s.steps;
  if (s.k) c["k"] = *s.k;
  if (s.k_max) c["k_max"] = *s.k_max;
  if (!s.ks.empty()) c["k_list"] = s.ks;
  if (!s.harmonic.empty()) c["harmonic"] = s.harmonic;
  if (!s.radii.empty()) c["radii"] = s.radii;
  if (command == "verify-grid") {
    c["alpha"] = s.alpha;
    c["j"] = s.j;
    c["c"] = s.c;
    c["length"] = s.length;
    c["r_min"] = s.r_min;
    c["r_max"] = s.r_max;
    c["resolutions"] = s.resolutions;
    c["negative_control"] = s.negative_control;
    if (!s.dump.empty()) c["dump"] = s.dump;
  }
  c["format"] = s.format;
  if (!s.output.empty()) c["output"] = s.output;
  c["seed"] = s.seed;
  return c;
}

json cross_section_json(const CrossSection& x) {
  json c;
  c["description"] = x.describe();
  c["cone_dimension"] = x.cone_dimension();
  c["measure"] = measure(x);
  if (x.is_closed_form()) {
    c["certified_bound"] = nullptr;
  } else {
    c["certified_bound"] = x.certified_bound();
    c["error_bars"] = x.error_bars();
  }
  return c;
}

json growth_json(const GrowthReport& r) {
  json o;
  o["k"] = r.k;
  o["n"] = r.n;
  o["lower"] = r.lower;
  o["upper"] = r.upper;
  if (r.exact) o["exact"] = *r.exact;
  else o["exact"] = nullptr;
  o["cone_dimension"] = r.cone_dimension;
  o["resonant"] = r.resonant;
  o["liouville"] = r.liouville;
  o["nearest_resonance"] = r.nearest_resonance;
  o["resonance_distance"] = r.resonance_distance;
  return o;
}

Report cmd_spectrum(const Settings& s) {
  if (!s.lambda_max) throw invalid_argument("spectrum: --lambda-max is required");
  const CrossSection x = load_cross_section(s, *s.lambda_max);
  const Spectrum levels = spectrum_upto(x, *s.lambda_max);
  std::vector<double> bars;
  if (!x.is_closed_form()) {
    const auto all = x.error_bars();
    bars.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(levels.size()));
  }
  Report r;
  r.doc["cross_section"] = cross_section_json(x);
  r.doc["spectrum"] = spectrum_to_json(levels, measure(x), bars);
  r.csv_header = {"lambda", "mult", "error_bar"};
  for (std::size_t i = 0; i < levels.size(); ++i) {
    r.csv_rows.push_back({num(levels.entries()[i].lambda), num(levels.entries()[i].multiplicity),
                          bars.empty() ? "0" : num(bars[i])});
  }
  return r;
}

std::vector<double> sweep(const Settings& s) {
  std::vector<double> out = s.lambdas;
  if (s.from || s.to) {
    if (!s.from || !s.to) throw invalid_argument("--from and --to must be given together");
    if (s.steps < 2) throw invalid_argument("--steps must be >= 2");
    for (int i = 0; i < s.steps; ++i) out.push_back(*s.from + (*s.to - *s.from) * i / (s.steps - 1));
  }
  if (out.empty()) throw invalid_argument("give --lambda or --from/--to");
  return out;
}

Report cmd_count(const Settings& s) {
  const auto lambdas = sweep(s);
  const CrossSection x = load_cross_section(s, *std::max_element(lambdas.begin(), lambdas.end()));
  Report r;
  r.doc["cross_section"] = cross_section_json(x);
  r.doc["rows"] = json::array();
  r.csv_header = {"lambda", "count", "count_left"};
  for (double l : lambdas) {
    const auto n = counting(x, l);
    const auto nl = counting_left(x, l);
    r.doc["rows"].push_back({{"lambda", l}, {"count", n}, {"count_left", nl}});
    r.csv_rows.push_back({num(l), num(n), num(nl)});
  }
  return r;
}

Report cmd_hk(const Settings& s) {
  const int n_guess = guess_dimension(s);
  Report r;
  if (s.k_max) {
    const CrossSection x = load_cross_section(s, eigenvalue_from_exponent(*s.k_max, n_guess));
    const int n = resolve_n(s, x);
    r.doc["cross_section"] = cross_section_json(x);
    r.doc["steps"] = json::array();
    r.csv_header = {"k_lo", "k_hi", "lo_closed", "hi_closed", "h", "jump"};
    for (const auto& st : hk_staircase(x, n, *s.k_max)) {
      r.doc["steps"].push_back({{"k_lo", st.k_lo},
                                {"k_hi", st.k_hi},
                                {"lo_closed", st.lo_closed},
                                {"hi_closed", st.hi_closed},
                                {"h", st.h},
                                {"jump", st.jump}});
      r.csv_rows.push_back({num(st.k_lo), num(st.k_hi), flag(st.lo_closed), flag(st.hi_closed), num(st.h), num(st.jump)});
    }
    return r;
  }
  if (!s.k) throw invalid_argument("hk: give --k or --k-max");
  const CrossSection x = load_cross_section(s, eigenvalue_from_exponent(*s.k, n_guess));
  const GrowthReport g = hk_bounds(x, resolve_n(s, x), *s.k);
  r.doc["cross_section"] = cross_section_json(x);
  const json fields = growth_json(g);
  for (auto& [key, value] : fields.items()) r.doc[key] = value;
  r.csv_header = {"k", "n", "lower", "upper", "exact", "cone_dimension", "resonant", "liouville",
                  "nearest_resonance", "resonance_distance"};
  r.csv_rows.push_back({num(g.k), num(std::int64_t{g.n}), num(g.lower), num(g.upper), g.exact ? num(*g.exact) : "",
                        num(g.cone_dimension), flag(g.resonant), flag(g.liouville), num(g.nearest_resonance),
                        num(g.resonance_distance)});
  return r;
}

Report cmd_weyl(const Settings& s) {
  if (s.lambdas.empty()) throw invalid_argument("weyl: --lambda is required");
  const CrossSection x = load_cross_section(s, *std::max_element(s.lambdas.begin(), s.lambdas.end()));
  const int n = resolve_n(s, x);
  Report r;
  r.doc["cross_section"] = cross_section_json(x);
  r.doc["rows"] = json::array();
  r.csv_header = {"lambda", "count", "ratio", "limit", "deviation"};
  for (double l : s.lambdas) {
    const WeylSample w = weyl_ratio(x, n, l);
    r.doc["rows"].push_back(
        {{"lambda", w.lambda}, {"count", w.count}, {"ratio", w.ratio}, {"limit", w.limit}, {"deviation", w.deviation}});
    r.csv_rows.push_back({num(w.lambda), num(w.count), num(w.ratio), num(w.limit), num(w.deviation)});
  }
  return r;
}

Report cmd_asymptotic(const Settings& s) {
  if (s.ks.empty()) throw invalid_argument("asymptotic: --k is required");
  const double kmax = *std::max_element(s.ks.begin(), s.ks.end());
  const CrossSection x = load_cross_section(s, eigenvalue_from_exponent(kmax + 1.0, guess_dimension(s)));
  const int n = resolve_n(s, x);
  Report r;
  r.doc["cross_section"] = cross_section_json(x);
  r.doc["asymptotic_volume_ratio"] = asymptotic_volume_ratio(x, n);
  r.doc["asymptotic_ratio"] = asymptotic_ratio(x, n);
  r.doc["cesaro_limit"] = cesaro_limit(x, n);
  r.doc["rows"] = json::array();
  r.csv_header = {"k", "h", "pointwise_ratio", "pointwise_limit", "pointwise_deviation", "resonant",
                  "cesaro_ratio", "cesaro_limit", "cesaro_deviation", "cesaro_offset"};
  for (const auto& v : empirical_ratio_convergence(x, n, s.ks)) {
    r.doc["rows"].push_back({{"k", v.k},
                             {"h", v.h},
                             {"pointwise_ratio", v.pointwise_ratio},
                             {"pointwise_limit", v.pointwise_limit},
                             {"pointwise_deviation", v.pointwise_deviation},
                             {"resonant", v.resonant},
                             {"cesaro_ratio", v.cesaro_ratio},
                             {"cesaro_limit", v.cesaro_limit},
                             {"cesaro_deviation", v.cesaro_deviation},
                             {"cesaro_offset", v.cesaro_offset}});
    r.csv_rows.push_back({num(v.k), num(v.h), num(v.pointwise_ratio), num(v.pointwise_limit),
                          num(v.pointwise_deviation), flag(v.resonant), num(v.cesaro_ratio), num(v.cesaro_limit),
                          num(v.cesaro_deviation), num(v.cesaro_offset)});
  }
  return r;
}

Report cmd_collapsed(const Settings& s) {
  if (!s.k) throw invalid_argument("collapsed: --k is required");
  if (!s.n) throw invalid_argument("collapsed: --n is required");
  const double shift = (*s.n - s.m.value_or(*s.n)) / 2.0;
  const double needed = (*s.k + shift) * (*s.k + shift + s.m.value_or(*s.n) - 2.0);
  const CrossSection x = load_cross_section(s, needed);
  const int m = s.m.value_or(x.cone_dimension());
  const CollapsedReport c = collapsed_bounds(x, *s.n, m, *s.k);
  Report r;
  r.doc["cross_section"] = cross_section_json(x);
  r.doc["k"] = c.k;
  r.doc["n"] = c.n;
  r.doc["m"] = c.m;
  r.doc["V"] = c.V;
  r.doc["lower"] = c.lower;
  r.doc["upper"] = c.upper;
  r.doc["upper_argument"] = c.upper_argument;
  r.doc["limit_ratio"] = c.limit_ratio;
  r.csv_header = {"k", "n", "m", "V", "lower", "upper", "upper_argument", "limit_ratio"};
  r.csv_rows.push_back({num(c.k), num(std::int64_t{c.n}), num(std::int64_t{c.m}), num(c.V), num(c.lower),
                        num(c.upper), num(c.upper_argument), num(c.limit_ratio)});
  return r;
}

ConeHarmonic load_harmonic(const Settings& s) {
  if (s.harmonic.empty()) throw invalid_argument("--harmonic is required");
  return parse_cone_harmonic(read_text_file(s.harmonic));
}

Report cmd_frequency(const Settings& s) {
  const ConeHarmonic u = load_harmonic(s);
  std::vector<double> radii = s.radii;
  if (radii.empty()) radii = {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
  std::sort(radii.begin(), radii.end());
  Report r;
  r.doc["harmonic"] = to_json(u);
  r.doc["rows"] = json::array();
  r.csv_header = {"s", "I", "D", "U", "J", "identity_residual"};
  bool monotone = true;
  bool identity_ok = true;
  double prev_u = -1.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double sv = radii[i];
    const double U = frequency(u, sv);
    monotone = monotone && U >= prev_u - 1e-10;
    prev_u = U;
    json row{{"s", sv},
             {"I", boundary_mass(u, sv)},
             {"D", scaled_energy(u, sv)},
             {"U", U},
             {"J", ball_average(u, sv)}};
    std::string residual;
    if (i > 0 && radii[i - 1] < sv) {
      const auto f = frequency_identity_check(u, radii[i - 1], sv);
      row["identity_residual"] = f.residual;
      identity_ok = identity_ok && f.residual <= 1e-8;
      residual = num(f.residual);
    } else {
      row["identity_residual"] = nullptr;
    }
    r.csv_rows.push_back({num(sv), num(row["I"].get<double>()), num(row["D"].get<double>()), num(U),
                          num(row["J"].get<double>()), residual});
    r.doc["rows"].push_back(std::move(row));
  }
  const GrowthOrderReport g = sharp_growth_order(u);
  r.doc["gamma"] = g.gamma;
  r.doc["member_at_gamma"] = g.member_at_gamma;
  bool witnesses = true;
  for (const auto& w : g.witnesses) witnesses = witnesses && w.verified;
  r.doc["non_membership_verified"] = witnesses;
  r.doc["monotone"] = monotone;
  r.doc["identity_within_tolerance"] = identity_ok;
  const bool passed = monotone && identity_ok && g.member_at_gamma && witnesses;
  r.doc["passed"] = passed;
  r.exit_code = passed ? kExitOk : kExitFailure;
  return r;
}

Report cmd_three_circles(const Settings& s) {
  if (!s.k) throw invalid_argument("three-circles: --k is required");
  const ConeHarmonic u = load_harmonic(s);
  std::optional<CrossSection> x;
  if (!s.cross_section.empty()) x = load_cross_section(s, eigenvalue_from_exponent(*s.k, u.n()));
  std::vector<double> radii = s.radii;
  if (radii.empty()) radii = {0.5, 1.0, 2.0, 4.0};
  Report r;
  if (x) r.doc["cross_section"] = cross_section_json(*x);
  r.doc["harmonic"] = to_json(u);
  r.doc["rows"] = json::array();
  r.csv_header = {"s", "ratio", "bound", "cap", "satisfied"};
  bool all = true;
  for (double sv : radii) {
    const auto t = three_circles_ratio(u, sv, *s.k, x ? &*x : nullptr);
    all = all && t.satisfied;
    r.doc["rows"].push_back({{"s", sv}, {"ratio", t.ratio}, {"bound", t.bound}, {"cap", t.cap}, {"satisfied", t.satisfied}});
    r.csv_rows.push_back({num(sv), num(t.ratio), num(t.bound), num(t.cap), flag(t.satisfied)});
  }
  r.doc["passed"] = all;
  r.exit_code = all ? kExitOk : kExitFailure;
  return r;
}

Report cmd_verify_grid(const Settings& s) {
  const ConvergenceReport c = convergence_order({s.alpha, s.j, s.c}, s.length, s.r_min, s.r_max, s.resolutions);
  Report r;
  r.doc["order"] = c.order;
  r.doc["skipped"] = c.skipped;
  r.doc["warning"] = c.warning;
  if (!c.message.empty()) r.doc["message"] = c.message;
  r.doc["rows"] = json::array();
  r.csv_header = {"resolution", "h", "max_residual", "l2_residual", "control_residual"};
  bool control_ok = true;
  for (std::size_t i = 0; i < c.resolutions.size(); ++i) {
    json row{{"resolution", c.resolutions[i]},
             {"h", c.h[i]},
             {"max_residual", c.max_residuals[i]},
             {"l2_residual", c.l2_residuals[i]}};
    std::string control;
    if (s.negative_control) {
      const int m = c.resolutions[i];
      const auto grid = ConeGrid::sample([](double rr, double) { return rr * rr; }, s.length, s.r_min, s.r_max, m, m);
      const double res = laplacian_residual(grid).max_norm;
      row["control_residual"] = res;
      control_ok = control_ok && res >= 0.1;
      control = num(res);
    }
    r.csv_rows.push_back({std::to_string(c.resolutions[i]), num(c.h[i]), num(c.max_residuals[i]),
                          num(c.l2_residuals[i]), control});
    r.doc["rows"].push_back(std::move(row));
  }
  if (!s.dump.empty()) {
    const double freq = 2.0 * std::numbers::pi * s.j / s.length;
    const double norm = s.j == 0 ? 1.0 / std::sqrt(s.length) : std::sqrt(2.0 / s.length);
    const auto grid = ConeGrid::sample(
        [&](double rr, double th) { return s.c * norm * std::pow(rr, s.alpha) * (s.j == 0 ? 1.0 : std::cos(freq * th)); },
        s.length, s.r_min, s.r_max, c.resolutions.back(), c.resolutions.back());
    std::ofstream f(s.dump);
    if (!f) throw invalid_argument("cannot open dump file " + s.dump);
    grid.write_csv(f);
  }
  const bool order_ok = c.skipped || (!c.warning && c.order >= 1.8 && c.order <= 2.2);
  r.doc["order_within_range"] = order_ok;
  if (s.negative_control) r.doc["negative_control_passed"] = control_ok;
  r.doc["passed"] = order_ok && control_ok;
  r.exit_code = order_ok && control_ok ? kExitOk : kExitFailure;
  return r;
}

Report cmd_selftest(const Settings& s) {
  const SelftestReport t = run_selftest(s.seed);
  Report r;
  r.doc["checks"] = json::array();
  r.csv_header = {"name", "passed", "trials", "detail"};
  for (const auto& c : t.checks) {
    r.doc["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"trials", c.trials}, {"detail", c.detail}});
    r.csv_rows.push_back({c.name, flag(c.passed), num(c.trials), c.detail});
  }
  r.doc["passed"] = t.passed();
  r.exit_code = t.passed() ? kExitOk : kExitFailure;
  return r;
}

std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char ch : v) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string render(const Report& r, const std::string& format) {
  if (format == "json") return r.doc.dump(2) + "\n";
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    out += '\n';
  };
  line(r.csv_header);
  for (const auto& row : r.csv_rows) line(row);
  return out;
}

json envelope(const std::string& command, const Settings& s) {
  json doc;
  doc["schema"] = "coneh/1";
  doc["version"] = CONEH_VERSION;
  doc["config"] = config_json(command, s);
  return doc;
}

void write(const std::string& text, const Settings& s, std::ostream& out) {
  if (s.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(s.output, std::ios::binary);
  if (!f) throw invalid_argument("cannot open output file " + s.output);
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Harmonic functions of polynomial growth on Euclidean cones", "coneh"};
  app.set_version_flag("--version", CONEH_VERSION);
  app.require_subcommand(1, 1);

  auto common = [&](CLI::App* sub, bool needs_cross_section) {
    auto* opt = sub->add_option("--cross-section,-x", s.cross_section,
                                "sphere:<d> | circle:<L> | metric-circle:<file> | spectrum:<file>");
    if (needs_cross_section) opt->required();
    sub->add_option("--format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output,-o", s.output, "write the report to this file instead of stdout");
    sub->add_option("--seed", s.seed, "seed for randomized suites");
  };
  auto lambda_max = [&](CLI::App* sub) {
    sub->add_option("--lambda-max", s.lambda_max, "certification bound for numeric cross-sections");
  };

  auto* spectrum = app.add_subcommand("spectrum", "certified spectrum up to --lambda-max");
  common(spectrum, true);
  lambda_max(spectrum);

  auto* count = app.add_subcommand("count", "counting function N_X at given values or a sweep");
  common(count, true);
  lambda_max(count);
  count->add_option("--lambda", s.lambdas, "values of lambda");
  count->add_option("--from", s.from, "sweep start");
  count->add_option("--to", s.to, "sweep end");
  count->add_option("--steps", s.steps, "sweep points");

  auto* hk = app.add_subcommand("hk", "bounds on h_k, or the staircase up to --k-max");
  common(hk, true);
  lambda_max(hk);
  hk->add_option("--n", s.n, "cone dimension (defaults to the cross-section's)");
  hk->add_option("--k", s.k, "growth order");
  hk->add_option("--k-max", s.k_max, "emit the staircase on (0, k_max]");

  auto* weyl = app.add_subcommand("weyl", "Weyl ratio table");
  common(weyl, true);
  lambda_max(weyl);
  weyl->add_option("--n", s.n, "cone dimension");
  weyl->add_option("--lambda", s.lambdas, "values of lambda")->required();

  auto* asym = app.add_subcommand("asymptotic", "pointwise and Cesaro ratio table");
  common(asym, true);
  lambda_max(asym);
  asym->add_option("--n", s.n, "cone dimension");
  asym->add_option("--k", s.ks, "growth orders")->required();

  auto* collapsed = app.add_subcommand("collapsed", "bounds when the tangent cone has dimension m < n");
  common(collapsed, true);
  lambda_max(collapsed);
  collapsed->add_option("--n", s.n, "manifold dimension")->required();
  collapsed->add_option("--m", s.m, "cone dimension (defaults to the cross-section's)");
  collapsed->add_option("--k", s.k, "growth order")->required();

  auto* freq = app.add_subcommand("frequency", "I, D, U, J tables and identity residuals for a cone harmonic");
  common(freq, false);
  freq->add_option("--harmonic", s.harmonic, "cone harmonic JSON file")->required();
  freq->add_option("--radii", s.radii, "radii");

  auto* three = app.add_subcommand("three-circles", "doubling ratios J(s)/J(s/2) against 2^(2 alpha_N)");
  common(three, false);
  lambda_max(three);
  three->add_option("--harmonic", s.harmonic, "cone harmonic JSON file")->required();
  three->add_option("--k", s.k, "growth order")->required();
  three->add_option("--radii", s.radii, "radii");

  auto* grid = app.add_subcommand("verify-grid", "finite-difference harmonicity and convergence order");
  common(grid, false);
  grid->add_option("--alpha", s.alpha, "mode exponent");
  grid->add_option("--j", s.j, "Fourier index");
  grid->add_option("--c", s.c, "coefficient");
  grid->add_option("--length", s.length, "circle length");
  grid->add_option("--r-min", s.r_min, "inner radius");
  grid->add_option("--r-max", s.r_max, "outer radius");
  grid->add_option("--resolutions", s.resolutions, "doubling sequence of grid sizes");
  grid->add_flag("--negative-control", s.negative_control, "also check u = r^2");
  grid->add_option("--dump", s.dump, "CSV dump of the finest grid");

  auto* self = app.add_subcommand("selftest", "run the invariant suite");
  common(self, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << CONEH_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  try {
    Report r;
    if (command == "spectrum") r = cmd_spectrum(s);
    else if (command == "count") r = cmd_count(s);
    else if (command == "hk") r = cmd_hk(s);
    else if (command == "weyl") r = cmd_weyl(s);
    else if (command == "asymptotic") r = cmd_asymptotic(s);
    else if (command == "collapsed") r = cmd_collapsed(s);
    else if (command == "frequency") r = cmd_frequency(s);
    else if (command == "three-circles") r = cmd_three_circles(s);
    else if (command == "verify-grid") r = cmd_verify_grid(s);
    else r = cmd_selftest(s);

    json doc = envelope(command, s);
    for (auto& [key, value] : r.doc.items()) doc[key] = value;
    r.doc = std::move(doc);
    write(render(r, s.format), s, out);
    return r.exit_code;
  } catch (const std::exception& e) {
    json doc = envelope(command, s);
    json error;
    int code = kExitFailure;
    if (const auto* ce = dynamic_cast<const Error*>(&e)) {
      error["kind"] = std::string(to_string(ce->kind()));
      if (const auto* ri = dynamic_cast<const ResolutionInsufficient*>(&e)) {
        code = kExitResolution;
        error["certified_bound"] = ri->certified_bound();
        if (!ri->achieved_bars().empty()) error["achieved_bars"] = ri->achieved_bars();
      }
      if (const auto* nf = dynamic_cast<const NumericFailure*>(&e)) error["achieved_estimate"] = nf->achieved_estimate();
    } else {
      error["kind"] = "internal";
    }
    error["message"] = e.what();
    doc["error"] = error;
    out << doc.dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return code;
  }
}

}  // namespace coneh::cli
