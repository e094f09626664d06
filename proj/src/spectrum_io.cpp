#include "coneh/spectrum_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "coneh/error.hpp"

namespace coneh {

namespace {

Error parse_failure(std::size_t line, const std::string& what) {
  return Error(ErrorKind::parse_error, "line " + std::to_string(line) + ": " + what);
}

// Byte offsets of the elements of the top-level "entries" array, found by a
// minimal scan that tracks strings and nesting depth. Only called on text that
// nlohmann already accepted, so the structure is well formed.
std::vector<std::size_t> entry_offsets(std::string_view text) {
  std::vector<std::size_t> offsets;
  int depth = 0;
  bool in_string = false;
  std::string last_key;
  std::string current;
  bool in_entries = false;
  bool expect_element = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_string) {
      if (ch == '\\') {
        ++i;
        continue;
      }
      if (ch == '"') {
        in_string = false;
        if (depth == 1) last_key = current;
      } else {
        current.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (in_entries && depth == 2 && expect_element) {
          offsets.push_back(i);
          expect_element = false;
        }
        in_string = true;
        current.clear();
        break;
      case '{':
      case '[':
        if (in_entries && depth == 2 && expect_element) {
          offsets.push_back(i);
          expect_element = false;
        }
        ++depth;
        if (ch == '[' && depth == 2 && last_key == "entries") {
          in_entries = true;
          expect_element = true;
        }
        break;
      case '}':
      case ']':
        if (in_entries && depth == 2) in_entries = false;
        --depth;
        break;
      case ',':
        if (in_entries && depth == 2) expect_element = true;
        break;
      default:
        if (in_entries && depth == 2 && expect_element &&
            !(ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r')) {
          offsets.push_back(i);
          expect_element = false;
        }
        break;
    }
  }
  return offsets;
}

double require_number(const nlohmann::json& obj, const char* key, std::size_t line) {
  if (!obj.contains(key)) throw parse_failure(line, std::string("missing field \"") + key + "\"");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw parse_failure(line, std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

}  // namespace

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

SpectrumFile parse_spectrum_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    throw parse_failure(line_of_offset(text, offset), e.what());
  }
  if (!doc.is_object()) throw parse_failure(1, "spectrum document must be a JSON object");

  const double dim_value = require_number(doc, "ambient_dim", 1);
  if (dim_value != static_cast<int>(dim_value) || dim_value < 2) {
    throw parse_failure(1, "ambient_dim must be an integer >= 2");
  }
  const double measure = require_number(doc, "measure", 1);
  if (!(measure > 0.0)) throw parse_failure(1, "measure must be positive");
  const double bound = require_number(doc, "truncation_bound", 1);
  if (!doc.contains("entries") || !doc.at("entries").is_array()) {
    throw parse_failure(1, "missing array \"entries\"");
  }

  const auto offsets = entry_offsets(text);
  const auto& entries_json = doc.at("entries");
  std::vector<SpectralEntry> entries;
  entries.reserve(entries_json.size());
  for (std::size_t i = 0; i < entries_json.size(); ++i) {
    const std::size_t line = i < offsets.size() ? line_of_offset(text, offsets[i]) : 1;
    const auto& item = entries_json[i];
    if (!item.is_object()) throw parse_failure(line, "entry " + std::to_string(i) + " must be an object");
    const double lambda = require_number(item, "lambda", line);
    const double mult = require_number(item, "mult", line);
    if (mult != static_cast<double>(static_cast<std::int64_t>(mult)) || mult < 1) {
      throw parse_failure(line, "entry " + std::to_string(i) + ": mult must be a positive integer");
    }
    if (lambda < 0.0) throw parse_failure(line, "entry " + std::to_string(i) + ": negative eigenvalue");
    if (i == 0 && (lambda != 0.0 || mult != 1)) {
      throw parse_failure(line, "first entry must be lambda=0 with mult=1 (connected cross-section)");
    }
    if (i > 0 && !(lambda > entries.back().lambda)) {
      throw parse_failure(line, "entry " + std::to_string(i) + ": eigenvalues must be strictly increasing");
    }
    if (lambda > bound) {
      throw parse_failure(line, "entry " + std::to_string(i) + ": eigenvalue exceeds truncation_bound");
    }
    entries.push_back({lambda, static_cast<std::int64_t>(mult)});
  }
  if (entries.empty()) throw parse_failure(1, "entries must contain at least (0, 1)");

  std::vector<double> bars;
  if (doc.contains("error_bars")) {
    for (const auto& b : doc.at("error_bars")) bars.push_back(b.get<double>());
    if (bars.size() != entries.size()) throw parse_failure(1, "error_bars length differs from entries");
  }
  return {Spectrum(static_cast<int>(dim_value), std::move(entries), bound), measure, std::move(bars)};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse_error, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SpectrumFile load_spectrum_file(const std::string& path) {
  return parse_spectrum_json(read_text_file(path));
}

nlohmann::ordered_json spectrum_to_json(const Spectrum& spectrum, double measure,
                                        const std::vector<double>& error_bars) {
  nlohmann::ordered_json out;
  out["ambient_dim"] = spectrum.ambient_dim();
  out["measure"] = measure;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : spectrum.entries()) {
    entries.push_back({{"lambda", e.lambda}, {"mult", e.multiplicity}});
  }
  out["entries"] = std::move(entries);
  out["truncation_bound"] = spectrum.truncation_bound();
  if (!error_bars.empty()) out["error_bars"] = error_bars;
  return out;
}

}  // namespace coneh
