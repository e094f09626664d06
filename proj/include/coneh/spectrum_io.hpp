#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "coneh/spectrum.hpp"

namespace coneh {

/// A spectrum file: { "ambient_dim", "measure", "entries": [{"lambda","mult"}],
/// "truncation_bound" } plus an optional "error_bars" array.
struct SpectrumFile {
  Spectrum spectrum;
  double measure;
  std::vector<double> error_bars;
};

/// Parses and validates a spectrum document. Errors are parse-error with a
/// "line N:" prefix pointing at the offending token or entry.
SpectrumFile parse_spectrum_json(std::string_view text);
SpectrumFile load_spectrum_file(const std::string& path);

nlohmann::ordered_json spectrum_to_json(const Spectrum& spectrum, double measure,
                                        const std::vector<double>& error_bars = {});

/// 1-based line number of a byte offset.
std::size_t line_of_offset(std::string_view text, std::size_t offset);

std::string read_text_file(const std::string& path);

}  // namespace coneh
