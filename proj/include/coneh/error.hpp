#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coneh {

enum class ErrorKind {
  invalid_argument,
  resolution_insufficient,
  numeric_failure,
  degenerate_input,
  precondition_violation,
  unsupported_cross_section,
  parse_error,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base of every error raised by the library. The kind is what the CLI maps
/// onto exit codes and structured error objects.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A numeric cross-section (or a request against one) exceeded the range in
/// which its eigenvalues are certified.
class ResolutionInsufficient : public Error {
 public:
  ResolutionInsufficient(const std::string& message, double certified_bound,
                         std::vector<double> achieved_bars = {})
      : Error(ErrorKind::resolution_insufficient, message),
        certified_bound_(certified_bound),
        achieved_bars_(std::move(achieved_bars)) {}

  double certified_bound() const noexcept { return certified_bound_; }
  const std::vector<double>& achieved_bars() const noexcept { return achieved_bars_; }

 private:
  double certified_bound_;
  std::vector<double> achieved_bars_;
};

class NumericFailure : public Error {
 public:
  NumericFailure(const std::string& message, double achieved_estimate = 0.0)
      : Error(ErrorKind::numeric_failure, message), achieved_estimate_(achieved_estimate) {}

  double achieved_estimate() const noexcept { return achieved_estimate_; }

 private:
  double achieved_estimate_;
};

inline Error invalid_argument(const std::string& message) {
  return Error(ErrorKind::invalid_argument, message);
}

}  // namespace coneh
