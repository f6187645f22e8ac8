#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace casimir {

enum class ErrorKind {
  domain,       // argument outside the mathematical domain (T <= 0, r <= 0, ...)
  instability,  // non-positive squared eigenfrequency, D_j = 1, |alpha psi| >= 1
  convergence,  // Matsubara truncation ceiling reached
  numeric,      // root finding produced an unacceptable result
  config,       // schema violation in a run configuration
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library. `parameter` names the offending
/// input (a config key path, "T", "r", ...) when one is known.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string parameter = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& parameter() const noexcept { return parameter_; }
  const std::string& message() const noexcept { return message_; }

  /// Same error with `context` prefixed to the message.
  Error with_context(std::string_view context) const;
  Error with_parameter(std::string parameter) const;

 private:
  ErrorKind kind_;
  std::string message_;
  std::string parameter_;
};

}  // namespace casimir
