#pragma once

#include <string>

#include "casimir/cli/config.hpp"
#include "casimir/error.hpp"

namespace casimir::cli {

struct RunOutput {
  std::string text;
  /// False when a verification check failed; `failed` names the first one.
  bool ok = true;
  std::string failed;
};

/// Validates the physics of `config`, runs the sweep (or the checks) and
/// renders the table in the requested format. Errors carry the config key
/// they trace back to.
RunOutput run(const RunConfig& config);

/// 12 significant digits, '.' decimal point, independent of the locale.
std::string format_number(double value);

/// One-line JSON record {"error":..,"parameter":..,"message":..}.
std::string error_record(const Error& error);
std::string error_record(std::string_view kind, std::string_view parameter, std::string_view message);

}  // namespace casimir::cli
