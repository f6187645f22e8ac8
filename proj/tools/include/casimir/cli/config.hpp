#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "casimir/dipole.hpp"
#include "casimir/model_spec.hpp"
#include "casimir/thermo.hpp"

namespace casimir::cli {

enum class Command { tm3, te3, bath, dipole, verify };

std::string_view to_string(Command command) noexcept;
Command parse_command(std::string_view text);

enum class Format { csv, json };

struct SweepConfig {
  enum class Variable { T, r };

  Variable variable = Variable::T;
  double min = 0.01;
  double max = 100.0;
  int points = 25;
  Spacing spacing = Spacing::log;
  /// Fixed temperature of a distance sweep; unused for temperature sweeps.
  double temperature = 1e-4;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct OutputConfig {
  Format format = Format::csv;
  std::string path;  // empty: standard output

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

/// A validated run description. Only the block matching `command` is
/// meaningful; the others keep their defaults.
struct RunConfig {
  Command command = Command::tm3;
  ModelSpec model;
  std::optional<BathGrid> bath;  // set when the mediators came from the generator
  DipolePair dipole;
  SweepConfig sweep;
  OutputConfig output;
  ThermoOptions tolerance;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Defaults for a subcommand, as used when a block or key is omitted.
RunConfig default_config(Command command);

/// Parses and validates a JSON document for `command`. Unknown keys, wrong
/// types and out-of-range values throw Error(config) naming the key path
/// ("sweep.T_min", "model.mediators[1].c", ...). Stability is not checked here.
RunConfig parse_config(Command command, std::string_view text);

/// Sets scalar fields of a JSON document from "key.path=value" assignments.
/// Values are read as JSON scalars where possible and as strings otherwise.
std::string apply_overrides(std::string_view text, std::span<const std::string> assignments);

/// Canonical JSON form with every field written out; parse_config inverts it.
std::string emit_config(const RunConfig& config);

}  // namespace casimir::cli
