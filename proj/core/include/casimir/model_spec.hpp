#pragma once

#include <string_view>
#include <vector>

namespace casimir {

/// Which oscillator model is described.
///
/// tm kinds couple the mediating coordinates to the coordinates of
/// oscillators 1 and 2 (c x_j x_i). te kinds couple them to the momenta,
/// (p_j - sum_i c_i x_i)^2 / 2, which in the momentum representation adds
/// the c_i c_l mu block to the mediator sub-matrix.
enum class ModelKind { tm3, te3, tm_bath, te_bath };

std::string_view to_string(ModelKind kind) noexcept;
/// Parses "tm3", "te3", "tm_bath", "te_bath"; throws Error(config) otherwise.
ModelKind parse_model_kind(std::string_view text);

constexpr bool is_momentum_coupled(ModelKind kind) noexcept {
  return kind == ModelKind::te3 || kind == ModelKind::te_bath;
}

/// A mediating oscillator: squared eigenfrequency and its coupling to both
/// oscillators 1 and 2.
struct Mediator {
  double a = 1.0;
  double c = 0.0;

  friend bool operator==(const Mediator&, const Mediator&) = default;
};

/// Unvalidated model description (units hbar = k_B = m = 1).
struct ModelSpec {
  ModelKind kind = ModelKind::tm3;
  double a1 = 1.0;
  double a2 = 1.0;
  std::vector<Mediator> mediators;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Structural checks only: all squared frequencies finite and > 0, couplings
/// finite, at least one mediator, exactly one for tm3/te3.
void check_well_formed(const ModelSpec& spec);

/// Plane-wave-like bath: mediators at k_i = i * dk, i = 1..modes, with
/// dk = k_max / modes, a_i = k_i^2 and c_i^2 = lambda^2 * dk.
struct BathGrid {
  int modes = 4;
  double k_max = 3.0;
  double lambda = 0.3;

  friend bool operator==(const BathGrid&, const BathGrid&) = default;
};

std::vector<Mediator> generate_bath(const BathGrid& grid);

}  // namespace casimir
