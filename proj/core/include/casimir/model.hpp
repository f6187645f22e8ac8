#pragma once

#include <span>
#include <vector>

#include "casimir/model_spec.hpp"
#include "casimir/spectrum.hpp"

namespace casimir {

/// A model that passed validate_stability. Immutable; carries its exact
/// spectrum so repeated thermodynamic evaluations do not recompute it.
class OscillatorModel {
 public:
  const ModelSpec& spec() const noexcept { return spec_; }
  ModelKind kind() const noexcept { return spec_.kind; }
  double a1() const noexcept { return spec_.a1; }
  double a2() const noexcept { return spec_.a2; }
  std::span<const Mediator> mediators() const noexcept { return spec_.mediators; }
  const ModeSpectrum& spectrum() const noexcept { return spectrum_; }

  friend OscillatorModel validate_stability(ModelSpec spec);

 private:
  OscillatorModel(ModelSpec spec, ModeSpectrum spectrum)
      : spec_(std::move(spec)), spectrum_(std::move(spectrum)) {}

  ModelSpec spec_;
  ModeSpectrum spectrum_;
};

/// Accepts iff the spec is well formed and every squared eigenfrequency of
/// the coupled system is strictly positive. Throws Error(instability) naming
/// the offending root otherwise.
OscillatorModel validate_stability(ModelSpec spec);

/// A_i = a + zeta^2.
double response_factor(double a, double zeta);

struct InteractionQuantities {
  double d1 = 0.0;
  double d2 = 0.0;
  /// 1 - D1 D2 / ((1 - D1)(1 - D2)): the part of Q that couples 1 and 2.
  double interaction_factor = 1.0;
  /// (1 - D1, 1 - D2): radiation reaction of each oscillator on its own.
  double self_first = 1.0;
  double self_second = 1.0;
};

/// D_j(zeta) for the model's kind:
///   tm: D_j = (1/A_j) sum_i c_i^2 / A_i
///   te: D_j = -(zeta^2 / (a_j A_j)) sum_i c_i^2 / A_i
/// Throws Error(instability) if a self factor 1 - D_j vanishes.
InteractionQuantities d_factors(const OscillatorModel& model, double zeta);

/// Full (2 + M) x (2 + M) determinant of K + zeta^2, evaluated by LU without
/// using the D_j factorization.
double q_determinant_direct(const OscillatorModel& model, double zeta);

/// A1 A2 (1 - D1)(1 - D2) * interaction_factor * prod_{i>=3} A_i.
double q_determinant_factored(const OscillatorModel& model, double zeta);

/// Multiple-scattering form 1 - t1 t2 with t_j = D_j / (1 - D_j).
double scattering_form_factor(double d1, double d2);

}  // namespace casimir
