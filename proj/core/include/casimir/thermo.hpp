#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "casimir/matsubara.hpp"
#include "casimir/model.hpp"

namespace casimir {

struct ThermoOptions {
  double rel_tol = 1e-10;
  std::int64_t n_max_cap = 10'000'000;
  /// Finite-difference step relative to T (or beta).
  double derivative_step = 1e-4;

  friend bool operator==(const ThermoOptions&, const ThermoOptions&) = default;
};

/// F(T) of some subsystem; the generic input of the derivative helpers.
using FreeEnergyFunction = std::function<double(double)>;

/// ln(interaction_factor(zeta)) computed as log1p(-t1 t2).
double interaction_log_term(const OscillatorModel& model, double zeta);

/// ln(Q / prod A) = ln((1 - D1)(1 - D2) interaction_factor) = log1p(-D1 - D2).
double coupling_log_term(const OscillatorModel& model, double zeta);

/// beta F = (1/2) sum_n ln(interaction_factor(zeta_n)), with series details.
SeriesSum interaction_beta_free_energy(const OscillatorModel& model, double temperature,
                                       const ThermoOptions& options = {});

/// Interaction (Casimir) free energy between oscillators 1 and 2. F <= 0.
/// Throws Error(domain) for T <= 0.
double interaction_free_energy(const OscillatorModel& model, double temperature,
                               const ThermoOptions& options = {});

/// Free energy of switching on all couplings, (T/2) sum_n ln(Q / prod A).
/// Includes the dressing of each oscillator by the mediators.
double coupling_free_energy(const OscillatorModel& model, double temperature,
                            const ThermoOptions& options = {});

struct Derivative {
  double value = 0.0;
  double error = 0.0;  // |D(h/2) - D(h)|, the Richardson correction size
};

/// U = d(beta F)/d beta by central differences in beta, Richardson-extrapolated
/// from steps h and h/2 with h = rel_step * beta.
Derivative internal_energy(const FreeEnergyFunction& free_energy, double temperature,
                           double rel_step = 1e-4);

/// S = -dF/dT, same scheme with h = rel_step * T.
Derivative entropy(const FreeEnergyFunction& free_energy, double temperature,
                   double rel_step = 1e-4);

double internal_energy(const OscillatorModel& model, double temperature,
                       const ThermoOptions& options = {});
double entropy(const OscillatorModel& model, double temperature,
               const ThermoOptions& options = {});

struct ThermoPoint {
  double T = 0.0;
  double F = 0.0;
  double U = 0.0;
  double S = 0.0;
  /// Entropy values with |S| below this are not resolved from zero.
  double S_noise = 0.0;

  /// -1, 0 or +1; 0 when |S| <= S_noise.
  int entropy_sign() const noexcept;
};

ThermoPoint evaluate_point(const FreeEnergyFunction& free_energy, double temperature,
                           const ThermoOptions& options = {});

/// A temperature range on which S < 0. An end that coincides with the edge of
/// the sampled grid is flagged open: the sign there was not seen to change.
struct EntropyInterval {
  double T_lo = 0.0;
  double T_hi = 0.0;
  bool open_lo = false;
  bool open_hi = false;
};

struct ThermoCurve {
  std::vector<ThermoPoint> rows;
  std::vector<EntropyInterval> negative_entropy_intervals;
};

/// Maximal runs of resolved S < 0 in `rows`. With `refine` set, each interior
/// boundary is bisected on the sign of S(T) until (T_hi - T_lo) / T_lo <= 1e-4.
std::vector<EntropyInterval> negative_entropy_intervals(std::span<const ThermoPoint> rows,
                                                        const FreeEnergyFunction& refine = {},
                                                        const ThermoOptions& options = {});

/// Evaluates (F, U, S) at each temperature. The grid must be ascending and
/// positive. A failing point rethrows its error with the temperature attached.
ThermoCurve sweep(const FreeEnergyFunction& free_energy, std::span<const double> temperatures,
                  const ThermoOptions& options = {});

ThermoCurve sweep(const OscillatorModel& model, std::span<const double> temperatures,
                  const ThermoOptions& options = {});

enum class Spacing { linear, log };

std::vector<double> make_grid(double lo, double hi, int points, Spacing spacing);

}  // namespace casimir
