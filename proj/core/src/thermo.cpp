#include "casimir/thermo.hpp"

#include <cmath>
#include <sstream>

#include "casimir/error.hpp"

namespace casimir {

namespace {

void require_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorKind::domain, "temperature must be finite and > 0 (T = 0 is served by the mode-sum oracle)", "T");
  }
}

MatsubaraGrid grid_for(double temperature, const ThermoOptions& options) {
  return MatsubaraGrid::at_temperature(temperature, options.rel_tol, options.n_max_cap);
}

/// Richardson-extrapolated central difference of f at x with step h.
Derivative richardson(const std::function<double(double)>& f, double x, double h) {
  const double coarse = (f(x + h) - f(x - h)) / (2.0 * h);
  const double fine = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  return {(4.0 * fine - coarse) / 3.0, std::abs(fine - coarse)};
}

std::string format_temperature(double t) {
  std::ostringstream out;
  out.precision(12);
  out << "at T=" << t;
  return out.str();
}

}  // namespace

double interaction_log_term(const OscillatorModel& model, double zeta) {
  const auto q = d_factors(model, zeta);
  const double t1 = q.d1 / q.self_first;
  const double t2 = q.d2 / q.self_second;
  return std::log1p(-t1 * t2);
}

double coupling_log_term(const OscillatorModel& model, double zeta) {
  const auto q = d_factors(model, zeta);
  return std::log1p(-q.d1 - q.d2);
}

SeriesSum interaction_beta_free_energy(const OscillatorModel& model, double temperature,
                                       const ThermoOptions& options) {
  require_temperature(temperature);
  auto sum = sum_algebraic_series([&](double z) { return interaction_log_term(model, z); },
                                  grid_for(temperature, options), model.spectrum().max_frequency());
  sum.value *= 0.5;
  sum.tail *= 0.5;
  sum.error_bound *= 0.5;
  return sum;
}

double interaction_free_energy(const OscillatorModel& model, double temperature,
                               const ThermoOptions& options) {
  return temperature * interaction_beta_free_energy(model, temperature, options).value;
}

double coupling_free_energy(const OscillatorModel& model, double temperature,
                            const ThermoOptions& options) {
  require_temperature(temperature);
  const auto sum = sum_algebraic_series([&](double z) { return coupling_log_term(model, z); },
                                        grid_for(temperature, options),
                                        model.spectrum().max_frequency());
  return 0.5 * temperature * sum.value;
}

Derivative internal_energy(const FreeEnergyFunction& free_energy, double temperature,
                           double rel_step) {
  require_temperature(temperature);
  const double beta = 1.0 / temperature;
  auto beta_f = [&](double b) { return b * free_energy(1.0 / b); };
  return richardson(beta_f, beta, rel_step * beta);
}

Derivative entropy(const FreeEnergyFunction& free_energy, double temperature, double rel_step) {
  require_temperature(temperature);
  auto d = richardson(free_energy, temperature, rel_step * temperature);
  d.value = -d.value;
  return d;
}

double internal_energy(const OscillatorModel& model, double temperature,
                       const ThermoOptions& options) {
  return internal_energy([&](double t) { return interaction_free_energy(model, t, options); },
                         temperature, options.derivative_step)
      .value;
}

double entropy(const OscillatorModel& model, double temperature, const ThermoOptions& options) {
  return entropy([&](double t) { return interaction_free_energy(model, t, options); },
                 temperature, options.derivative_step)
      .value;
}

int ThermoPoint::entropy_sign() const noexcept {
  if (S > S_noise) return 1;
  if (S < -S_noise) return -1;
  return 0;
}

ThermoPoint evaluate_point(const FreeEnergyFunction& free_energy, double temperature,
                           const ThermoOptions& options) {
  require_temperature(temperature);
  ThermoPoint p;
  p.T = temperature;
  p.F = free_energy(temperature);
  p.U = internal_energy(free_energy, temperature, options.derivative_step).value;
  const auto s = entropy(free_energy, temperature, options.derivative_step);
  p.S = s.value;
  p.S_noise = s.error + 1e-9 * std::abs(p.F) / temperature;
  return p;
}

std::vector<EntropyInterval> negative_entropy_intervals(std::span<const ThermoPoint> rows,
                                                        const FreeEnergyFunction& refine,
                                                        const ThermoOptions& options) {
  std::vector<EntropyInterval> out;

  // Bisects between a point of sign `inside` == -1 and one that is not,
  // returning the midpoint of the final bracket.
  auto locate = [&](double t_neg, double t_other) {
    if (!refine) return 0.5 * (t_neg + t_other);
    double lo = std::min(t_neg, t_other);
    double hi = std::max(t_neg, t_other);
    const bool neg_is_lo = t_neg < t_other;
    while ((hi - lo) / lo > 1e-4) {
      const double mid = std::sqrt(lo * hi);
      const bool mid_negative = evaluate_point(refine, mid, options).entropy_sign() < 0;
      if (mid_negative == neg_is_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return std::sqrt(lo * hi);
  };

  std::size_t i = 0;
  while (i < rows.size()) {
    if (rows[i].entropy_sign() >= 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < rows.size() && rows[j + 1].entropy_sign() < 0) ++j;

    EntropyInterval interval;
    if (i == 0) {
      interval.T_lo = rows.front().T;
      interval.open_lo = true;
    } else {
      interval.T_lo = locate(rows[i].T, rows[i - 1].T);
    }
    if (j + 1 == rows.size()) {
      interval.T_hi = rows.back().T;
      interval.open_hi = true;
    } else {
      interval.T_hi = locate(rows[j].T, rows[j + 1].T);
    }
    out.push_back(interval);
    i = j + 1;
  }
  return out;
}

ThermoCurve sweep(const FreeEnergyFunction& free_energy, std::span<const double> temperatures,
                  const ThermoOptions& options) {
  for (std::size_t i = 0; i < temperatures.size(); ++i) {
    if (!(temperatures[i] > 0.0) || !std::isfinite(temperatures[i])) {
      throw Error(ErrorKind::domain, "sweep temperatures must be finite and > 0", "sweep.T");
    }
    if (i > 0 && !(temperatures[i] > temperatures[i - 1])) {
      throw Error(ErrorKind::domain, "sweep temperatures must be strictly ascending", "sweep.T");
    }
  }

  ThermoCurve curve;
  curve.rows.reserve(temperatures.size());
  for (double t : temperatures) {
    try {
      curve.rows.push_back(evaluate_point(free_energy, t, options));
    } catch (const Error& e) {
      throw e.with_context(format_temperature(t));
    }
  }
  curve.negative_entropy_intervals = negative_entropy_intervals(curve.rows, free_energy, options);
  return curve;
}

ThermoCurve sweep(const OscillatorModel& model, std::span<const double> temperatures,
                  const ThermoOptions& options) {
  return sweep([&](double t) { return interaction_free_energy(model, t, options); }, temperatures,
               options);
}

std::vector<double> make_grid(double lo, double hi, int points, Spacing spacing) {
  if (points < 1) throw Error(ErrorKind::domain, "grid needs at least one point", "points");
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorKind::domain, "grid bounds must be finite with lo <= hi", "min");
  }
  if (spacing == Spacing::log && !(lo > 0.0)) {
    throw Error(ErrorKind::domain, "log grid needs positive bounds", "min");
  }
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < points; ++i) {
    const double f = double(i) / double(points - 1);
    out[std::size_t(i)] = spacing == Spacing::linear
                              ? lo + f * (hi - lo)
                              : std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace casimir
