#pragma once

#include <cstdint>
#include <functional>

namespace casimir {

/// Matsubara frequencies zeta_n = 2 pi n / beta together with the truncation
/// policy used to sum series over them.
struct MatsubaraGrid {
  double beta = 1.0;
  /// Series stop once the estimated remaining error is below
  /// rel_tol * |sum|. Must lie in (0, 1e-3].
  double rel_tol = 1e-10;
  /// Hard ceiling on the number of positive frequencies summed.
  std::int64_t n_max_cap = 10'000'000;

  static MatsubaraGrid at_temperature(double temperature, double rel_tol = 1e-10,
                                      std::int64_t n_max_cap = 10'000'000);

  double spacing() const noexcept;
  double frequency(std::int64_t n) const noexcept { return double(n) * spacing(); }

  /// Throws Error(domain) if beta or rel_tol is out of range.
  void validate() const;
};

struct SeriesSum {
  double value = 0.0;       // sum over all integers n
  std::int64_t terms = 0;   // positive frequencies summed explicitly
  double tail = 0.0;        // correction added for n > terms (both signs)
  double error_bound = 0.0; // estimated remaining error
};

/// Term of an even series, evaluated at zeta >= 0.
using MatsubaraTerm = std::function<double(double)>;

/// sum_{n in Z} term(zeta_n) for terms with algebraic decay in zeta (rational
/// functions of zeta^2 and their logarithms).
///
/// Terms up to N are summed explicitly (n = 0 once, n != 0 twice). The rest
/// is the midpoint-rule tail
///   sum_{n>N} g(n dz) = (1/dz) [ int_{zc}^inf g + (dz^2/24) g'(zc) + ... ],
/// zc = (N + 1/2) dz, with the integral done by Gauss-Legendre after
/// mapping zeta = zc/u onto (0, 1]. N starts where zeta_N exceeds
/// 20 * frequency_scale and doubles until the dz^2 correction is below
/// rel_tol * |sum|.
SeriesSum sum_algebraic_series(const MatsubaraTerm& term, const MatsubaraGrid& grid,
                               double frequency_scale);

/// Same sum for terms that decay like exp(-2 zeta * decay_length). Summation
/// stops once zeta_n * decay_length >= 60, beyond which every term is below
/// exp(-120) of the leading one.
SeriesSum sum_exponential_series(const MatsubaraTerm& term, const MatsubaraGrid& grid,
                                 double decay_length);

}  // namespace casimir
