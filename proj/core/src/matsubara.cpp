#include "casimir/matsubara.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "casimir/error.hpp"

namespace casimir {

namespace {

/// Neumaier-compensated accumulator.
class Accumulator {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double tail_integral(const MatsubaraTerm& term, double zc) {
  // int_{zc}^inf g(zeta) dzeta = zc int_0^1 g(zc/u) / u^2 du
  auto mapped = [&](double u) { return term(zc / u) * zc / (u * u); };
  return boost::math::quadrature::gauss<double, 30>::integrate(mapped, 0.0, 1.0);
}

[[noreturn]] void throw_not_converged(std::int64_t cap, double bound) {
  std::ostringstream msg;
  msg << "Matsubara series not converged within n_max_cap = " << cap
      << " terms (tail bound " << bound << ")";
  throw Error(ErrorKind::convergence, msg.str(), "n_max_cap");
}

}  // namespace

MatsubaraGrid MatsubaraGrid::at_temperature(double temperature, double rel_tol,
                                            std::int64_t n_max_cap) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorKind::domain, "temperature must be finite and > 0", "T");
  }
  MatsubaraGrid grid{1.0 / temperature, rel_tol, n_max_cap};
  grid.validate();
  return grid;
}

double MatsubaraGrid::spacing() const noexcept { return 2.0 * std::numbers::pi / beta; }

void MatsubaraGrid::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorKind::domain, "beta must be finite and > 0", "beta");
  }
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) {
    throw Error(ErrorKind::domain, "rel_tol must lie in (0, 1e-3]", "rel_tol");
  }
  if (n_max_cap < 1) {
    throw Error(ErrorKind::domain, "n_max_cap must be >= 1", "n_max_cap");
  }
}

SeriesSum sum_algebraic_series(const MatsubaraTerm& term, const MatsubaraGrid& grid,
                               double frequency_scale) {
  grid.validate();
  const double dz = grid.spacing();
  const double scale = std::max(frequency_scale, 0.0);

  const double n_start = std::max(16.0, std::ceil(20.0 * scale / dz));
  std::int64_t n_target = n_start >= double(grid.n_max_cap)
                              ? grid.n_max_cap
                              : static_cast<std::int64_t>(n_start);

  Accumulator acc;
  acc.add(term(0.0));
  std::int64_t n = 0;
  for (;;) {
    for (; n < n_target; ++n) acc.add(2.0 * term(grid.frequency(n + 1)));

    const double zc = (double(n) + 0.5) * dz;
    const double h = 1e-3 * zc;
    const double slope = (term(zc + h) - term(zc - h)) / (2.0 * h);
    const double correction = dz * dz / 24.0 * slope;
    const double tail = (tail_integral(term, zc) + correction) / dz;
    const double bound = 2.0 * std::abs(correction) / dz;
    const double total = acc.value() + 2.0 * tail;

    if (bound <= grid.rel_tol * std::abs(total)) {
      return {total, n, 2.0 * tail, bound};
    }
    if (n >= grid.n_max_cap) throw_not_converged(grid.n_max_cap, bound);
    n_target = std::min(2 * n, grid.n_max_cap);
  }
}

SeriesSum sum_exponential_series(const MatsubaraTerm& term, const MatsubaraGrid& grid,
                                 double decay_length) {
  grid.validate();
  if (!(decay_length > 0.0)) {
    throw Error(ErrorKind::domain, "decay length must be > 0", "r");
  }
  const double dz = grid.spacing();
  const double n_needed = std::ceil(60.0 / (dz * decay_length));
  if (n_needed > double(grid.n_max_cap)) {
    throw_not_converged(grid.n_max_cap, std::abs(term(grid.frequency(grid.n_max_cap))));
  }
  const auto n_stop = std::max<std::int64_t>(1, static_cast<std::int64_t>(n_needed));

  Accumulator acc;
  acc.add(term(0.0));
  double last = 0.0;
  for (std::int64_t n = 1; n <= n_stop; ++n) {
    last = term(grid.frequency(n));
    acc.add(2.0 * last);
  }
  // geometric bound on the remainder: ratio of successive terms <= exp(-dz r)
  const double ratio = std::exp(-dz * decay_length);
  const double bound = 2.0 * std::abs(last) * ratio / (1.0 - ratio);
  return {acc.value(), n_stop, 0.0, bound};
}

}  // namespace casimir
