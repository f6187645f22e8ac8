#include "casimir/dipole.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "casimir/error.hpp"

namespace casimir {

void check_dipole_pair(const DipolePair& pair) {
  auto finite_nonneg = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::domain, std::string(name) + " must be finite and >= 0", name);
    }
  };
  auto finite_positive = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw Error(ErrorKind::domain, std::string(name) + " must be finite and > 0", name);
    }
  };
  finite_nonneg(pair.g1, "g1");
  finite_nonneg(pair.g2, "g2");
  finite_positive(pair.a1, "a1");
  finite_positive(pair.a2, "a2");
  finite_positive(pair.r, "r");
}

double polarizability(double g, double a, double zeta) { return g / (a + zeta * zeta); }

KernelValues kernels(double r, double zeta) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::domain, "separation r must be finite and > 0", "r");
  }
  const double tau = std::abs(zeta) * r;
  const double decay = std::exp(-tau) / (r * r * r);
  KernelValues k;
  k.psi_dk = -decay * (1.0 + tau + tau * tau / 3.0);
  k.psi_delta = -decay * (2.0 / 3.0) * tau * tau;
  k.longitudinal = 2.0 * k.psi_dk - k.psi_delta;
  k.transverse = -k.psi_dk - k.psi_delta;
  return k;
}

DyadicComponents free_green_dyadic(double r, double zeta) {
  const double z = std::abs(zeta);
  const double radial = 1.0 + z * r + zeta * zeta * r * r / 3.0;
  const double isotropic = (2.0 / 3.0) * zeta * zeta * r * r;
  const double decay = std::exp(-z * r) / (r * r * r);
  // 3 rr - 1 has eigenvalue 2 along r-hat and -1 across it
  return {(2.0 * radial - isotropic) * decay, (-radial - isotropic) * decay};
}

double pair_log_term(const DipolePair& pair, double zeta) {
  const double alphas = polarizability(pair.g1, pair.a1, zeta) * polarizability(pair.g2, pair.a2, zeta);
  const auto k = kernels(pair.r, zeta);
  const double x_long = alphas * k.longitudinal * k.longitudinal;
  const double x_trans = alphas * k.transverse * k.transverse;
  if (x_long >= 1.0 || x_trans >= 1.0) {
    std::ostringstream msg;
    msg << "dipole pair unstable: alpha1 alpha2 psi^2 = " << std::max(x_long, x_trans)
        << " >= 1 at zeta = " << zeta;
    throw Error(ErrorKind::instability, msg.str(), "r");
  }
  return std::log1p(-x_long) + 2.0 * std::log1p(-x_trans);
}

double pair_free_energy(const DipolePair& pair, double temperature, const ThermoOptions& options) {
  check_dipole_pair(pair);
  const auto grid = MatsubaraGrid::at_temperature(temperature, options.rel_tol, options.n_max_cap);
  const auto sum =
      sum_exponential_series([&](double z) { return pair_log_term(pair, z); }, grid, pair.r);
  return 0.5 * temperature * sum.value;
}

IdentityReport correspondence_check(const OscillatorModel& model, std::span<const double> zetas) {
  if (model.a1() != model.a2()) {
    throw Error(ErrorKind::domain, "correspondence check needs equal oscillators (a1 == a2)", "a2");
  }
  IdentityReport report;
  auto record = [&](double lhs, double rhs) {
    const double dev = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
    report.max_deviation = std::max(report.max_deviation, dev);
    ++report.samples;
  };
  for (double zeta : zetas) {
    const auto q = d_factors(model, zeta);
    double products[2];
    const double ds[2] = {q.d1, q.d2};
    const double as[2] = {model.a1(), model.a2()};
    for (int j = 0; j < 2; ++j) {
      const double big_a = response_factor(as[j], zeta);
      const double dressed_alpha = 1.0 / (big_a * (1.0 - ds[j]));
      const double psi = big_a * ds[j];
      products[j] = dressed_alpha * psi;
      record(products[j], ds[j] / (1.0 - ds[j]));
    }
    record(1.0 - products[0] * products[1], q.interaction_factor);
  }
  return report;
}

IdentityReport dyadic_decomposition_check(std::span<const double> separations,
                                          std::span<const double> zetas) {
  IdentityReport report;
  for (double r : separations) {
    const double scale = 1.0 / (r * r * r);
    for (double zeta : zetas) {
      const auto k = kernels(r, zeta);
      const auto g = free_green_dyadic(r, zeta);
      for (auto [lhs, rhs] : {std::pair{k.longitudinal, -g.longitudinal},
                              std::pair{k.transverse, -g.transverse}}) {
        const double dev = std::abs(lhs - rhs) / std::max(scale, std::abs(rhs));
        report.max_deviation = std::max(report.max_deviation, dev);
        ++report.samples;
      }
    }
  }
  return report;
}

}  // namespace casimir
