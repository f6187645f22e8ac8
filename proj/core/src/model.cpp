#include "casimir/model.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "casimir/error.hpp"
#include "coupling_matrix.hpp"

namespace casimir {

namespace {

void require_finite_zeta(double zeta) {
  if (!std::isfinite(zeta)) throw Error(ErrorKind::domain, "zeta must be finite", "zeta");
}

}  // namespace

OscillatorModel validate_stability(ModelSpec spec) {
  check_well_formed(spec);
  ModeSpectrum spectrum = mode_spectrum(spec);
  return OscillatorModel(std::move(spec), std::move(spectrum));
}

double response_factor(double a, double zeta) {
  if (!std::isfinite(a) || !std::isfinite(zeta)) {
    throw Error(ErrorKind::domain, "response factor needs finite a and zeta");
  }
  return a + zeta * zeta;
}

InteractionQuantities d_factors(const OscillatorModel& model, double zeta) {
  require_finite_zeta(zeta);
  const double z2 = zeta * zeta;
  double s = 0.0;
  for (const auto& m : model.mediators()) s += m.c * m.c / (m.a + z2);

  const double big_a1 = model.a1() + z2;
  const double big_a2 = model.a2() + z2;
  InteractionQuantities q;
  if (is_momentum_coupled(model.kind())) {
    q.d1 = -(z2 * s) / (model.a1() * big_a1);
    q.d2 = -(z2 * s) / (model.a2() * big_a2);
  } else {
    q.d1 = s / big_a1;
    q.d2 = s / big_a2;
  }
  q.self_first = 1.0 - q.d1;
  q.self_second = 1.0 - q.d2;
  if (q.self_first == 0.0 || q.self_second == 0.0) {
    throw Error(ErrorKind::instability, "singular self factor: D_j = 1", "mediators");
  }
  q.interaction_factor = 1.0 - q.d1 * q.d2 / (q.self_first * q.self_second);
  return q;
}

double q_determinant_direct(const OscillatorModel& model, double zeta) {
  require_finite_zeta(zeta);
  Eigen::MatrixXd k = detail::coupling_matrix(model.spec());
  k.diagonal().array() += zeta * zeta;
  return k.partialPivLu().determinant();
}

double q_determinant_factored(const OscillatorModel& model, double zeta) {
  const auto q = d_factors(model, zeta);
  double bath = 1.0;
  for (const auto& m : model.mediators()) bath *= response_factor(m.a, zeta);
  return response_factor(model.a1(), zeta) * response_factor(model.a2(), zeta) * q.self_first *
         q.self_second * q.interaction_factor * bath;
}

double scattering_form_factor(double d1, double d2) {
  if (d1 == 1.0 || d2 == 1.0) {
    throw Error(ErrorKind::instability, "scattering form is singular at D_j = 1");
  }
  const double t1 = d1 / (1.0 - d1);
  const double t2 = d2 / (1.0 - d2);
  return 1.0 - t1 * t2;
}

}  // namespace casimir
