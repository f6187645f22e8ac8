#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "casimir/dipole.hpp"
#include "casimir/error.hpp"
#include "casimir/verify.hpp"

using namespace casimir;

TEST_CASE("kernels at hand-checkable points") {
  auto k = kernels(2.0, 0.0);
  CHECK(k.psi_dk == -0.125);
  CHECK(k.psi_delta == 0.0);
  CHECK(k.longitudinal == -0.25);
  CHECK(k.transverse == 0.125);

  k = kernels(1.0, 1.0);
  CHECK(k.psi_dk == doctest::Approx(-0.85838536273336542).epsilon(1e-15));
  CHECK(k.psi_dk == doctest::Approx(-std::exp(-1.0) * 7.0 / 3.0).epsilon(1e-15));
  CHECK(k.psi_delta == doctest::Approx(-0.24525296078096155).epsilon(1e-15));

  // e^{-50} (1 + 50 + 2500/3) = 1.7e-19
  k = kernels(1.0, 50.0);
  CHECK(k.psi_dk == doctest::Approx(-std::exp(-50.0) * (51.0 + 2500.0 / 3.0)).epsilon(1e-14));
  CHECK(std::abs(k.psi_dk) < 1e-18);
  CHECK(std::abs(k.psi_delta) < 1e-18);

  CHECK_THROWS_AS(kernels(0.0, 1.0), Error);
  CHECK_THROWS_AS(kernels(-1.0, 1.0), Error);
}

TEST_CASE("kernel limits") {
  for (double r : {0.3, 1.0, 7.0}) {
    const auto k = kernels(r, 0.0);
    CHECK(k.psi_delta == 0.0);
    CHECK(k.psi_dk == -1.0 / (r * r * r));
    const auto far = kernels(r, 45.0 / r);
    CHECK(std::abs(far.psi_dk) * r * r * r < 1e-16);
    CHECK(std::abs(far.psi_delta) * r * r * r < 1e-16);
  }
}

TEST_CASE("dyadic decomposition") {
  const auto d = free_green_dyadic(1.0, 0.0);
  CHECK(d.transverse == -1.0);
  CHECK(-d.transverse == kernels(1.0, 0.0).transverse);

  std::vector<double> rs, zetas;
  for (int i = 0; i <= 20; ++i) rs.push_back(0.1 * std::pow(100.0, i / 20.0));
  for (int i = 0; i <= 40; ++i) zetas.push_back(i == 0 ? 0.0 : 0.01 * std::pow(4000.0, i / 40.0));
  const auto report = dyadic_decomposition_check(rs, zetas);
  CHECK(report.samples == 2 * rs.size() * zetas.size());
  CHECK(report.max_deviation < 1e-14);

  const double one[] = {1.0};
  CHECK(dyadic_decomposition_check(one, one).max_deviation < 1e-14);
  const double big[] = {100.0};
  const auto far = free_green_dyadic(1.0, 100.0);
  CHECK(std::abs(far.longitudinal) < 1e-20);
  CHECK(dyadic_decomposition_check(one, big).max_deviation < 1e-14);
}

TEST_CASE("correspondence with the oscillator models") {
  std::vector<double> zetas{0.0};
  for (int i = 0; i <= 30; ++i) zetas.push_back(std::pow(10.0, -2.0 + 5.0 * i / 30.0));
  for (auto kind : {ModelKind::tm3, ModelKind::te3}) {
    const auto model = validate_stability(verify::three_oscillator(kind, 0.3));
    CHECK(correspondence_check(model, zetas).max_deviation < 1e-14);
  }
  for (auto kind : {ModelKind::tm_bath, ModelKind::te_bath}) {
    const auto model = validate_stability(verify::standard_bath(kind, 5));
    CHECK(correspondence_check(model, zetas).max_deviation < 1e-14);
  }
  const auto unequal = validate_stability(ModelSpec{ModelKind::tm3, 1.0, 2.0, {{1.0, 0.1}}});
  CHECK_THROWS_AS(correspondence_check(unequal, zetas), Error);

  // alpha psi at the hand-checkable point equals D / (1 - D).
  const auto tm = validate_stability(verify::three_oscillator(ModelKind::tm3, 0.3));
  const auto te = validate_stability(verify::three_oscillator(ModelKind::te3, 0.3));
  const auto qt = d_factors(tm, 1.0);
  const auto qe = d_factors(te, 1.0);
  CHECK(qt.d1 / (1.0 - qt.d1) == doctest::Approx(0.023017902813299233).epsilon(1e-14));
  CHECK(qe.d1 / (1.0 - qe.d1) == doctest::Approx(-0.022004889975550122).epsilon(1e-14));
}

TEST_CASE("pair validation") {
  CHECK_NOTHROW(check_dipole_pair({0.0, 1.0, 1.0, 1.0, 1.0}));
  try {
    check_dipole_pair({1.0, 1.0, 1.0, 1.0, 0.0});
    FAIL("r = 0 accepted");
  } catch (const Error& e) {
    CHECK(e.parameter() == "r");
  }
  CHECK_THROWS_AS(check_dipole_pair({-1.0, 1.0, 1.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(check_dipole_pair({1.0, 1.0, 0.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(pair_free_energy({1.0, 1.0, 1.0, 1.0, 1.0}, 0.0), Error);
}

TEST_CASE("classical single-frequency term") {
  // alpha = g / a = 0.1 on both sides, r = 2: alpha psi_l = -0.025
  const DipolePair pair{0.1, 0.1, 1.0, 1.0, 2.0};
  const double l = kernels(2.0, 0.0).longitudinal;
  CHECK(polarizability(0.1, 1.0, 0.0) * l == doctest::Approx(-0.025));
  CHECK(0.5 * std::log1p(-0.01 * l * l) == doctest::Approx(-3.1260e-4).epsilon(1e-4));
  const double t = kernels(2.0, 0.0).transverse;
  CHECK(pair_log_term(pair, 0.0) ==
        doctest::Approx(std::log1p(-0.01 * l * l) + 2.0 * std::log1p(-0.01 * t * t)).epsilon(1e-15));
  // The isotropic channel is absent at zero frequency.
  CHECK(kernels(2.0, 0.0).psi_delta == 0.0);
}

TEST_CASE("pair free energy") {
  CHECK(pair_free_energy({0.0, 1.0, 1.0, 1.0, 1.0}, 0.5) == 0.0);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  for (int i = 0; i < 20; ++i) {
    const DipolePair pair{0.1 * u(rng), 0.1 * u(rng), u(rng), u(rng), 2.0 + u(rng)};
    for (double t : {0.01, 0.5, 5.0}) CHECK(pair_free_energy(pair, t) <= 0.0);
  }

  double previous = -1.0;
  for (double r : {1.0, 3.0, 10.0, 30.0}) {
    const double f = pair_free_energy({0.1, 0.1, 1.0, 1.0, r}, 0.1);
    CHECK(f > previous);
    previous = f;
  }
  CHECK(std::abs(previous) < 1e-10);

  // Too strong coupling makes a factor non-positive.
  try {
    pair_log_term({10.0, 10.0, 1.0, 1.0, 0.5}, 0.0);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::instability);
  }
}

TEST_CASE("retarded r^-7 scaling") {
  const double t = 1e-4;
  const double r1 = 20.0, r2 = 200.0;
  const DipolePair near{1.0, 1.0, 1.0, 1.0, r1};
  DipolePair far = near;
  far.r = r2;
  const double slope = std::log(pair_free_energy(far, t) / pair_free_energy(near, t)) / std::log(r2 / r1);
  CHECK(slope == doctest::Approx(-7.0).epsilon(0.15 / 7.0));
}
