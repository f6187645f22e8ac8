#pragma once

#include <cstddef>
#include <span>

#include "casimir/model.hpp"
#include "casimir/thermo.hpp"

namespace casimir {

/// Two isotropic oscillating dipoles a distance r apart (units c = 1).
/// Polarizability of dipole j: alpha_j(zeta) = g_j / (a_j + zeta^2).
struct DipolePair {
  double g1 = 1.0;
  double g2 = 1.0;
  double a1 = 1.0;
  double a2 = 1.0;
  double r = 1.0;

  friend bool operator==(const DipolePair&, const DipolePair&) = default;
};

/// Throws Error(domain) unless g_j >= 0, a_j > 0 and r > 0 (all finite).
void check_dipole_pair(const DipolePair& pair);

double polarizability(double g, double a, double zeta);

/// Retarded dipole-dipole kernels at imaginary frequency zeta, tau = zeta r:
///   psi_dk    = -(e^{-tau} / r^3)(1 + tau + tau^2/3)
///   psi_delta = -(2 e^{-tau} / 3 r^3) tau^2
/// and the interaction tensor's eigenvalues along r-hat (longitudinal, once)
/// and across it (transverse, twice):
///   longitudinal = 2 psi_dk - psi_delta,  transverse = -psi_dk - psi_delta.
/// The isotropic channel carries +(2/3) tau^2 e^{-tau} / r^3, the Fourier
/// transform of 2 zeta^2 / (k^2 + zeta^2); psi_delta as printed above has the
/// opposite sign, so it enters the tensor with weight -1. This is the
/// combination that reproduces -Gamma_0 exactly (dyadic_decomposition_check).
struct KernelValues {
  double psi_dk = 0.0;
  double psi_delta = 0.0;
  double longitudinal = 0.0;
  double transverse = 0.0;
};

KernelValues kernels(double r, double zeta);

/// Eigenvalues of the free-space dyadic Green's function
/// [(3 rr - 1)(1 + |zeta| r + zeta^2 r^2/3) - 1 (2/3) zeta^2 r^2] e^{-|zeta| r} / r^3.
struct DyadicComponents {
  double longitudinal = 0.0;
  double transverse = 0.0;
};

DyadicComponents free_green_dyadic(double r, double zeta);

/// ln(1 - a1 a2 psi_l^2) + 2 ln(1 - a1 a2 psi_t^2) at one frequency.
/// Throws Error(instability) if a product alpha alpha psi^2 reaches 1.
double pair_log_term(const DipolePair& pair, double zeta);

/// F = (T/2) sum_n pair_log_term(zeta_n). F <= 0.
double pair_free_energy(const DipolePair& pair, double temperature,
                        const ThermoOptions& options = {});

struct IdentityReport {
  double max_deviation = 0.0;
  std::size_t samples = 0;
};

/// With alpha = 1 / (A_j (1 - D_j)) and psi = A_j D_j, checks
/// alpha psi == D_j / (1 - D_j) for j = 1, 2, and that 1 - (alpha psi)_1 (alpha psi)_2
/// equals interaction_factor, over the given frequencies. Requires a1 == a2.
/// Deviations are relative to max(1, |value|).
IdentityReport correspondence_check(const OscillatorModel& model, std::span<const double> zetas);

/// Compares -free_green_dyadic with (kernels().longitudinal, kernels().transverse)
/// on the (r, zeta) product grid. Deviations are relative to max(1/r^3, |value|).
IdentityReport dyadic_decomposition_check(std::span<const double> separations,
                                          std::span<const double> zetas);

}  // namespace casimir
