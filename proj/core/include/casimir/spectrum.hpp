#pragma once

#include <span>
#include <vector>

#include "casimir/model_spec.hpp"

namespace casimir {

/// Normal-mode frequencies of a model and of the subsystems needed to
/// isolate the interaction part of its free energy. All lists are sorted
/// ascending and hold omega (not omega^2).
struct ModeSpectrum {
  ModelKind kind = ModelKind::tm3;
  std::vector<double> coupled;         // all 2 + M oscillators, coupled
  std::vector<double> reference;       // all 2 + M oscillators, uncoupled: sqrt(a_i)
  std::vector<double> dressed_first;   // oscillator 1 with the mediators, oscillator 2 removed
  std::vector<double> dressed_second;  // oscillator 2 with the mediators, oscillator 1 removed
  std::vector<double> mediators;       // sqrt(a_i), i >= 3

  double max_frequency() const;
  double min_frequency() const;
};

/// Exact spectrum from the symmetric eigenproblem of the coupling matrix.
/// Throws Error(instability) naming the first non-positive squared root.
/// Requires a well-formed spec (see check_well_formed).
ModeSpectrum mode_spectrum(const ModelSpec& spec);

/// Sorted eigenvalues omega^2 of the full coupled system; may be <= 0 for an
/// unstable spec.
std::vector<double> squared_mode_frequencies(const ModelSpec& spec);

/// Coefficients (ascending powers of x = omega^2) of P(x) = Q(zeta^2 = -x),
/// the inverse partition determinant continued to real frequency. Assembled
/// exactly from the parameters:
///   tm: P = A1 A2 prod(A_i) - (A1 + A2) sum_i c_i^2 prod_{l != i} A_l
///   te: P = A1 A2 prod(A_i) - x (A2/a1 + A1/a2) sum_i c_i^2 prod_{l != i} A_l
/// with A_k = a_k - x.
std::vector<double> characteristic_polynomial(const ModelSpec& spec);

/// Evaluates a polynomial given by ascending coefficients.
double evaluate_polynomial(std::span<const double> coeffs, double x) noexcept;

/// Real roots of a polynomial via the eigenvalues of its companion matrix,
/// Newton-polished and sorted. A root is accepted as real when
/// |imag| <= imag_tol * |real|; anything else throws Error(numeric).
std::vector<double> real_polynomial_roots(std::span<const double> coeffs, double imag_tol = 1e-10);

/// omega^2 of the coupled system from the roots of characteristic_polynomial.
/// Independent of the eigenproblem route; unreliable for repeated roots.
std::vector<double> squared_frequencies_by_roots(const ModelSpec& spec);

/// Quantum free energy of independent oscillators,
/// sum_k [omega_k/2 + T ln(1 - exp(-omega_k/T))]; zero-point sum at T = 0.
double exact_free_energy(std::span<const double> omegas, double temperature);

/// Classical counterpart, sum_k T ln(omega_k / T).
double classical_free_energy(std::span<const double> omegas, double temperature);

}  // namespace casimir
