#pragma once

#include "casimir/model.hpp"

namespace casimir {

/// Exact interaction free energy from mode sums, by inclusion-exclusion over
/// subsystems: F(1,2,bath) - F(1,bath) - F(2,bath) + F(bath). This is the
/// quantity whose Matsubara form is (T/2) sum_n ln(interaction_factor).
/// Valid for T >= 0.
///
/// For T >= omega_max / 4 the mode sums are expanded in spectral moments
/// (tr K^j and ln det K) and evaluated in 50-digit arithmetic: at high T the
/// TE interaction is many orders of magnitude below the individual mode sums
/// and direct double-precision subtraction loses it.
double oracle_interaction_free_energy(const OscillatorModel& model, double temperature);

/// Exact coupled-minus-uncoupled free energy, F(coupled) - F(reference).
/// Includes the self-energy of each oscillator dressed by the mediators; its
/// Matsubara form is (T/2) sum_n ln(Q / prod A).
double oracle_coupling_free_energy(const OscillatorModel& model, double temperature);

}  // namespace casimir
