#pragma once

// Reference solvers for the single-excitation sector.
//
// run_wavefunction integrates the pair of delay differential equations for
// the cavity amplitudes of |ψ⟩ = N_A|A⟩ + N_B|B⟩ + (bath part),
//
//   ∂_t N_μ = −(γ_μ/ħ) N_μ − κ_μ N_μ̄(t − τ) Θ(t − τ),
//
// with the same κ_μ as the hierarchy models.
//
// run_discretized_bath integrates the Schrödinger equation for two cavity
// amplitudes coupled to M right-moving and M left-moving bath modes, with no
// memory kernel assumed. Cavity A sits at x = 0 and cavity B at x = R.

#include <vector>

#include "delayheom/constants.hpp"
#include "delayheom/qnm.hpp"

namespace delayheom::oracle {

struct WaveAmplitudes {
    std::vector<double> times_fs;
    std::vector<cplx> N_A;
    std::vector<cplx> N_B;
};

/// Heun method of steps on the grid h = τ/K (K integer). A step whose delayed
/// interval starts before t = 0 reads zero history at both ends.
WaveAmplitudes run_wavefunction(const qnm::CavityParams& params, double step_fs, double t_end_fs,
                                cplx N_A0 = 1.0, cplx N_B0 = 0.0);

struct BathRun {
    WaveAmplitudes amplitudes;
    double max_norm_error = 0.0;  ///< max_t |Σ|amplitudes|² − 1|
    int substeps = 0;             ///< RK4 substeps per output step
};

/// Modes are spread uniformly over ω_A ± bandwidth (eV) with couplings
/// √(γ_μ δω / 2π) e^{∓iω_k x_μ / c}. Requires ω_A = ω_B and V_AB = V_BA =
/// √(γ_A γ_B)/2, the values this bath induces; throws ConfigError otherwise.
/// Output is sampled every step_fs and reported in the same interaction
/// picture as run_wavefunction.
BathRun run_discretized_bath(const qnm::CavityParams& params, int modes, double bandwidth_eV,
                             double step_fs, double t_end_fs);

}  // namespace delayheom::oracle
