#pragma once

// Equation sets for two retardation-coupled cavities.
//
// Both models work in the interaction picture of the cavity modes. The inter-
// cavity transfer rate into cavity μ from the other cavity μ̄ is
//
//   κ_μ = 2 V*_{μ̄μ} e^{i ω_μ̄ τ / ħ} / ħ      (1/fs)
//
// and the local loss rate is γ_μ / ħ. These are the coefficients of the
// single-photon amplitude equations
//
//   ∂_t N_μ(t) = −(γ_μ/ħ) N_μ(t) − κ_μ N_μ̄(t − τ) Θ(t − τ),
//
// so the density-matrix hierarchy below and the wave-function oracle share
// one phase convention.
//
// Single excitation. System variables p_A = ⟨A|ρ|A⟩, p_B, c_AB = ⟨A|ρ|B⟩
// (c_BA is read as conj(c_AB)). The four stored band variables are the
// L-type auxiliary elements ⟨0|ρ^(1)L_{0ν}(t, t₁)|μ⟩ for μ, ν ∈ {A, B}; their
// R-type partners ⟨μ|ρ^(1)R_{ν0}|0⟩ are the complex conjugates and are read
// through conjugated references instead of being stored.
//
// Two-photon coherences. System variables ⟨20|ρ|00⟩, ⟨02|ρ|00⟩, ⟨11|ρ|00⟩
// and six band variables ⟨10|ρ^(1)L_{0_B1_B}|00⟩, ⟨10|ρ^(1)L_{0_A1_A}|00⟩,
// ⟨10|ρ^(1)L_{1_A2_A}|00⟩ plus their A↔B images. Only terms that feed the
// system variables are present.

#include <map>
#include <string>
#include <vector>

#include "delayheom/engine.hpp"
#include "delayheom/oracle.hpp"
#include "delayheom/qnm.hpp"

namespace delayheom::models {

namespace names {
inline const std::string pA = "p_A";
inline const std::string pB = "p_B";
inline const std::string cAB = "c_AB";
inline const std::string cBA = "c_BA";  // full variant only

/// ⟨0|ρ^(1)L_{0ν}(t,t₁)|μ⟩
std::string single_band(Cavity mu, Cavity nu);
/// ⟨μ|ρ^(1)R_{ν0}(t,t₁)|0⟩, conjugate partner of single_band(mu, nu)
std::string single_band_partner(Cavity mu, Cavity nu);

inline const std::string c20 = "rho_20_00";
inline const std::string c02 = "rho_02_00";
inline const std::string c11 = "rho_11_00";

/// ⟨10|ρ^(1)L_{0_B1_B}|00⟩ for A, image for B: a photon in `mu`, the emitted one from the other cavity.
std::string cross_emission(Cavity mu);
/// ⟨10|ρ^(1)L_{0_A1_A}|00⟩ for A: a photon in `mu`, emitted from `mu` while it held one photon.
std::string self_emission_single(Cavity mu);
/// ⟨10|ρ^(1)L_{1_A2_A}|00⟩ for A: a photon in `mu`, emitted from `mu` while it held two photons.
std::string self_emission_double(Cavity mu);
}  // namespace names

struct Rates {
    std::array<double, 2> loss;    ///< γ_μ/ħ
    std::array<cplx, 2> transfer;  ///< κ_μ
};

Rates rates(const qnm::CavityParams& params);

engine::EquationSet build_single_excitation(const qnm::CavityParams& params);

/// Same dynamics with every conjugate partner (R-type band elements and c_BA)
/// stored as an independent variable and no conjugated references. Used to
/// check that reading partners by conjugation is exact.
engine::EquationSet build_single_excitation_full(const qnm::CavityParams& params);

struct TwoPhotonOptions {
    /// Seed the band lines from ∂_t of the system element instead of its value.
    bool literal_derivative_source = false;
};

engine::EquationSet build_two_photon(const qnm::CavityParams& params, TwoPhotonOptions options = {});

/// Named initial states.
std::map<std::string, cplx> single_excitation_initial();    ///< p_A = 1
std::map<std::string, cplx> two_photon_initial();           ///< ⟨20|ρ|00⟩ = 1

struct CrosscheckReport {
    double max_dev_pA = 0.0;
    double max_dev_pB = 0.0;
    double max_dev_cAB = 0.0;

    double max() const;
};

/// Compares p_A, p_B, c_AB of a single-excitation run against |N_A|², |N_B|², N_A N_B*.
/// Throws ConfigError if the time grids differ.
CrosscheckReport pure_state_crosscheck(const engine::SimOutput& single, const oracle::WaveAmplitudes& oracle);

}  // namespace delayheom::models
