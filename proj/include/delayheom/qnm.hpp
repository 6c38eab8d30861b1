#pragma once

// Analytic quasinormal-mode physics of two identical 1D dielectric slabs.
//
// Frequencies are handled in the dimensionless form z = ω̃ L / c. Conversion
// to eV needs a convention choice: "angular" uses ħ·z·c/L, "cyclic" uses
// ħ·z·2πc/L. The cyclic reading reproduces ω̃₁ ≈ (0.059 − 0.0124i) eV for the
// reference slab (L = 21 μm, ε_R = π², ε_B = 1), which is the parameter set the
// shipped presets use.

#include <array>
#include <string_view>

#include "delayheom/constants.hpp"

namespace delayheom::qnm {

enum class UnitConvention { Angular, Cyclic };

UnitConvention parse_convention(std::string_view name);
std::string_view to_string(UnitConvention convention);

struct SlabParams {
    double L = 21.0;        ///< slab width, μm
    double eps_R = 9.869604401089358;  ///< slab permittivity (π²)
    double eps_B = 1.0;     ///< background permittivity
    double R = 0.0;         ///< centre-to-centre separation, μm
    int mode_index = 1;

    /// Throws DomainError unless eps_R > eps_B >= 1, L > 0, R >= 0, mode_index >= 1.
    void validate() const;

    bool operator==(const SlabParams&) const = default;
};

struct QnmFrequency {
    cplx z;           ///< ω̃ L / c
    double omega_eV;  ///< ħ Re(ω̃) under the chosen convention
    double gamma_eV;  ///< −ħ Im(ω̃) under the chosen convention (> 0)
};

/// 2×2 complex matrix indexed [μ][η] with μ, η ∈ {A, B}.
using CouplingMatrix = std::array<std::array<cplx, 2>, 2>;

struct CavityParams {
    std::array<double, 2> omega_eV{};
    std::array<double, 2> gamma_eV{};
    CouplingMatrix V_eV{};
    double tau_fs = 0.0;

    cplx V(Cavity mu, Cavity eta) const { return V_eV[index_of(mu)][index_of(eta)]; }
    double omega(Cavity mu) const { return omega_eV[index_of(mu)]; }
    double gamma(Cavity mu) const { return gamma_eV[index_of(mu)]; }

    /// Throws ConfigError on negative decay, negative delay, or non-finite entries.
    void validate() const;

    bool operator==(const CavityParams&) const = default;
};

/// Unnormalized sinc sin(x)/x, Taylor-expanded near zero.
cplx si(cplx x);

QnmFrequency qnm_frequency(const SlabParams& slab,
                           UnitConvention convention = UnitConvention::Cyclic);

/// In-slab mode e^{i n_R k x} + e^{−i n_R k x + iμπ}; |x| must be < L/2.
cplx mode_function(const SlabParams& slab, double x, int mu);

/// M_μ(ω) with ω given in the same dimensionless units as QnmFrequency::z
/// (ω L / c). Result carries units of length (μm).
cplx regularized_factor(const SlabParams& slab, cplx omega);

/// Regularized outgoing mode outside the slab, sign(x)·(ω/c)·M_μ(ω)·e^{iω|x|/c},
/// with ω dimensionless as in regularized_factor. Continues mode_function
/// across the slab edge at ω = ω̃_μ.
cplx regularized_mode(const SlabParams& slab, double x, cplx omega);

/// Vacuum Green function i·e^{−iω|x−x'|/c}/2 for positions in μm and ω in rad/fs.
cplx background_green(double x, double x2, double omega);

struct Overlaps {
    double S_AA;
    double S_AB;
};

/// Commutator overlaps of the unsymmetrized QNM operators (μm³, identical slabs).
Overlaps overlaps(const SlabParams& slab);

/// V_μη = (1 + δ_μη) γ / 2 for two identical cavities.
CouplingMatrix identical_cavity_coupling(double gamma_eV);

/// Two identical cavities with V from identical_cavity_coupling.
CavityParams identical_cavities(double omega_eV, double gamma_eV, double tau_fs);

/// ω, γ from qnm_frequency, V from identical_cavity_coupling, τ = R/c.
CavityParams derive_cavity_params(const SlabParams& slab,
                                  UnitConvention convention = UnitConvention::Cyclic);

}  // namespace delayheom::qnm
