#include "delayheom/qnm.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "delayheom/errors.hpp"

namespace delayheom::qnm {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this |x| the sinc is evaluated from its Taylor series.
constexpr double kSincSeriesThreshold = 1e-4;

cplx dimensionless_frequency(const SlabParams& slab, int mu) {
    const double n_r = std::sqrt(slab.eps_R);
    const double n_b = std::sqrt(slab.eps_B);
    const double reflect = (n_r - n_b) * (n_r - n_b) / ((n_r + n_b) * (n_r + n_b));
    return cplx(2.0 * kPi * mu, std::log(reflect)) / (2.0 * n_r);
}

double energy_scale_eV(double L, UnitConvention convention) {
    const double angular = kHbar * kSpeedOfLight / L;
    return convention == UnitConvention::Cyclic ? 2.0 * kPi * angular : angular;
}

// e^{iμπ} = ±1
double parity_sign(int mu) { return mu % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

UnitConvention parse_convention(std::string_view name) {
    if (name == "cyclic") return UnitConvention::Cyclic;
    if (name == "angular") return UnitConvention::Angular;
    throw ConfigError("unknown unit convention '" + std::string(name) +
                      "' (expected 'cyclic' or 'angular')");
}

std::string_view to_string(UnitConvention convention) {
    return convention == UnitConvention::Cyclic ? "cyclic" : "angular";
}

void SlabParams::validate() const {
    if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("slab width L must be positive");
    if (!(R >= 0.0) || !std::isfinite(R)) throw DomainError("slab separation R must be >= 0");
    if (!(eps_B >= 1.0)) throw DomainError("background permittivity eps_B must be >= 1");
    if (eps_R == eps_B)
        throw DomainError("eps_R == eps_B: logarithm in the QNM frequency is singular");
    if (!(eps_R > eps_B)) throw DomainError("slab permittivity eps_R must exceed eps_B");
    if (mode_index < 1) throw DomainError("mode index must be a positive integer");
}

void CavityParams::validate() const {
    for (int m = 0; m < 2; ++m) {
        if (!std::isfinite(omega_eV[m])) throw ConfigError("cavity omega must be finite");
        if (!std::isfinite(gamma_eV[m]) || gamma_eV[m] < 0.0)
            throw ConfigError("cavity gamma must be finite and >= 0");
        for (int n = 0; n < 2; ++n) {
            if (!std::isfinite(V_eV[m][n].real()) || !std::isfinite(V_eV[m][n].imag()))
                throw ConfigError("coupling matrix entries must be finite");
        }
    }
    if (!std::isfinite(tau_fs) || tau_fs < 0.0) throw ConfigError("delay tau must be >= 0");
}

cplx si(cplx x) {
    if (std::abs(x) < kSincSeriesThreshold) {
        const cplx x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

QnmFrequency qnm_frequency(const SlabParams& slab, UnitConvention convention) {
    slab.validate();
    const cplx z = dimensionless_frequency(slab, slab.mode_index);
    const double scale = energy_scale_eV(slab.L, convention);
    return {z, scale * z.real(), -scale * z.imag()};
}

cplx mode_function(const SlabParams& slab, double x, int mu) {
    slab.validate();
    if (!(std::abs(x) < 0.5 * slab.L))
        throw DomainError("mode_function: |x| >= L/2, use regularized_mode outside the slab");
    if (mu < 1) throw DomainError("mode index must be a positive integer");
    const double n_r = std::sqrt(slab.eps_R);
    const cplx phase = cplx(0.0, 1.0) * n_r * dimensionless_frequency(slab, mu) * (x / slab.L);
    return std::exp(phase) + parity_sign(mu) * std::exp(-phase);
}

cplx regularized_factor(const SlabParams& slab, cplx omega) {
    slab.validate();
    const double n_r = std::sqrt(slab.eps_R);
    const cplx shift = n_r * dimensionless_frequency(slab, slab.mode_index);
    const double contrast = slab.eps_R - slab.eps_B;
    const cplx prefactor = cplx(0.0, 0.5) * slab.L * contrast;
    return prefactor *
           (si(0.5 * (omega + shift)) + parity_sign(slab.mode_index) * si(0.5 * (omega - shift)));
}

cplx regularized_mode(const SlabParams& slab, double x, cplx omega) {
    const cplx m = regularized_factor(slab, omega);
    const double side = x < 0.0 ? 1.0 : parity_sign(slab.mode_index);
    return side * (omega / slab.L) * m * std::exp(cplx(0.0, 1.0) * omega * (std::abs(x) / slab.L));
}

cplx background_green(double x, double x2, double omega) {
    const double phase = -omega * std::abs(x - x2) / kSpeedOfLight;
    return cplx(0.0, 0.5) * std::polar(1.0, phase);
}

Overlaps overlaps(const SlabParams& slab) {
    const QnmFrequency f = qnm_frequency(slab, UnitConvention::Angular);
    const double omega = f.z.real();
    const double gamma = -f.z.imag();
    if (!(gamma > 0.0)) throw DomainError("overlaps: lossless cavity (gamma = 0) unsupported");
    // In units of z: c/γ₁ = L/γ, ω₁R/c = ω R/L.
    const double m = std::abs(regularized_factor(slab, f.z));
    const double s_aa = 2.0 * slab.L / gamma * m * m;
    const double separation = slab.R / slab.L;
    const cplx retarded = f.z / (2.0 * omega) * std::polar(1.0, -omega * separation);
    const double s_ab = s_aa * retarded.real() * std::exp(-gamma * separation);
    return {s_aa, s_ab};
}

CouplingMatrix identical_cavity_coupling(double gamma_eV) {
    const cplx diag = gamma_eV;
    const cplx off = gamma_eV / 2.0;
    return {{{diag, off}, {off, diag}}};
}

CavityParams identical_cavities(double omega_eV, double gamma_eV, double tau_fs) {
    CavityParams p;
    p.omega_eV = {omega_eV, omega_eV};
    p.gamma_eV = {gamma_eV, gamma_eV};
    p.V_eV = identical_cavity_coupling(gamma_eV);
    p.tau_fs = tau_fs;
    return p;
}

CavityParams derive_cavity_params(const SlabParams& slab, UnitConvention convention) {
    const QnmFrequency f = qnm_frequency(slab, convention);
    return identical_cavities(f.omega_eV, f.gamma_eV, slab.R / kSpeedOfLight);
}

}  // namespace delayheom::qnm
