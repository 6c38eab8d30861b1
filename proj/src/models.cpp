#include "delayheom/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "delayheom/errors.hpp"
#include "delayheom/kernel.hpp"

namespace delayheom::models {

using engine::EquationSet;
using engine::Pattern;
using engine::Reference;
using engine::SourceMode;

namespace names {

std::string single_band(Cavity mu, Cavity nu) {
    return std::string("r1L_0") + name_of(nu) + "_" + name_of(mu);
}

std::string single_band_partner(Cavity mu, Cavity nu) {
    return std::string("r1R_") + name_of(nu) + "0_" + name_of(mu);
}

namespace {
std::string two_photon_ket(Cavity mu) { return mu == Cavity::A ? "10" : "01"; }
}  // namespace

std::string cross_emission(Cavity mu) {
    const char* e = name_of(other(mu));
    return std::string("r1L_0") + e + "1" + e + "_" + two_photon_ket(mu);
}

std::string self_emission_single(Cavity mu) {
    const char* e = name_of(mu);
    return std::string("r1L_0") + e + "1" + e + "_" + two_photon_ket(mu);
}

std::string self_emission_double(Cavity mu) {
    const char* e = name_of(mu);
    return std::string("r1L_1") + e + "2" + e + "_" + two_photon_ket(mu);
}

}  // namespace names

namespace {

constexpr Cavity kCavities[] = {Cavity::A, Cavity::B};
constexpr double kSqrt2 = std::numbers::sqrt2;

Reference ref(Pattern p, std::string var, bool conjugate = false) {
    return {p, std::move(var), conjugate};
}

}  // namespace

Rates rates(const qnm::CavityParams& params) {
    params.validate();
    Rates r{};
    for (Cavity mu : kCavities) {
        const Cavity src = other(mu);
        const int m = index_of(mu);
        r.loss[m] = params.gamma(mu) / kHbar;
        const auto k = kernel::correlation_kernel(params, src, mu);
        const double phase = params.omega(src) * params.tau_fs / kHbar;
        r.transfer[m] = std::conj(kernel::rate_per_fs(k.forward())) * std::polar(1.0, phase);
    }
    return r;
}

EquationSet build_single_excitation(const qnm::CavityParams& params) {
    const Rates r = rates(params);
    const auto g = [&](Cavity c) { return r.loss[index_of(c)]; };
    const auto k = [&](Cavity c) { return r.transfer[index_of(c)]; };
    using names::single_band;

    EquationSet eqs;
    eqs.name = "single-excitation";
    eqs.delay_fs = params.tau_fs;
    eqs.system_vars = {names::pA, names::pB, names::cAB};
    for (Cavity mu : kCavities)
        for (Cavity nu : kCavities) eqs.band_vars.push_back(single_band(mu, nu));

    // Populations: ∂p_μ = −2γ_μ p_μ − κ_μ G_{μμ̄}(t,t−τ) + c.c.
    for (Cavity mu : kCavities) {
        const std::string& p = mu == Cavity::A ? names::pA : names::pB;
        const std::string band = single_band(mu, other(mu));
        eqs.add_term(p, -2.0 * g(mu), ref(Pattern::Current, p));
        eqs.add_term(p, -k(mu), ref(Pattern::Diagonal, band));
        eqs.add_term(p, -std::conj(k(mu)), ref(Pattern::Diagonal, band, true));
    }
    // Coherence: ∂c_AB = −(γ_A+γ_B) c_AB − κ_A G_BB(t,t−τ) − κ_B* conj(G_AA(t,t−τ))
    eqs.add_term(names::cAB, -(g(Cavity::A) + g(Cavity::B)), ref(Pattern::Current, names::cAB));
    eqs.add_term(names::cAB, -k(Cavity::A), ref(Pattern::Diagonal, single_band(Cavity::B, Cavity::B)));
    eqs.add_term(names::cAB, -std::conj(k(Cavity::B)),
                 ref(Pattern::Diagonal, single_band(Cavity::A, Cavity::A), true));

    // Band G_{μν}(t,t₁) = ⟨0|ρ^(1)L_{0ν}(t,t₁)|μ⟩:
    //   ∂G_{μν} = −γ_μ G_{μν} − κ_μ* [conj G_{νμ̄}(t₁, t−τ)  or  G_{μ̄ν}(t−τ, t₁)]
    //   G_{μν}(t₁,t₁) = ⟨ν|ρ_s(t₁)|μ⟩
    for (Cavity mu : kCavities) {
        for (Cavity nu : kCavities) {
            const std::string band = single_band(mu, nu);
            const Cavity mubar = other(mu);
            eqs.add_term(band, -g(mu), ref(Pattern::Own, band));
            eqs.add_term(band, -std::conj(k(mu)),
                         ref(Pattern::SecondArgDelayed, single_band(nu, mubar), true));
            eqs.add_term(band, -std::conj(k(mu)),
                         ref(Pattern::FirstArgDelayed, single_band(mubar, nu)));
            if (mu == nu) {
                eqs.add_source({band, 1.0, mu == Cavity::A ? names::pA : names::pB});
            } else {
                // ⟨B|ρ|A⟩ = conj(c_AB), ⟨A|ρ|B⟩ = c_AB
                eqs.add_source({band, 1.0, names::cAB, mu == Cavity::A});
            }
        }
    }
    engine::require_valid(eqs);
    return eqs;
}

EquationSet build_single_excitation_full(const qnm::CavityParams& params) {
    const Rates r = rates(params);
    const auto g = [&](Cavity c) { return r.loss[index_of(c)]; };
    const auto k = [&](Cavity c) { return r.transfer[index_of(c)]; };
    using names::single_band;
    using names::single_band_partner;

    EquationSet eqs;
    eqs.name = "single-excitation-full";
    eqs.delay_fs = params.tau_fs;
    eqs.system_vars = {names::pA, names::pB, names::cAB, names::cBA};
    for (Cavity mu : kCavities) {
        for (Cavity nu : kCavities) {
            eqs.band_vars.push_back(single_band(mu, nu));
            eqs.band_vars.push_back(single_band_partner(mu, nu));
        }
    }

    for (Cavity mu : kCavities) {
        const std::string& p = mu == Cavity::A ? names::pA : names::pB;
        eqs.add_term(p, -2.0 * g(mu), ref(Pattern::Current, p));
        eqs.add_term(p, -k(mu), ref(Pattern::Diagonal, single_band(mu, other(mu))));
        eqs.add_term(p, -std::conj(k(mu)), ref(Pattern::Diagonal, single_band_partner(mu, other(mu))));
    }
    const double gsum = g(Cavity::A) + g(Cavity::B);
    eqs.add_term(names::cAB, -gsum, ref(Pattern::Current, names::cAB));
    eqs.add_term(names::cAB, -k(Cavity::A), ref(Pattern::Diagonal, single_band(Cavity::B, Cavity::B)));
    eqs.add_term(names::cAB, -std::conj(k(Cavity::B)),
                 ref(Pattern::Diagonal, single_band_partner(Cavity::A, Cavity::A)));
    eqs.add_term(names::cBA, -gsum, ref(Pattern::Current, names::cBA));
    eqs.add_term(names::cBA, -std::conj(k(Cavity::A)),
                 ref(Pattern::Diagonal, single_band_partner(Cavity::B, Cavity::B)));
    eqs.add_term(names::cBA, -k(Cavity::B), ref(Pattern::Diagonal, single_band(Cavity::A, Cavity::A)));

    for (Cavity mu : kCavities) {
        for (Cavity nu : kCavities) {
            const Cavity mubar = other(mu);
            const std::string l = single_band(mu, nu);
            const std::string rr = single_band_partner(mu, nu);
            eqs.add_term(l, -g(mu), ref(Pattern::Own, l));
            eqs.add_term(l, -std::conj(k(mu)), ref(Pattern::SecondArgDelayed, single_band_partner(nu, mubar)));
            eqs.add_term(l, -std::conj(k(mu)), ref(Pattern::FirstArgDelayed, single_band(mubar, nu)));
            eqs.add_term(rr, -g(mu), ref(Pattern::Own, rr));
            eqs.add_term(rr, -k(mu), ref(Pattern::SecondArgDelayed, single_band(nu, mubar)));
            eqs.add_term(rr, -k(mu), ref(Pattern::FirstArgDelayed, single_band_partner(mubar, nu)));
            if (mu == nu) {
                const std::string& p = mu == Cavity::A ? names::pA : names::pB;
                eqs.add_source({l, 1.0, p});
                eqs.add_source({rr, 1.0, p});
            } else {
                const bool left_is_ba = mu == Cavity::A;  // ⟨B|ρ|A⟩ = c_BA
                eqs.add_source({l, 1.0, left_is_ba ? names::cBA : names::cAB});
                eqs.add_source({rr, 1.0, left_is_ba ? names::cAB : names::cBA});
            }
        }
    }
    engine::require_valid(eqs);
    return eqs;
}

EquationSet build_two_photon(const qnm::CavityParams& params, TwoPhotonOptions options) {
    const Rates r = rates(params);
    const auto g = [&](Cavity c) { return r.loss[index_of(c)]; };
    const auto k = [&](Cavity c) { return r.transfer[index_of(c)]; };
    using names::cross_emission;
    using names::self_emission_double;
    using names::self_emission_single;

    EquationSet eqs;
    eqs.name = "two-photon";
    eqs.delay_fs = params.tau_fs;
    eqs.system_vars = {names::c20, names::c02, names::c11};
    for (Cavity mu : kCavities) {
        eqs.band_vars.push_back(cross_emission(mu));
        eqs.band_vars.push_back(self_emission_single(mu));
        eqs.band_vars.push_back(self_emission_double(mu));
    }
    const SourceMode mode = options.literal_derivative_source ? SourceMode::Derivative : SourceMode::Value;

    for (Cavity mu : kCavities) {
        const std::string& doubly = mu == Cavity::A ? names::c20 : names::c02;
        eqs.add_term(doubly, -2.0 * g(mu), ref(Pattern::Current, doubly));
        eqs.add_term(doubly, -kSqrt2 * k(mu), ref(Pattern::Diagonal, cross_emission(mu)));
    }
    eqs.add_term(names::c11, -(g(Cavity::A) + g(Cavity::B)), ref(Pattern::Current, names::c11));
    for (Cavity mu : kCavities) {
        const Cavity mubar = other(mu);
        eqs.add_term(names::c11, -kSqrt2 * k(mu), ref(Pattern::Diagonal, self_emission_double(mubar)));
        eqs.add_term(names::c11, -k(mu), ref(Pattern::Diagonal, self_emission_single(mubar)));
    }

    for (Cavity mu : kCavities) {
        const Cavity mubar = other(mu);
        const std::string cross = cross_emission(mu);
        const std::string single = self_emission_single(mu);
        const std::string twice = self_emission_double(mu);
        const std::string& doubly = mu == Cavity::A ? names::c20 : names::c02;

        eqs.add_term(cross, -g(mu), ref(Pattern::Own, cross));
        eqs.add_term(cross, -kSqrt2 * k(mu), ref(Pattern::SecondArgDelayed, self_emission_double(mubar)));
        eqs.add_term(cross, -k(mu), ref(Pattern::SecondArgDelayed, self_emission_single(mubar)));
        eqs.add_source({cross, 1.0, names::c11, false, mode});

        eqs.add_term(single, -g(mu), ref(Pattern::Own, single));
        eqs.add_term(single, -k(mu), ref(Pattern::SecondArgDelayed, cross));
        // Nothing is emitted from a singly occupied cavity while the other holds
        // the second photon; the line is filled only through transfer.
        eqs.add_source({single, 0.0, names::c11});

        eqs.add_term(twice, -g(mu), ref(Pattern::Own, twice));
        eqs.add_source({twice, 1.0, doubly, false, mode});
    }
    engine::require_valid(eqs);
    return eqs;
}

std::map<std::string, cplx> single_excitation_initial() { return {{names::pA, 1.0}}; }
std::map<std::string, cplx> two_photon_initial() { return {{names::c20, 1.0}}; }

double CrosscheckReport::max() const { return std::max({max_dev_pA, max_dev_pB, max_dev_cAB}); }

CrosscheckReport pure_state_crosscheck(const engine::SimOutput& single, const oracle::WaveAmplitudes& oracle) {
    const std::size_t n = single.times_fs.size();
    if (oracle.times_fs.size() != n || oracle.N_A.size() != n || oracle.N_B.size() != n)
        throw ConfigError("crosscheck: time grids have different lengths");
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(single.times_fs[i] - oracle.times_fs[i]) > 1e-9 * std::max(1.0, oracle.times_fs[i]))
            throw ConfigError("crosscheck: time grids differ at index " + std::to_string(i));
    }
    const std::size_t ia = single.column(names::pA);
    const std::size_t ib = single.column(names::pB);
    const std::size_t ic = single.column(names::cAB);
    CrosscheckReport rep;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = single.rows[i];
        rep.max_dev_pA = std::max(rep.max_dev_pA, std::abs(row[ia] - std::norm(oracle.N_A[i])));
        rep.max_dev_pB = std::max(rep.max_dev_pB, std::abs(row[ib] - std::norm(oracle.N_B[i])));
        rep.max_dev_cAB =
            std::max(rep.max_dev_cAB, std::abs(row[ic] - oracle.N_A[i] * std::conj(oracle.N_B[i])));
    }
    return rep;
}

}  // namespace delayheom::models
