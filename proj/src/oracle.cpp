#include "delayheom/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "delayheom/engine.hpp"
#include "delayheom/errors.hpp"

namespace delayheom::oracle {

namespace {

struct Dde {
    std::array<double, 2> g;  // 1/fs
    std::array<cplx, 2> k;    // 1/fs
};

// κ_μ = 2 V*_{μ̄μ} e^{i ω_μ̄ τ/ħ} / ħ
Dde dde_coefficients(const qnm::CavityParams& p) {
    Dde d{};
    for (Cavity mu : {Cavity::A, Cavity::B}) {
        const Cavity src = other(mu);
        const int m = index_of(mu);
        d.g[m] = p.gamma(mu) / kHbar;
        d.k[m] = 2.0 * std::conj(p.V(src, mu)) * std::polar(1.0, p.omega(src) * p.tau_fs / kHbar) / kHbar;
    }
    return d;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

WaveAmplitudes run_wavefunction(const qnm::CavityParams& params, double step_fs, double t_end_fs,
                                cplx N_A0, cplx N_B0) {
    params.validate();
    if (!(t_end_fs >= 0.0) || !std::isfinite(t_end_fs)) throw ConfigError("end time must be finite and >= 0");
    const long K = engine::delay_steps(params.tau_fs, step_fs);
    const auto steps = static_cast<long>(std::floor(t_end_fs / step_fs + 1e-9));
    const Dde d = dde_coefficients(params);
    const double h = step_fs;

    WaveAmplitudes out;
    out.times_fs.reserve(static_cast<std::size_t>(steps) + 1);
    out.N_A.reserve(static_cast<std::size_t>(steps) + 1);
    out.N_B.reserve(static_cast<std::size_t>(steps) + 1);
    out.times_fs.push_back(0.0);
    out.N_A.push_back(N_A0);
    out.N_B.push_back(N_B0);

    auto delayed = [&](long idx, long floor, cplx& a, cplx& b) {
        if (idx < floor) {
            a = b = 0.0;
        } else {
            a = out.N_A[static_cast<std::size_t>(idx)];
            b = out.N_B[static_cast<std::size_t>(idx)];
        }
    };

    for (long n = 0; n < steps; ++n) {
        const cplx a = out.N_A.back();
        const cplx b = out.N_B.back();
        cplx ad, bd;
        delayed(n - K, 0, ad, bd);
        const cplx da0 = -d.g[0] * a - d.k[0] * bd;
        const cplx db0 = -d.g[1] * b - d.k[1] * ad;
        const cplx ap = a + h * da0;
        const cplx bp = b + h * db0;
        delayed(n + 1 - K, 1, ad, bd);
        const cplx da1 = -d.g[0] * ap - d.k[0] * bd;
        const cplx db1 = -d.g[1] * bp - d.k[1] * ad;
        const cplx an = a + 0.5 * h * (da0 + da1);
        const cplx bn = b + 0.5 * h * (db0 + db1);
        if (!finite(an) || !finite(bn)) throw NumericalError("non-finite amplitude", n + 1);
        out.times_fs.push_back(static_cast<double>(n + 1) * h);
        out.N_A.push_back(an);
        out.N_B.push_back(bn);
    }
    return out;
}

BathRun run_discretized_bath(const qnm::CavityParams& params, int modes, double bandwidth_eV,
                             double step_fs, double t_end_fs) {
    params.validate();
    if (modes < 2) throw ConfigError("discretized bath needs at least 2 modes");
    if (!(bandwidth_eV > 0.0)) throw ConfigError("bath bandwidth must be positive");
    if (!(step_fs > 0.0)) throw ConfigError("step size must be positive");
    if (!(t_end_fs >= 0.0) || !std::isfinite(t_end_fs)) throw ConfigError("end time must be finite and >= 0");
    const double gA = params.gamma(Cavity::A);
    const double gB = params.gamma(Cavity::B);
    const double v_expected = 0.5 * std::sqrt(gA * gB);
    const double tol = 1e-9 * std::max(1.0, v_expected);
    if (std::abs(params.omega(Cavity::A) - params.omega(Cavity::B)) > 1e-12 ||
        std::abs(params.V(Cavity::A, Cavity::B) - v_expected) > tol ||
        std::abs(params.V(Cavity::B, Cavity::A) - v_expected) > tol) {
        throw ConfigError("discretized bath requires omega_A = omega_B and V_AB = V_BA = sqrt(gamma_A gamma_B)/2");
    }

    const auto M = static_cast<std::size_t>(modes);
    const double omega0 = params.omega(Cavity::A) / kHbar;  // rad/fs
    const double half = bandwidth_eV / kHbar;
    const double dw = 2.0 * half / static_cast<double>(M);
    const double tau = params.tau_fs;

    // y = [a_A, a_B, right movers (M), left movers (M)], frame rotating at ω_A.
    std::vector<double> detuning(M);
    std::vector<cplx> cA(M), cBR(M), cBL(M);  // couplings; A sits at x = 0
    const double sA = std::sqrt(gA / kHbar * dw / (2.0 * std::numbers::pi));
    const double sB = std::sqrt(gB / kHbar * dw / (2.0 * std::numbers::pi));
    for (std::size_t k = 0; k < M; ++k) {
        detuning[k] = -half + (static_cast<double>(k) + 0.5) * dw;
        const double wk = omega0 + detuning[k];
        cA[k] = sA;
        cBR[k] = sB * std::polar(1.0, -wk * tau);
        cBL[k] = sB * std::polar(1.0, wk * tau);
    }

    const std::size_t dim = 2 + 2 * M;
    auto rhs = [&](const std::vector<cplx>& y, std::vector<cplx>& dy) {
        const cplx I{0.0, 1.0};
        cplx accA{}, accB{};
        const cplx* bR = y.data() + 2;
        const cplx* bL = bR + M;
        for (std::size_t k = 0; k < M; ++k) {
            accA += cA[k] * (bR[k] + bL[k]);
            accB += cBR[k] * bR[k] + cBL[k] * bL[k];
        }
        dy[0] = -I * accA;
        dy[1] = -I * accB;
        const cplx aA = y[0];
        const cplx aB = y[1];
        for (std::size_t k = 0; k < M; ++k) {
            dy[2 + k] = -I * (detuning[k] * bR[k] + std::conj(cA[k]) * aA + std::conj(cBR[k]) * aB);
            dy[2 + M + k] = -I * (detuning[k] * bL[k] + std::conj(cA[k]) * aA + std::conj(cBL[k]) * aB);
        }
    };

    const double coupling_rate = std::sqrt(static_cast<double>(2 * M)) * std::max(sA, sB);
    const double fastest = std::max(half, coupling_rate);
    const int sub = std::max(1, static_cast<int>(std::ceil(fastest * step_fs / 0.05)));
    const double hs = step_fs / sub;
    const auto steps = static_cast<long>(std::floor(t_end_fs / step_fs + 1e-9));

    BathRun run;
    run.substeps = sub;
    std::vector<cplx> y(dim), k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    y[0] = 1.0;
    auto record = [&](long n) {
        run.amplitudes.times_fs.push_back(static_cast<double>(n) * step_fs);
        run.amplitudes.N_A.push_back(y[0]);
        run.amplitudes.N_B.push_back(y[1]);
        double norm = 0.0;
        for (const cplx& v : y) norm += std::norm(v);
        if (!std::isfinite(norm)) throw NumericalError("non-finite bath amplitude", n);
        run.max_norm_error = std::max(run.max_norm_error, std::abs(norm - 1.0));
    };
    record(0);
    for (long n = 0; n < steps; ++n) {
        for (int s = 0; s < sub; ++s) {
            rhs(y, k1);
            for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * hs * k1[i];
            rhs(tmp, k2);
            for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * hs * k2[i];
            rhs(tmp, k3);
            for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + hs * k3[i];
            rhs(tmp, k4);
            for (std::size_t i = 0; i < dim; ++i) y[i] += hs / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        record(n + 1);
    }
    return run;
}

}  // namespace delayheom::oracle
