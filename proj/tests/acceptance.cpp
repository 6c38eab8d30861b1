// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "delayheom/commands.hpp"
#include "delayheom/models.hpp"
#include "delayheom/oracle.hpp"
#include "delayheom/output.hpp"
#include "delayheom/qnm.hpp"

using namespace delayheom;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, double seconds) {
    std::printf("[%s] %2d %s (%.1f s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

qnm::CavityParams scaled(double gamma_tau, double omega_tau) {
    const double gamma = 0.0124;
    const double tau = gamma_tau * kHbar / gamma;
    return qnm::identical_cavities(omega_tau * kHbar / tau, gamma, tau);
}

engine::SimOutput run_single(const qnm::CavityParams& p, int K, double t_end_tau, bool drop = false,
                             long band_width = -1) {
    const auto eqs = models::build_single_excitation(p);
    const double h = p.tau_fs / K;
    const long bw = band_width >= 0 ? band_width : engine::default_band_width(eqs, h);
    return engine::run(eqs, engine::initial_vector(eqs, models::single_excitation_initial()), h,
                       t_end_tau * p.tau_fs, bw, drop);
}

double max_gap(const oracle::WaveAmplitudes& a, const oracle::WaveAmplitudes& b, std::size_t stride) {
    double worst = 0.0;
    for (std::size_t n = 0; n < a.N_A.size(); ++n) {
        worst = std::max(worst, std::abs(a.N_A[n] - b.N_A[n * stride]));
        worst = std::max(worst, std::abs(a.N_B[n] - b.N_B[n * stride]));
    }
    return worst;
}

template <class Fn>
void timed(int id, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string what;
    bool ok = false;
    try {
        ok = fn(what);
    } catch (const std::exception& e) {
        what += std::string(" exception: ") + e.what();
        ok = false;
    }
    report(id, ok, what, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

}  // namespace

int main() {
    qnm::SlabParams slab;  // L = 21 μm, ε_R = π², ε_B = 1

    timed(1, [&](std::string& what) {
        const auto f = qnm::qnm_frequency(slab);
        const double ratio = f.gamma_eV / f.omega_eV;
        const double target = 0.0124 / 0.06;
        what = "QNM frequency z = " + fmt("%.6f", f.z.real()) + fmt(" %.6fi", f.z.imag()) +
               ", gamma/omega = " + fmt("%.5f", ratio) + " vs target " + fmt("%.5f", target);
        return std::abs(f.z.real() - 1.0) <= 0.005 && std::abs(f.z.imag() + 0.21) <= 0.005 &&
               std::abs(ratio / target - 1.0) <= 0.02;
    });

    timed(2, [&](std::string& what) {
        const auto v = qnm::identical_cavity_coupling(0.0124);
        what = "coupling endpoint V_AB = " + fmt("%.10g", v[0][1].real()) + " eV, V_AA = " +
               fmt("%.10g", v[0][0].real()) + " eV";
        return v[0][1] == cplx(0.0062) && v[1][0] == cplx(0.0062) && v[0][0] == cplx(0.0124);
    });

    timed(3, [&](std::string& what) {
        bool ok = true;
        what = "overlap bound |S_AB/S_AA| < exp(-gamma R/c):";
        for (double r : {1.0, 5.0, 20.0, 100.0}) {
            auto s = slab;
            s.R = r * s.L;
            const auto o = qnm::overlaps(s);
            const double bound = std::exp(qnm::qnm_frequency(s).z.imag() * r);
            const double ratio = std::abs(o.S_AB / o.S_AA);
            ok = ok && ratio < bound;
            what += fmt(" R/L=%g:", r) + fmt("%.3e", ratio) + fmt("<%.3e", bound);
        }
        return ok;
    });

    timed(4, [&](std::string& what) {
        bool ok = true;
        what = "HEOM vs wave function at h = tau/200, 10 tau:";
        for (double gt : {0.5, 2.0}) {
            for (double wt : {0.0, 3.7}) {
                const auto p = scaled(gt, wt);
                const auto r200 = models::pure_state_crosscheck(
                    run_single(p, 200, 10), oracle::run_wavefunction(p, p.tau_fs / 200, 10 * p.tau_fs));
                const auto r400 = models::pure_state_crosscheck(
                    run_single(p, 400, 10), oracle::run_wavefunction(p, p.tau_fs / 400, 10 * p.tau_fs));
                const double shrink = r200.max() / r400.max();
                ok = ok && r200.max_dev_pA <= 5e-3 && r200.max_dev_pB <= 5e-3 && r200.max_dev_cAB <= 5e-3 &&
                     shrink >= 3.0;
                what += fmt(" [gt=%g", gt) + fmt(" wt=%g", wt) + fmt(" dev=%.2e", r200.max()) +
                        fmt(" x%.2f]", shrink);
            }
        }
        return ok;
    });

    timed(5, [&](std::string& what) {
        const int K = 200;
        const auto p = scaled(2.0, 3.7);
        const auto out = run_single(p, K, 3);
        double silence = 0.0;
        for (int n = 0; n < K; ++n) silence = std::max(silence, std::abs(out.rows[n][1]));

        auto z = scaled(0.02, 0.0);
        z.V_eV[0][1] = z.V_eV[1][0] = 0.0;
        const auto free = run_single(z, K, 100, false, 0);
        const double rate = 2.0 * 0.0124 / kHbar;
        double decay = 0.0;
        for (std::size_t n = 0; n < free.rows.size(); ++n)
            decay = std::max(decay, std::abs(free.rows[n][0] - std::exp(-rate * free.times_fs[n])));
        what = "pre-delay silence max|p_B(t<tau)| = " + fmt("%.1e", silence) + ", V=0 max|p_A - e^{-2gt}| = " +
               fmt("%.1e", decay);
        return silence <= 1e-12 && decay <= 1e-8;
    });

    timed(6, [&](std::string& what) {
        const auto p = scaled(1.0, 3.7);
        const double h = p.tau_fs / 200;
        const double t_end = 6 * p.tau_fs;
        const auto dde = oracle::run_wavefunction(p, h / 8, t_end);
        const double gamma = 0.0124;
        const double dw = 80.0 * gamma / 4096;  // spacing of M = 4096 over ±40γ
        double prev = 1e300;
        bool monotone = true;
        std::string sweep;
        for (int M : {512, 2048, 8192}) {
            const auto b = oracle::run_discretized_bath(p, M, 0.5 * dw * M, h, t_end);
            const double gap = max_gap(b.amplitudes, dde, 8);
            monotone = monotone && gap < prev && b.max_norm_error < 1e-8;
            prev = gap;
            sweep += fmt(" M=%g:", M) + fmt("%.2e", gap);
        }
        const auto coarse_bath = oracle::run_discretized_bath(p, 4096, 40 * gamma, h, t_end);
        const double coarse_gap = max_gap(coarse_bath.amplitudes, dde, 8);
        const auto wide = oracle::run_discretized_bath(p, 10240, 100 * gamma, h, t_end);
        const double gap = max_gap(wide.amplitudes, dde, 8);
        what = "discretized bath vs wave function: M=10240 D=100g gap " + fmt("%.2e", gap) +
               " (M=4096 D=40g: " + fmt("%.2e", coarse_gap) + "), fixed-spacing sweep" + sweep +
               fmt(", norm err %.1e", wide.max_norm_error);
        return gap <= 1e-2 && monotone && wide.max_norm_error < 1e-8;
    });

    timed(7, [&](std::string& what) {
        const int K = 200;
        const auto p = scaled(1.0, 0.0);
        const auto out = run_single(p, K, 30);
        const double h = p.tau_fs / K;
        const std::size_t start = out.rows.size() * 9 / 10;
        double rate = 0.0;
        for (std::size_t n = start; n + 1 < out.rows.size(); ++n)
            for (int v = 0; v < 2; ++v)
                rate = std::max(rate, std::abs(out.rows[n + 1][v] - out.rows[n][v]) / h);
        const auto wave = oracle::run_wavefunction(p, h, 30 * p.tau_fs);
        double wave_rate = 0.0;
        for (std::size_t n = start; n + 1 < wave.N_A.size(); ++n)
            wave_rate = std::max(wave_rate, std::abs(std::norm(wave.N_A[n + 1]) - std::norm(wave.N_A[n])) / h);
        what = "trapped state: max|dp/dt| over last 10% = " + fmt("%.1e", rate) + "/fs (oracle " +
               fmt("%.1e", wave_rate) + "), p_A = " + fmt("%.6f", out.rows.back()[0].real()) + ", p_B = " +
               fmt("%.6f", out.rows.back()[1].real());
        return rate < 1e-6 && wave_rate < 1e-6;
    });

    timed(8, [&](std::string& what) {
        const auto p = scaled(1.0, 0.0);
        const auto eqs = models::build_two_photon(p);
        const double h = p.tau_fs / 200;
        const auto out = engine::run(eqs, engine::initial_vector(eqs, models::two_photon_initial()), h,
                                     30 * p.tau_fs, engine::default_band_width(eqs, h));
        const auto& last = out.rows.back();
        const double gap = std::abs(std::norm(last[2]) - std::norm(last[0]) - std::norm(last[1]));
        what = "two-photon sum rule at 30 tau: ||c11|^2 - |c20|^2 - |c02|^2| = " + fmt("%.2e", gap) +
               fmt(", |c11|^2 = %.4e", std::norm(last[2]));
        return gap < 1e-3;
    });

    timed(9, [&](std::string& what) {
        double worst = 0.0;
        for (double gt : {0.5, 2.0}) {
            const auto p = scaled(gt, 3.7);
            const auto kept = run_single(p, 200, 10, false);
            const auto dropped = run_single(p, 200, 10, true);
            for (std::size_t n = 0; n < kept.rows.size(); ++n)
                for (std::size_t v = 0; v < 3; ++v)
                    worst = std::max(worst, std::abs(kept.rows[n][v] - dropped.rows[n][v]));
        }
        what = "first-argument delayed terms: max trajectory change " + fmt("%.1e", worst);
        return worst <= 1e-10;
    });

    timed(10, [&](std::string& what) {
        const auto config = cli::load_config(std::string(DELAYHEOM_PRESET_DIR) + "/scaled_single.json");
        std::ostringstream a, b;
        cli::write_csv(a, cli::simulate(config));
        cli::write_csv(b, cli::simulate(config));
        const bool deterministic = a.str() == b.str();

        const auto p = scaled(2.0, 3.7);
        const auto out = run_single(p, 200, 10);
        double imag = 0.0, low = 0.0, high = 0.0;
        for (const auto& row : out.rows) {
            for (int v = 0; v < 2; ++v) {
                imag = std::max(imag, std::abs(row[v].imag()));
                low = std::min(low, row[v].real());
                high = std::max(high, row[v].real());
            }
        }
        const bool hermitian = imag <= 1e-10;
        const bool bounded = low >= -1e-9 && high <= 1.0 + 1e-9;

        const auto eqs = models::build_single_excitation(p);
        engine::Engine e(eqs, engine::initial_vector(eqs, models::single_excitation_initial()),
                         {p.tau_fs / 50, 20, false});
        bool causal = true;
        for (int n = 0; n < 150; ++n) {
            e.step();
            for (const auto& band : eqs.band_vars)
                for (long j = e.current_step() + 1; j < e.current_step() + 5; ++j)
                    causal = causal && e.band_value(band, e.current_step(), j) == cplx{};
        }

        const auto narrow = run_single(p, 50, 12, false, 40);
        const auto wide = run_single(p, 50, 12, false, 80);
        const double cert = narrow.diagnostics.truncation_certificate;
        double change = 0.0;
        for (int v = 0; v < 2; ++v) change = std::max(change, std::abs(narrow.rows.back()[v] - wide.rows.back()[v]));
        const bool truncation = cert > 0.0 && change <= cert;

        what = std::string("invariants: deterministic=") + (deterministic ? "yes" : "no") +
               fmt(" max|Im p|=%.1e", imag) + fmt(" p in [%.1e,", low) + fmt(" %.6f]", high) +
               " causal=" + (causal ? "yes" : "no") + fmt(" band-width change %.1e", change) +
               fmt(" <= certificate %.1e", cert);
        return deterministic && hermitian && bounded && causal && truncation;
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
