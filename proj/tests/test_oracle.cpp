#include <cmath>

#include "delayheom/errors.hpp"
#include "delayheom/oracle.hpp"
#include "doctest.h"

using namespace delayheom;
using namespace delayheom::oracle;

namespace {

qnm::CavityParams scaled(double gamma_tau, double omega_tau) {
    const double gamma = 0.0124;
    const double tau = gamma_tau * kHbar / gamma;
    return qnm::identical_cavities(omega_tau * kHbar / tau, gamma, tau);
}

double max_amplitude_gap(const WaveAmplitudes& a, const WaveAmplitudes& b, std::size_t stride_b) {
    double worst = 0.0;
    for (std::size_t n = 0; n < a.N_A.size(); ++n) {
        worst = std::max(worst, std::abs(a.N_A[n] - b.N_A[n * stride_b]));
        worst = std::max(worst, std::abs(a.N_B[n] - b.N_B[n * stride_b]));
    }
    return worst;
}

}  // namespace

TEST_CASE("wave function without coupling decays exponentially") {
    auto p = scaled(2, 3.7);
    p.V_eV[0][1] = p.V_eV[1][0] = 0.0;
    const double h = p.tau_fs / 200;
    const auto w = run_wavefunction(p, h, 5 * p.tau_fs);
    const double g = 0.0124 / kHbar;
    const double z = -g * h;
    for (std::size_t n = 0; n < w.N_A.size(); n += 11) {
        CHECK(std::abs(w.N_A[n] - std::pow(1.0 + z + 0.5 * z * z, double(n))) < 1e-13);
        CHECK(std::abs(w.N_A[n] - std::exp(-g * w.times_fs[n])) < 1e-5);
        CHECK(w.N_B[n] == cplx{});
    }
}

TEST_CASE("no feedback before the delay") {
    const auto p = scaled(2, 3.7);
    const int K = 200;
    const double h = p.tau_fs / K;
    const auto w = run_wavefunction(p, h, 3 * p.tau_fs);
    const double g = 0.0124 / kHbar;
    for (int n = 0; n <= K; ++n) {
        CHECK(w.N_B[n] == cplx{});
        CHECK(std::abs(std::abs(w.N_A[n]) - std::exp(-g * w.times_fs[n])) < 1e-5);
    }
    CHECK(w.N_B[K + 1] != cplx{});
}

TEST_CASE("cavity norm never exceeds one") {
    for (double wt : {0.0, 3.7}) {
        const auto p = scaled(0.5, wt);
        const auto w = run_wavefunction(p, p.tau_fs / 100, 20 * p.tau_fs);
        for (std::size_t n = 0; n < w.N_A.size(); ++n)
            CHECK(std::norm(w.N_A[n]) + std::norm(w.N_B[n]) <= 1.0 + 1e-9);
    }
}

TEST_CASE("wave-function self-convergence is second order") {
    const auto p = scaled(2, 3.7);
    const double t_end = 10 * p.tau_fs;
    const auto ref = run_wavefunction(p, p.tau_fs / 800, t_end);
    const double e100 = max_amplitude_gap(run_wavefunction(p, p.tau_fs / 100, t_end), ref, 8);
    const double e200 = max_amplitude_gap(run_wavefunction(p, p.tau_fs / 200, t_end), ref, 4);
    CHECK(e100 / e200 > 3.5);
    CHECK(e100 / e200 < 4.5);
}

TEST_CASE("trapped state for in-phase feedback") {
    // ωτ/ħ = 0, γτ/ħ = 1: N_A → 1/(2(1 + γτ/ħ)), N_B → −N_A.
    const auto p = scaled(1, 0);
    const auto w = run_wavefunction(p, p.tau_fs / 200, 40 * p.tau_fs);
    CHECK(w.N_A.back().real() == doctest::Approx(0.25).epsilon(1e-4));
    CHECK(w.N_B.back().real() == doctest::Approx(-0.25).epsilon(1e-4));
}

TEST_CASE("wave-function errors") {
    const auto p = scaled(2, 3.7);
    CHECK_THROWS_AS(run_wavefunction(p, p.tau_fs / 3.5, p.tau_fs), ConfigError);
    CHECK_THROWS_AS(run_wavefunction(p, p.tau_fs / 10, -1.0), ConfigError);
}

TEST_CASE("discretized bath without coupling keeps every amplitude") {
    auto p = scaled(1, 3.7);
    p.gamma_eV = {0.0, 0.0};
    p.V_eV = {};
    const auto b = run_discretized_bath(p, 64, 0.5, p.tau_fs / 50, 2 * p.tau_fs);
    for (std::size_t n = 0; n < b.amplitudes.N_A.size(); ++n) {
        CHECK(std::abs(b.amplitudes.N_A[n] - 1.0) < 1e-14);
        CHECK(b.amplitudes.N_B[n] == cplx{});
    }
}

TEST_CASE("discretized bath is unitary and converges toward the delay equation") {
    const auto p = scaled(1, 3.7);
    const double h = p.tau_fs / 100;
    const double t_end = 4 * p.tau_fs;
    const auto dde = run_wavefunction(p, h / 8, t_end);
    const double dw = 80.0 * 0.0124 / 4096;  // mode spacing of M = 4096 over ±40γ
    double previous = 1e300;
    for (int M : {256, 1024, 4096}) {
        const auto b = run_discretized_bath(p, M, 0.5 * dw * M, h, t_end);
        CHECK(b.max_norm_error < 1e-8);
        const double gap = max_amplitude_gap(b.amplitudes, dde, 8);
        CHECK(gap < previous);
        previous = gap;
    }
    CHECK(previous < 2.5e-2);
}

TEST_CASE("discretized bath rejects parameters it cannot represent") {
    auto p = scaled(1, 3.7);
    p.V_eV[0][1] = 0.001;
    CHECK_THROWS_AS(run_discretized_bath(p, 64, 0.5, 1.0, 10.0), ConfigError);
    p = scaled(1, 3.7);
    p.omega_eV[1] += 0.001;
    CHECK_THROWS_AS(run_discretized_bath(p, 64, 0.5, 1.0, 10.0), ConfigError);
    CHECK_THROWS_AS(run_discretized_bath(scaled(1, 3.7), 1, 0.5, 1.0, 10.0), ConfigError);
    CHECK_THROWS_AS(run_discretized_bath(scaled(1, 3.7), 64, 0.0, 1.0, 10.0), ConfigError);
}
