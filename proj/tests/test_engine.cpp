#include <cmath>

#include "delayheom/engine.hpp"
#include "delayheom/errors.hpp"
#include "delayheom/models.hpp"
#include "doctest.h"

using namespace delayheom;
using namespace delayheom::engine;

namespace {

qnm::CavityParams scaled(double gamma_tau, double omega_tau) {
    const double gamma = 0.0124;
    const double tau = gamma_tau * kHbar / gamma;
    return qnm::identical_cavities(omega_tau * kHbar / tau, gamma, tau);
}

EquationSet decay_only(double rate, double delay) {
    EquationSet eqs;
    eqs.name = "decay";
    eqs.delay_fs = delay;
    eqs.system_vars = {"p"};
    eqs.add_term("p", -rate, {Pattern::Current, "p"});
    return eqs;
}

bool contains(const std::vector<std::string>& errors, const std::string& needle) {
    for (const auto& e : errors)
        if (e.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("validate accepts the shipped models") {
    CHECK(validate(models::build_single_excitation(scaled(2, 3.7))).empty());
    CHECK(validate(models::build_single_excitation_full(scaled(2, 3.7))).empty());
    CHECK(validate(models::build_two_photon(scaled(2, 3.7))).empty());
}

TEST_CASE("validate names undeclared variables") {
    auto eqs = decay_only(1.0, 10.0);
    eqs.add_term("p", 1.0, {Pattern::Current, "ghost"});
    const auto errors = validate(eqs);
    CHECK(contains(errors, "ghost"));
    CHECK_THROWS_AS(require_valid(eqs), ConfigError);
}

TEST_CASE("validate requires exactly one diagonal source per band variable") {
    auto eqs = decay_only(1.0, 10.0);
    eqs.band_vars = {"b"};
    eqs.add_term("b", -1.0, {Pattern::Own, "b"});
    CHECK(contains(validate(eqs), "no diagonal source"));
    eqs.add_source({"b", 1.0, "p"});
    CHECK(validate(eqs).empty());
    eqs.add_source({"b", 1.0, "p"});
    CHECK(contains(validate(eqs), "more than one"));
}

TEST_CASE("validate rejects patterns on the wrong kind of target") {
    auto eqs = decay_only(1.0, 10.0);
    eqs.band_vars = {"b"};
    eqs.add_source({"b", 1.0, "p"});
    eqs.add_term("p", 1.0, {Pattern::Own, "b"});
    CHECK(!validate(eqs).empty());
    auto eqs2 = decay_only(1.0, 0.0);
    eqs2.band_vars = {"b"};
    eqs2.add_source({"b", 1.0, "p"});
    eqs2.add_term("p", 1.0, {Pattern::Diagonal, "b"});
    CHECK(contains(validate(eqs2), "positive delay"));
}

TEST_CASE("step size must divide the delay") {
    CHECK(delay_steps(100.0, 0.5) == 200);
    CHECK_THROWS_AS(delay_steps(100.0, 0.3), ConfigError);
    CHECK_THROWS_AS(delay_steps(100.0, 0.0), ConfigError);
    CHECK_THROWS_AS(delay_steps(100.0, 200.0), ConfigError);
    const auto eqs = models::build_single_excitation(scaled(2, 0));
    CHECK_THROWS_AS(run(eqs, initial_vector(eqs, models::single_excitation_initial()), 0.3, 10.0, 0), ConfigError);
}

TEST_CASE("pure decay matches the exponential after Richardson extrapolation") {
    const double rate = 2.0 * 0.0124 / kHbar;
    const double tau = 100.0;
    const auto eqs = decay_only(rate, tau);
    const std::vector<cplx> init{1.0};
    const double h = tau / 4000;
    const auto coarse = run(eqs, init, h, 2.0 * tau, 0);
    const auto fine = run(eqs, init, h / 2, 2.0 * tau, 0);
    double worst = 0.0;
    for (std::size_t n = 0; n < coarse.rows.size(); ++n) {
        const cplx extrapolated = (4.0 * fine.rows[2 * n][0] - coarse.rows[n][0]) / 3.0;
        worst = std::max(worst, std::abs(extrapolated - std::exp(-rate * coarse.times_fs[n])));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("t_end = 0 yields only the initial values") {
    const auto p = scaled(2, 0);
    const auto eqs = models::build_single_excitation(p);
    const auto out = run(eqs, initial_vector(eqs, models::single_excitation_initial()), p.tau_fs / 100, 0.0, 0);
    REQUIRE(out.rows.size() == 1);
    CHECK(out.times_fs[0] == 0.0);
    CHECK(out.rows[0][0] == cplx(1.0));
}

TEST_CASE("initial vector rejects unknown names") {
    const auto eqs = models::build_single_excitation(scaled(2, 0));
    CHECK_THROWS_AS(initial_vector(eqs, {{"p_C", 1.0}}), ConfigError);
}

TEST_CASE("band buffer zero conventions and window") {
    BandBuffer b(4, 2, false);
    b.begin_row(0);
    b.set(0, 0, 1.0);
    CHECK(b.get(0, 1) == cplx{});   // i < j
    CHECK(b.get(0, -1) == cplx{});  // before start
    CHECK(b.get(0, 0) == cplx(1.0));
    for (long i = 1; i <= 7; ++i) {
        b.begin_row(i);
        for (long j = std::max(0L, i - b.max_lag()); j <= i; ++j) b.set(i, j, cplx(double(i), double(j)));
    }
    CHECK(b.get(7, 7) == cplx(7.0, 7.0));
    CHECK(b.get(7, 1) == cplx(7.0, 1.0));  // lag 6 = max lag
    CHECK(b.get(7, 0) == cplx{});           // lag 7 > max lag
    CHECK(b.get(3, 1) == cplx(3.0, 1.0));
    CHECK_THROWS_AS(b.get(1, 0), std::out_of_range);  // row retired from the ring
    CHECK_THROWS_AS(b.get(5, 0), std::out_of_range);  // lag past K on an old row
    CHECK_THROWS_AS(b.begin_row(9), std::logic_error);
}

TEST_CASE("engine band reads are causal and zero below the diagonal") {
    const auto params = scaled(2, 3.7);
    const auto eqs = models::build_single_excitation(params);
    const double h = params.tau_fs / 20;
    Engine e(eqs, initial_vector(eqs, models::single_excitation_initial()), {h, 10, false});
    for (int n = 0; n < 60; ++n) e.step();
    for (const auto& band : eqs.band_vars) {
        for (long i = 40; i <= 60; ++i) {
            CHECK(e.band_value(band, i, i + 1) == cplx{});
            CHECK(e.band_value(band, i, i + 7) == cplx{});
        }
    }
    CHECK(e.band_value(models::names::single_band(Cavity::A, Cavity::A), 60, 60) ==
          e.system_values()[0]);
}

TEST_CASE("Heun scheme converges at second order") {
    const auto params = scaled(2, 3.7);
    const auto eqs = models::build_single_excitation(params);
    const auto init = initial_vector(eqs, models::single_excitation_initial());
    const double t_end = 10.0 * params.tau_fs;
    const auto reference = run(eqs, init, params.tau_fs / 400, t_end, 0);
    auto error = [&](int K) {
        const auto out = run(eqs, init, params.tau_fs / K, t_end, 0);
        const std::size_t stride = static_cast<std::size_t>(400 / K);
        double worst = 0.0;
        for (std::size_t n = 0; n < out.rows.size(); ++n)
            for (std::size_t v = 0; v < 3; ++v)
                worst = std::max(worst, std::abs(out.rows[n][v] - reference.rows[n * stride][v]));
        return worst;
    };
    const double e25 = error(25);
    const double e50 = error(50);
    CHECK(e25 / e50 > 3.5);
    CHECK(e25 / e50 < 4.5);
}

TEST_CASE("non-finite values abort with the step index") {
    auto eqs = decay_only(-50.0, 10.0);  // growth rate 50/fs
    try {
        run(eqs, std::vector<cplx>{1.0}, 1.0, 1000.0, 0);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(e.step() > 0);
        CHECK(e.step() < 1000);
    }
}

TEST_CASE("runs are deterministic") {
    const auto params = scaled(2, 3.7);
    const auto eqs = models::build_single_excitation(params);
    const auto init = initial_vector(eqs, models::single_excitation_initial());
    const auto a = run(eqs, init, params.tau_fs / 50, 5 * params.tau_fs, 30);
    const auto b = run(eqs, init, params.tau_fs / 50, 5 * params.tau_fs, 30);
    CHECK(a.rows == b.rows);
    CHECK(a.times_fs == b.times_fs);
}

TEST_CASE("default band width follows the weakest damping") {
    const auto params = scaled(2, 3.7);
    const auto eqs = models::build_single_excitation(params);
    const double h = params.tau_fs / 100;
    const double g = 0.0124 / kHbar;
    CHECK(default_band_width(eqs, h, 1e-12) == static_cast<long>(std::ceil(std::log(1e12) / (g * h))));
    CHECK_THROWS_AS(default_band_width(eqs, h, 2.0), ConfigError);
}

TEST_CASE("oversized band storage is refused before allocation") {
    const auto params = scaled(0.01, 0);
    const auto eqs = models::build_single_excitation(params);
    const double h = params.tau_fs / 2000;
    CHECK_THROWS_AS(Engine(eqs, initial_vector(eqs, models::single_excitation_initial()),
                           {h, default_band_width(eqs, h), false}),
                    ConfigError);
}
