#include "delayheom/commands.hpp"

#include <chrono>
#include <fstream>
#include <future>

#include "delayheom/errors.hpp"
#include "delayheom/oracle.hpp"
#include "delayheom/output.hpp"
#include "json.hpp"

namespace delayheom::cli {

using nlohmann::json;

namespace {

engine::EquationSet build_model(const SimConfig& config, const qnm::CavityParams& params) {
    switch (config.model) {
        case ModelKind::Single: return models::build_single_excitation(params);
        case ModelKind::TwoPhoton:
            return models::build_two_photon(params, {config.numerics.literal_two_photon_source});
        case ModelKind::Wavefunction: break;
    }
    throw ConfigError("the wavefunction model has no equation set");
}

long band_width(const SimConfig& config, const engine::EquationSet& eqs, double h) {
    if (config.numerics.band_width) return *config.numerics.band_width;
    return engine::default_band_width(eqs, h, config.numerics.band_epsilon);
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json params_json(const qnm::CavityParams& p) {
    json v = json::array();
    for (int m = 0; m < 2; ++m) v.push_back({complex_json(p.V_eV[m][0]), complex_json(p.V_eV[m][1])});
    return {{"omega_eV", {p.omega_eV[0], p.omega_eV[1]}},
            {"gamma_eV", {p.gamma_eV[0], p.gamma_eV[1]}},
            {"V_eV", v},
            {"tau_fs", p.tau_fs},
            {"gamma_tau_over_hbar", {p.gamma_eV[0] * p.tau_fs / kHbar, p.gamma_eV[1] * p.tau_fs / kHbar}},
            {"omega_tau_over_hbar", {p.omega_eV[0] * p.tau_fs / kHbar, p.omega_eV[1] * p.tau_fs / kHbar}}};
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::bad_alloc&) {
        err << "numerical error: out of memory; reduce steps_per_delay or set band_width\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace

engine::SimOutput simulate(const SimConfig& config) {
    const qnm::CavityParams params = config.cavity_params();
    const double h = config.step_fs();
    const double t_end = config.t_end_fs();
    const auto init = config.initial_state();

    if (config.model == ModelKind::Wavefunction) {
        const auto get = [&](const char* k) {
            const auto it = init.find(k);
            return it == init.end() ? cplx{} : it->second;
        };
        const auto amps = oracle::run_wavefunction(params, h, t_end, get("N_A"), get("N_B"));
        engine::SimOutput out;
        out.names = {"N_A", "N_B"};
        out.times_fs = amps.times_fs;
        out.rows.reserve(amps.times_fs.size());
        for (std::size_t i = 0; i < amps.times_fs.size(); ++i) out.rows.push_back({amps.N_A[i], amps.N_B[i]});
        out.diagnostics.step_fs = h;
        out.diagnostics.delay_steps = engine::delay_steps(params.tau_fs, h);
        return out;
    }
    const auto eqs = build_model(config, params);
    return engine::run(eqs, engine::initial_vector(eqs, init), h, t_end, band_width(config, eqs, h),
                       config.numerics.drop_noncontributing);
}

std::string CompareReport::to_json() const {
    const json j = {{"max_dev_p_A", deviations.max_dev_pA},
                    {"max_dev_p_B", deviations.max_dev_pB},
                    {"max_dev_c_AB", deviations.max_dev_cAB},
                    {"max_dev", deviations.max()},
                    {"tolerance", tolerance},
                    {"step_fs", step_fs},
                    {"samples", samples},
                    {"verdict", pass ? "pass" : "fail"}};
    return j.dump(2) + "\n";
}

CompareReport compare(const SimConfig& config, double tolerance) {
    if (config.model != ModelKind::Single) throw ConfigError("compare: model must be single");
    if (!(tolerance > 0.0)) throw ConfigError("compare: tolerance must be > 0");
    const qnm::CavityParams params = config.cavity_params();
    const double h = config.step_fs();
    const double t_end = config.t_end_fs();
    const auto init = config.initial_state();
    if (init.size() != 1 || !init.count(models::names::pA) || init.at(models::names::pA) != 1.0)
        throw ConfigError("compare: initial state must be excite_A");

    auto oracle_run = std::async(std::launch::async, [&] { return oracle::run_wavefunction(params, h, t_end); });
    const engine::SimOutput heom = simulate(config);
    const oracle::WaveAmplitudes wave = oracle_run.get();

    CompareReport rep;
    rep.deviations = models::pure_state_crosscheck(heom, wave);
    rep.tolerance = tolerance;
    rep.step_fs = h;
    rep.samples = heom.times_fs.size();
    rep.pass = rep.deviations.max() <= tolerance;
    return rep;
}

std::string qnm_info_json(const qnm::SlabParams& slab) {
    slab.validate();
    json j;
    const auto cyc = qnm::qnm_frequency(slab, qnm::UnitConvention::Cyclic);
    const auto ang = qnm::qnm_frequency(slab, qnm::UnitConvention::Angular);
    j["slab"] = {{"L_um", slab.L}, {"eps_r", slab.eps_R}, {"eps_b", slab.eps_B}, {"R_um", slab.R},
                 {"mode_index", slab.mode_index}};
    j["z"] = complex_json(cyc.z);
    j["gamma_over_omega"] = -cyc.z.imag() / cyc.z.real();
    j["cyclic"] = {{"omega_eV", cyc.omega_eV}, {"gamma_eV", cyc.gamma_eV}};
    j["angular"] = {{"omega_eV", ang.omega_eV}, {"gamma_eV", ang.gamma_eV}};
    const auto p = qnm::derive_cavity_params(slab, qnm::UnitConvention::Cyclic);
    json v = json::array();
    for (int m = 0; m < 2; ++m) v.push_back({p.V_eV[m][0].real(), p.V_eV[m][1].real()});
    j["V_eV_cyclic"] = v;
    j["tau_fs"] = p.tau_fs;
    const auto s = qnm::overlaps(slab);
    j["S_AA_um3"] = s.S_AA;
    j["S_AB_um3"] = s.S_AB;
    return j.dump(2) + "\n";
}

std::string meta_json(const SimConfig& config, const engine::SimOutput& sim, double wall_time_s) {
    json j;
    j["version"] = kVersion;
    j["model"] = std::string(to_string(config.model));
    j["config"] = json::parse(emit_config(config));
    j["parameters"] = params_json(config.cavity_params());
    if (config.slab) j["convention"] = std::string(qnm::to_string(config.slab->convention));
    j["numerics"] = {{"step_fs", sim.diagnostics.step_fs},
                     {"delay_steps", sim.diagnostics.delay_steps},
                     {"band_width", sim.diagnostics.band_width},
                     {"steps", sim.rows.empty() ? 0 : sim.rows.size() - 1},
                     {"t_end_fs", sim.times_fs.empty() ? 0.0 : sim.times_fs.back()}};
    j["diagnostics"] = {{"truncation_certificate", sim.diagnostics.truncation_certificate},
                        {"wall_time_s", wall_time_s}};
    return j.dump(2) + "\n";
}

int simulate_command(const std::string& config_path, const std::optional<std::string>& out_path,
                     std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const SimConfig config = load_config(config_path);
        const std::optional<std::string> path = out_path ? out_path : config.output;
        if (!path) throw ConfigError("no output path: pass --out or set \"output\" in the config");
        const auto t0 = std::chrono::steady_clock::now();
        const engine::SimOutput sim = simulate(config);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        std::ofstream csv(*path, std::ios::binary);
        if (!csv) throw ConfigError("cannot write '" + *path + "'");
        write_csv(csv, sim);
        std::ofstream meta(*path + ".meta.json", std::ios::binary);
        if (!meta) throw ConfigError("cannot write '" + *path + ".meta.json'");
        meta << meta_json(config, sim, wall);
        out << "wrote " << sim.rows.size() << " rows to " << *path << '\n';
        return static_cast<int>(kExitOk);
    });
}

int compare_command(const std::string& config_path, double tolerance, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const CompareReport rep = compare(load_config(config_path), tolerance);
        out << rep.to_json();
        if (!rep.pass) {
            err << "compare: max deviation " << rep.deviations.max() << " exceeds tolerance " << tolerance << '\n';
            return static_cast<int>(kExitTolerance);
        }
        return static_cast<int>(kExitOk);
    });
}

int qnm_info_command(const qnm::SlabParams& slab, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        out << qnm_info_json(slab);
        return static_cast<int>(kExitOk);
    });
}

}  // namespace delayheom::cli
