#include "delayheom/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "delayheom/errors.hpp"
#include "delayheom/models.hpp"
#include "json.hpp"

namespace delayheom::cli {

using nlohmann::json;

ModelKind parse_model(std::string_view name) {
    if (name == "single") return ModelKind::Single;
    if (name == "twophoton") return ModelKind::TwoPhoton;
    if (name == "wavefunction") return ModelKind::Wavefunction;
    throw ConfigError("model: expected single, twophoton or wavefunction, got '" + std::string(name) + "'");
}

std::string_view to_string(ModelKind model) {
    switch (model) {
        case ModelKind::Single: return "single";
        case ModelKind::TwoPhoton: return "twophoton";
        case ModelKind::Wavefunction: return "wavefunction";
    }
    return "single";
}

namespace {

std::vector<std::string> model_variables(ModelKind model) {
    switch (model) {
        case ModelKind::Single: return {models::names::pA, models::names::pB, models::names::cAB};
        case ModelKind::TwoPhoton: return {models::names::c20, models::names::c02, models::names::c11};
        case ModelKind::Wavefunction: return {"N_A", "N_B"};
    }
    return {};
}

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError(path + key + ": unknown key");
    }
}

const json& require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    return j;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path + ": must be finite");
    return v;
}

long integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError(path + ": expected an integer");
    return j.get<long>();
}

bool boolean(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw ConfigError(path + ": expected true or false");
    return j.get<bool>();
}

std::string string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path + ": expected a string");
    return j.get<std::string>();
}

cplx complex_value(const json& j, const std::string& path) {
    if (j.is_number()) return number(j, path);
    if (j.is_array() && j.size() == 2) return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
    throw ConfigError(path + ": expected a number or [re, im]");
}

std::array<double, 2> pair_value(const json& j, const std::string& path) {
    if (j.is_number()) {
        const double v = number(j, path);
        return {v, v};
    }
    if (j.is_array() && j.size() == 2) return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
    throw ConfigError(path + ": expected a number or [A, B]");
}

json complex_json(cplx z) {
    if (z.imag() == 0.0) return z.real();
    return json::array({z.real(), z.imag()});
}

SlabSource parse_slab(const json& j) {
    require_object(j, "slab");
    reject_unknown(j, "slab.", {"L_um", "eps_r", "eps_b", "R_um", "mode_index", "convention"});
    for (const char* key : {"L_um", "eps_r", "R_um"}) {
        if (!j.contains(key)) throw ConfigError(std::string("slab.") + key + ": required");
    }
    SlabSource s;
    s.slab.L = number(j["L_um"], "slab.L_um");
    s.slab.eps_R = number(j["eps_r"], "slab.eps_r");
    s.slab.eps_B = j.contains("eps_b") ? number(j["eps_b"], "slab.eps_b") : 1.0;
    s.slab.R = number(j["R_um"], "slab.R_um");
    if (j.contains("mode_index")) s.slab.mode_index = static_cast<int>(integer(j["mode_index"], "slab.mode_index"));
    if (j.contains("convention")) {
        try {
            s.convention = qnm::parse_convention(string(j["convention"], "slab.convention"));
        } catch (const std::exception& e) {
            throw ConfigError(std::string("slab.convention: ") + e.what());
        }
    }
    try {
        s.slab.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("slab: ") + e.what());
    }
    return s;
}

qnm::CavityParams parse_cavity(const json& j) {
    require_object(j, "cavity");
    reject_unknown(j, "cavity.", {"omega_eV", "gamma_eV", "V_eV", "tau_ps", "tau_fs"});
    for (const char* key : {"omega_eV", "gamma_eV"}) {
        if (!j.contains(key)) throw ConfigError(std::string("cavity.") + key + ": required");
    }
    qnm::CavityParams p;
    p.omega_eV = pair_value(j["omega_eV"], "cavity.omega_eV");
    p.gamma_eV = pair_value(j["gamma_eV"], "cavity.gamma_eV");
    const bool ps = j.contains("tau_ps");
    const bool fs = j.contains("tau_fs");
    if (ps == fs) throw ConfigError("cavity: exactly one of tau_ps, tau_fs is required");
    p.tau_fs = ps ? 1000.0 * number(j["tau_ps"], "cavity.tau_ps") : number(j["tau_fs"], "cavity.tau_fs");
    if (j.contains("V_eV")) {
        const json& v = j["V_eV"];
        if (!v.is_array() || v.size() != 2 || !v[0].is_array() || v[0].size() != 2 || !v[1].is_array() ||
            v[1].size() != 2) {
            throw ConfigError("cavity.V_eV: expected a 2x2 matrix [[AA, AB], [BA, BB]]");
        }
        for (int m = 0; m < 2; ++m)
            for (int e = 0; e < 2; ++e)
                p.V_eV[m][e] = complex_value(v[m][e], "cavity.V_eV[" + std::to_string(m) + "][" + std::to_string(e) + "]");
    } else {
        // V_μη = (1 + δ_μη) √(γ_μ γ_η) / 2
        for (int m = 0; m < 2; ++m)
            for (int e = 0; e < 2; ++e)
                p.V_eV[m][e] = (m == e ? 1.0 : 0.5) * std::sqrt(p.gamma_eV[m] * p.gamma_eV[e]);
    }
    try {
        p.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("cavity: ") + e.what());
    }
    return p;
}

Numerics parse_numerics(const json& j) {
    require_object(j, "numerics");
    reject_unknown(j, "numerics.", {"steps_per_delay", "h_fs", "t_end_tau", "t_end_fs", "band_epsilon",
                                    "band_width", "drop_noncontributing", "literal_two_photon_source"});
    Numerics n;
    if (j.contains("steps_per_delay") && j.contains("h_fs"))
        throw ConfigError("numerics: give steps_per_delay or h_fs, not both");
    if (j.contains("t_end_tau") && j.contains("t_end_fs"))
        throw ConfigError("numerics: give t_end_tau or t_end_fs, not both");
    if (j.contains("steps_per_delay")) {
        const long k = integer(j["steps_per_delay"], "numerics.steps_per_delay");
        if (k < 10) throw ConfigError("numerics.steps_per_delay: must be >= 10, got " + std::to_string(k));
        if (k > 1000000) throw ConfigError("numerics.steps_per_delay: must be <= 1000000");
        n.steps_per_delay = static_cast<int>(k);
    }
    if (j.contains("h_fs")) {
        n.h_fs = number(j["h_fs"], "numerics.h_fs");
        if (!(*n.h_fs > 0.0)) throw ConfigError("numerics.h_fs: must be > 0");
    }
    if (j.contains("t_end_tau")) {
        n.t_end_tau = number(j["t_end_tau"], "numerics.t_end_tau");
        if (!(*n.t_end_tau > 0.0)) throw ConfigError("numerics.t_end_tau: must be > 0");
    }
    if (j.contains("t_end_fs")) {
        n.t_end_fs = number(j["t_end_fs"], "numerics.t_end_fs");
        if (!(*n.t_end_fs > 0.0)) throw ConfigError("numerics.t_end_fs: must be > 0");
    }
    if (j.contains("band_epsilon")) {
        n.band_epsilon = number(j["band_epsilon"], "numerics.band_epsilon");
        if (!(n.band_epsilon > 0.0 && n.band_epsilon < 1.0))
            throw ConfigError("numerics.band_epsilon: must lie in (0, 1)");
    }
    if (j.contains("band_width")) {
        n.band_width = integer(j["band_width"], "numerics.band_width");
        if (*n.band_width < 0) throw ConfigError("numerics.band_width: must be >= 0");
    }
    if (j.contains("drop_noncontributing"))
        n.drop_noncontributing = boolean(j["drop_noncontributing"], "numerics.drop_noncontributing");
    if (j.contains("literal_two_photon_source"))
        n.literal_two_photon_source = boolean(j["literal_two_photon_source"], "numerics.literal_two_photon_source");
    return n;
}

}  // namespace

std::map<std::string, cplx> preset_initial_state(ModelKind model, const std::string& preset) {
    if (model == ModelKind::TwoPhoton) {
        if (preset == "two_photon_A") return {{models::names::c20, 1.0}};
        if (preset == "two_photon_B") return {{models::names::c02, 1.0}};
    } else {
        const bool amplitudes = model == ModelKind::Wavefunction;
        if (preset == "excite_A") return {{amplitudes ? "N_A" : models::names::pA, 1.0}};
        if (preset == "excite_B") return {{amplitudes ? "N_B" : models::names::pB, 1.0}};
    }
    throw ConfigError("initial_state: unknown preset '" + preset + "' for model " + std::string(to_string(model)));
}

qnm::CavityParams SimConfig::cavity_params() const {
    if (cavity) return *cavity;
    if (slab) return qnm::derive_cavity_params(slab->slab, slab->convention);
    throw ConfigError("config has neither slab nor cavity");
}

double SimConfig::step_fs() const {
    if (numerics.h_fs) return *numerics.h_fs;
    const double tau = cavity_params().tau_fs;
    if (!(tau > 0.0)) throw ConfigError("numerics: steps_per_delay needs a positive delay");
    return tau / numerics.steps_per_delay.value_or(200);
}

double SimConfig::t_end_fs() const {
    if (numerics.t_end_fs) return *numerics.t_end_fs;
    return numerics.t_end_tau.value_or(10.0) * cavity_params().tau_fs;
}

std::map<std::string, cplx> SimConfig::initial_state() const {
    if (!initial_values.empty()) return initial_values;
    if (initial_preset) return preset_initial_state(model, *initial_preset);
    return preset_initial_state(model, model == ModelKind::TwoPhoton ? "two_photon_A" : "excite_A");
}

SimConfig parse_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    reject_unknown(j, "", {"slab", "cavity", "model", "numerics", "initial_state", "output"});

    std::vector<std::string> missing;
    if (!j.contains("model")) missing.push_back("model");
    if (!j.contains("slab") && !j.contains("cavity")) missing.push_back("slab|cavity");
    if (!missing.empty()) {
        std::string msg = "config: missing required key(s):";
        for (const auto& m : missing) msg += " " + m;
        throw ConfigError(msg);
    }
    if (j.contains("slab") && j.contains("cavity")) throw ConfigError("config: give slab or cavity, not both");

    SimConfig c;
    c.model = parse_model(string(j["model"], "model"));
    if (j.contains("slab")) c.slab = parse_slab(j["slab"]);
    if (j.contains("cavity")) c.cavity = parse_cavity(j["cavity"]);
    if (j.contains("numerics")) c.numerics = parse_numerics(j["numerics"]);
    if (c.model != ModelKind::TwoPhoton && c.numerics.literal_two_photon_source)
        throw ConfigError("numerics.literal_two_photon_source: only valid for model twophoton");
    if (j.contains("initial_state")) {
        const json& init = j["initial_state"];
        if (init.is_string()) {
            c.initial_preset = init.get<std::string>();
            preset_initial_state(c.model, *c.initial_preset);
        } else if (init.is_object()) {
            const auto vars = model_variables(c.model);
            for (const auto& [key, value] : init.items()) {
                if (std::find(vars.begin(), vars.end(), key) == vars.end())
                    throw ConfigError("initial_state." + key + ": not a variable of model " +
                                      std::string(to_string(c.model)));
                c.initial_values[key] = complex_value(value, "initial_state." + key);
            }
            if (c.initial_values.empty()) throw ConfigError("initial_state: empty object");
        } else {
            throw ConfigError("initial_state: expected a preset name or an object");
        }
    }
    if (j.contains("output")) c.output = string(j["output"], "output");
    if (!(c.cavity_params().tau_fs > 0.0)) throw ConfigError("delay must be > 0 (R_um or tau)");
    return c;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string emit_config(const SimConfig& c) {
    json j = json::object();
    if (c.slab) {
        const auto& s = c.slab->slab;
        j["slab"] = {{"L_um", s.L},     {"eps_r", s.eps_R},           {"eps_b", s.eps_B},
                     {"R_um", s.R},     {"mode_index", s.mode_index},
                     {"convention", std::string(qnm::to_string(c.slab->convention))}};
    }
    if (c.cavity) {
        const auto& p = *c.cavity;
        json v = json::array();
        for (int m = 0; m < 2; ++m) v.push_back({complex_json(p.V_eV[m][0]), complex_json(p.V_eV[m][1])});
        j["cavity"] = {{"omega_eV", {p.omega_eV[0], p.omega_eV[1]}},
                       {"gamma_eV", {p.gamma_eV[0], p.gamma_eV[1]}},
                       {"V_eV", v},
                       {"tau_fs", p.tau_fs}};
    }
    j["model"] = std::string(to_string(c.model));
    json n = json::object();
    const auto& nm = c.numerics;
    if (nm.steps_per_delay) n["steps_per_delay"] = *nm.steps_per_delay;
    if (nm.h_fs) n["h_fs"] = *nm.h_fs;
    if (nm.t_end_tau) n["t_end_tau"] = *nm.t_end_tau;
    if (nm.t_end_fs) n["t_end_fs"] = *nm.t_end_fs;
    n["band_epsilon"] = nm.band_epsilon;
    if (nm.band_width) n["band_width"] = *nm.band_width;
    n["drop_noncontributing"] = nm.drop_noncontributing;
    n["literal_two_photon_source"] = nm.literal_two_photon_source;
    j["numerics"] = n;
    if (!c.initial_values.empty()) {
        json init = json::object();
        for (const auto& [k, v] : c.initial_values) init[k] = complex_json(v);
        j["initial_state"] = init;
    } else if (c.initial_preset) {
        j["initial_state"] = *c.initial_preset;
    }
    if (c.output) j["output"] = *c.output;
    return j.dump(2) + "\n";
}

}  // namespace delayheom::cli
