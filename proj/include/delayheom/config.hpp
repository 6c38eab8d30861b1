#pragma once

// JSON simulation configuration.
//
// {
//   "slab":   {"L_um", "eps_r", "eps_b"?, "R_um", "mode_index"?, "convention"?}
//   "cavity": {"omega_eV", "gamma_eV", "V_eV"?, "tau_ps" | "tau_fs"}
//   "model": "single" | "twophoton" | "wavefunction",
//   "numerics": {"steps_per_delay" | "h_fs", "t_end_tau" | "t_end_fs",
//                "band_epsilon", "band_width", "drop_noncontributing",
//                "literal_two_photon_source"},
//   "initial_state": "<preset>" | {"<variable>": number | [re, im], ...},
//   "output": "<path>"
// }
//
// Exactly one of slab / cavity. Unknown keys are rejected with their path.

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "delayheom/constants.hpp"
#include "delayheom/qnm.hpp"

namespace delayheom::cli {

enum class ModelKind { Single, TwoPhoton, Wavefunction };

ModelKind parse_model(std::string_view name);
std::string_view to_string(ModelKind model);

struct Numerics {
    std::optional<int> steps_per_delay;  ///< >= 10; default 200 when h_fs is absent
    std::optional<double> h_fs;
    std::optional<double> t_end_tau;     ///< default 10 when t_end_fs is absent
    std::optional<double> t_end_fs;
    double band_epsilon = 1e-12;
    std::optional<long> band_width;      ///< overrides band_epsilon
    bool drop_noncontributing = false;
    bool literal_two_photon_source = false;

    bool operator==(const Numerics&) const = default;
};

struct SlabSource {
    qnm::SlabParams slab;
    qnm::UnitConvention convention = qnm::UnitConvention::Cyclic;

    bool operator==(const SlabSource&) const = default;
};

struct SimConfig {
    std::optional<SlabSource> slab;
    std::optional<qnm::CavityParams> cavity;
    ModelKind model = ModelKind::Single;
    Numerics numerics;
    std::optional<std::string> initial_preset;      ///< used when initial_values is empty
    std::map<std::string, cplx> initial_values;
    std::optional<std::string> output;

    bool operator==(const SimConfig&) const = default;

    qnm::CavityParams cavity_params() const;
    double step_fs() const;
    double t_end_fs() const;
    /// Initial system values by variable name for the selected model.
    std::map<std::string, cplx> initial_state() const;
};

/// Named initial states: "excite_A", "excite_B" (single, wavefunction),
/// "two_photon_A", "two_photon_B" (twophoton).
std::map<std::string, cplx> preset_initial_state(ModelKind model, const std::string& preset);

/// Throws ConfigError naming the offending key path.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::string& path);

/// Canonical JSON; parse_config(emit_config(c)) == c.
std::string emit_config(const SimConfig& config);

}  // namespace delayheom::cli
