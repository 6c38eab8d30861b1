#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "delayheom/config.hpp"
#include "delayheom/engine.hpp"
#include "delayheom/models.hpp"

namespace delayheom::cli {

inline constexpr const char* kVersion = "delayheom 0.1.0";

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNumerical = 2, kExitTolerance = 3 };

/// Runs the configured model. The wavefunction model reports columns N_A, N_B.
engine::SimOutput simulate(const SimConfig& config);

struct CompareReport {
    models::CrosscheckReport deviations;
    double tolerance = 5e-3;
    double step_fs = 0.0;
    std::size_t samples = 0;
    bool pass = false;

    std::string to_json() const;
};

/// Single-excitation hierarchy against the wave-function oracle on one grid.
CompareReport compare(const SimConfig& config, double tolerance = 5e-3);

/// z, both eV conventions, V, τ, S_AA and S_AB as pretty JSON.
std::string qnm_info_json(const qnm::SlabParams& slab);

/// Sidecar contents: resolved parameters, diagnostics, wall time.
std::string meta_json(const SimConfig& config, const engine::SimOutput& sim, double wall_time_s);

/// Command entry points; messages go to `err`, results to `out` or files.
int simulate_command(const std::string& config_path, const std::optional<std::string>& out_path,
                     std::ostream& out, std::ostream& err);
int compare_command(const std::string& config_path, double tolerance, std::ostream& out, std::ostream& err);
int qnm_info_command(const qnm::SlabParams& slab, std::ostream& out, std::ostream& err);

}  // namespace delayheom::cli
