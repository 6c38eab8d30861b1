#pragma once

// Fixed-step Heun (explicit trapezoidal) integrator for an EquationSet.
//
// The grid step h must divide the delay τ exactly (K = τ/h), so every delayed
// reference lands on a stored grid point. Each step opens a new band line
// j = n + 1 whose diagonal value is set from its delta source; lines are
// advanced until their lag exceeds K + band_width and then retired.
//
// Delayed reads follow method-of-steps semantics: a step whose delayed
// interval starts before t = 0 sees zero history at both ends, so the jump
// of the pre-history at t = 0 is never averaged into a trapezoid.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "delayheom/band_buffer.hpp"
#include "delayheom/equation_set.hpp"

namespace delayheom::engine {

struct EngineOptions {
    double step_fs = 0.0;
    long band_width = 0;  ///< extra lags kept past K
    bool drop_first_arg_delayed = false;
};

struct Diagnostics {
    double step_fs = 0.0;
    long delay_steps = 0;
    long band_width = 0;
    /// Largest |band value| at the truncation edge (lag K + band_width) over the run.
    double truncation_certificate = 0.0;
};

struct SimOutput {
    std::vector<std::string> names;  ///< system variables, column order
    std::vector<double> times_fs;
    std::vector<std::vector<cplx>> rows;  ///< rows[n][v]
    Diagnostics diagnostics;

    std::size_t column(const std::string& name) const;
    std::vector<cplx> series(const std::string& name) const;
};

/// K = τ/h; throws ConfigError unless it is a positive integer (relative tolerance 1e-9).
long delay_steps(double delay_fs, double step_fs);

/// ceil(ln(1/ε) / (γ_min h)) with γ_min the weakest Own-damping rate (1/fs) over the
/// band variables. Throws ConfigError if some band variable is undamped.
long default_band_width(const EquationSet& eqs, double step_fs, double epsilon = 1e-12);

class Engine {
public:
    Engine(const EquationSet& eqs, std::span<const cplx> initial, EngineOptions options);

    void step();

    long current_step() const { return step_; }
    double time_fs() const { return static_cast<double>(step_) * h_; }
    std::span<const cplx> system_values() const { return system_; }
    const Diagnostics& diagnostics() const { return diagnostics_; }

    /// Stored band value ρ_band(t_i, t_j); reads are limited to the retained window.
    cplx band_value(const std::string& band_var, long i, long j) const;

private:
    struct CompiledTerm {
        Pattern pattern;
        int var;
        bool conjugate;
        cplx coefficient;
    };
    struct CompiledSource {
        int system_var;
        bool conjugate;
        SourceMode mode;
        cplx coefficient;
    };

    void system_rhs(long row, std::span<const cplx> values, long delayed_floor,
                    std::vector<cplx>& out) const;
    cplx band_rhs(int var, long row, long line, long delayed_floor) const;
    void seed_line(long row, std::span<const cplx> values, std::span<const cplx> rates);
    void check_finite() const;

    double h_;
    long K_;
    long band_width_;
    long max_lag_;
    long step_ = 0;
    std::vector<std::string> band_names_;
    std::vector<std::vector<CompiledTerm>> system_terms_;
    std::vector<std::vector<CompiledTerm>> band_terms_;
    std::vector<CompiledSource> sources_;
    bool needs_rates_ = false;
    std::vector<cplx> system_;
    std::vector<BandBuffer> bands_;
    Diagnostics diagnostics_;

    // step scratch
    std::vector<cplx> k0_sys_, k1_sys_, pred_sys_, rates_;
    std::vector<std::vector<cplx>> k0_band_, new_band_;
};

/// Runs from t = 0 to t_end (rounded down to the grid) and records every step.
SimOutput run(const EquationSet& eqs, std::span<const cplx> initial, double step_fs,
              double t_end_fs, long band_width, bool drop_first_arg_delayed = false);

/// Orders named initial values by eqs.system_vars; unnamed variables start at 0.
std::vector<cplx> initial_vector(const EquationSet& eqs, const std::map<std::string, cplx>& values);

}  // namespace delayheom::engine
