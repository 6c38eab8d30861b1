#include "delayheom/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "delayheom/errors.hpp"

namespace delayheom::engine {

namespace {
constexpr double kMaxBandBytes = 4e9;
}  // namespace

std::size_t SimOutput::column(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw std::out_of_range("no output column '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
}

std::vector<cplx> SimOutput::series(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<cplx> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row[c]);
    return out;
}

long delay_steps(double delay_fs, double step_fs) {
    if (!(step_fs > 0.0) || !std::isfinite(step_fs))
        throw ConfigError("step size must be positive and finite");
    const double ratio = delay_fs / step_fs;
    const double k = std::round(ratio);
    if (k < 1.0 || std::abs(ratio - k) > 1e-9 * std::max(1.0, k)) {
        throw ConfigError("step size " + std::to_string(step_fs) + " fs does not divide the delay " +
                          std::to_string(delay_fs) + " fs into a positive integer number of steps");
    }
    return static_cast<long>(k);
}

long default_band_width(const EquationSet& eqs, double step_fs, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("band epsilon must lie in (0, 1)");
    double weakest = std::numeric_limits<double>::infinity();
    for (const auto& band : eqs.band_vars) {
        double damping = 0.0;
        for (const auto& t : eqs.terms) {
            if (t.target == band && t.source.pattern == Pattern::Own && t.source.var == band &&
                !t.source.conjugate) {
                damping -= t.coefficient.real();
            }
        }
        if (!(damping > 0.0)) {
            throw ConfigError("band variable '" + band +
                              "' is undamped; set the band width explicitly");
        }
        weakest = std::min(weakest, damping);
    }
    if (eqs.band_vars.empty()) return 0;
    return static_cast<long>(std::ceil(std::log(1.0 / epsilon) / (weakest * step_fs)));
}

Engine::Engine(const EquationSet& eqs, std::span<const cplx> initial, EngineOptions options)
    : h_(options.step_fs), band_width_(options.band_width) {
    require_valid(eqs);
    if (initial.size() != eqs.system_vars.size())
        throw ConfigError("initial state has " + std::to_string(initial.size()) +
                          " values, expected " + std::to_string(eqs.system_vars.size()));
    if (band_width_ < 0) throw ConfigError("band width must be >= 0");
    K_ = delay_steps(eqs.delay_fs, h_);
    max_lag_ = K_ + band_width_;

    band_names_ = eqs.band_vars;
    system_terms_.resize(eqs.system_vars.size());
    band_terms_.resize(eqs.band_vars.size());
    bool first_arg = false;
    for (const auto& t : eqs.terms) {
        const Pattern p = t.source.pattern;
        if (p == Pattern::FirstArgDelayed && options.drop_first_arg_delayed) continue;
        first_arg = first_arg || p == Pattern::FirstArgDelayed;
        const int var = p == Pattern::Current ? eqs.system_index(t.source.var)
                                              : eqs.band_index(t.source.var);
        const CompiledTerm ct{p, var, t.source.conjugate, t.coefficient};
        if (const int s = eqs.system_index(t.target); s >= 0) {
            system_terms_[static_cast<std::size_t>(s)].push_back(ct);
        } else {
            band_terms_[static_cast<std::size_t>(eqs.band_index(t.target))].push_back(ct);
        }
    }
    sources_.resize(eqs.band_vars.size());
    for (const auto& src : eqs.diagonal_sources) {
        sources_[static_cast<std::size_t>(eqs.band_index(src.band_var))] = {
            eqs.system_index(src.system_var), src.conjugate, src.mode, src.coefficient};
        needs_rates_ = needs_rates_ || src.mode == SourceMode::Derivative;
    }

    const double width = first_arg ? static_cast<double>(max_lag_ + 1) : static_cast<double>(K_ + 1);
    const double bytes = static_cast<double>(eqs.band_vars.size()) * sizeof(cplx) *
                         (static_cast<double>(K_ + 2) * width + 2.0 * static_cast<double>(band_width_));
    if (bytes > kMaxBandBytes) {
        throw ConfigError("band storage would need " + std::to_string(bytes / 1e9) +
                          " GB; lower the band width or drop the non-contributing terms");
    }

    system_.assign(initial.begin(), initial.end());
    bands_.reserve(eqs.band_vars.size());
    for (std::size_t v = 0; v < eqs.band_vars.size(); ++v) {
        bands_.emplace_back(K_, band_width_, first_arg);
        bands_.back().begin_row(0);
    }
    if (needs_rates_) system_rhs(0, system_, 0, rates_);
    seed_line(0, system_, rates_);

    diagnostics_.step_fs = h_;
    diagnostics_.delay_steps = K_;
    diagnostics_.band_width = band_width_;

    const std::size_t lines = static_cast<std::size_t>(max_lag_) + 1;
    k0_band_.assign(bands_.size(), std::vector<cplx>(lines));
    new_band_.assign(bands_.size(), std::vector<cplx>(lines));
    check_finite();
}

void Engine::system_rhs(long row, std::span<const cplx> values, long delayed_floor,
                        std::vector<cplx>& out) const {
    out.assign(values.size(), cplx{});
    const long delayed = row - K_;
    for (std::size_t s = 0; s < system_terms_.size(); ++s) {
        cplx acc{};
        for (const auto& t : system_terms_[s]) {
            cplx v;
            if (t.pattern == Pattern::Current) {
                v = values[static_cast<std::size_t>(t.var)];
            } else {  // Diagonal
                if (delayed < delayed_floor) continue;
                v = bands_[static_cast<std::size_t>(t.var)].get(row, delayed);
            }
            acc += t.coefficient * (t.conjugate ? std::conj(v) : v);
        }
        out[s] = acc;
    }
}

cplx Engine::band_rhs(int var, long row, long line, long delayed_floor) const {
    const long delayed = row - K_;
    cplx acc{};
    for (const auto& t : band_terms_[static_cast<std::size_t>(var)]) {
        const BandBuffer& src = bands_[static_cast<std::size_t>(t.var)];
        cplx v;
        switch (t.pattern) {
            case Pattern::Own:
                v = src.get(row, line);
                break;
            case Pattern::SecondArgDelayed:
                // Boundary t₁ = t − τ belongs to this branch.
                if (delayed < delayed_floor || line < delayed) continue;
                v = src.get(line, delayed);
                break;
            case Pattern::FirstArgDelayed:
                if (delayed <= line) continue;
                v = src.get(delayed, line);
                break;
            default:
                continue;
        }
        acc += t.coefficient * (t.conjugate ? std::conj(v) : v);
    }
    return acc;
}

void Engine::seed_line(long row, std::span<const cplx> values, std::span<const cplx> rates) {
    for (std::size_t v = 0; v < bands_.size(); ++v) {
        const CompiledSource& s = sources_[v];
        const auto idx = static_cast<std::size_t>(s.system_var);
        cplx x = s.mode == SourceMode::Derivative ? rates[idx] : values[idx];
        if (s.conjugate) x = std::conj(x);
        bands_[v].set(row, row, s.coefficient * x);
    }
}

void Engine::check_finite() const {
    for (std::size_t s = 0; s < system_.size(); ++s) {
        if (!std::isfinite(system_[s].real()) || !std::isfinite(system_[s].imag()))
            throw NumericalError("non-finite system value", step_);
    }
    for (const auto& b : bands_) {
        const cplx d = b.get(step_, step_);
        if (!std::isfinite(d.real()) || !std::isfinite(d.imag()))
            throw NumericalError("non-finite band value", step_);
    }
}

void Engine::step() {
    const long n = step_;
    const long next = n + 1;
    const long first_line = std::max(0L, next - max_lag_);
    const std::size_t nb = bands_.size();

    // Predictor: slopes at t_n.
    system_rhs(n, system_, 0, k0_sys_);
    for (std::size_t v = 0; v < nb; ++v) {
        for (long j = first_line; j <= n; ++j) {
            k0_band_[v][static_cast<std::size_t>(j - first_line)] =
                band_rhs(static_cast<int>(v), n, j, 0);
        }
    }
    pred_sys_.resize(system_.size());
    for (std::size_t s = 0; s < system_.size(); ++s) pred_sys_[s] = system_[s] + h_ * k0_sys_[s];
    for (std::size_t v = 0; v < nb; ++v) {
        BandBuffer& b = bands_[v];
        b.begin_row(next);
        for (long j = first_line; j <= n; ++j) {
            b.set(next, j, b.get(n, j) + h_ * k0_band_[v][static_cast<std::size_t>(j - first_line)]);
        }
    }

    // Corrector: slopes at t_{n+1} from the predicted values.
    system_rhs(next, pred_sys_, 1, k1_sys_);
    for (std::size_t v = 0; v < nb; ++v) {
        const BandBuffer& b = bands_[v];
        for (long j = first_line; j <= n; ++j) {
            const auto idx = static_cast<std::size_t>(j - first_line);
            const cplx k1 = band_rhs(static_cast<int>(v), next, j, 1);
            new_band_[v][idx] = b.get(n, j) + 0.5 * h_ * (k0_band_[v][idx] + k1);
        }
    }
    for (std::size_t s = 0; s < system_.size(); ++s)
        system_[s] += 0.5 * h_ * (k0_sys_[s] + k1_sys_[s]);
    for (std::size_t v = 0; v < nb; ++v) {
        BandBuffer& b = bands_[v];
        for (long j = first_line; j <= n; ++j) {
            b.set(next, j, new_band_[v][static_cast<std::size_t>(j - first_line)]);
        }
    }

    step_ = next;
    if (needs_rates_) system_rhs(next, system_, 0, rates_);
    seed_line(next, system_, rates_);

    if (next - max_lag_ >= 0) {
        for (const auto& b : bands_) {
            diagnostics_.truncation_certificate =
                std::max(diagnostics_.truncation_certificate, std::abs(b.get(next, next - max_lag_)));
        }
    }
    check_finite();
}

cplx Engine::band_value(const std::string& band_var, long i, long j) const {
    const auto it = std::find(band_names_.begin(), band_names_.end(), band_var);
    if (it == band_names_.end()) throw std::out_of_range("no band variable '" + band_var + "'");
    return bands_[static_cast<std::size_t>(it - band_names_.begin())].get(i, j);
}

SimOutput run(const EquationSet& eqs, std::span<const cplx> initial, double step_fs,
              double t_end_fs, long band_width, bool drop_first_arg_delayed) {
    if (!(t_end_fs >= 0.0) || !std::isfinite(t_end_fs))
        throw ConfigError("end time must be finite and >= 0");
    Engine engine(eqs, initial, {step_fs, band_width, drop_first_arg_delayed});
    const auto steps = static_cast<long>(std::floor(t_end_fs / step_fs + 1e-9));

    SimOutput out;
    out.names = eqs.system_vars;
    out.times_fs.reserve(static_cast<std::size_t>(steps) + 1);
    out.rows.reserve(static_cast<std::size_t>(steps) + 1);
    auto record = [&] {
        out.times_fs.push_back(engine.time_fs());
        const auto v = engine.system_values();
        out.rows.emplace_back(v.begin(), v.end());
    };
    record();
    for (long n = 0; n < steps; ++n) {
        engine.step();
        record();
    }
    out.diagnostics = engine.diagnostics();
    return out;
}

std::vector<cplx> initial_vector(const EquationSet& eqs, const std::map<std::string, cplx>& values) {
    std::vector<cplx> out(eqs.system_vars.size());
    for (const auto& [name, value] : values) {
        const int idx = eqs.system_index(name);
        if (idx < 0) throw ConfigError("initial state names unknown variable '" + name + "'");
        out[static_cast<std::size_t>(idx)] = value;
    }
    return out;
}

}  // namespace delayheom::engine
