#pragma once

// Data-driven registry of linear equations of motion with one-time (system)
// variables ρ(t) and two-time (band) variables ρ(t, t₁), t ≥ t₁.
//
// Every term is   d target / dt  +=  coefficient · [conj] reference
// where the reference selects a variable at a time pattern relative to the
// target's own time arguments. All delayed patterns share the set's delay τ.

#include <string>
#include <vector>

#include "delayheom/constants.hpp"

namespace delayheom::engine {

enum class Pattern {
    Current,           ///< system var at t            (system targets)
    Diagonal,          ///< band var at (t, t − τ)     (system targets)
    Own,               ///< band var at (t, t₁)        (band targets)
    SecondArgDelayed,  ///< band var at (t₁, t − τ), active while t₁ >= t − τ
    FirstArgDelayed,   ///< band var at (t − τ, t₁), active while t − τ > t₁
};

const char* to_string(Pattern pattern);

struct Reference {
    Pattern pattern;
    std::string var;
    bool conjugate = false;
};

struct Term {
    std::string target;
    cplx coefficient;  ///< 1/fs
    Reference source;
};

enum class SourceMode {
    Value,       ///< δ(t − t₁)·c·ρ_s(t₁)
    Derivative,  ///< δ(t − t₁)·c·∂_t ρ_s(t₁)
};

/// Delta source that seeds line t₁ of a band variable: ρ(t₁, t₁) = c·[conj] ρ_s(t₁).
struct DiagonalSource {
    std::string band_var;
    cplx coefficient;
    std::string system_var;
    bool conjugate = false;
    SourceMode mode = SourceMode::Value;
};

struct EquationSet {
    std::string name;
    std::vector<std::string> system_vars;
    std::vector<std::string> band_vars;
    std::vector<Term> terms;
    std::vector<DiagonalSource> diagonal_sources;
    double delay_fs = 0.0;

    EquationSet& add_term(std::string target, cplx coefficient, Reference source);
    EquationSet& add_source(DiagonalSource source);

    int system_index(const std::string& var) const;  ///< −1 if absent
    int band_index(const std::string& var) const;    ///< −1 if absent
    bool has_pattern(Pattern pattern) const;
};

/// Structural check. Returns one message per problem; empty means valid.
std::vector<std::string> validate(const EquationSet& eqs);

/// Throws ConfigError listing every problem found by validate().
void require_valid(const EquationSet& eqs);

}  // namespace delayheom::engine
