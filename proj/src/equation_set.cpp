#include "delayheom/equation_set.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "delayheom/errors.hpp"

namespace delayheom::engine {

const char* to_string(Pattern pattern) {
    switch (pattern) {
        case Pattern::Current: return "Current";
        case Pattern::Diagonal: return "Diagonal";
        case Pattern::Own: return "Own";
        case Pattern::SecondArgDelayed: return "SecondArgDelayed";
        case Pattern::FirstArgDelayed: return "FirstArgDelayed";
    }
    return "?";
}

EquationSet& EquationSet::add_term(std::string target, cplx coefficient, Reference source) {
    terms.push_back({std::move(target), coefficient, std::move(source)});
    return *this;
}

EquationSet& EquationSet::add_source(DiagonalSource source) {
    diagonal_sources.push_back(std::move(source));
    return *this;
}

namespace {

int find(const std::vector<std::string>& names, const std::string& var) {
    const auto it = std::find(names.begin(), names.end(), var);
    return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

bool is_delayed(Pattern p) {
    return p == Pattern::Diagonal || p == Pattern::SecondArgDelayed ||
           p == Pattern::FirstArgDelayed;
}

}  // namespace

int EquationSet::system_index(const std::string& var) const { return find(system_vars, var); }
int EquationSet::band_index(const std::string& var) const { return find(band_vars, var); }

bool EquationSet::has_pattern(Pattern pattern) const {
    return std::any_of(terms.begin(), terms.end(),
                       [pattern](const Term& t) { return t.source.pattern == pattern; });
}

std::vector<std::string> validate(const EquationSet& eqs) {
    std::vector<std::string> errors;

    std::set<std::string> seen;
    for (const auto& v : eqs.system_vars) {
        if (!seen.insert(v).second) errors.push_back("duplicate variable '" + v + "'");
    }
    for (const auto& v : eqs.band_vars) {
        if (!seen.insert(v).second) errors.push_back("duplicate variable '" + v + "'");
    }

    bool any_delayed = false;
    for (const auto& term : eqs.terms) {
        const bool system_target = eqs.system_index(term.target) >= 0;
        const bool band_target = eqs.band_index(term.target) >= 0;
        if (!system_target && !band_target) {
            errors.push_back("term targets undeclared variable '" + term.target + "'");
            continue;
        }
        const Pattern p = term.source.pattern;
        const std::string& ref = term.source.var;
        any_delayed = any_delayed || is_delayed(p);
        const bool wants_system = p == Pattern::Current;
        const bool resolved = wants_system ? eqs.system_index(ref) >= 0 : eqs.band_index(ref) >= 0;
        if (!resolved) {
            errors.push_back("term for '" + term.target + "' references undeclared " +
                             (wants_system ? "system" : "band") + " variable '" + ref + "'");
        }
        const bool system_pattern = p == Pattern::Current || p == Pattern::Diagonal;
        if (system_target && !system_pattern) {
            errors.push_back("system variable '" + term.target + "' cannot use pattern " +
                             to_string(p));
        }
        if (band_target && system_pattern) {
            errors.push_back("band variable '" + term.target + "' cannot use pattern " +
                             to_string(p));
        }
        if (!std::isfinite(term.coefficient.real()) || !std::isfinite(term.coefficient.imag())) {
            errors.push_back("non-finite coefficient in equation for '" + term.target + "'");
        }
    }

    for (const auto& band : eqs.band_vars) {
        const auto n = std::count_if(eqs.diagonal_sources.begin(), eqs.diagonal_sources.end(),
                                     [&](const DiagonalSource& s) { return s.band_var == band; });
        if (n == 0) errors.push_back("band variable '" + band + "' has no diagonal source");
        if (n > 1) errors.push_back("band variable '" + band + "' has more than one diagonal source");
    }
    for (const auto& src : eqs.diagonal_sources) {
        if (eqs.band_index(src.band_var) < 0)
            errors.push_back("diagonal source targets undeclared band variable '" + src.band_var + "'");
        if (eqs.system_index(src.system_var) < 0)
            errors.push_back("diagonal source of '" + src.band_var +
                             "' references undeclared system variable '" + src.system_var + "'");
    }

    if (!std::isfinite(eqs.delay_fs) || eqs.delay_fs < 0.0) {
        errors.push_back("delay must be finite and >= 0");
    } else if (any_delayed && !(eqs.delay_fs > 0.0)) {
        errors.push_back("delayed references require a positive delay");
    }
    return errors;
}

void require_valid(const EquationSet& eqs) {
    const auto errors = validate(eqs);
    if (errors.empty()) return;
    std::string msg = "invalid equation set '" + eqs.name + "':";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
}

}  // namespace delayheom::engine
