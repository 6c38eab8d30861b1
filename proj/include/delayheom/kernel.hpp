#pragma once

// Bath correlation function of the two-cavity model as a finite list of
// weighted delayed delta terms:
//
//   C_μη(t − t') = 2 V_μη ħ² [Θ(t−t') δ(t−t'−τ) + Θ(t'−t) δ(t−t'+τ)]
//
// with τ = R/c for μ ≠ η and 0 otherwise. Integrating a delta kernel against a
// history collapses to weighted lookups, which is all the engine needs.

#include <vector>

#include "delayheom/constants.hpp"
#include "delayheom/qnm.hpp"

namespace delayheom::kernel {

enum class Direction { Forward, Backward };

struct DeltaTerm {
    cplx weight;       ///< 2 V_μη ħ²  (eV³·fs²)
    double delay_fs;   ///< >= 0
    Direction direction;
};

struct DelayKernel {
    std::vector<DeltaTerm> terms;

    /// Forward term; the only one that fires for t > t'.
    const DeltaTerm& forward() const;

    /// Kernel acting through the right-hand superoperator branch (weights conjugated).
    DelayKernel right_branch() const;
};

/// Rate in 1/fs contributed by a delta term, weight / ħ³ = 2 V_μη / ħ.
cplx rate_per_fs(const DeltaTerm& term);

DelayKernel correlation_kernel(const qnm::CavityParams& params, Cavity mu, Cavity eta);

/// Uniformly sampled complex history starting at t = 0.
struct History {
    double step_fs;
    std::vector<cplx> values;

    /// Linear interpolation between samples; zero before 0 or past the last sample.
    cplx at(double t_fs) const;
};

/// Σ_forward weight · f(t − delay); lookups outside the history return zero.
cplx kernel_convolve_sample(const DelayKernel& kernel, const History& history, double t_fs);

}  // namespace delayheom::kernel
