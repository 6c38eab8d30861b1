#include "delayheom/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace delayheom::kernel {

const DeltaTerm& DelayKernel::forward() const {
    for (const auto& term : terms) {
        if (term.direction == Direction::Forward) return term;
    }
    throw std::logic_error("delay kernel has no forward term");
}

DelayKernel DelayKernel::right_branch() const {
    DelayKernel out = *this;
    for (auto& term : out.terms) term.weight = std::conj(term.weight);
    return out;
}

cplx rate_per_fs(const DeltaTerm& term) { return term.weight / (kHbar * kHbar * kHbar); }

DelayKernel correlation_kernel(const qnm::CavityParams& params, Cavity mu, Cavity eta) {
    const cplx weight = 2.0 * params.V(mu, eta) * kHbar * kHbar;
    if (mu == eta) {
        return {{{weight, 0.0, Direction::Forward}}};
    }
    // The backward branch never fires for t > t'; kept so the kernel mirrors
    // the full correlation function.
    return {{{weight, params.tau_fs, Direction::Forward},
             {weight, params.tau_fs, Direction::Backward}}};
}

cplx History::at(double t_fs) const {
    if (values.empty()) return {};
    const double x = t_fs / step_fs;
    const double nearest = std::round(x);
    const double last = static_cast<double>(values.size() - 1);
    if (std::abs(x - nearest) < 1e-9) {
        if (nearest < 0.0 || nearest > last) return {};
        return values[static_cast<std::size_t>(nearest)];
    }
    if (x < 0.0 || x > last) return {};
    const double base = std::floor(x);
    const auto i = static_cast<std::size_t>(base);
    const double frac = x - base;
    return (1.0 - frac) * values[i] + frac * values[i + 1];
}

cplx kernel_convolve_sample(const DelayKernel& kernel, const History& history, double t_fs) {
    cplx sum{};
    for (const auto& term : kernel.terms) {
        if (term.direction != Direction::Forward) continue;
        sum += term.weight * history.at(t_fs - term.delay_fs);
    }
    return sum;
}

}  // namespace delayheom::kernel
