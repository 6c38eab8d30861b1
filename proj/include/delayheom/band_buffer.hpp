#pragma once

// Truncated two-time storage for one band variable ρ(t_i, t_j), i >= j.
//
// Values are kept for lags i − j in [0, max_lag] with max_lag = K + band_width,
// where K = τ/h. Rows (first time argument) live in a ring of K + 2 slots,
// which covers every delayed read the engine makes. Old rows keep lags up to
// K only, unless full history is requested (needed by FirstArgDelayed reads);
// the two newest rows always hold the full lag range.

#include <vector>

#include "delayheom/constants.hpp"

namespace delayheom::engine {

class BandBuffer {
public:
    BandBuffer(long delay_steps, long band_width, bool full_history);

    long delay_steps() const { return delay_steps_; }
    long band_width() const { return band_width_; }
    long max_lag() const { return delay_steps_ + band_width_; }

    /// Zero for i < j, j < 0, or i − j > max_lag. Row i must be one of the
    /// last K + 2 rows started.
    cplx get(long i, long j) const;

    void set(long i, long j, cplx value);

    /// Starts row i (must be the previous row + 1) and clears its slot.
    void begin_row(long i);

    long newest_row() const { return newest_row_; }

private:
    cplx* slot(long i, long lag);
    const cplx* slot(long i, long lag) const;

    long delay_steps_;
    long band_width_;
    long rows_;
    long history_width_;
    long tail_width_;
    std::vector<cplx> history_;
    std::vector<cplx> tail_[2];
    long newest_row_ = -1;
};

}  // namespace delayheom::engine
