#include "delayheom/band_buffer.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace delayheom::engine {

BandBuffer::BandBuffer(long delay_steps, long band_width, bool full_history)
    : delay_steps_(delay_steps),
      band_width_(band_width),
      rows_(delay_steps + 2),
      history_width_(full_history ? delay_steps + band_width + 1 : delay_steps + 1),
      tail_width_(delay_steps + band_width + 1 - history_width_) {
    if (delay_steps < 1) throw std::invalid_argument("BandBuffer: delay_steps must be >= 1");
    if (band_width < 0) throw std::invalid_argument("BandBuffer: band_width must be >= 0");
    history_.assign(static_cast<std::size_t>(rows_ * history_width_), cplx{});
    for (auto& t : tail_) t.assign(static_cast<std::size_t>(tail_width_), cplx{});
}

const cplx* BandBuffer::slot(long i, long lag) const {
    if (lag < history_width_) {
        return &history_[static_cast<std::size_t>((i % rows_) * history_width_ + lag)];
    }
    // Only the two newest rows carry the tail.
    assert(i >= newest_row_ - 1);
    return &tail_[i % 2][static_cast<std::size_t>(lag - history_width_)];
}

cplx* BandBuffer::slot(long i, long lag) {
    return const_cast<cplx*>(static_cast<const BandBuffer*>(this)->slot(i, lag));
}

cplx BandBuffer::get(long i, long j) const {
    if (j < 0 || i < j) return {};
    const long lag = i - j;
    if (lag > max_lag()) return {};
    if (i > newest_row_ || i <= newest_row_ - rows_ ||
        (lag >= history_width_ && i < newest_row_ - 1)) {
        throw std::out_of_range("BandBuffer: read outside the retained window");
    }
    return *slot(i, lag);
}

void BandBuffer::set(long i, long j, cplx value) {
    const long lag = i - j;
    assert(j >= 0 && lag >= 0 && lag <= max_lag());
    assert(i <= newest_row_ && i > newest_row_ - rows_);
    *slot(i, lag) = value;
}

void BandBuffer::begin_row(long i) {
    if (i != newest_row_ + 1) throw std::logic_error("BandBuffer: rows must be started in order");
    newest_row_ = i;
    auto row = history_.begin() + (i % rows_) * history_width_;
    std::fill(row, row + history_width_, cplx{});
    std::fill(tail_[i % 2].begin(), tail_[i % 2].end(), cplx{});
}

}  // namespace delayheom::engine
