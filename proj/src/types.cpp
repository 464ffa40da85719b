#include "tempord/types.hpp"

#include <cmath>
#include <utility>

namespace tempord {

TimeSeries::TimeSeries(std::vector<double> values, double sample_rate_hz, double start_time_s)
    : values_(std::move(values)), sample_rate_hz_(sample_rate_hz), start_time_s_(start_time_s) {
    if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_))
        fail(Errc::InvalidSignal, "sample rate must be a positive finite number");
    if (values_.empty())
        fail(Errc::InvalidSignal, "a time series needs at least one sample");
    if (!std::isfinite(start_time_s_))
        fail(Errc::InvalidSignal, "start time must be finite");
}

std::int64_t TimeSeries::index_at(double time_s) const {
    return std::llround((time_s - start_time_s_) * sample_rate_hz_);
}

namespace {

// Integer sample offset between two equally sampled signals, or failure when
// their grids do not line up.
std::int64_t grid_offset(const TimeSeries& a, const TimeSeries& b) {
    const double rate = a.sample_rate_hz();
    const double diff = (b.start_time_s() - a.start_time_s()) * rate;
    const std::int64_t offset = std::llround(diff);
    const double tolerance = 1e-6 * std::max(1.0, std::abs(diff));
    if (std::abs(diff - static_cast<double>(offset)) > tolerance)
        fail(Errc::MisalignedSignals,
             "start times differ by a non-integer number of samples");
    return offset;
}

TimeSeries drop_head(const TimeSeries& ts, std::int64_t count) {
    if (count <= 0) return ts;
    if (static_cast<std::size_t>(count) >= ts.size())
        fail(Errc::NoOverlap, "signals do not overlap in time");
    std::vector<double> tail(ts.values().begin() + static_cast<std::ptrdiff_t>(count),
                             ts.values().end());
    return TimeSeries(std::move(tail), ts.sample_rate_hz(), ts.time_at(static_cast<std::size_t>(count)));
}

} // namespace

BivariateRecord::BivariateRecord(TimeSeries signal1, TimeSeries signal2,
                                 std::string label1, std::string label2)
    : signal1_(std::move(signal1)), signal2_(std::move(signal2)),
      label1_(std::move(label1)), label2_(std::move(label2)) {
    const double r1 = signal1_.sample_rate_hz();
    const double r2 = signal2_.sample_rate_hz();
    if (std::abs(r1 - r2) > 1e-9 * std::max(r1, r2))
        fail(Errc::RateMismatch, "signals must share one sampling rate");

    // Crop the earlier-starting signal so index i means the same instant in both.
    const std::int64_t offset = grid_offset(signal1_, signal2_);
    if (offset > 0) {
        signal1_ = drop_head(signal1_, offset);
    } else if (offset < 0) {
        signal2_ = drop_head(signal2_, -offset);
    }
}

BivariateRecord BivariateRecord::swapped() const {
    return BivariateRecord(signal2_, signal1_, label2_, label1_);
}

} // namespace tempord
