#ifndef TEMPORD_TYPES_HPP
#define TEMPORD_TYPES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tempord/error.hpp"

namespace tempord {

/// Uniformly sampled scalar signal. Sample i sits at start_time_s + i / sample_rate_hz;
/// no per-sample timestamps are stored.
class TimeSeries {
public:
    TimeSeries(std::vector<double> values, double sample_rate_hz, double start_time_s = 0.0);

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double sample_rate_hz() const noexcept { return sample_rate_hz_; }
    double start_time_s() const noexcept { return start_time_s_; }

    double time_at(std::size_t index) const {
        return start_time_s_ + static_cast<double>(index) / sample_rate_hz_;
    }

    /// Nearest sample index for a time instant (may fall outside [0, size)).
    std::int64_t index_at(double time_s) const;

    double duration_s() const { return static_cast<double>(values_.size()) / sample_rate_hz_; }

    std::span<const double> segment(std::size_t first, std::size_t count) const {
        return {values_.data() + first, count};
    }

private:
    std::vector<double> values_;
    double sample_rate_hz_;
    double start_time_s_;
};

/// A pair of equally sampled signals on a shared grid. signal1 is held stationary
/// by the analysis, signal2 is the one shifted in time.
///
/// Construction requires equal sampling rates and start times that differ by an
/// integer number of samples; the earlier-starting signal is cropped so that after
/// construction sample i of both signals refers to the same instant.
class BivariateRecord {
public:
    BivariateRecord(TimeSeries signal1, TimeSeries signal2,
                    std::string label1 = "ch1", std::string label2 = "ch2");

    const TimeSeries& signal1() const noexcept { return signal1_; }
    const TimeSeries& signal2() const noexcept { return signal2_; }
    const std::string& label1() const noexcept { return label1_; }
    const std::string& label2() const noexcept { return label2_; }

    double sample_rate_hz() const noexcept { return signal1_.sample_rate_hz(); }
    double start_time_s() const noexcept { return signal1_.start_time_s(); }

    /// Duration of the stationary signal; the reference length for ratio statistics.
    double duration_s() const { return signal1_.duration_s(); }

    /// New record with the two channels exchanged (labels follow).
    BivariateRecord swapped() const;

private:
    TimeSeries signal1_;
    TimeSeries signal2_;
    std::string label1_;
    std::string label2_;
};

} // namespace tempord

#endif
