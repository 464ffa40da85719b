#ifndef TEMPORD_PREPROCESS_HPP
#define TEMPORD_PREPROCESS_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

#include "tempord/config.hpp"
#include "tempord/types.hpp"

namespace tempord::preprocess {

/// Strictly increasing R-peak instants in seconds.
class BeatTimes {
public:
    explicit BeatTimes(std::vector<double> times_s);

    const std::vector<double>& times_s() const noexcept { return times_s_; }
    std::size_t size() const noexcept { return times_s_.size(); }

private:
    std::vector<double> times_s_;
};

/// R-peak detection: band-pass 5-15 Hz, five-point derivative, squaring,
/// 150 ms moving-window integration, adaptive dual thresholds with search-back.
/// Each detection is refined to the local maximum of the raw ECG within +/-50 ms.
/// Requires sample_rate_hz >= 100.
BeatTimes detect_r_peaks(const TimeSeries& ecg);

/// RR-interval curve resampled onto a uniform grid. Each beat carries the
/// interval ending at it (in ms); intervals outside [0.2 s, 3.0 s] are dropped
/// before interpolation. The grid is anchored at multiples of the sample period
/// counted from grid_anchor_s so downstream channels can share sample indices,
/// and never extends beyond the knot span (no extrapolation).
TimeSeries build_tachogram(const BeatTimes& beats, double target_rate_hz,
                           double grid_anchor_s = 0.0);

/// Sample-rate reduction by an integer factor. A zero-phase low-pass (4th-order
/// Butterworth applied forward-backward, cutoff 0.4x the output Nyquist) guards
/// against aliasing; factor 1 returns the input unchanged.
TimeSeries decimate(const TimeSeries& ts, int factor);

/// Per-segment standardization. None: identity. Uniform: (x-min)/(max-min).
/// Gaussian: (x-mean)/sd with the n-1 denominator.
/// Throws DegenerateSegment for constant input under Uniform or Gaussian.
std::vector<double> scale_segment(std::span<const double> segment, Scaling mode);

/// Non-throwing variant for grid loops: writes into out (same length as segment)
/// and reports false on a degenerate segment. The caller marks the cell undefined.
bool scale_segment_into(std::span<const double> segment, Scaling mode, std::span<double> out);

struct CsvColumns {
    std::string time = "time_s";
    std::string ch1 = "ch1";
    std::string ch2 = "ch2";
};

/// Reads a two-channel CSV (header time_s,ch1,ch2), verifies the time column is
/// uniform within 1e-6 relative tolerance, and infers the sample rate.
BivariateRecord load_bivariate_csv(const std::string& path, const CsvColumns& columns = {});

/// Reads a single named channel (e.g. header time_s,ecg) under the same
/// uniform-sampling check.
TimeSeries load_channel_csv(const std::string& path, const std::string& time_column,
                            const std::string& value_column);

// --- recursive filter building blocks (used by decimate and the R-peak chain) ---

struct Biquad {
    double b0, b1, b2, a1, a2;
};

Biquad butter_lowpass2(double cutoff_hz, double sample_rate_hz);
Biquad butter_highpass2(double cutoff_hz, double sample_rate_hz);
std::array<Biquad, 2> butter_lowpass4(double cutoff_hz, double sample_rate_hz);

/// Forward-backward (zero-phase) application of a biquad cascade with odd
/// reflection padding of pad_len samples at both ends.
std::vector<double> filtfilt(std::span<const Biquad> sections, std::span<const double> x,
                             int pad_len);

} // namespace tempord::preprocess

#endif
