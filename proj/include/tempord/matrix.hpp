#ifndef TEMPORD_MATRIX_HPP
#define TEMPORD_MATRIX_HPP

#include <optional>
#include <vector>

#include "tempord/config.hpp"

namespace tempord {

/// Score grid over (window start x shift). Cells are either a real score or
/// undefined (out-of-bounds shift, degenerate segment, or threshold exclusion
/// downstream). Row w covers the window starting at sample w * window_step.
class TemporalOrderMatrix {
public:
    TemporalOrderMatrix(int n_windows, int n_shifts,
                        int window_step_samples, int shift_min_samples, int shift_step_samples,
                        double sample_rate_hz, double start_time_s,
                        Method method, DistanceKind distance_kind);

    int window_count() const noexcept { return n_windows_; }
    int shift_count() const noexcept { return n_shifts_; }

    int window_start_samples(int w) const { return w * window_step_samples_; }
    int shift_samples(int k) const { return shift_min_samples_ + k * shift_step_samples_; }

    double window_start_s(int w) const {
        return start_time_s_ + window_start_samples(w) / sample_rate_hz_;
    }
    double shift_s(int k) const { return shift_samples(k) / sample_rate_hz_; }

    std::vector<double> window_start_times_s() const;
    std::vector<double> shifts_s() const;

    const std::optional<double>& at(int w, int k) const { return cells_[index(w, k)]; }
    void set(int w, int k, std::optional<double> score) { cells_[index(w, k)] = score; }
    bool defined(int w, int k) const { return cells_[index(w, k)].has_value(); }

    const std::vector<std::optional<double>>& cells() const noexcept { return cells_; }

    Method method() const noexcept { return method_; }
    DistanceKind distance_kind() const noexcept { return distance_kind_; }
    double sample_rate_hz() const noexcept { return sample_rate_hz_; }
    double start_time_s() const noexcept { return start_time_s_; }
    int window_step_samples() const noexcept { return window_step_samples_; }
    int shift_min_samples() const noexcept { return shift_min_samples_; }
    int shift_step_samples() const noexcept { return shift_step_samples_; }

private:
    std::size_t index(int w, int k) const {
        return static_cast<std::size_t>(w) * n_shifts_ + k;
    }

    int n_windows_;
    int n_shifts_;
    int window_step_samples_;
    int shift_min_samples_;
    int shift_step_samples_;
    double sample_rate_hz_;
    double start_time_s_;
    Method method_;
    DistanceKind distance_kind_;
    std::vector<std::optional<double>> cells_;
};

/// Per-window optimal shift, possibly undefined after thresholding. Shifts are
/// stored in samples; seconds/milliseconds are derived views.
class CausalVector {
public:
    CausalVector(std::vector<std::optional<int>> shifts_samples,
                 int window_step_samples, int shift_step_samples,
                 double sample_rate_hz, double start_time_s);

    int window_count() const noexcept { return static_cast<int>(entries_.size()); }
    const std::optional<int>& shift_samples(int w) const { return entries_[w]; }
    bool defined(int w) const { return entries_[w].has_value(); }

    std::optional<double> shift_s(int w) const;
    std::optional<double> shift_ms(int w) const;

    double window_start_s(int w) const {
        return start_time_s_ + static_cast<double>(w) * window_step_samples_ / sample_rate_hz_;
    }
    std::vector<double> window_start_times_s() const;

    int window_step_samples() const noexcept { return window_step_samples_; }
    int shift_step_samples() const noexcept { return shift_step_samples_; }
    double sample_rate_hz() const noexcept { return sample_rate_hz_; }
    double start_time_s() const noexcept { return start_time_s_; }

    double window_step_s() const { return window_step_samples_ / sample_rate_hz_; }

private:
    std::vector<std::optional<int>> entries_;
    int window_step_samples_;
    int shift_step_samples_;
    double sample_rate_hz_;
    double start_time_s_;
};

struct StableRun {
    double start_time_s = 0.0;
    double duration_s = 0.0;
    double shift_ms = 0.0; // mean shift over the run
};

/// Summary statistics of a causal vector: mean/SD of the defined entries, the
/// stable runs, and the defined-duration ratio. Mean and SD are absent when no
/// entry is defined (SD additionally needs two).
struct StabilityReport {
    std::optional<double> mean_shift_ms;
    std::optional<double> sd_shift_ms;
    double longest_stable_run_s = 0.0;
    double defined_ratio_percent = 0.0;
    std::vector<StableRun> stable_runs;
    std::optional<double> mean_run_duration_ms;
};

} // namespace tempord

#endif
