#include "tempord/matrix.hpp"

#include <stdexcept>

namespace tempord {

TemporalOrderMatrix::TemporalOrderMatrix(int n_windows, int n_shifts,
                                         int window_step_samples, int shift_min_samples,
                                         int shift_step_samples, double sample_rate_hz,
                                         double start_time_s, Method method,
                                         DistanceKind distance_kind)
    : n_windows_(n_windows), n_shifts_(n_shifts), window_step_samples_(window_step_samples),
      shift_min_samples_(shift_min_samples), shift_step_samples_(shift_step_samples),
      sample_rate_hz_(sample_rate_hz), start_time_s_(start_time_s), method_(method),
      distance_kind_(distance_kind),
      cells_(static_cast<std::size_t>(n_windows) * static_cast<std::size_t>(n_shifts)) {
    if (n_windows < 1 || n_shifts < 1)
        throw std::invalid_argument("matrix needs at least one window and one shift");
    if (window_step_samples < 1 || shift_step_samples < 1)
        throw std::invalid_argument("grid steps must be positive");
    if (!(sample_rate_hz > 0.0))
        throw std::invalid_argument("sample rate must be positive");
}

std::vector<double> TemporalOrderMatrix::window_start_times_s() const {
    std::vector<double> times(static_cast<std::size_t>(n_windows_));
    for (int w = 0; w < n_windows_; ++w) times[static_cast<std::size_t>(w)] = window_start_s(w);
    return times;
}

std::vector<double> TemporalOrderMatrix::shifts_s() const {
    std::vector<double> shifts(static_cast<std::size_t>(n_shifts_));
    for (int k = 0; k < n_shifts_; ++k) shifts[static_cast<std::size_t>(k)] = shift_s(k);
    return shifts;
}

CausalVector::CausalVector(std::vector<std::optional<int>> shifts_samples,
                           int window_step_samples, int shift_step_samples,
                           double sample_rate_hz, double start_time_s)
    : entries_(std::move(shifts_samples)), window_step_samples_(window_step_samples),
      shift_step_samples_(shift_step_samples), sample_rate_hz_(sample_rate_hz),
      start_time_s_(start_time_s) {
    if (entries_.empty()) throw std::invalid_argument("causal vector needs at least one window");
    if (window_step_samples < 1 || shift_step_samples < 1)
        throw std::invalid_argument("grid steps must be positive");
    if (!(sample_rate_hz > 0.0))
        throw std::invalid_argument("sample rate must be positive");
}

std::optional<double> CausalVector::shift_s(int w) const {
    const auto& e = entries_[static_cast<std::size_t>(w)];
    if (!e) return std::nullopt;
    return *e / sample_rate_hz_;
}

std::optional<double> CausalVector::shift_ms(int w) const {
    const auto& e = entries_[static_cast<std::size_t>(w)];
    if (!e) return std::nullopt;
    return *e * 1000.0 / sample_rate_hz_;
}

std::vector<double> CausalVector::window_start_times_s() const {
    std::vector<double> times(entries_.size());
    for (std::size_t w = 0; w < entries_.size(); ++w)
        times[w] = window_start_s(static_cast<int>(w));
    return times;
}

} // namespace tempord
