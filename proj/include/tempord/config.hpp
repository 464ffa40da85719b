#ifndef TEMPORD_CONFIG_HPP
#define TEMPORD_CONFIG_HPP

#include <optional>
#include <string>

#include "tempord/types.hpp"

namespace tempord {

enum class Method { LM, TD };

enum class DistanceKind { Manhattan, Fourier };

enum class Scaling { None = 0, Uniform = 1, Gaussian = 2 };

const char* to_string(Method m);
const char* to_string(DistanceKind k);
const char* to_string(Scaling s);

/// Full parameter set of one analysis run. All lengths and shifts are in samples;
/// seconds appear only at the I/O boundary.
struct AnalysisConfig {
    Method method = Method::LM;
    DistanceKind distance_kind = DistanceKind::Manhattan; // used only when method == TD
    Scaling scaling = Scaling::Gaussian;
    int segment_len_samples = 0;
    int shift_min_samples = 0;
    int shift_max_samples = 0;
    int shift_step_samples = 1;
    int window_step_samples = 1;
    std::optional<double> threshold;

    /// Shift grid: shift_min, shift_min + step, ... up to shift_max inclusive.
    int shift_count() const {
        return (shift_max_samples - shift_min_samples) / shift_step_samples + 1;
    }
    int shift_at(int k) const { return shift_min_samples + k * shift_step_samples; }

    /// Number of full windows that fit in a signal of the given length.
    int window_count(std::size_t signal_len) const {
        if (static_cast<std::size_t>(segment_len_samples) > signal_len) return 0;
        return static_cast<int>((signal_len - segment_len_samples) / window_step_samples) + 1;
    }
};

/// Default bundle: Gaussian standardization, 10 s segments, shifts -2..+2 s,
/// one-sample steps, no threshold.
AnalysisConfig default_config(double sample_rate_hz);

/// Checks every AnalysisConfig invariant against the record; returns the config
/// unchanged or throws an Error naming the violated constraint.
AnalysisConfig validate_config(const AnalysisConfig& config, const BivariateRecord& record);

} // namespace tempord

#endif
