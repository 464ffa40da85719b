#include "tempord/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tempord {

const char* to_string(Method m) {
    return m == Method::LM ? "lm" : "td";
}

const char* to_string(DistanceKind k) {
    return k == DistanceKind::Manhattan ? "manhattan" : "fourier";
}

const char* to_string(Scaling s) {
    switch (s) {
        case Scaling::None: return "none";
        case Scaling::Uniform: return "uniform";
        case Scaling::Gaussian: return "gaussian";
    }
    return "?";
}

AnalysisConfig default_config(double sample_rate_hz) {
    AnalysisConfig c;
    c.scaling = Scaling::Gaussian;
    c.segment_len_samples = static_cast<int>(std::lround(10.0 * sample_rate_hz));
    c.shift_max_samples = static_cast<int>(std::lround(2.0 * sample_rate_hz));
    c.shift_min_samples = -c.shift_max_samples;
    c.shift_step_samples = 1;
    c.window_step_samples = 1;
    c.threshold.reset();
    return c;
}

AnalysisConfig validate_config(const AnalysisConfig& config, const BivariateRecord& record) {
    const auto len1 = record.signal1().size();
    const auto len2 = record.signal2().size();

    if (config.segment_len_samples < 1)
        fail(Errc::BadConfig, "segment length must be at least one sample");
    if (config.method == Method::LM && config.segment_len_samples < 3)
        fail(Errc::BadConfig, "LM needs segments of at least 3 samples");
    if (config.shift_step_samples < 1)
        fail(Errc::BadConfig, "shift step must be a positive sample count");
    if (config.window_step_samples < 1)
        fail(Errc::BadConfig, "window step must be a positive sample count");

    if (static_cast<std::size_t>(config.segment_len_samples) > len1 ||
        static_cast<std::size_t>(config.segment_len_samples) > len2)
        fail(Errc::SegmentTooLong,
             "segment of " + std::to_string(config.segment_len_samples) +
                 " samples exceeds a signal of " +
                 std::to_string(std::min(len1, len2)) + " samples");

    if (config.shift_min_samples > config.shift_max_samples)
        fail(Errc::EmptyShiftRange, "shift_min exceeds shift_max");

    if (config.threshold) {
        const double t = *config.threshold;
        if (!std::isfinite(t)) fail(Errc::BadThreshold, "threshold must be finite");
        if (config.method == Method::LM && (t < 0.0 || t > 1.0))
            fail(Errc::BadThreshold, "LM threshold must lie in [0, 1]");
        if (config.method == Method::TD && !(t > 0.0))
            fail(Errc::BadThreshold, "TD threshold must be positive");
    }

    const double r1 = record.signal1().sample_rate_hz();
    const double r2 = record.signal2().sample_rate_hz();
    if (std::abs(r1 - r2) > 1e-9 * std::max(r1, r2))
        fail(Errc::RateMismatch, "signals must share one sampling rate");

    // At least one (window, shift) cell must keep the shifted segment inside
    // signal2, otherwise every cell of the matrix would be undefined.
    const int L = config.segment_len_samples;
    const long last_window = static_cast<long>(len1) - L;
    const long lo = 0 + config.shift_min_samples;
    const long hi = last_window + config.shift_max_samples;
    const long bound = static_cast<long>(len2) - L;
    if (hi < 0 || lo > bound)
        fail(Errc::NoOverlap, "no window/shift combination stays inside signal2");

    return config;
}

} // namespace tempord
