#ifndef TEMPORD_TEST_UTIL_HPP
#define TEMPORD_TEST_UTIL_HPP

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "tempord/synth.hpp"
#include "tempord/types.hpp"

namespace test_util {

/// Synthetic ECG: a train of 20 ms triangular spikes (amplitude 1) on a zero
/// baseline, plus optional Gaussian noise. Returns the signal and the true
/// apex times.
struct SpikeTrain {
    tempord::TimeSeries ecg;
    std::vector<double> beat_times_s;
};

inline SpikeTrain gen_spike_train(double sample_rate_hz, double duration_s, double bpm,
                                  double noise_sd, std::uint64_t seed,
                                  double first_beat_s = 0.5) {
    const std::size_t n = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
    std::vector<double> x(n, 0.0);
    std::vector<double> beats;
    const double period = 60.0 / bpm;
    const int half_width = static_cast<int>(std::lround(0.010 * sample_rate_hz)); // 10 ms rise/fall

    for (double t = first_beat_s; t < duration_s - 0.05; t += period) {
        const std::int64_t apex = std::llround(t * sample_rate_hz);
        if (apex < half_width || apex + half_width >= static_cast<std::int64_t>(n)) continue;
        for (int d = -half_width; d <= half_width; ++d) {
            const double v = 1.0 - std::abs(d) / static_cast<double>(half_width);
            x[static_cast<std::size_t>(apex + d)] = std::max(x[static_cast<std::size_t>(apex + d)], v);
        }
        beats.push_back(static_cast<double>(apex) / sample_rate_hz);
    }

    if (noise_sd > 0.0) {
        tempord::synth::Rng rng(seed);
        for (double& v : x) v += noise_sd * rng.next_gaussian();
    }
    return {tempord::TimeSeries(std::move(x), sample_rate_hz), std::move(beats)};
}

/// Scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        auto base = std::filesystem::temp_directory_path();
        for (int attempt = 0;; ++attempt) {
            path_ = base / (tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(attempt));
            if (std::filesystem::create_directory(path_)) break;
        }
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::vector<double> sine_wave(double freq_hz, double sample_rate_hz, std::size_t n,
                                     double phase_s = 0.0) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sample_rate_hz;
        x[i] = std::sin(2.0 * std::numbers::pi * freq_hz * (t - phase_s));
    }
    return x;
}

} // namespace test_util

#endif
