#ifndef TEMPORD_SYNTH_HPP
#define TEMPORD_SYNTH_HPP

#include <cstdint>

#include "tempord/types.hpp"

namespace tempord::synth {

/// Deterministic 64-bit generator (SplitMix64) so generated fixtures do not
/// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double next_unit();     // uniform in [0, 1)
    double next_gaussian(); // standard normal, Box-Muller

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

struct SynthSpec {
    enum class Kind { LaggedSine, RsaPair };

    Kind kind = Kind::LaggedSine;
    double duration_s = 120.0;
    double sample_rate_hz = 25.0;
    double frequency_hz = 0.0;    // LaggedSine; 0 derives the frequency from breath_rate_bpm
    double breath_rate_bpm = 6.0; // RsaPair
    double depth_factor = 1.0;    // RsaPair: tidal-volume amplitude
    double lag_s = 0.0;
    double noise_sd = 0.0;
    std::uint64_t rng_seed = 1;
};

/// RSA-like modulation amplitude of the generated tachogram, in ms.
inline constexpr double kRsaGainMs = 50.0;

/// signal1 = sin(2*pi*f*t) + noise, signal2 = sin(2*pi*f*(t - lag)) + noise.
/// Positive lag makes signal1 precede signal2. The lag must land on the sample
/// grid (within 1e-9 s) so the injected value is exactly recoverable.
BivariateRecord gen_lagged_sine(const SynthSpec& spec);

/// Coupled cardiorespiratory pair: signal1 is a tachogram-like curve
/// 1000 ms + kRsaGainMs * sin(2*pi*f*(t + lag)) + noise, signal2 a tidal-volume-like
/// curve depth_factor * sin(2*pi*f*t), with f = breath_rate_bpm / 60. Positive lag
/// puts the tachogram ahead of the tidal volume; the lag need not be on the grid.
BivariateRecord gen_rsa_pair(const SynthSpec& spec);

/// Dispatch on spec.kind.
BivariateRecord generate(const SynthSpec& spec);

} // namespace tempord::synth

#endif
