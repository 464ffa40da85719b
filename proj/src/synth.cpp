#include "tempord/synth.hpp"

#include <cmath>
#include <numbers>

namespace tempord::synth {

std::uint64_t Rng::next_u64() {
    // SplitMix64 step.
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = next_unit();
    while (u1 <= 0.0) u1 = next_unit();
    const double u2 = next_unit();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = mag * std::sin(angle);
    has_spare_ = true;
    return mag * std::cos(angle);
}

namespace {

void check_common(const SynthSpec& spec) {
    if (!(spec.duration_s > 0.0)) fail(Errc::BadConfig, "duration must be positive");
    if (!(spec.sample_rate_hz > 0.0)) fail(Errc::BadConfig, "sample rate must be positive");
    if (spec.noise_sd < 0.0) fail(Errc::BadConfig, "noise SD must be non-negative");
}

std::size_t sample_count(const SynthSpec& spec) {
    return static_cast<std::size_t>(std::llround(spec.duration_s * spec.sample_rate_hz));
}

} // namespace

BivariateRecord gen_lagged_sine(const SynthSpec& spec) {
    check_common(spec);
    const double f = spec.frequency_hz > 0.0 ? spec.frequency_hz : spec.breath_rate_bpm / 60.0;
    if (!(f > 0.0)) fail(Errc::BadConfig, "frequency must be positive");

    const double lag_samples = spec.lag_s * spec.sample_rate_hz;
    if (std::abs(lag_samples - std::round(lag_samples)) > 1e-9 * spec.sample_rate_hz)
        fail(Errc::OffGridLag, "lag must be a multiple of the sample period");

    const std::size_t n = sample_count(spec);
    Rng rng(spec.rng_seed);
    std::vector<double> s1(n), s2(n);
    const double w = 2.0 * std::numbers::pi * f;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / spec.sample_rate_hz;
        s1[i] = std::sin(w * t);
        s2[i] = std::sin(w * (t - spec.lag_s));
    }
    if (spec.noise_sd > 0.0) {
        for (std::size_t i = 0; i < n; ++i) s1[i] += spec.noise_sd * rng.next_gaussian();
        for (std::size_t i = 0; i < n; ++i) s2[i] += spec.noise_sd * rng.next_gaussian();
    }
    return BivariateRecord(TimeSeries(std::move(s1), spec.sample_rate_hz),
                           TimeSeries(std::move(s2), spec.sample_rate_hz),
                           "sine_ref", "sine_lagged");
}

BivariateRecord gen_rsa_pair(const SynthSpec& spec) {
    check_common(spec);
    if (!(spec.breath_rate_bpm > 0.0)) fail(Errc::BadConfig, "breath rate must be positive");

    const double f = spec.breath_rate_bpm / 60.0;
    const std::size_t n = sample_count(spec);
    Rng rng(spec.rng_seed);
    std::vector<double> tachogram(n), tidal(n);
    const double w = 2.0 * std::numbers::pi * f;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / spec.sample_rate_hz;
        tachogram[i] = 1000.0 + kRsaGainMs * std::sin(w * (t + spec.lag_s));
        tidal[i] = spec.depth_factor * std::sin(w * t);
    }
    if (spec.noise_sd > 0.0)
        for (std::size_t i = 0; i < n; ++i) tachogram[i] += spec.noise_sd * rng.next_gaussian();

    return BivariateRecord(TimeSeries(std::move(tachogram), spec.sample_rate_hz),
                           TimeSeries(std::move(tidal), spec.sample_rate_hz),
                           "tachogram", "tidal_volume");
}

BivariateRecord generate(const SynthSpec& spec) {
    return spec.kind == SynthSpec::Kind::LaggedSine ? gen_lagged_sine(spec) : gen_rsa_pair(spec);
}

} // namespace tempord::synth
