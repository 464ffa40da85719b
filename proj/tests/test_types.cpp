#include <doctest.h>

#include <vector>

#include "tempord/config.hpp"
#include "tempord/synth.hpp"
#include "tempord/types.hpp"

using namespace tempord;

namespace {

TimeSeries constant_series(std::size_t n, double rate, double start = 0.0) {
    return TimeSeries(std::vector<double>(n, 1.0), rate, start);
}

BivariateRecord noisy_record(std::size_t n, double rate, std::uint64_t seed) {
    synth::Rng rng(seed);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.next_gaussian();
        b[i] = rng.next_gaussian();
    }
    return BivariateRecord(TimeSeries(std::move(a), rate), TimeSeries(std::move(b), rate));
}

} // namespace

TEST_CASE("time series construction rejects invalid fields") {
    CHECK_THROWS_AS(TimeSeries({}, 25.0), Error);
    CHECK_THROWS_AS(TimeSeries({1.0}, 0.0), Error);
    CHECK_THROWS_AS(TimeSeries({1.0}, -5.0), Error);

    // randomized invalid constructions are rejected too
    synth::Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const double bad_rate = -10.0 * rng.next_unit();
        CHECK_THROWS_AS(TimeSeries({1.0, 2.0}, bad_rate), Error);
    }
}

TEST_CASE("sample index and time round-trip exactly") {
    const double rates[] = {25.0, 250.0, 33.5, 1000.0 / 3.0};
    synth::Rng rng(11);
    for (double rate : rates) {
        TimeSeries ts(std::vector<double>(10, 0.0), rate, -3.25);
        for (int trial = 0; trial < 200; ++trial) {
            const auto i = static_cast<std::size_t>(rng.next_u64() % 10'000'000);
            const double t = ts.start_time_s() + static_cast<double>(i) / rate;
            CHECK(ts.index_at(t) == static_cast<std::int64_t>(i));
        }
    }
}

TEST_CASE("bivariate record requires one sampling rate") {
    CHECK_THROWS_AS(BivariateRecord(constant_series(10, 25.0), constant_series(10, 26.0)), Error);
    try {
        BivariateRecord(constant_series(10, 25.0), constant_series(10, 26.0));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::RateMismatch);
    }
}

TEST_CASE("bivariate record aligns start times by whole samples") {
    // signal2 starts 5 samples late: signal1 is cropped to the shared origin
    BivariateRecord rec(constant_series(100, 25.0, 0.0), constant_series(80, 25.0, 0.2));
    CHECK(rec.signal1().start_time_s() == doctest::Approx(0.2));
    CHECK(rec.signal1().size() == 95);
    CHECK(rec.signal2().size() == 80);

    // a fractional-sample offset is rejected
    CHECK_THROWS_AS(BivariateRecord(constant_series(100, 25.0, 0.0),
                                    constant_series(80, 25.0, 0.21)),
                    Error);

    // disjoint spans are rejected
    CHECK_THROWS_AS(BivariateRecord(constant_series(10, 25.0, 0.0),
                                    constant_series(10, 25.0, 10.0)),
                    Error);
}

TEST_CASE("validate_config accepts the reference setup") {
    auto rec = noisy_record(6000, 25.0, 1);
    AnalysisConfig config = default_config(25.0);
    CHECK(config.segment_len_samples == 250);
    CHECK(config.shift_min_samples == -50);
    CHECK(config.shift_max_samples == 50);
    CHECK(config.shift_count() == 101);
    CHECK_NOTHROW(validate_config(config, rec));
}

TEST_CASE("validate_config names the violated constraint") {
    auto rec = noisy_record(6000, 25.0, 2);
    AnalysisConfig config = default_config(25.0);

    SUBCASE("segment longer than the signal") {
        config.segment_len_samples = 7000;
        try {
            validate_config(config, rec);
            FAIL("expected SegmentTooLong");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::SegmentTooLong);
        }
    }
    SUBCASE("inverted shift range") {
        config.shift_min_samples = 50;
        config.shift_max_samples = -50;
        try {
            validate_config(config, rec);
            FAIL("expected EmptyShiftRange");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::EmptyShiftRange);
        }
    }
    SUBCASE("LM threshold outside [0,1]") {
        config.threshold = 1.5;
        try {
            validate_config(config, rec);
            FAIL("expected BadThreshold");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::BadThreshold);
        }
    }
    SUBCASE("negative TD threshold") {
        config.method = Method::TD;
        config.threshold = -0.1;
        CHECK_THROWS_AS(validate_config(config, rec), Error);
    }
    SUBCASE("non-positive steps") {
        config.window_step_samples = 0;
        CHECK_THROWS_AS(validate_config(config, rec), Error);
        config.window_step_samples = 1;
        config.shift_step_samples = 0;
        CHECK_THROWS_AS(validate_config(config, rec), Error);
    }
    SUBCASE("shift range that never lands inside signal2") {
        config.shift_min_samples = 7000;
        config.shift_max_samples = 8000;
        try {
            validate_config(config, rec);
            FAIL("expected NoOverlap");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::NoOverlap);
        }
    }
}

TEST_CASE("validate_config fuzz: random invalid configs are rejected") {
    auto rec = noisy_record(1000, 25.0, 3);
    synth::Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        AnalysisConfig config = default_config(25.0);
        config.segment_len_samples = 100;
        switch (rng.next_u64() % 4) {
            case 0: config.segment_len_samples = 1001 + static_cast<int>(rng.next_u64() % 100); break;
            case 1:
                config.shift_min_samples = 10;
                config.shift_max_samples = 9 - static_cast<int>(rng.next_u64() % 50);
                break;
            case 2: config.threshold = 1.0 + 0.5 * (1.0 + rng.next_unit()); break;
            case 3: config.window_step_samples = -static_cast<int>(rng.next_u64() % 5); break;
        }
        CHECK_THROWS_AS(validate_config(config, rec), Error);
    }
}
