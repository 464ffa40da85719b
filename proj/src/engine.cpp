#include "tempord/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <thread>
#include <vector>

#include "tempord/metrics.hpp"
#include "tempord/preprocess.hpp"

namespace tempord::engine {

namespace {

unsigned resolve_threads(unsigned requested, int n_windows) {
    unsigned t = requested;
    if (t == 0) t = std::thread::hardware_concurrency();
    if (t == 0) t = 1;
    return std::min<unsigned>(t, static_cast<unsigned>(std::max(1, n_windows)));
}

// Scores one block of windows. Buffers are per-worker; every cell depends only
// on read-only inputs, so the result is independent of the partitioning.
void fill_rows(const BivariateRecord& record, const AnalysisConfig& config,
               const metrics::FourierPlan* plan, TemporalOrderMatrix& matrix,
               int w_begin, int w_end) {
    const std::vector<double>& sig1 = record.signal1().values();
    const std::vector<double>& sig2 = record.signal2().values();
    const long len2 = static_cast<long>(sig2.size());
    const int L = config.segment_len_samples;
    const int n_shifts = matrix.shift_count();

    std::vector<double> seg1(static_cast<std::size_t>(L));
    std::vector<double> seg2(static_cast<std::size_t>(L));

    for (int w = w_begin; w < w_end; ++w) {
        const long t = matrix.window_start_samples(w);
        const bool seg1_ok = preprocess::scale_segment_into(
            {sig1.data() + t, static_cast<std::size_t>(L)}, config.scaling, seg1);

        for (int k = 0; k < n_shifts; ++k) {
            const long j = t + matrix.shift_samples(k);
            if (j < 0 || j + L > len2) continue; // shifted segment leaves signal2
            if (!seg1_ok) continue;              // degenerate stationary segment
            if (!preprocess::scale_segment_into({sig2.data() + j, static_cast<std::size_t>(L)},
                                                config.scaling, seg2))
                continue;

            if (config.method == Method::LM) {
                matrix.set(w, k, metrics::adjusted_r_squared(seg1, seg2));
            } else if (config.distance_kind == DistanceKind::Manhattan) {
                matrix.set(w, k, metrics::manhattan_distance(seg1, seg2));
            } else {
                matrix.set(w, k, plan->distance(seg1, seg2));
            }
        }
    }
}

} // namespace

TemporalOrderMatrix compute_matrix(const BivariateRecord& record, const AnalysisConfig& config,
                                   unsigned threads) {
    validate_config(config, record);

    const int n_windows = config.window_count(record.signal1().size());
    const int n_shifts = config.shift_count();
    TemporalOrderMatrix matrix(n_windows, n_shifts, config.window_step_samples,
                               config.shift_min_samples, config.shift_step_samples,
                               record.sample_rate_hz(), record.start_time_s(),
                               config.method, config.distance_kind);

    std::unique_ptr<metrics::FourierPlan> plan;
    if (config.method == Method::TD && config.distance_kind == DistanceKind::Fourier)
        plan = std::make_unique<metrics::FourierPlan>(
            static_cast<std::size_t>(config.segment_len_samples));

    const unsigned workers = resolve_threads(threads, n_windows);
    if (workers <= 1) {
        fill_rows(record, config, plan.get(), matrix, 0, n_windows);
        return matrix;
    }

    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (n_windows + static_cast<int>(workers) - 1) / static_cast<int>(workers);
    for (unsigned i = 0; i < workers; ++i) {
        const int begin = static_cast<int>(i) * chunk;
        const int end = std::min(n_windows, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(fill_rows, std::cref(record), std::cref(config), plan.get(),
                          std::ref(matrix), begin, end);
    }
    for (auto& th : pool) th.join();
    return matrix;
}

CausalVector extract_causal_vector(const TemporalOrderMatrix& matrix,
                                   std::optional<double> threshold) {
    const bool maximize = matrix.method() == Method::LM;
    const int n_windows = matrix.window_count();
    const int n_shifts = matrix.shift_count();

    std::vector<std::optional<int>> entries(static_cast<std::size_t>(n_windows));
    for (int w = 0; w < n_windows; ++w) {
        bool found = false;
        double best_score = 0.0;
        int best_shift = 0;
        for (int k = 0; k < n_shifts; ++k) {
            const auto& cell = matrix.at(w, k);
            if (!cell) continue;
            const double score = *cell;
            if (threshold) {
                if (maximize ? !(score > *threshold) : !(score < *threshold)) continue;
            }
            const int shift = matrix.shift_samples(k);
            bool better;
            if (!found) {
                better = true;
            } else if (score != best_score) {
                better = maximize ? score > best_score : score < best_score;
            } else {
                // Tie: prefer the smallest |shift|; ascending scan order already
                // favors the more negative of two equal magnitudes.
                better = std::abs(shift) < std::abs(best_shift);
            }
            if (better) {
                found = true;
                best_score = score;
                best_shift = shift;
            }
        }
        if (found) entries[static_cast<std::size_t>(w)] = best_shift;
    }

    return CausalVector(std::move(entries), matrix.window_step_samples(),
                        matrix.shift_step_samples(), matrix.sample_rate_hz(),
                        matrix.start_time_s());
}

StabilityReport stability_report(const CausalVector& cv, const AnalysisConfig& config,
                                 double signal_duration_s, int run_tolerance_steps) {
    if (config.window_step_samples != cv.window_step_samples() ||
        config.shift_step_samples != cv.shift_step_samples())
        fail(Errc::BadConfig, "causal vector was produced with a different grid");
    if (!(signal_duration_s > 0.0))
        fail(Errc::BadConfig, "signal duration must be positive");

    StabilityReport report;
    const int n = cv.window_count();
    const double rate = cv.sample_rate_hz();
    const double window_step_s = cv.window_step_s();
    const double to_ms = 1000.0 / rate;

    // Mean and sample SD of the defined entries.
    std::vector<double> defined_ms;
    defined_ms.reserve(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w)
        if (const auto& e = cv.shift_samples(w)) defined_ms.push_back(*e * to_ms);

    if (!defined_ms.empty()) {
        double mean = 0.0;
        for (double v : defined_ms) mean += v;
        mean /= static_cast<double>(defined_ms.size());
        report.mean_shift_ms = mean;
        if (defined_ms.size() >= 2) {
            double ss = 0.0;
            for (double v : defined_ms) ss += (v - mean) * (v - mean);
            report.sd_shift_ms = std::sqrt(ss / static_cast<double>(defined_ms.size() - 1));
        }
    }

    // Stable runs: consecutive defined windows within the tolerance of the
    // run's first value.
    const int tolerance = run_tolerance_steps * config.shift_step_samples;
    int run_start = -1, run_first_value = 0, run_len = 0;
    double run_sum_ms = 0.0;

    auto close_run = [&]() {
        if (run_len == 0) return;
        StableRun run;
        run.start_time_s = cv.window_start_s(run_start);
        run.duration_s = run_len * window_step_s;
        run.shift_ms = run_sum_ms / run_len;
        report.stable_runs.push_back(run);
        run_len = 0;
    };

    for (int w = 0; w < n; ++w) {
        const auto& e = cv.shift_samples(w);
        if (!e) {
            close_run();
            continue;
        }
        if (run_len > 0 && std::abs(*e - run_first_value) <= tolerance) {
            ++run_len;
            run_sum_ms += *e * to_ms;
        } else {
            close_run();
            run_start = w;
            run_first_value = *e;
            run_len = 1;
            run_sum_ms = *e * to_ms;
        }
    }
    close_run();

    double longest = 0.0, total_run_s = 0.0;
    for (const auto& run : report.stable_runs) {
        longest = std::max(longest, run.duration_s);
        total_run_s += run.duration_s;
    }
    report.longest_stable_run_s = longest;
    if (!report.stable_runs.empty())
        report.mean_run_duration_ms =
            1000.0 * total_run_s / static_cast<double>(report.stable_runs.size());

    report.defined_ratio_percent = std::clamp(
        100.0 * static_cast<double>(defined_ms.size()) * window_step_s / signal_duration_s,
        0.0, 100.0);

    return report;
}

AnalysisResult run_analysis(const BivariateRecord& record, const AnalysisConfig& config,
                            unsigned threads) {
    TemporalOrderMatrix matrix = compute_matrix(record, config, threads);
    CausalVector cv = extract_causal_vector(matrix, config.threshold);
    StabilityReport stability = stability_report(cv, config, record.duration_s());
    return {std::move(matrix), std::move(cv), std::move(stability)};
}

} // namespace tempord::engine
