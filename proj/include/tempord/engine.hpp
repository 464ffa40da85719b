#ifndef TEMPORD_ENGINE_HPP
#define TEMPORD_ENGINE_HPP

#include <optional>

#include "tempord/config.hpp"
#include "tempord/matrix.hpp"
#include "tempord/types.hpp"

namespace tempord::engine {

/// Fills the temporal-order matrix: for every window start t (stepping by the
/// window step) and shift s in the shift grid, scores segment1 = signal1[t, t+L)
/// against segment2 = signal2[t+s, t+s+L) after per-segment scaling. Positive s
/// means the matched part of signal2 occurs later, i.e. signal1 precedes signal2.
/// Cells whose shifted segment leaves signal2, or whose scaling or metric is
/// degenerate, are undefined.
///
/// Windows may be evaluated concurrently (threads = 0 picks the hardware count);
/// the result is bit-identical regardless of the worker count.
TemporalOrderMatrix compute_matrix(const BivariateRecord& record, const AnalysisConfig& config,
                                   unsigned threads = 0);

/// Per-window best shift: maximum score for LM, minimum for TD, restricted to
/// cells strictly passing the threshold when one is given (score > threshold for
/// LM, score < threshold for TD). Ties break toward the smallest |shift|, then
/// toward the more negative shift. Windows with no surviving candidate are
/// undefined.
CausalVector extract_causal_vector(const TemporalOrderMatrix& matrix,
                                   std::optional<double> threshold = std::nullopt);

/// Mean/SD of the defined entries, stable runs (maximal consecutive defined
/// windows whose values stay within run_tolerance_steps shift steps of the run's
/// first value), and the defined-duration ratio against the signal duration.
StabilityReport stability_report(const CausalVector& cv, const AnalysisConfig& config,
                                 double signal_duration_s, int run_tolerance_steps = 1);

struct AnalysisResult {
    TemporalOrderMatrix matrix;
    CausalVector causal_vector;
    StabilityReport stability;
};

/// compute_matrix + extract_causal_vector(config.threshold) + stability_report.
AnalysisResult run_analysis(const BivariateRecord& record, const AnalysisConfig& config,
                            unsigned threads = 0);

} // namespace tempord::engine

#endif
