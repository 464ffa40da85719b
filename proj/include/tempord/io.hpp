#ifndef TEMPORD_IO_HPP
#define TEMPORD_IO_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tempord/matrix.hpp"
#include "tempord/types.hpp"

namespace tempord::io {

inline constexpr const char* kToolName = "tempord";
inline constexpr const char* kToolVersion = "0.1.0";

/// Matrix CSV: header `window_start_s` followed by the shift values in ms, one
/// row per window, undefined cells as `NA`, numbers rendered with 9 significant
/// digits.
void write_matrix_csv(const TemporalOrderMatrix& matrix, const std::string& path);

/// Parsed-back form of a matrix CSV (used for round-trip checks and reporting).
struct MatrixCsv {
    std::vector<double> window_start_s;
    std::vector<double> shift_ms;
    std::vector<std::optional<double>> cells; // row-major [window][shift]

    const std::optional<double>& at(std::size_t w, std::size_t k) const {
        return cells[w * shift_ms.size() + k];
    }
};

MatrixCsv read_matrix_csv(const std::string& path);

/// CV CSV: header `window_start_s,cv_ms`, undefined entries as `NA`.
void write_causal_vector_csv(const CausalVector& cv, const std::string& path);

nlohmann::ordered_json stability_to_json(const StabilityReport& report, const std::string& label);
void write_stability_json(const StabilityReport& report, const std::string& label,
                          const std::string& path);
/// Reads back a stability JSON (for aggregation).
nlohmann::json read_stability_json(const std::string& path);

// Heatmap colors: best score navy, worst red, undefined black.
inline constexpr std::array<unsigned char, 3> kColorBest{0, 0, 128};
inline constexpr std::array<unsigned char, 3> kColorWorst{255, 0, 0};
inline constexpr std::array<unsigned char, 3> kColorUndefined{0, 0, 0};

/// Binary portable pixmap (P6), one pixel per cell, time on the horizontal axis
/// and shift increasing upward. LM maps score 1 -> best and 0 -> worst (clamped);
/// TD maps the matrix-wide minimum of the defined cells -> best and the maximum
/// -> worst. Channels interpolate linearly.
void write_heatmap_ppm(const TemporalOrderMatrix& matrix, const std::string& path);

/// Pair CSV in the standard input format (header time_s,ch1,ch2) over the
/// overlapping part of the record.
void write_bivariate_csv(const BivariateRecord& record, const std::string& path);

/// 64-bit FNV-1a digest of a file's bytes, as a hex string.
std::string fnv1a64_file(const std::string& path);

struct ManifestInput {
    std::string path;
    std::string fnv1a64;
};

/// Reproducibility sidecar written next to every output set.
struct RunManifest {
    std::string command;
    std::string label;
    std::string timestamp; // RFC 3339 UTC, or "unset" when suppressed
    nlohmann::ordered_json config;
    std::vector<ManifestInput> inputs;
    std::vector<std::string> outputs;
};

void write_manifest_json(const RunManifest& manifest, const std::string& path);

nlohmann::ordered_json config_to_json(const AnalysisConfig& config, double sample_rate_hz);

/// Current time as RFC 3339 UTC.
std::string utc_timestamp();

} // namespace tempord::io

#endif
