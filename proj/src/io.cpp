#include "tempord/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace tempord::io {

namespace {

std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::IoError, "cannot write " + path);
    return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) fail(Errc::IoError, "write failed: " + path);
}

} // namespace

void write_matrix_csv(const TemporalOrderMatrix& matrix, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "window_start_s";
    for (int k = 0; k < matrix.shift_count(); ++k)
        out << ',' << format_g9(matrix.shift_samples(k) * 1000.0 / matrix.sample_rate_hz());
    out << '\n';
    for (int w = 0; w < matrix.window_count(); ++w) {
        out << format_g9(matrix.window_start_s(w));
        for (int k = 0; k < matrix.shift_count(); ++k) {
            const auto& cell = matrix.at(w, k);
            out << ',';
            if (cell)
                out << format_g9(*cell);
            else
                out << "NA";
        }
        out << '\n';
    }
    finish_output(out, path);
}

MatrixCsv read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, "cannot open " + path);

    MatrixCsv m;
    std::string line;
    if (!std::getline(in, line)) fail(Errc::ParseError, "empty file: " + path);
    {
        std::istringstream header(line);
        std::string field;
        if (!std::getline(header, field, ',') || field != "window_start_s")
            fail(Errc::ParseError, "expected window_start_s header in " + path);
        while (std::getline(header, field, ',')) m.shift_ms.push_back(std::stod(field));
    }
    if (m.shift_ms.empty()) fail(Errc::ParseError, "no shift columns in " + path);

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        if (!std::getline(row, field, ',')) break;
        m.window_start_s.push_back(std::stod(field));
        std::size_t k = 0;
        while (std::getline(row, field, ',')) {
            if (field == "NA")
                m.cells.emplace_back(std::nullopt);
            else
                m.cells.emplace_back(std::stod(field));
            ++k;
        }
        if (k != m.shift_ms.size())
            fail(Errc::ParseError, "ragged matrix row in " + path);
    }
    return m;
}

void write_causal_vector_csv(const CausalVector& cv, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "window_start_s,cv_ms\n";
    for (int w = 0; w < cv.window_count(); ++w) {
        out << format_g9(cv.window_start_s(w)) << ',';
        if (const auto ms = cv.shift_ms(w))
            out << format_g9(*ms);
        else
            out << "NA";
        out << '\n';
    }
    finish_output(out, path);
}

nlohmann::ordered_json stability_to_json(const StabilityReport& report, const std::string& label) {
    nlohmann::ordered_json j;
    j["label"] = label;
    j["mean_shift_ms"] = report.mean_shift_ms ? nlohmann::ordered_json(*report.mean_shift_ms)
                                              : nlohmann::ordered_json(nullptr);
    j["sd_shift_ms"] = report.sd_shift_ms ? nlohmann::ordered_json(*report.sd_shift_ms)
                                          : nlohmann::ordered_json(nullptr);
    j["longest_stable_run_s"] = report.longest_stable_run_s;
    j["defined_ratio_percent"] = report.defined_ratio_percent;
    j["mean_run_duration_ms"] = report.mean_run_duration_ms
                                    ? nlohmann::ordered_json(*report.mean_run_duration_ms)
                                    : nlohmann::ordered_json(nullptr);
    j["stable_runs"] = nlohmann::ordered_json::array();
    for (const auto& run : report.stable_runs) {
        nlohmann::ordered_json r;
        r["start_time_s"] = run.start_time_s;
        r["duration_s"] = run.duration_s;
        r["shift_ms"] = run.shift_ms;
        j["stable_runs"].push_back(std::move(r));
    }
    return j;
}

void write_stability_json(const StabilityReport& report, const std::string& label,
                          const std::string& path) {
    std::ofstream out = open_output(path);
    out << stability_to_json(report, label).dump(2) << '\n';
    finish_output(out, path);
}

nlohmann::json read_stability_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, "cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail(Errc::ParseError, path + ": " + e.what());
    }
}

namespace {

std::array<unsigned char, 3> lerp_color(double v) {
    std::array<unsigned char, 3> px{};
    for (int c = 0; c < 3; ++c) {
        const double channel = kColorWorst[c] + (kColorBest[c] - kColorWorst[c]) * v;
        px[c] = static_cast<unsigned char>(std::lround(std::clamp(channel, 0.0, 255.0)));
    }
    return px;
}

} // namespace

void write_heatmap_ppm(const TemporalOrderMatrix& matrix, const std::string& path) {
    const int width = matrix.window_count();
    const int height = matrix.shift_count();

    // TD polarity is inverted: smaller distance is better, so the matrix-wide
    // minimum takes the "best" color.
    double lo = 0.0, hi = 1.0;
    if (matrix.method() == Method::TD) {
        bool any = false;
        for (const auto& cell : matrix.cells()) {
            if (!cell) continue;
            if (!any) {
                lo = hi = *cell;
                any = true;
            } else {
                lo = std::min(lo, *cell);
                hi = std::max(hi, *cell);
            }
        }
    }

    std::ofstream out = open_output(path);
    out << "P6\n" << width << ' ' << height << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(width) * 3);
    for (int r = 0; r < height; ++r) {
        const int k = height - 1 - r; // shift increases upward
        for (int w = 0; w < width; ++w) {
            std::array<unsigned char, 3> px = kColorUndefined;
            if (const auto& cell = matrix.at(w, k)) {
                double goodness;
                if (matrix.method() == Method::LM) {
                    goodness = std::clamp(*cell, 0.0, 1.0);
                } else {
                    goodness = hi > lo ? 1.0 - (*cell - lo) / (hi - lo) : 1.0;
                }
                px = lerp_color(goodness);
            }
            std::copy(px.begin(), px.end(), row.begin() + static_cast<std::size_t>(w) * 3);
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    finish_output(out, path);
}

void write_bivariate_csv(const BivariateRecord& record, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "time_s,ch1,ch2\n";
    const std::size_t n = std::min(record.signal1().size(), record.signal2().size());
    char buf[96];
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof(buf), "%.9f,%.12g,%.12g\n", record.signal1().time_at(i),
                      record.signal1().values()[i], record.signal2().values()[i]);
        out << buf;
    }
    finish_output(out, path);
}

std::string fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open " + path);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char chunk[4096];
    while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(chunk[i]);
            hash *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

void write_manifest_json(const RunManifest& manifest, const std::string& path) {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = manifest.command;
    j["label"] = manifest.label;
    j["timestamp"] = manifest.timestamp;
    j["config"] = manifest.config;
    j["inputs"] = nlohmann::ordered_json::array();
    for (const auto& input : manifest.inputs) {
        nlohmann::ordered_json item;
        item["path"] = input.path;
        item["fnv1a64"] = input.fnv1a64;
        j["inputs"].push_back(std::move(item));
    }
    j["outputs"] = manifest.outputs;

    std::ofstream out = open_output(path);
    out << j.dump(2) << '\n';
    finish_output(out, path);
}

nlohmann::ordered_json config_to_json(const AnalysisConfig& config, double sample_rate_hz) {
    nlohmann::ordered_json j;
    j["method"] = to_string(config.method);
    j["distance_kind"] = to_string(config.distance_kind);
    j["scaling"] = to_string(config.scaling);
    j["segment_len_samples"] = config.segment_len_samples;
    j["shift_min_samples"] = config.shift_min_samples;
    j["shift_max_samples"] = config.shift_max_samples;
    j["shift_step_samples"] = config.shift_step_samples;
    j["window_step_samples"] = config.window_step_samples;
    j["threshold"] = config.threshold ? nlohmann::ordered_json(*config.threshold)
                                      : nlohmann::ordered_json(nullptr);
    j["sample_rate_hz"] = sample_rate_hz;
    return j;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace tempord::io
