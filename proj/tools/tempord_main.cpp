// Command-line front end: synthesize signal pairs, preprocess raw recordings,
// run the temporal-order analysis, and aggregate stability summaries.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tempord/engine.hpp"
#include "tempord/io.hpp"
#include "tempord/preprocess.hpp"
#include "tempord/synth.hpp"

namespace {

using namespace tempord;

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

int seconds_to_samples(double seconds, double rate_hz, const std::string& what) {
    const double samples = seconds * rate_hz;
    const double rounded = std::round(samples);
    if (std::abs(samples - rounded) > 1e-9 * std::max(1.0, std::abs(samples)))
        fail(Errc::BadConfig,
             what + " = " + std::to_string(seconds) +
                 " s is not a whole number of samples at " + std::to_string(rate_hz) + " Hz");
    return static_cast<int>(rounded);
}

unsigned threads_from_env() {
    const char* env = std::getenv("TEMPORD_THREADS");
    if (!env || !*env) return 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0) return 0;
    return static_cast<unsigned>(v);
}

std::string strip_extension(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
    return path.substr(0, dot);
}

std::string g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

struct SynthArgs {
    std::string kind = "sine";
    synth::SynthSpec spec;
    std::string output = "pair.csv";
    bool no_timestamp = false;
};

int run_synth(const SynthArgs& args) {
    synth::SynthSpec spec = args.spec;
    spec.kind = args.kind == "rsa" ? synth::SynthSpec::Kind::RsaPair
                                   : synth::SynthSpec::Kind::LaggedSine;
    const BivariateRecord record = synth::generate(spec);
    io::write_bivariate_csv(record, args.output);

    nlohmann::ordered_json cfg;
    cfg["kind"] = args.kind;
    cfg["duration_s"] = spec.duration_s;
    cfg["sample_rate_hz"] = spec.sample_rate_hz;
    cfg["frequency_hz"] = spec.frequency_hz;
    cfg["breath_rate_bpm"] = spec.breath_rate_bpm;
    cfg["depth_factor"] = spec.depth_factor;
    cfg["lag_s"] = spec.lag_s;
    cfg["noise_sd"] = spec.noise_sd;
    cfg["rng_seed"] = spec.rng_seed;

    io::RunManifest manifest;
    manifest.command = "synth";
    manifest.timestamp = args.no_timestamp ? "unset" : io::utc_timestamp();
    manifest.config = std::move(cfg);
    manifest.outputs = {args.output};
    io::write_manifest_json(manifest, strip_extension(args.output) + "_manifest.json");

    std::cout << "wrote " << args.output << " (" << record.signal1().size() << " samples @ "
              << g6(record.sample_rate_hz()) << " Hz)\n";
    return 0;
}

// ---------------------------------------------------------------------------
// preprocess
// ---------------------------------------------------------------------------

struct PreprocessArgs {
    std::string input;
    std::string output = "pair.csv";
    double target_rate_hz = 25.0;
    std::string col_time = "time_s";
    std::string col_ecg = "ch1";
    std::string col_resp = "ch2";
    bool ecg_only = false;
    bool tidal_first = false;
    bool no_timestamp = false;
};

int run_preprocess(const PreprocessArgs& args) {
    std::vector<std::string> outputs;

    if (args.ecg_only) {
        const TimeSeries ecg = preprocess::load_channel_csv(args.input, args.col_time, args.col_ecg);
        const auto beats = preprocess::detect_r_peaks(ecg);
        const TimeSeries tachogram =
            preprocess::build_tachogram(beats, args.target_rate_hz, ecg.start_time_s());

        std::ofstream out(args.output, std::ios::binary);
        if (!out) fail(Errc::IoError, "cannot write " + args.output);
        out << "time_s,rr_ms\n";
        char buf[64];
        for (std::size_t i = 0; i < tachogram.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.9f,%.12g\n", tachogram.time_at(i),
                          tachogram.values()[i]);
            out << buf;
        }
        if (!out.flush()) fail(Errc::IoError, "write failed: " + args.output);
        outputs.push_back(args.output);
        std::cout << "wrote " << args.output << " (" << beats.size() << " beats)\n";
    } else {
        const BivariateRecord raw = preprocess::load_bivariate_csv(
            args.input, {args.col_time, args.col_ecg, args.col_resp});

        const double ratio = raw.sample_rate_hz() / args.target_rate_hz;
        const int factor = static_cast<int>(std::round(ratio));
        if (factor < 1 || std::abs(ratio - factor) > 1e-6)
            fail(Errc::BadFactor, "target rate must divide the input rate");

        const auto beats = preprocess::detect_r_peaks(raw.signal1());
        const TimeSeries tachogram =
            preprocess::build_tachogram(beats, args.target_rate_hz, raw.start_time_s());
        const TimeSeries tidal = preprocess::decimate(raw.signal2(), factor);

        BivariateRecord pair = args.tidal_first
                                   ? BivariateRecord(tidal, tachogram, "tidal_volume", "tachogram")
                                   : BivariateRecord(tachogram, tidal, "tachogram", "tidal_volume");
        io::write_bivariate_csv(pair, args.output);
        outputs.push_back(args.output);
        std::cout << "wrote " << args.output << " (" << beats.size() << " beats, "
                  << std::min(pair.signal1().size(), pair.signal2().size()) << " samples @ "
                  << g6(args.target_rate_hz) << " Hz; ch1 = " << pair.label1() << ")\n";
    }

    nlohmann::ordered_json cfg;
    cfg["target_rate_hz"] = args.target_rate_hz;
    cfg["ecg_only"] = args.ecg_only;
    cfg["tidal_first"] = args.tidal_first;

    io::RunManifest manifest;
    manifest.command = "preprocess";
    manifest.timestamp = args.no_timestamp ? "unset" : io::utc_timestamp();
    manifest.config = std::move(cfg);
    manifest.inputs = {{args.input, io::fnv1a64_file(args.input)}};
    manifest.outputs = outputs;
    io::write_manifest_json(manifest, strip_extension(args.output) + "_manifest.json");
    return 0;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

struct AnalyzeArgs {
    std::string input;
    std::string output_prefix;
    std::string col1 = "ch1";
    std::string col2 = "ch2";
    std::string method = "lm";
    std::string distance = "manhattan";
    std::string scaling = "gaussian";
    double segment_sec = 10.0;
    double shift_min_sec = -2.0;
    double shift_max_sec = 2.0;
    std::optional<double> shift_step_sec;
    std::optional<double> window_step_sec;
    std::optional<double> threshold;
    std::string label;
    bool heatmap = false;
    bool no_timestamp = false;
};

int run_analyze(const AnalyzeArgs& args) {
    const BivariateRecord record =
        preprocess::load_bivariate_csv(args.input, {"time_s", args.col1, args.col2});
    const double rate = record.sample_rate_hz();

    AnalysisConfig config;
    config.method = args.method == "td" ? Method::TD : Method::LM;
    config.distance_kind =
        args.distance == "fourier" ? DistanceKind::Fourier : DistanceKind::Manhattan;
    config.scaling = args.scaling == "none"
                         ? Scaling::None
                         : (args.scaling == "uniform" ? Scaling::Uniform : Scaling::Gaussian);
    config.segment_len_samples = seconds_to_samples(args.segment_sec, rate, "--segment-sec");
    config.shift_min_samples = seconds_to_samples(args.shift_min_sec, rate, "--shift-min-sec");
    config.shift_max_samples = seconds_to_samples(args.shift_max_sec, rate, "--shift-max-sec");
    config.shift_step_samples =
        args.shift_step_sec ? seconds_to_samples(*args.shift_step_sec, rate, "--shift-step-sec") : 1;
    config.window_step_samples =
        args.window_step_sec ? seconds_to_samples(*args.window_step_sec, rate, "--window-step-sec")
                             : 1;
    config.threshold = args.threshold;
    validate_config(config, record);

    const auto result = engine::run_analysis(record, config, threads_from_env());

    const std::string prefix =
        args.output_prefix.empty() ? strip_extension(args.input) : args.output_prefix;
    const std::string matrix_path = prefix + "_matrix.csv";
    const std::string cv_path = prefix + "_cv.csv";
    const std::string stability_path = prefix + "_stability.json";
    const std::string manifest_path = prefix + "_manifest.json";

    io::write_matrix_csv(result.matrix, matrix_path);
    io::write_causal_vector_csv(result.causal_vector, cv_path);
    io::write_stability_json(result.stability, args.label, stability_path);

    std::vector<std::string> outputs{matrix_path, cv_path, stability_path};
    if (args.heatmap) {
        const std::string heatmap_path = prefix + "_heatmap.ppm";
        io::write_heatmap_ppm(result.matrix, heatmap_path);
        outputs.push_back(heatmap_path);
    }

    io::RunManifest manifest;
    manifest.command = "analyze";
    manifest.label = args.label;
    manifest.timestamp = args.no_timestamp ? "unset" : io::utc_timestamp();
    manifest.config = io::config_to_json(config, rate);
    manifest.inputs = {{args.input, io::fnv1a64_file(args.input)}};
    manifest.outputs = outputs;
    io::write_manifest_json(manifest, manifest_path);

    for (const auto& path : outputs) std::cout << "wrote " << path << '\n';
    std::cout << "wrote " << manifest_path << '\n';
    const auto& s = result.stability;
    std::cout << "cv mean " << (s.mean_shift_ms ? g6(*s.mean_shift_ms) + " ms" : "NA") << ", sd "
              << (s.sd_shift_ms ? g6(*s.sd_shift_ms) + " ms" : "NA") << ", longest stable "
              << g6(s.longest_stable_run_s) << " s, defined " << g6(s.defined_ratio_percent)
              << "%\n";
    return 0;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

struct ReportArgs {
    std::string output = "summary.csv";
    std::vector<std::string> inputs;
};

struct Accumulator {
    std::vector<double> values;
    void add(double v) { values.push_back(v); }
    std::string mean() const {
        if (values.empty()) return "NA";
        double m = 0.0;
        for (double v : values) m += v;
        return g6(m / static_cast<double>(values.size()));
    }
    std::string sd() const {
        if (values.size() < 2) return "NA";
        double m = 0.0;
        for (double v : values) m += v;
        m /= static_cast<double>(values.size());
        double ss = 0.0;
        for (double v : values) ss += (v - m) * (v - m);
        return g6(std::sqrt(ss / static_cast<double>(values.size() - 1)));
    }
};

int run_report(const ReportArgs& args) {
    struct Row {
        int n = 0;
        Accumulator cv, longest, ratio;
    };
    std::map<std::string, Row> rows; // keyed by label; map keeps the output sorted

    for (const auto& path : args.inputs) {
        const auto j = io::read_stability_json(path);
        const std::string label = j.value("label", "");
        Row& row = rows[label];
        ++row.n;
        if (j.contains("mean_shift_ms") && !j["mean_shift_ms"].is_null())
            row.cv.add(j["mean_shift_ms"].get<double>());
        if (j.contains("longest_stable_run_s"))
            row.longest.add(j["longest_stable_run_s"].get<double>());
        if (j.contains("defined_ratio_percent"))
            row.ratio.add(j["defined_ratio_percent"].get<double>());
    }

    std::ofstream out(args.output, std::ios::binary);
    if (!out) fail(Errc::IoError, "cannot write " + args.output);
    out << "label,n,n_defined,mean_cv_ms,sd_cv_ms,mean_longest_s,sd_longest_s,"
           "mean_ratio_pct,sd_ratio_pct\n";
    for (const auto& [label, row] : rows) {
        out << label << ',' << row.n << ',' << row.cv.values.size() << ',' << row.cv.mean() << ','
            << row.cv.sd() << ',' << row.longest.mean() << ',' << row.longest.sd() << ','
            << row.ratio.mean() << ',' << row.ratio.sd() << '\n';
    }
    if (!out.flush()) fail(Errc::IoError, "write failed: " + args.output);
    std::cout << "wrote " << args.output << " (" << rows.size() << " conditions)\n";
    return 0;
}

int classify_exit(const Error& e) {
    return e.code() == Errc::IoError ? kExitIo : kExitValidation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local temporal-order estimation between two uniformly sampled signals"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic signal pair CSV");
    synth_cmd->add_option("--kind", synth_args.kind, "Generator: sine (lagged sinusoid) or rsa")
        ->check(CLI::IsMember({"sine", "rsa"}))
        ->capture_default_str();
    synth_cmd->add_option("--duration-sec", synth_args.spec.duration_s, "Signal duration")
        ->capture_default_str();
    synth_cmd->add_option("--rate", synth_args.spec.sample_rate_hz, "Sample rate in Hz")
        ->capture_default_str();
    synth_cmd->add_option("--freq-hz", synth_args.spec.frequency_hz,
                          "Sine frequency (sine kind; 0 derives it from --bpm)");
    synth_cmd->add_option("--bpm", synth_args.spec.breath_rate_bpm, "Breathing rate (rsa kind)")
        ->capture_default_str();
    synth_cmd->add_option("--depth", synth_args.spec.depth_factor, "Tidal-volume amplitude (rsa)")
        ->capture_default_str();
    synth_cmd->add_option("--lag-sec", synth_args.spec.lag_s, "Injected lag, signal1 ahead")
        ->capture_default_str();
    synth_cmd->add_option("--noise-sd", synth_args.spec.noise_sd, "Additive Gaussian noise SD")
        ->capture_default_str();
    synth_cmd->add_option("--seed", synth_args.spec.rng_seed, "RNG seed")->capture_default_str();
    synth_cmd->add_option("--output", synth_args.output, "Output CSV path")->capture_default_str();
    synth_cmd->add_flag("--no-timestamp", synth_args.no_timestamp,
                        "Write a fixed timestamp placeholder (reproducible bytes)");

    PreprocessArgs pre_args;
    auto* pre_cmd = app.add_subcommand(
        "preprocess", "R-peak detection, tachogram construction, and decimation");
    pre_cmd->add_option("--input", pre_args.input, "Raw CSV (time_s plus ECG/impedance columns)")
        ->required();
    pre_cmd->add_option("--output", pre_args.output, "Output pair CSV")->capture_default_str();
    pre_cmd->add_option("--target-rate", pre_args.target_rate_hz,
                        "Output rate in Hz (must divide the input rate)")
        ->capture_default_str();
    pre_cmd->add_option("--col-time", pre_args.col_time, "Time column name")->capture_default_str();
    pre_cmd->add_option("--col-ecg", pre_args.col_ecg, "ECG column name")->capture_default_str();
    pre_cmd->add_option("--col-resp", pre_args.col_resp, "Respiration column name")
        ->capture_default_str();
    pre_cmd->add_flag("--ecg-only", pre_args.ecg_only,
                      "Input has only an ECG channel; write a tachogram CSV (time_s,rr_ms)");
    pre_cmd->add_flag("--tidal-first", pre_args.tidal_first,
                      "Emit the tidal volume as ch1 instead of the tachogram");
    pre_cmd->add_flag("--no-timestamp", pre_args.no_timestamp,
                      "Write a fixed timestamp placeholder (reproducible bytes)");

    AnalyzeArgs an_args;
    auto* an_cmd =
        app.add_subcommand("analyze", "Fill the temporal-order matrix and extract the causal vector");
    an_cmd->add_option("--input", an_args.input, "Pair CSV (header time_s,ch1,ch2)")->required();
    an_cmd->add_option("--output-prefix", an_args.output_prefix,
                       "Prefix for output files (default: input path without extension)");
    an_cmd->add_option("--col1", an_args.col1, "Stationary signal column")->capture_default_str();
    an_cmd->add_option("--col2", an_args.col2, "Shifted signal column")->capture_default_str();
    an_cmd->add_option("--method", an_args.method, "Scoring method: lm or td")
        ->check(CLI::IsMember({"lm", "td"}))
        ->capture_default_str();
    an_cmd->add_option("--distance", an_args.distance, "TD distance: manhattan or fourier")
        ->check(CLI::IsMember({"manhattan", "fourier"}))
        ->capture_default_str();
    an_cmd->add_option("--scaling", an_args.scaling, "Per-segment standardization")
        ->check(CLI::IsMember({"none", "uniform", "gaussian"}))
        ->capture_default_str();
    an_cmd->add_option("--segment-sec", an_args.segment_sec, "Segment length in seconds")
        ->capture_default_str();
    an_cmd->add_option("--shift-min-sec", an_args.shift_min_sec, "Most negative shift")
        ->capture_default_str();
    an_cmd->add_option("--shift-max-sec", an_args.shift_max_sec, "Most positive shift")
        ->capture_default_str();
    an_cmd->add_option("--shift-step-sec", an_args.shift_step_sec,
                       "Shift grid step (default: one sample)");
    an_cmd->add_option("--window-step-sec", an_args.window_step_sec,
                       "Window grid step (default: one sample)");
    an_cmd->add_option("--threshold", an_args.threshold,
                       "Score threshold excluding weak cells from the causal vector");
    an_cmd->add_option("--label", an_args.label, "Condition label stored in the stability JSON");
    an_cmd->add_flag("--heatmap", an_args.heatmap, "Also write a PPM heatmap of the matrix");
    an_cmd->add_flag("--no-timestamp", an_args.no_timestamp,
                     "Write a fixed timestamp placeholder (reproducible bytes)");

    ReportArgs rep_args;
    auto* rep_cmd =
        app.add_subcommand("report", "Aggregate stability JSONs into a per-label CSV summary");
    rep_cmd->add_option("--output", rep_args.output, "Summary CSV path")->capture_default_str();
    rep_cmd->add_option("inputs", rep_args.inputs, "Stability JSON files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth_cmd) return run_synth(synth_args);
        if (*pre_cmd) return run_preprocess(pre_args);
        if (*an_cmd) return run_analyze(an_args);
        if (*rep_cmd) return run_report(rep_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return classify_exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
