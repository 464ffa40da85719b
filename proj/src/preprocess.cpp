#include "tempord/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tempord::preprocess {

// ---------------------------------------------------------------------------
// filters
// ---------------------------------------------------------------------------

namespace {

Biquad bilinear_section(double cutoff_hz, double sample_rate_hz, double q, bool highpass) {
    if (!(cutoff_hz > 0.0) || cutoff_hz >= sample_rate_hz / 2.0)
        throw std::invalid_argument("cutoff must lie inside (0, Nyquist)");
    const double k = std::tan(std::numbers::pi * cutoff_hz / sample_rate_hz);
    const double norm = 1.0 / (1.0 + k / q + k * k);
    Biquad s{};
    if (highpass) {
        s.b0 = norm;
        s.b1 = -2.0 * norm;
        s.b2 = norm;
    } else {
        s.b0 = k * k * norm;
        s.b1 = 2.0 * s.b0;
        s.b2 = s.b0;
    }
    s.a1 = 2.0 * (k * k - 1.0) * norm;
    s.a2 = (1.0 - k / q + k * k) * norm;
    return s;
}

constexpr double kButterQ2 = 0.70710678118654752; // 1/sqrt(2)

// Transposed direct form II, with the state preloaded to the steady-state
// response for a constant input x0 (kills the step transient at the pad edge).
void run_section(const Biquad& s, std::vector<double>& x) {
    const double x0 = x.empty() ? 0.0 : x.front();
    const double gain = (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
    const double y0 = gain * x0;
    double z1 = y0 - s.b0 * x0;
    double z2 = s.b2 * x0 - s.a2 * y0;
    for (double& v : x) {
        const double in = v;
        const double out = s.b0 * in + z1;
        z1 = s.b1 * in - s.a1 * out + z2;
        z2 = s.b2 * in - s.a2 * out;
        v = out;
    }
}

} // namespace

Biquad butter_lowpass2(double cutoff_hz, double sample_rate_hz) {
    return bilinear_section(cutoff_hz, sample_rate_hz, kButterQ2, false);
}

Biquad butter_highpass2(double cutoff_hz, double sample_rate_hz) {
    return bilinear_section(cutoff_hz, sample_rate_hz, kButterQ2, true);
}

std::array<Biquad, 2> butter_lowpass4(double cutoff_hz, double sample_rate_hz) {
    // Section Q values of the order-4 Butterworth pole pairs.
    return {bilinear_section(cutoff_hz, sample_rate_hz, 0.54119610014619698, false),
            bilinear_section(cutoff_hz, sample_rate_hz, 1.30656296487637652, false)};
}

std::vector<double> filtfilt(std::span<const Biquad> sections, std::span<const double> x,
                             int pad_len) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    const std::size_t pad = std::min<std::size_t>(static_cast<std::size_t>(std::max(pad_len, 0)),
                                                  n - 1);

    // Odd reflection about both endpoints.
    std::vector<double> buf;
    buf.reserve(n + 2 * pad);
    for (std::size_t i = pad; i >= 1; --i) buf.push_back(2.0 * x[0] - x[i]);
    buf.insert(buf.end(), x.begin(), x.end());
    for (std::size_t i = 1; i <= pad; ++i) buf.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

    for (const Biquad& s : sections) run_section(s, buf);
    std::reverse(buf.begin(), buf.end());
    for (const Biquad& s : sections) run_section(s, buf);
    std::reverse(buf.begin(), buf.end());

    return {buf.begin() + static_cast<std::ptrdiff_t>(pad),
            buf.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

// ---------------------------------------------------------------------------
// decimation
// ---------------------------------------------------------------------------

TimeSeries decimate(const TimeSeries& ts, int factor) {
    if (factor < 1) fail(Errc::BadFactor, "decimation factor must be >= 1");
    if (factor == 1) return ts;
    if (ts.size() < static_cast<std::size_t>(factor))
        fail(Errc::BadFactor, "decimation factor leaves no output samples");

    const double in_rate = ts.sample_rate_hz();
    const double out_rate = in_rate / factor;
    const double cutoff_hz = 0.4 * (out_rate / 2.0);

    const auto sections = butter_lowpass4(cutoff_hz, in_rate);
    const int pad = static_cast<int>(std::ceil(3.0 * in_rate / cutoff_hz));
    const std::vector<double> smooth = filtfilt(sections, ts.values(), pad);

    std::vector<double> out;
    out.reserve(smooth.size() / factor + 1);
    for (std::size_t i = 0; i < smooth.size(); i += static_cast<std::size_t>(factor))
        out.push_back(smooth[i]);
    return TimeSeries(std::move(out), out_rate, ts.start_time_s());
}

// ---------------------------------------------------------------------------
// scaling
// ---------------------------------------------------------------------------

bool scale_segment_into(std::span<const double> segment, Scaling mode, std::span<double> out) {
    const std::size_t n = segment.size();
    switch (mode) {
        case Scaling::None:
            std::copy(segment.begin(), segment.end(), out.begin());
            return true;
        case Scaling::Uniform: {
            double lo = segment[0], hi = segment[0];
            for (double v : segment) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (hi == lo) return false;
            const double span = hi - lo;
            for (std::size_t i = 0; i < n; ++i) out[i] = (segment[i] - lo) / span;
            return true;
        }
        case Scaling::Gaussian: {
            if (n < 2) return false;
            double mean = 0.0;
            for (double v : segment) mean += v;
            mean /= static_cast<double>(n);
            double ss = 0.0;
            for (double v : segment) {
                const double d = v - mean;
                ss += d * d;
            }
            const double sd = std::sqrt(ss / static_cast<double>(n - 1));
            if (sd == 0.0) return false;
            for (std::size_t i = 0; i < n; ++i) out[i] = (segment[i] - mean) / sd;
            return true;
        }
    }
    return false;
}

std::vector<double> scale_segment(std::span<const double> segment, Scaling mode) {
    std::vector<double> out(segment.size());
    if (!scale_segment_into(segment, mode, out))
        fail(Errc::DegenerateSegment, "constant segment cannot be standardized");
    return out;
}

// ---------------------------------------------------------------------------
// R-peak detection
// ---------------------------------------------------------------------------

BeatTimes::BeatTimes(std::vector<double> times_s) : times_s_(std::move(times_s)) {
    for (std::size_t i = 1; i < times_s_.size(); ++i)
        if (!(times_s_[i] > times_s_[i - 1]))
            fail(Errc::InvalidSignal, "beat times must be strictly increasing");
}

namespace {

struct Candidate {
    std::size_t index;
    double value;
};

std::vector<double> moving_window_integral(const std::vector<double>& sq, int half) {
    const std::size_t n = sq.size();
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + sq[i];
    std::vector<double> mwi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= static_cast<std::size_t>(half) ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + static_cast<std::size_t>(half));
        mwi[i] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
    }
    return mwi;
}

} // namespace

BeatTimes detect_r_peaks(const TimeSeries& ecg) {
    const double fs = ecg.sample_rate_hz();
    if (fs < 100.0) fail(Errc::RateTooLow, "R-peak detection needs >= 100 Hz");
    const std::size_t n = ecg.size();
    const std::vector<double>& raw = ecg.values();

    // Band-pass 5-15 Hz, applied forward-backward so every stage is zero-phase
    // and detections line up with the QRS complex itself.
    const std::array<Biquad, 2> band{butter_highpass2(5.0, fs), butter_lowpass2(15.0, fs)};
    const int pad = static_cast<int>(std::ceil(3.0 * fs / 5.0));
    std::vector<double> bp = filtfilt(band, raw, pad);

    // Centered five-point derivative, then squaring.
    std::vector<double> sq(n, 0.0);
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double d = (2.0 * bp[i + 1] + bp[i + 2] - 2.0 * bp[i - 1] - bp[i - 2]) / 8.0;
        sq[i] = d * d;
    }

    const int half = std::max(1, static_cast<int>(std::lround(0.075 * fs)));
    const std::vector<double> mwi = moving_window_integral(sq, half);

    // Local maxima of the integrated energy are the peak candidates.
    std::vector<Candidate> peaks;
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (mwi[i] > mwi[i - 1] && mwi[i] >= mwi[i + 1] && mwi[i] > 0.0)
            peaks.push_back({i, mwi[i]});

    // Threshold learning over the first two seconds.
    const std::size_t learn = std::min<std::size_t>(n, static_cast<std::size_t>(2.0 * fs));
    double spk = 0.0, npk = 0.0;
    for (std::size_t i = 0; i < learn; ++i) {
        spk = std::max(spk, mwi[i]);
        npk += mwi[i];
    }
    npk = learn ? npk / static_cast<double>(learn) : 0.0;
    double threshold = npk + 0.25 * (spk - npk);

    const double refractory = 0.2 * fs;
    const double search_back_factor = 1.66;
    std::vector<std::size_t> beats;
    std::vector<double> rr_history;
    double rr_average = fs; // 60 BPM until learned

    auto accept = [&](std::size_t index, double value, double weight) {
        if (!beats.empty()) {
            const double rr = static_cast<double>(index) - static_cast<double>(beats.back());
            rr_history.push_back(rr);
            if (rr_history.size() > 8) rr_history.erase(rr_history.begin());
            double sum = 0.0;
            for (double r : rr_history) sum += r;
            rr_average = sum / static_cast<double>(rr_history.size());
        }
        beats.push_back(index);
        spk = weight * value + (1.0 - weight) * spk;
        threshold = npk + 0.25 * (spk - npk);
    };

    auto since_last_beat = [&](std::size_t index) {
        return static_cast<double>(index) - static_cast<double>(beats.back());
    };

    std::size_t searched_up_to = 0;
    for (std::size_t p = 0; p < peaks.size(); ++p) {
        const auto& cand = peaks[p];
        if (!beats.empty() && since_last_beat(cand.index) < refractory) continue;

        if (cand.value > threshold) {
            accept(cand.index, cand.value, 0.125);
            searched_up_to = p + 1;
            continue;
        }

        npk = 0.125 * cand.value + 0.875 * npk;
        threshold = npk + 0.25 * (spk - npk);

        // Search back with the lighter threshold when a beat is overdue.
        if (!beats.empty() && since_last_beat(cand.index) > search_back_factor * rr_average) {
            std::size_t best = peaks.size();
            double best_value = 0.5 * threshold;
            for (std::size_t q = searched_up_to; q <= p; ++q) {
                if (since_last_beat(peaks[q].index) <= refractory) continue;
                if (peaks[q].value > best_value) {
                    best_value = peaks[q].value;
                    best = q;
                }
            }
            if (best != peaks.size()) {
                accept(peaks[best].index, peaks[best].value, 0.25);
                searched_up_to = best + 1;
            }
        }
    }

    // Refine each detection to the raw-ECG maximum within +/-50 ms.
    const std::size_t radius = static_cast<std::size_t>(std::lround(0.05 * fs));
    std::vector<double> times;
    times.reserve(beats.size());
    for (std::size_t b : beats) {
        const std::size_t lo = b >= radius ? b - radius : 0;
        const std::size_t hi = std::min(n - 1, b + radius);
        std::size_t best = lo;
        for (std::size_t i = lo + 1; i <= hi; ++i)
            if (raw[i] > raw[best]) best = i;
        const double t = ecg.time_at(best);
        if (times.empty() || t > times.back()) times.push_back(t);
    }

    if (times.size() < 2) fail(Errc::NoBeatsFound, "fewer than two R peaks detected");
    return BeatTimes(std::move(times));
}

// ---------------------------------------------------------------------------
// tachogram
// ---------------------------------------------------------------------------

namespace {

constexpr double kRrMinS = 0.2;
constexpr double kRrMaxS = 3.0;

} // namespace

TimeSeries build_tachogram(const BeatTimes& beats, double target_rate_hz, double grid_anchor_s) {
    if (!(target_rate_hz > 0.0)) fail(Errc::BadConfig, "target rate must be positive");
    const std::vector<double>& t = beats.times_s();
    if (t.size() < 2) fail(Errc::TooFewBeats, "a tachogram needs at least two beats");

    // Knot per kept interval, value in ms at the interval's ending beat.
    std::vector<double> knot_t, knot_v;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double rr = t[i] - t[i - 1];
        if (rr < kRrMinS || rr > kRrMaxS) continue; // ectopic-beat guard
        if (knot_t.empty()) {
            // Backfill the start of the first kept interval with its own value
            // so the grid can reach back to the first beat without extrapolating.
            knot_t.push_back(t[i - 1]);
            knot_v.push_back(rr * 1000.0);
        }
        knot_t.push_back(t[i]);
        knot_v.push_back(rr * 1000.0);
    }
    if (knot_t.size() < 2) fail(Errc::TooFewBeats, "no physiological RR interval survived");

    // Grid points are multiples of the sample period counted from the anchor.
    const double eps = 1e-9;
    const std::int64_t k0 =
        static_cast<std::int64_t>(std::ceil((knot_t.front() - grid_anchor_s) * target_rate_hz - eps));
    const std::int64_t k1 =
        static_cast<std::int64_t>(std::floor((knot_t.back() - grid_anchor_s) * target_rate_hz + eps));
    if (k1 < k0) fail(Errc::TooFewBeats, "beat span shorter than one output sample");

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(k1 - k0 + 1));
    std::size_t seg = 0;
    for (std::int64_t k = k0; k <= k1; ++k) {
        const double time = grid_anchor_s + static_cast<double>(k) / target_rate_hz;
        while (seg + 2 < knot_t.size() && knot_t[seg + 1] < time) ++seg;
        const double t0 = knot_t[seg], t1 = knot_t[seg + 1];
        const double w = std::clamp((time - t0) / (t1 - t0), 0.0, 1.0);
        values.push_back(knot_v[seg] + w * (knot_v[seg + 1] - knot_v[seg]));
    }

    const double start = grid_anchor_s + static_cast<double>(k0) / target_rate_hz;
    return TimeSeries(std::move(values), target_rate_hz, start);
}

// ---------------------------------------------------------------------------
// CSV input
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_number(const std::string& field, std::size_t row) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(field, &pos);
        if (pos != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        fail(Errc::ParseError, "row " + std::to_string(row) + ": not a number: '" + field + "'");
    }
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    std::size_t column_index(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        fail(Errc::MissingColumn, "no column named '" + name + "'");
    }
};

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, "cannot open " + path);

    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) fail(Errc::ParseError, "empty file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.header = split_csv_line(line);
    table.columns.resize(table.header.size());

    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != table.header.size())
            fail(Errc::ParseError,
                 "row " + std::to_string(row) + ": expected " +
                     std::to_string(table.header.size()) + " fields, got " +
                     std::to_string(fields.size()));
        for (std::size_t c = 0; c < fields.size(); ++c)
            table.columns[c].push_back(parse_number(fields[c], row));
    }
    return table;
}

// Verifies uniform sampling (relative tolerance 1e-6) and returns the rate.
double infer_rate(const std::vector<double>& time_s) {
    if (time_s.size() < 2) fail(Errc::ParseError, "need at least two rows to infer a rate");
    const double step =
        (time_s.back() - time_s.front()) / static_cast<double>(time_s.size() - 1);
    if (!(step > 0.0)) fail(Errc::NonUniformSampling, "time column must increase");
    for (std::size_t i = 1; i < time_s.size(); ++i) {
        const double dt = time_s[i] - time_s[i - 1];
        if (std::abs(dt - step) > 1e-6 * step)
            fail(Errc::NonUniformSampling,
                 "time step at row " + std::to_string(i + 1) + " deviates from " +
                     std::to_string(step));
    }
    return 1.0 / step;
}

} // namespace

BivariateRecord load_bivariate_csv(const std::string& path, const CsvColumns& columns) {
    const CsvTable table = read_csv(path);
    const auto ti = table.column_index(columns.time);
    const auto c1 = table.column_index(columns.ch1);
    const auto c2 = table.column_index(columns.ch2);

    const double rate = infer_rate(table.columns[ti]);
    const double start = table.columns[ti].front();
    TimeSeries s1(table.columns[c1], rate, start);
    TimeSeries s2(table.columns[c2], rate, start);
    return BivariateRecord(std::move(s1), std::move(s2), columns.ch1, columns.ch2);
}

TimeSeries load_channel_csv(const std::string& path, const std::string& time_column,
                            const std::string& value_column) {
    const CsvTable table = read_csv(path);
    const auto ti = table.column_index(time_column);
    const auto vi = table.column_index(value_column);
    const double rate = infer_rate(table.columns[ti]);
    return TimeSeries(table.columns[vi], rate, table.columns[ti].front());
}

} // namespace tempord::preprocess
