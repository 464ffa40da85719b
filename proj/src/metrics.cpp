#include "tempord/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tempord/error.hpp"

namespace tempord::metrics {

namespace {

void require_equal_lengths(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        fail(Errc::LengthMismatch, "segments must have equal lengths");
}

} // namespace

std::optional<double> adjusted_r_squared(std::span<const double> x, std::span<const double> y) {
    require_equal_lengths(x, y);
    const std::size_t n = x.size();
    if (n < 3) throw std::invalid_argument("adjusted_r_squared needs n >= 3");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt; // constant regressor or response

    // R^2 of simple regression is the squared correlation; clamp the rounding
    // overshoot so the score never exceeds 1.
    double r2 = (sxy * sxy) / (sxx * syy);
    if (r2 > 1.0) r2 = 1.0;
    const double dn = static_cast<double>(n);
    return 1.0 - (1.0 - r2) * (dn - 1.0) / (dn - 2.0);
}

double manhattan_distance(std::span<const double> x, std::span<const double> y) {
    require_equal_lengths(x, y);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += std::abs(x[i] - y[i]);
    return sum;
}

FourierPlan::FourierPlan(std::size_t n) : n_(n), kept_(n / 2 + 1) {
    if (n < 2) throw std::invalid_argument("fourier distance needs n >= 2");
    cos_.resize(n);
    sin_.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
        cos_[r] = std::cos(angle);
        sin_[r] = std::sin(angle);
    }
}

double FourierPlan::distance(std::span<const double> x, std::span<const double> y) const {
    require_equal_lengths(x, y);
    if (x.size() != n_)
        fail(Errc::LengthMismatch, "segment length does not match the plan");

    // DFT is linear, so the coefficient difference equals the DFT of x - y.
    double acc = 0.0;
    for (std::size_t k = 0; k < kept_; ++k) {
        double re = 0.0, im = 0.0;
        std::size_t r = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            const double d = x[j] - y[j];
            re += d * cos_[r];
            im -= d * sin_[r];
            r += k;
            if (r >= n_) r -= n_;
        }
        acc += re * re + im * im;
    }
    return std::sqrt(acc);
}

double fourier_distance(std::span<const double> x, std::span<const double> y) {
    require_equal_lengths(x, y);
    return FourierPlan(x.size()).distance(x, y);
}

} // namespace tempord::metrics
