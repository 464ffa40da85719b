#ifndef TEMPORD_METRICS_HPP
#define TEMPORD_METRICS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tempord::metrics {

/// Adjusted R-squared of the simple regression y = a + b*x (one predictor):
/// 1 - (1 - R^2) * (n - 1) / (n - 2). Always <= 1; equals 1 only for an exact
/// linear relation. Returns nothing when x or y is constant (zero variance).
/// Requires equal lengths, n >= 3.
std::optional<double> adjusted_r_squared(std::span<const double> x, std::span<const double> y);

/// L1 distance: sum of |x_i - y_i|. Requires equal lengths, n >= 1.
double manhattan_distance(std::span<const double> x, std::span<const double> y);

/// Distance between the non-redundant half-spectra of two segments: both are
/// transformed with an exact-length DFT (no padding), the first floor(n/2)+1
/// complex coefficients are kept, and the Euclidean norm of their difference is
/// returned. Requires equal lengths, n >= 2.
double fourier_distance(std::span<const double> x, std::span<const double> y);

/// Precomputed twiddle factors for repeated fourier_distance calls of one
/// length. Stateless after construction; safe to share between workers.
class FourierPlan {
public:
    explicit FourierPlan(std::size_t n);

    double distance(std::span<const double> x, std::span<const double> y) const;

    std::size_t length() const noexcept { return n_; }

private:
    std::size_t n_;
    std::size_t kept_;
    std::vector<double> cos_; // cos(2*pi*r/n), r = 0..n-1
    std::vector<double> sin_;
};

} // namespace tempord::metrics

#endif
