#pragma once

#include <cstdint>
#include <string_view>

namespace rsloss {

enum class IntervalKind { NormalApprox, WilsonAC, DeltaIQ };

std::string_view to_string(IntervalKind kind);

/// Bounds are reported unclipped; they may leave (0, 1).
struct ConfidenceInterval {
    double lo = 0.0;
    double hi = 0.0;
    double center = 0.0;
    IntervalKind kind = IntervalKind::NormalApprox;
    double level = 0.95;

    [[nodiscard]] bool covers(double theta) const noexcept { return lo <= theta && theta <= hi; }
    [[nodiscard]] double width() const noexcept { return hi - lo; }
    /// Display view with bounds clipped to [0, 1].
    [[nodiscard]] ConfidenceInterval clipped() const noexcept;
};

/// p_hat +/- z_{alpha/2} sqrt(p_hat (1 - p_hat) / n), alpha = 1 - level.
ConfidenceInterval ci_normal(double p_hat, std::int64_t n, double level = 0.95);

/// (x + 2)/(n + 4) +/- 2 sqrt(n)/(n + 2) sqrt(x (n - x)/n^2 + 1/n).
/// The multiplier is the fixed 2 of this variant, so `level` is nominal (0.95).
ConfidenceInterval ci_wilson_ac(std::int64_t x, std::int64_t n);

/// Delta-method interval around the interval-squared-loss estimate on (0, 1):
/// p +/- 2 sqrt(f'(n p)^2 n p (1 - p)) with f the estimate as a function of x.
ConfidenceInterval ci_delta_iq(std::int64_t x, std::int64_t n);

}  // namespace rsloss
