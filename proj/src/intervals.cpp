#include "rsloss/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rsloss/errors.hpp"
#include "rsloss/estimators.hpp"
#include "rsloss/special.hpp"

namespace rsloss {

namespace {

void check_counts(std::int64_t x, std::int64_t n, const char* what) {
    if (n < 1 || x < 0 || x > n) {
        std::ostringstream os;
        os << what << ": need n >= 1 and 0 <= x <= n, got x=" << x << ", n=" << n;
        throw DomainError(os.str());
    }
}

}  // namespace

std::string_view to_string(IntervalKind kind) {
    switch (kind) {
        case IntervalKind::NormalApprox: return "normal";
        case IntervalKind::WilsonAC: return "wilson_ac";
        case IntervalKind::DeltaIQ: return "delta_iq";
    }
    return "unknown";
}

ConfidenceInterval ConfidenceInterval::clipped() const noexcept {
    ConfidenceInterval c = *this;
    c.lo = std::clamp(lo, 0.0, 1.0);
    c.hi = std::clamp(hi, 0.0, 1.0);
    return c;
}

ConfidenceInterval ci_normal(double p_hat, std::int64_t n, double level) {
    if (!(p_hat > 0.0 && p_hat < 1.0)) {
        std::ostringstream os;
        os << "ci_normal: p_hat must lie strictly inside (0, 1), got " << p_hat;
        throw DomainError(os.str());
    }
    if (n < 1) throw DomainError("ci_normal: n must be positive");
    if (!(level > 0.0 && level < 1.0)) throw DomainError("ci_normal: level must lie in (0, 1)");
    const double z = normal_upper_quantile(0.5 * (1.0 - level));
    const double half = z * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
    return {p_hat - half, p_hat + half, p_hat, IntervalKind::NormalApprox, level};
}

ConfidenceInterval ci_wilson_ac(std::int64_t x, std::int64_t n) {
    check_counts(x, n, "ci_wilson_ac");
    const double xd = static_cast<double>(x);
    const double nd = static_cast<double>(n);
    const double center = (xd + 2.0) / (nd + 4.0);
    const double half =
        2.0 * (std::sqrt(nd) / (nd + 2.0)) * std::sqrt(xd * (nd - xd) / (nd * nd) + 1.0 / nd);
    return {center - half, center + half, center, IntervalKind::WilsonAC, 0.95};
}

ConfidenceInterval ci_delta_iq(std::int64_t x, std::int64_t n) {
    check_counts(x, n, "ci_delta_iq");
    const double nd = static_cast<double>(n);
    const double p = probability_estimate(x, n);
    const double slope = probability_estimate_derivative(nd * p, nd);
    const double variance = slope * slope * nd * p * (1.0 - p);
    const double half = 2.0 * std::sqrt(variance);
    return {p - half, p + half, p, IntervalKind::DeltaIQ, 0.95};
}

}  // namespace rsloss
