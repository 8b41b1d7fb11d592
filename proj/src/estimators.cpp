#include "rsloss/estimators.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "rsloss/errors.hpp"
#include "rsloss/special.hpp"

namespace rsloss {

namespace {

void require_finite(const MomentSet& m) {
    if (!std::isfinite(m.m1) || !std::isfinite(m.m2))
        throw NumericalError("estimator: non-finite posterior moments");
}

}  // namespace

EstimatorResult scale_mean(const MomentSet& m) {
    if (!m.mk || !m.mnegk) throw MissingMomentError("scale_mean needs E[theta^k] and E[theta^-k]");
    const double mk = *m.mk;
    const double mnegk = *m.mnegk;
    if (!(mk > 0.0) || !(mnegk > 0.0) || !std::isfinite(mk) || !std::isfinite(mnegk))
        throw DomainError("scale_mean: moments must be positive and finite");
    EstimatorResult r;
    r.point = std::exp((std::log(mk) - std::log(mnegk)) / (2.0 * m.k));
    r.achieved_risk = std::max(0.0, 2.0 * std::sqrt(mk * mnegk) - 2.0);
    return r;
}

EstimatorResult precautionary_estimate(const MomentSet& m) {
    require_finite(m);
    if (!(m.m2 > 0.0)) throw DomainError("precautionary_estimate: E[theta^2] must be positive");
    EstimatorResult r;
    r.point = std::sqrt(m.m2);
    if (r.point < m.m1 * (1.0 - 1e-10))
        throw NumericalError("precautionary_estimate: E[theta^2] < E[theta]^2");
    r.achieved_risk = std::max(0.0, 2.0 * (r.point - m.m1));
    return r;
}

EstimatorResult interval_estimate(const MomentSet& m, double a, double b, IntervalSupport support) {
    require_finite(m);
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw DomainError("interval_estimate: need finite a < b");
    const double m1 = m.m1;
    const double m2 = m.m2;
    if (support == IntervalSupport::Enforce) {
        // theta in (a, b) forces E[(theta - a)(b - theta)] > 0 and Jensen.
        const double spread = (a + b) * m1 - a * b - m2;
        const double scale = std::max({1.0, std::abs(a * b), m2});
        if (!(a < m1 && m1 < b) || m2 < m1 * m1 * (1.0 - 1e-10) - 1e-300 ||
            spread <= -1e-12 * scale) {
            std::ostringstream os;
            os << "interval_estimate: moments (m1=" << m1 << ", m2=" << m2
               << ") are not those of a posterior on (" << a << ", " << b << ")";
            throw DomainError(os.str());
        }
    }

    EstimatorResult r;
    const double c = a + b - 2.0 * m1;
    if (std::abs(c) < 1e-9 * (b - a)) {
        r.point = 0.5 * (a + b);
        r.method = EstimatorMethod::ClosedFormLimit;
    } else {
        // Roots of c d^2 - 2 (ab - m2) d + e = 0; the minimizer is the "+sqrt" root
        // (ab - m2 + sqrt(D)) / c, evaluated without cancellation as either q / c or e / q.
        const double h = a * b - m2;
        const double e = 2.0 * a * b * m1 - (a + b) * m2;
        double disc = h * h - c * e;
        if (disc < 0.0) {
            if (disc < -1e-12 * std::max(1.0, h * h))
                throw NumericalError("interval_estimate: negative discriminant");
            disc = 0.0;
        }
        const double root = std::sqrt(disc);
        if (h >= 0.0) {
            r.point = (h + root) / c;
        } else {
            r.point = e / (h - root);
        }
    }
    if (!(a < r.point && r.point < b) || !std::isfinite(r.point)) {
        std::ostringstream os;
        os << "interval_estimate: minimizer " << r.point << " falls outside (" << a << ", " << b
           << ")";
        throw DomainError(os.str());
    }
    const double d = r.point;
    r.achieved_risk = std::max(0.0, (d * d - 2.0 * d * m1 + m2) / ((d - a) * (b - d)));
    return r;
}

double probability_estimate_real(double x, double n) {
    if (!(x >= 0.0) || !(x <= n)) {
        std::ostringstream os;
        os << "probability_estimate: need 0 <= x <= n, got x=" << x << ", n=" << n;
        throw DomainError(os.str());
    }
    const double g = (n - x + 1.0) * (n - x + 2.0) / ((x + 1.0) * (x + 2.0));
    return 1.0 / (1.0 + std::sqrt(g));
}

double probability_estimate(std::int64_t x, std::int64_t n) {
    return probability_estimate_real(static_cast<double>(x), static_cast<double>(n));
}

double probability_estimate_derivative(double x, double n) {
    if (!(x >= 0.0) || !(x <= n)) throw DomainError("probability_estimate_derivative: need 0 <= x <= n");
    const double g = (n - x + 1.0) * (n - x + 2.0) / ((x + 1.0) * (x + 2.0));
    const double dlog_g =
        -1.0 / (n - x + 1.0) - 1.0 / (n - x + 2.0) - 1.0 / (x + 1.0) - 1.0 / (x + 2.0);
    const double s = std::sqrt(g);
    // f = (1 + sqrt g)^-1, f' = -(sqrt g)' / (1 + sqrt g)^2, (sqrt g)' = sqrt g * (log g)' / 2
    return -0.5 * s * dlog_g / ((1.0 + s) * (1.0 + s));
}

double expected_loss(const LossFunction& loss, const DiscreteDensity& posterior, double d) {
    return posterior.expectation([&](double theta) { return evaluate(loss, theta, d); });
}

EstimatorResult numeric_minimize(const LossFunction& loss, const PosteriorModel& posterior, double lo,
                                 double hi) {
    return numeric_minimize(loss, discretize(posterior), lo, hi);
}

EstimatorResult numeric_minimize(const LossFunction& loss, const DiscreteDensity& posterior, double lo,
                                 double hi) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("numeric_minimize: need a finite bracket lo < hi");
    const double width = hi - lo;
    // The bracket may touch the boundary of the open loss space; search strictly inside.
    const double inner_lo = lo + 1e-12 * width;
    const double inner_hi = hi - 1e-12 * width;
    if (!loss.space().contains(inner_lo) || !loss.space().contains(inner_hi))
        throw DomainError("numeric_minimize: bracket is not inside " + loss.space().describe());

    const auto risk = [&](double d) { return expected_loss(loss, posterior, d); };
    std::uintmax_t max_iter = 500;
    const auto [x_min, r_min] = boost::math::tools::brent_find_minima(
        risk, inner_lo, inner_hi, std::numeric_limits<double>::digits / 2, max_iter);

    const double edge_tol = 1e-5 * width;
    const auto toward_edge = [&](double edge, double dir) {
        const double step = 1e-7 * width;
        const double r1 = risk(edge + dir * 2.0 * step);
        const double r0 = risk(edge + dir * step);
        return r0 < r1;
    };
    if ((x_min - inner_lo < edge_tol && toward_edge(inner_lo, 1.0)) ||
        (inner_hi - x_min < edge_tol && toward_edge(inner_hi, -1.0))) {
        std::ostringstream os;
        os << "numeric_minimize: expected " << loss.name() << " keeps decreasing at the bracket edge near "
           << x_min;
        throw BracketError(os.str());
    }

    // Polish: root of the central-difference derivative around the Brent estimate.
    double x = x_min;
    const double room = std::min(x_min - inner_lo, inner_hi - x_min);
    const double h = 1e-5 * room;
    if (h > 0.0) {
        const auto slope = [&](double d) { return (risk(d + h) - risk(d - h)) / (2.0 * h); };
        double delta = 1e-6 * width;
        for (int attempt = 0; attempt < 6 && delta < 0.5 * room; ++attempt, delta *= 10.0) {
            const double l = x_min - delta;
            const double u = x_min + delta;
            const double sl = slope(l);
            const double su = slope(u);
            if (sl < 0.0 && su > 0.0) {
                std::uintmax_t it = 100;
                const auto bracket = boost::math::tools::toms748_solve(
                    slope, l, u, sl, su, boost::math::tools::eps_tolerance<double>(50), it);
                x = 0.5 * (bracket.first + bracket.second);
                break;
            }
        }
    }

    EstimatorResult res;
    res.point = x;
    res.achieved_risk = std::min(r_min, risk(x));
    if (risk(x) > r_min) res.point = x_min;
    res.method = EstimatorMethod::NumericMinimize;
    return res;
}

double required_sample_size_exact(double p_target, double p_placebo, double alpha, double beta) {
    if (!(0.0 < p_placebo && p_placebo < p_target && p_target < 1.0)) {
        std::ostringstream os;
        os << "required_sample_size: need 0 < p_placebo < p_target < 1, got p_placebo=" << p_placebo
           << ", p_target=" << p_target;
        throw DomainError(os.str());
    }
    if (!(0.0 < alpha && alpha < 0.5) || !(0.0 < beta && beta < 0.5))
        throw DomainError("required_sample_size: alpha and beta must lie in (0, 0.5)");
    const double za = normal_upper_quantile(alpha);
    const double zb = normal_upper_quantile(beta);
    const double pbar = 0.5 * (p_target + p_placebo);
    const double num = za * std::sqrt(2.0 * pbar * (1.0 - pbar)) +
                       zb * std::sqrt(p_target * (1.0 - p_target) + p_placebo * (1.0 - p_placebo));
    const double effect = p_target - p_placebo;
    return num * num / (effect * effect);
}

std::int64_t required_sample_size(double p_target, double p_placebo, double alpha, double beta) {
    return static_cast<std::int64_t>(
        std::ceil(required_sample_size_exact(p_target, p_placebo, alpha, beta)));
}

}  // namespace rsloss
