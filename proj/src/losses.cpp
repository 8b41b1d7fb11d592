#include "rsloss/losses.hpp"

#include <cmath>
#include <sstream>

#include "overloaded.hpp"
#include "rsloss/errors.hpp"

namespace rsloss {

using detail::overloaded;

namespace {

void check_k(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) {
        std::ostringstream os;
        os << "scale-family order k must be positive and finite, got " << k;
        throw DomainError(os.str());
    }
}

double scale_family_term(double theta, double d, double k) {
    const double r = d / theta;
    if (k == 1.0) return (d - theta) * (d - theta) / (theta * d);
    // r^k + r^-k - 2 = 2 (cosh(k log r) - 1) = 4 sinh^2(k log r / 2); no cancellation near r = 1.
    const double s = std::sinh(0.5 * k * std::log(r));
    return 4.0 * s * s;
}

}  // namespace

LossFunction LossFunction::squared_error() {
    return {loss_kind::SquaredError{}, ParameterSpace::real_line()};
}
LossFunction LossFunction::precautionary() {
    return {loss_kind::Precautionary{}, ParameterSpace::positive_half_line()};
}
LossFunction LossFunction::scale_family(double k) {
    check_k(k);
    return {loss_kind::ScaleFamily{k}, ParameterSpace::positive_half_line()};
}
LossFunction LossFunction::scale_invariant_precautionary() {
    return {loss_kind::ScaleInvariantPrecautionary{}, ParameterSpace::positive_half_line()};
}
LossFunction LossFunction::normalized_squared() {
    return {loss_kind::NormalizedSquared{}, ParameterSpace::positive_half_line()};
}
LossFunction LossFunction::stein() {
    return {loss_kind::Stein{}, ParameterSpace::positive_half_line()};
}
LossFunction LossFunction::brown_log() {
    return {loss_kind::BrownLog{}, ParameterSpace::positive_half_line()};
}
LossFunction LossFunction::interval_squared(double a, double b) {
    return {loss_kind::IntervalSquared{a, b}, ParameterSpace::interval(a, b)};
}
LossFunction LossFunction::interval_brown_logit(double a, double b) {
    return {loss_kind::IntervalBrownLogit{a, b}, ParameterSpace::interval(a, b)};
}
LossFunction LossFunction::multivariate_scale_family(double k, std::size_t m) {
    check_k(k);
    return {loss_kind::MultivariateScaleFamily{k, m}, ParameterSpace::positive_half_line(m)};
}
LossFunction LossFunction::multivariate_precautionary(std::size_t m) {
    return {loss_kind::MultivariatePrecautionary{m}, ParameterSpace::positive_half_line(m)};
}

Symmetry LossFunction::symmetry() const noexcept {
    return std::visit(
        overloaded{[](const loss_kind::SquaredError&) { return Symmetry::Arithmetic; },
                   [](const loss_kind::ScaleFamily&) { return Symmetry::Scale; },
                   [](const loss_kind::ScaleInvariantPrecautionary&) { return Symmetry::Scale; },
                   [](const loss_kind::BrownLog&) { return Symmetry::Scale; },
                   [](const loss_kind::IntervalSquared&) { return Symmetry::Interval; },
                   [](const loss_kind::IntervalBrownLogit&) { return Symmetry::Interval; },
                   [](const loss_kind::MultivariateScaleFamily&) {
                       return Symmetry::ComponentwiseScale;
                   },
                   [](const auto&) { return Symmetry::None; }},
        kind_);
}

bool LossFunction::penalizes_boundary() const noexcept {
    // Only (d - theta)^2 / theta^2 stays bounded as d -> 0.
    return std::visit(overloaded{[](const loss_kind::NormalizedSquared&) { return false; },
                                 [](const auto&) { return true; }},
                      kind_);
}

std::string LossFunction::name() const {
    std::ostringstream os;
    std::visit(
        overloaded{[&](const loss_kind::SquaredError&) { os << "squared_error"; },
                   [&](const loss_kind::Precautionary&) { os << "precautionary"; },
                   [&](const loss_kind::ScaleFamily& s) { os << "scale_family(k=" << s.k << ")"; },
                   [&](const loss_kind::ScaleInvariantPrecautionary&) {
                       os << "scale_invariant_precautionary";
                   },
                   [&](const loss_kind::NormalizedSquared&) { os << "normalized_squared"; },
                   [&](const loss_kind::Stein&) { os << "stein"; },
                   [&](const loss_kind::BrownLog&) { os << "brown_log"; },
                   [&](const loss_kind::IntervalSquared& s) {
                       os << "interval_squared(" << s.a << ", " << s.b << ")";
                   },
                   [&](const loss_kind::IntervalBrownLogit& s) {
                       os << "interval_brown_logit(" << s.a << ", " << s.b << ")";
                   },
                   [&](const loss_kind::MultivariateScaleFamily& s) {
                       os << "multivariate_scale_family(k=" << s.k << ", m=" << s.m << ")";
                   },
                   [&](const loss_kind::MultivariatePrecautionary& s) {
                       os << "multivariate_precautionary(m=" << s.m << ")";
                   }},
        kind_);
    return os.str();
}

double evaluate(const LossFunction& loss, double theta, double d) {
    if (!loss.space().is_univariate())
        throw DimensionError(loss.name() + " is multivariate; pass points");
    const double t[1] = {theta};
    const double x[1] = {d};
    return evaluate(loss, std::span<const double>(t, 1), std::span<const double>(x, 1));
}

double evaluate(const LossFunction& loss, std::span<const double> theta,
                std::span<const double> d) {
    loss.space().require(theta, "theta");
    loss.space().require(d, "d");
    const double t = theta[0];
    const double x = d[0];
    return std::visit(
        overloaded{
            [&](const loss_kind::SquaredError&) { return (x - t) * (x - t); },
            [&](const loss_kind::Precautionary&) { return (x - t) * (x - t) / x; },
            [&](const loss_kind::ScaleFamily& s) { return scale_family_term(t, x, s.k); },
            [&](const loss_kind::ScaleInvariantPrecautionary&) {
                return (x - t) * (x - t) / (t * x);
            },
            [&](const loss_kind::NormalizedSquared&) {
                const double r = x / t - 1.0;
                return r * r;
            },
            [&](const loss_kind::Stein&) {
                const double r = x / t;
                return (r - 1.0) - std::log(r);
            },
            [&](const loss_kind::BrownLog&) {
                const double l = std::log(t / x);
                return l * l;
            },
            [&](const loss_kind::IntervalSquared& s) {
                return (x - t) * (x - t) / ((x - s.a) * (s.b - x));
            },
            [&](const loss_kind::IntervalBrownLogit& s) {
                const double l = generalized_logit(x, s.a, s.b) - generalized_logit(t, s.a, s.b);
                return l * l;
            },
            [&](const loss_kind::MultivariateScaleFamily& s) {
                // Sum of univariate scale-family terms; each term already carries its -2.
                double acc = 0.0;
                for (std::size_t j = 0; j < theta.size(); ++j)
                    acc += scale_family_term(theta[j], d[j], s.k);
                return acc;
            },
            [&](const loss_kind::MultivariatePrecautionary&) {
                double acc = 0.0;
                for (std::size_t j = 0; j < theta.size(); ++j)
                    acc += (d[j] - theta[j]) * (d[j] - theta[j]) / d[j];
                return acc;
            }},
        loss.kind());
}

}  // namespace rsloss
