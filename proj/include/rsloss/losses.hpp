#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>

#include "rsloss/spaces.hpp"

namespace rsloss {

namespace loss_kind {
struct SquaredError {};
struct Precautionary {};
struct ScaleFamily {
    double k;
};
struct ScaleInvariantPrecautionary {};
struct NormalizedSquared {};
struct Stein {};
struct BrownLog {};
struct IntervalSquared {
    double a;
    double b;
};
struct IntervalBrownLogit {
    double a;
    double b;
};
struct MultivariateScaleFamily {
    double k;
    std::size_t m;
};
struct MultivariatePrecautionary {
    std::size_t m;
};
}  // namespace loss_kind

enum class Symmetry { Arithmetic, Scale, Interval, ComponentwiseScale, None };

/// A loss L(theta, d) together with the open space both arguments live in.
///
///   SquaredError                 (d - theta)^2                    real line
///   Precautionary                (d - theta)^2 / d                positive half-line
///   ScaleFamily(k)               (d/theta)^k + (theta/d)^k - 2    positive half-line
///   ScaleInvariantPrecautionary  (d - theta)^2 / (theta d)        positive half-line
///   NormalizedSquared            (d/theta - 1)^2                  positive half-line
///   Stein                        d/theta - 1 - log(d/theta)       positive half-line
///   BrownLog                     (log theta - log d)^2            positive half-line
///   IntervalSquared(a,b)         (d - theta)^2 / ((d-a)(b-d))     (a, b)
///   IntervalBrownLogit(a,b)      (logit d - logit theta)^2        (a, b)
///   MultivariateScaleFamily(k,m) sum_j [(d_j/t_j)^k + (t_j/d_j)^k] - 2m
///   MultivariatePrecautionary(m) sum_j (d_j - t_j)^2 / d_j
class LossFunction {
public:
    using Kind = std::variant<loss_kind::SquaredError, loss_kind::Precautionary,
                              loss_kind::ScaleFamily, loss_kind::ScaleInvariantPrecautionary,
                              loss_kind::NormalizedSquared, loss_kind::Stein, loss_kind::BrownLog,
                              loss_kind::IntervalSquared, loss_kind::IntervalBrownLogit,
                              loss_kind::MultivariateScaleFamily,
                              loss_kind::MultivariatePrecautionary>;

    static LossFunction squared_error();
    static LossFunction precautionary();
    static LossFunction scale_family(double k);
    static LossFunction scale_invariant_precautionary();
    static LossFunction normalized_squared();
    static LossFunction stein();
    static LossFunction brown_log();
    static LossFunction interval_squared(double a, double b);
    static LossFunction interval_brown_logit(double a, double b);
    static LossFunction multivariate_scale_family(double k, std::size_t m);
    static LossFunction multivariate_precautionary(std::size_t m);

    [[nodiscard]] const Kind& kind() const noexcept { return kind_; }
    [[nodiscard]] const ParameterSpace& space() const noexcept { return space_; }
    [[nodiscard]] Symmetry symmetry() const noexcept;
    /// True when the loss grows without bound as d approaches any boundary.
    [[nodiscard]] bool penalizes_boundary() const noexcept;
    [[nodiscard]] std::string name() const;

private:
    LossFunction(Kind kind, ParameterSpace space) : kind_(kind), space_(std::move(space)) {}
    Kind kind_;
    ParameterSpace space_;
};

/// Univariate evaluation. Throws DomainError when theta or d is not strictly
/// inside loss.space() and DimensionError for multivariate kinds.
double evaluate(const LossFunction& loss, double theta, double d);

/// Evaluation on points; univariate kinds accept length-1 spans.
double evaluate(const LossFunction& loss, std::span<const double> theta,
                std::span<const double> d);

}  // namespace rsloss
