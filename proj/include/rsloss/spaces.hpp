#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rsloss {

using Point = std::vector<double>;

struct RealLine {
    std::size_t dim = 1;
};

struct PositiveHalfLine {
    std::size_t dim = 1;
};

struct Interval {
    double a;
    double b;
};

struct Rectangle {
    std::vector<Interval> bounds;
};

struct UnitSimplex {
    std::size_t m;
};

/// Open parameter domain. Membership is strict everywhere: bounds are never
/// admissible values, and simplex points must sum to one within 1e-12.
class ParameterSpace {
public:
    using Variant = std::variant<RealLine, PositiveHalfLine, Interval, Rectangle, UnitSimplex>;

    static ParameterSpace real_line(std::size_t dim = 1);
    static ParameterSpace positive_half_line(std::size_t dim = 1);
    static ParameterSpace interval(double a, double b);
    static ParameterSpace rectangle(std::vector<Interval> bounds);
    static ParameterSpace unit_simplex(std::size_t m);

    [[nodiscard]] const Variant& variant() const noexcept { return variant_; }
    [[nodiscard]] std::size_t dimension() const noexcept;
    [[nodiscard]] bool is_univariate() const noexcept;

    [[nodiscard]] bool contains(double x) const;
    [[nodiscard]] bool contains(std::span<const double> x) const;

    /// Throws DomainError (or DimensionError) unless `x` lies strictly inside.
    void require(std::span<const double> x, const char* what) const;
    void require(double x, const char* what) const;

    [[nodiscard]] std::string describe() const;

private:
    explicit ParameterSpace(Variant v) : variant_(std::move(v)) {}
    Variant variant_;
};

/// log((x - a) / (b - x)); maps (a, b) onto the real line.
double generalized_logit(double x, double a, double b);

/// Inverse of generalized_logit.
double inverse_generalized_logit(double y, double a, double b);

/// The decision d2 that a symmetric loss on `space` penalizes exactly like d1:
/// reflection on the real line, theta^2 / d1 on the positive half-line and
/// reflection in logit coordinates on an interval.
double symmetric_counterpart(const ParameterSpace& space, double theta, double d1);

/// Distance associated with each multivariate space: Euclidean, log-ratio,
/// logit-difference (rectangles) or Aitchison (simplex).
double multivariate_distance(const ParameterSpace& space, std::span<const double> x,
                             std::span<const double> y);

}  // namespace rsloss
