#include "rsloss/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "overloaded.hpp"
#include "rsloss/errors.hpp"

namespace rsloss {

namespace {

using detail::overloaded;

void check_interval(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        std::ostringstream os;
        os << "interval bounds must be finite with a < b, got (" << a << ", " << b << ")";
        throw DomainError(os.str());
    }
}

bool inside(double x, double a, double b) { return a < x && x < b; }

}  // namespace

ParameterSpace ParameterSpace::real_line(std::size_t dim) {
    if (dim == 0) throw DimensionError("real line dimension must be positive");
    return ParameterSpace(RealLine{dim});
}

ParameterSpace ParameterSpace::positive_half_line(std::size_t dim) {
    if (dim == 0) throw DimensionError("half-line dimension must be positive");
    return ParameterSpace(PositiveHalfLine{dim});
}

ParameterSpace ParameterSpace::interval(double a, double b) {
    check_interval(a, b);
    return ParameterSpace(Interval{a, b});
}

ParameterSpace ParameterSpace::rectangle(std::vector<Interval> bounds) {
    if (bounds.empty()) throw DimensionError("rectangle needs at least one component");
    for (const auto& iv : bounds) check_interval(iv.a, iv.b);
    return ParameterSpace(Rectangle{std::move(bounds)});
}

ParameterSpace ParameterSpace::unit_simplex(std::size_t m) {
    if (m < 2) throw DomainError("unit simplex needs m >= 2 components");
    return ParameterSpace(UnitSimplex{m});
}

std::size_t ParameterSpace::dimension() const noexcept {
    return std::visit(overloaded{[](const RealLine& s) { return s.dim; },
                                 [](const PositiveHalfLine& s) { return s.dim; },
                                 [](const Interval&) { return std::size_t{1}; },
                                 [](const Rectangle& s) { return s.bounds.size(); },
                                 [](const UnitSimplex& s) { return s.m; }},
                      variant_);
}

bool ParameterSpace::is_univariate() const noexcept {
    return !std::holds_alternative<Rectangle>(variant_) &&
           !std::holds_alternative<UnitSimplex>(variant_) && dimension() == 1;
}

bool ParameterSpace::contains(double x) const {
    const double p[1] = {x};
    return contains(std::span<const double>(p, 1));
}

bool ParameterSpace::contains(std::span<const double> x) const {
    if (x.size() != dimension()) return false;
    return std::visit(
        overloaded{
            [&](const RealLine&) {
                return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
            },
            [&](const PositiveHalfLine&) {
                return std::all_of(x.begin(), x.end(),
                                   [](double v) { return v > 0.0 && std::isfinite(v); });
            },
            [&](const Interval& iv) { return inside(x[0], iv.a, iv.b); },
            [&](const Rectangle& r) {
                for (std::size_t j = 0; j < x.size(); ++j)
                    if (!inside(x[j], r.bounds[j].a, r.bounds[j].b)) return false;
                return true;
            },
            [&](const UnitSimplex&) {
                double sum = 0.0;
                for (double v : x) {
                    if (!(v > 0.0)) return false;
                    sum += v;
                }
                return std::abs(sum - 1.0) <= 1e-12;
            }},
        variant_);
}

void ParameterSpace::require(std::span<const double> x, const char* what) const {
    if (x.size() != dimension()) {
        std::ostringstream os;
        os << what << ": expected dimension " << dimension() << ", got " << x.size();
        throw DimensionError(os.str());
    }
    if (!contains(x)) {
        std::ostringstream os;
        os << what << " (";
        for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
        os << ") is not strictly inside " << describe();
        throw DomainError(os.str());
    }
}

void ParameterSpace::require(double x, const char* what) const {
    const double p[1] = {x};
    require(std::span<const double>(p, 1), what);
}

std::string ParameterSpace::describe() const {
    std::ostringstream os;
    std::visit(overloaded{[&](const RealLine& s) { os << "R^" << s.dim; },
                          [&](const PositiveHalfLine& s) { os << "R+^" << s.dim; },
                          [&](const Interval& iv) { os << "(" << iv.a << ", " << iv.b << ")"; },
                          [&](const Rectangle& r) {
                              for (std::size_t j = 0; j < r.bounds.size(); ++j)
                                  os << (j ? " x " : "") << "(" << r.bounds[j].a << ", "
                                     << r.bounds[j].b << ")";
                          },
                          [&](const UnitSimplex& s) { os << "simplex(" << s.m << ")"; }},
               variant_);
    return os.str();
}

double generalized_logit(double x, double a, double b) {
    check_interval(a, b);
    if (!inside(x, a, b)) {
        std::ostringstream os;
        os << "generalized_logit: " << x << " not inside (" << a << ", " << b << ")";
        throw DomainError(os.str());
    }
    // Near the middle the ratio form loses digits to log(1 + tiny).
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double z = (x - mid) / half;
    if (std::abs(z) < 0.5) return 2.0 * std::atanh(z);
    return std::log((x - a) / (b - x));
}

double inverse_generalized_logit(double y, double a, double b) {
    check_interval(a, b);
    if (std::isnan(y)) throw NumericalError("inverse_generalized_logit: NaN argument");
    if (std::abs(y) <= 1.0) return 0.5 * (a + b) + 0.5 * (b - a) * std::tanh(0.5 * y);
    if (y < 0.0) {
        const double e = std::exp(y);
        return a + (b - a) * e / (1.0 + e);
    }
    return b - (b - a) / (1.0 + std::exp(y));
}

double symmetric_counterpart(const ParameterSpace& space, double theta, double d1) {
    if (!space.is_univariate())
        throw DimensionError("symmetric_counterpart is defined for univariate spaces only");
    space.require(theta, "theta");
    space.require(d1, "d1");
    return std::visit(
        overloaded{[&](const RealLine&) { return 2.0 * theta - d1; },
                   [&](const PositiveHalfLine&) { return theta * (theta / d1); },
                   [&](const Interval& iv) {
                       const double y = 2.0 * generalized_logit(theta, iv.a, iv.b) -
                                        generalized_logit(d1, iv.a, iv.b);
                       return inverse_generalized_logit(y, iv.a, iv.b);
                   },
                   [&](const auto&) -> double {
                       throw DimensionError("symmetric_counterpart: unsupported space");
                   }},
        space.variant());
}

double multivariate_distance(const ParameterSpace& space, std::span<const double> x,
                             std::span<const double> y) {
    space.require(x, "x");
    space.require(y, "y");
    const std::size_t m = x.size();
    double acc = 0.0;
    std::visit(overloaded{[&](const RealLine&) {
                              for (std::size_t j = 0; j < m; ++j) acc += (x[j] - y[j]) * (x[j] - y[j]);
                          },
                          [&](const PositiveHalfLine&) {
                              for (std::size_t j = 0; j < m; ++j) {
                                  const double l = std::log(x[j] / y[j]);
                                  acc += l * l;
                              }
                          },
                          [&](const Interval& iv) {
                              const double l = generalized_logit(x[0], iv.a, iv.b) -
                                               generalized_logit(y[0], iv.a, iv.b);
                              acc = l * l;
                          },
                          [&](const Rectangle& r) {
                              for (std::size_t j = 0; j < m; ++j) {
                                  const auto& iv = r.bounds[j];
                                  const double l = generalized_logit(x[j], iv.a, iv.b) -
                                                   generalized_logit(y[j], iv.a, iv.b);
                                  acc += l * l;
                              }
                          },
                          [&](const UnitSimplex&) {
                              for (std::size_t i = 0; i < m; ++i)
                                  for (std::size_t j = i + 1; j < m; ++j) {
                                      const double l =
                                          std::log(x[i] / x[j]) - std::log(y[i] / y[j]);
                                      acc += l * l;
                                  }
                              acc /= static_cast<double>(m);
                          }},
               space.variant());
    return std::sqrt(acc);
}

}  // namespace rsloss
