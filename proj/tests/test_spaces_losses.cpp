#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rsloss/errors.hpp"
#include "rsloss/losses.hpp"
#include "rsloss/spaces.hpp"

using namespace rsloss;

namespace {

// Fixture-only loss: quadratic error normalized by theta (1 - theta). It stays
// finite as d approaches 0 or 1.
double theta_normalized_loss(double theta, double d) {
    return (d - theta) * (d - theta) / (theta * (1.0 - theta));
}

double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

double log_uniform(std::mt19937_64& g, double lo, double hi) {
    return std::exp(uniform(g, std::log(lo), std::log(hi)));
}

}  // namespace

TEST(ParameterSpace, StrictMembership) {
    auto unit = ParameterSpace::interval(0.0, 1.0);
    EXPECT_TRUE(unit.contains(0.5));
    EXPECT_FALSE(unit.contains(0.0));
    EXPECT_FALSE(unit.contains(1.0));

    auto pos = ParameterSpace::positive_half_line();
    EXPECT_TRUE(pos.contains(1e-300));
    EXPECT_FALSE(pos.contains(0.0));

    auto simplex = ParameterSpace::unit_simplex(3);
    EXPECT_TRUE(simplex.contains(std::vector<double>{0.2, 0.3, 0.5}));
    EXPECT_FALSE(simplex.contains(std::vector<double>{0.2, 0.3, 0.6}));
    EXPECT_FALSE(simplex.contains(std::vector<double>{0.0, 0.5, 0.5}));

    auto rect = ParameterSpace::rectangle({{0.0, 1.0}, {2.0, 3.0}});
    EXPECT_TRUE(rect.contains(std::vector<double>{0.5, 2.5}));
    EXPECT_FALSE(rect.contains(std::vector<double>{0.5, 3.0}));
}

TEST(ParameterSpace, InvalidConstruction) {
    EXPECT_THROW(ParameterSpace::interval(1.0, 1.0), DomainError);
    EXPECT_THROW(ParameterSpace::interval(0.0, INFINITY), DomainError);
    EXPECT_THROW(ParameterSpace::unit_simplex(1), DomainError);
}

TEST(GeneralizedLogit, Examples) {
    EXPECT_DOUBLE_EQ(generalized_logit(0.5, 0.0, 1.0), 0.0);
    EXPECT_NEAR(generalized_logit(0.75, 0.0, 1.0), std::log(3.0), 1e-15);
    EXPECT_NEAR(generalized_logit(1.0, 0.0, 4.0), std::log(1.0 / 3.0), 1e-15);
    EXPECT_THROW(generalized_logit(0.0, 0.0, 1.0), DomainError);
    EXPECT_THROW(generalized_logit(1.0, 0.0, 1.0), DomainError);
}

TEST(GeneralizedLogit, InverseAndMonotone) {
    double prev = -INFINITY;
    for (double x = -2.9; x < 4.9; x += 0.1) {
        double y = generalized_logit(x, -3.0, 5.0);
        EXPECT_GT(y, prev);
        prev = y;
        EXPECT_NEAR(inverse_generalized_logit(y, -3.0, 5.0), x, 1e-12);
    }
}

TEST(Evaluate, Examples) {
    EXPECT_DOUBLE_EQ(evaluate(LossFunction::scale_family(1.0), 2.0, 2.0), 0.0);
    EXPECT_NEAR(evaluate(LossFunction::interval_squared(0.0, 1.0), 0.5, 0.25), 1.0 / 3.0, 1e-15);
    auto l1 = LossFunction::scale_family(1.0);
    EXPECT_DOUBLE_EQ(evaluate(l1, 1.0, 4.0), 2.25);
    EXPECT_DOUBLE_EQ(evaluate(l1, 1.0, 0.25), 2.25);
    std::vector<double> theta{1.0, 2.0}, d{2.0, 1.0};
    EXPECT_DOUBLE_EQ(evaluate(LossFunction::multivariate_precautionary(2), theta, d), 1.5);
}

TEST(Evaluate, MultivariateScaleFamilyIsAdditive) {
    std::vector<double> theta{1.0, 2.0, 0.5}, d{3.0, 1.5, 0.7};
    auto mv = LossFunction::multivariate_scale_family(2.0, 3);
    auto uv = LossFunction::scale_family(2.0);
    double sum = 0.0;
    for (std::size_t j = 0; j < 3; ++j) sum += evaluate(uv, theta[j], d[j]);
    EXPECT_NEAR(evaluate(mv, theta, d), sum, 1e-13);
    EXPECT_GE(evaluate(mv, theta, d), 0.0);
    EXPECT_DOUBLE_EQ(evaluate(mv, theta, theta), 0.0);
}

TEST(Evaluate, DomainAndDimensionErrors) {
    EXPECT_THROW(evaluate(LossFunction::precautionary(), 1.0, 0.0), DomainError);
    EXPECT_THROW(evaluate(LossFunction::scale_family(1.0), -1.0, 1.0), DomainError);
    EXPECT_THROW(evaluate(LossFunction::interval_squared(0.0, 1.0), 0.5, 1.0), DomainError);
    EXPECT_THROW(evaluate(LossFunction::interval_brown_logit(0.0, 1.0), 0.0, 0.5), DomainError);
    std::vector<double> two{1.0, 2.0}, three{1.0, 2.0, 3.0};
    EXPECT_THROW(evaluate(LossFunction::multivariate_precautionary(2), two, three), DimensionError);
    EXPECT_THROW(evaluate(LossFunction::multivariate_precautionary(2), 1.0, 1.0), DimensionError);
    EXPECT_THROW(LossFunction::scale_family(0.0), DomainError);
}

TEST(Evaluate, VanishesOnDiagonalAndIsNonNegative) {
    std::mt19937_64 g(11);
    std::vector<LossFunction> positive{
        LossFunction::squared_error(),       LossFunction::precautionary(),
        LossFunction::scale_family(0.5),     LossFunction::scale_family(3.0),
        LossFunction::scale_invariant_precautionary(), LossFunction::normalized_squared(),
        LossFunction::stein(),               LossFunction::brown_log()};
    for (const auto& loss : positive) {
        for (int i = 0; i < 500; ++i) {
            double t = log_uniform(g, 1e-3, 1e3), d = log_uniform(g, 1e-3, 1e3);
            EXPECT_EQ(evaluate(loss, t, t), 0.0) << loss.name();
            EXPECT_GE(evaluate(loss, t, d), 0.0) << loss.name();
        }
    }
    for (const auto& loss : {LossFunction::interval_squared(-1.0, 2.0),
                             LossFunction::interval_brown_logit(-1.0, 2.0)}) {
        for (int i = 0; i < 500; ++i) {
            double t = uniform(g, -0.999, 1.999), d = uniform(g, -0.999, 1.999);
            EXPECT_EQ(evaluate(loss, t, t), 0.0);
            EXPECT_GE(evaluate(loss, t, d), 0.0);
        }
    }
}

TEST(Symmetry, ScaleInvariance) {
    std::mt19937_64 g(3);
    for (const auto& loss : {LossFunction::scale_family(1.0), LossFunction::scale_family(2.5),
                             LossFunction::scale_invariant_precautionary(),
                             LossFunction::normalized_squared(), LossFunction::stein(),
                             LossFunction::brown_log()}) {
        for (int i = 0; i < 2000; ++i) {
            double t = log_uniform(g, 1e-2, 1e2), d = log_uniform(g, 1e-2, 1e2);
            double c = log_uniform(g, 1e-3, 1e3);
            double base = evaluate(loss, t, d);
            EXPECT_NEAR(evaluate(loss, c * t, c * d), base, 1e-12 * std::max(1.0, base))
                << loss.name();
        }
    }
}

TEST(Symmetry, ScaleSymmetryAndPrecautionaryFailure) {
    std::mt19937_64 g(5);
    auto pos = ParameterSpace::positive_half_line();
    for (const auto& loss : {LossFunction::scale_family(1.0), LossFunction::scale_family(4.0),
                             LossFunction::scale_invariant_precautionary(),
                             LossFunction::brown_log()}) {
        EXPECT_EQ(loss.symmetry(), Symmetry::Scale);
        for (int i = 0; i < 2000; ++i) {
            double t = log_uniform(g, 1e-2, 1e2), d = log_uniform(g, 1e-2, 1e2);
            double base = evaluate(loss, t, d);
            double mirrored = evaluate(loss, t, symmetric_counterpart(pos, t, d));
            EXPECT_NEAR(mirrored, base, 1e-12 * std::max(1.0, base)) << loss.name();
        }
    }
    auto prec = LossFunction::precautionary();
    bool broken_invariance = false;
    for (int i = 0; i < 100; ++i) {
        double t = log_uniform(g, 1e-2, 1e2), d = log_uniform(g, 1e-2, 1e2);
        double base = evaluate(prec, t, d);
        if (std::abs(evaluate(prec, 3.0 * t, 3.0 * d) - base) > 1e-6 * base) broken_invariance = true;
        // (d - t)^2 / d is unchanged by d -> t^2 / d; only invariance fails.
        EXPECT_NEAR(evaluate(prec, t, t * t / d), base, 1e-12 * std::max(1.0, base));
    }
    EXPECT_TRUE(broken_invariance);
}

TEST(Symmetry, IntervalCounterpart) {
    std::mt19937_64 g(7);
    const double a = -0.5, b = 3.0;
    auto space = ParameterSpace::interval(a, b);
    for (const auto& loss : {LossFunction::interval_squared(a, b),
                             LossFunction::interval_brown_logit(a, b)}) {
        EXPECT_EQ(loss.symmetry(), Symmetry::Interval);
        for (int i = 0; i < 2000; ++i) {
            double t = uniform(g, a + 0.01, b - 0.01), d = uniform(g, a + 0.01, b - 0.01);
            double d2 = symmetric_counterpart(space, t, d);
            ASSERT_TRUE(space.contains(d2));
            double base = evaluate(loss, t, d);
            EXPECT_NEAR(evaluate(loss, t, d2), base, 1e-10 * std::max(1.0, base));
        }
    }
}

TEST(Symmetry, CounterpartExamples) {
    EXPECT_DOUBLE_EQ(symmetric_counterpart(ParameterSpace::real_line(), 0.0, 3.0), -3.0);
    EXPECT_DOUBLE_EQ(symmetric_counterpart(ParameterSpace::positive_half_line(), 10.0, 100.0), 1.0);
    EXPECT_NEAR(symmetric_counterpart(ParameterSpace::interval(0.0, 1.0), 0.5, 0.25), 0.75, 1e-15);
    EXPECT_THROW(symmetric_counterpart(ParameterSpace::interval(0.0, 1.0), 0.5, 1.5), DomainError);
}

TEST(Symmetry, IntervalCounterpartSatisfiesClosedForm) {
    // (theta - a) / (b - theta) = sqrt(p / q) for a counterpart pair d1, d2.
    const double a = 0.0, b = 2.0;
    auto space = ParameterSpace::interval(a, b);
    for (double t : {0.3, 1.0, 1.7}) {
        for (double d1 : {0.1, 0.8, 1.9}) {
            double d2 = symmetric_counterpart(space, t, d1);
            double p = (d1 - a) * (d2 - a), q = (b - d1) * (b - d2);
            double t_closed = (a * std::sqrt(q) + b * std::sqrt(p)) / (std::sqrt(p) + std::sqrt(q));
            EXPECT_NEAR(t_closed, t, 1e-12);
        }
    }
}

TEST(Symmetry, CounterpartLimits) {
    std::mt19937_64 g(13);
    auto wide = ParameterSpace::interval(-1e6, 1e6);
    auto half = ParameterSpace::interval(1e-9, 1e9);
    for (int i = 0; i < 500; ++i) {
        double t = uniform(g, 0.1, 10.0), d = uniform(g, 0.1, 10.0);
        EXPECT_NEAR(symmetric_counterpart(wide, t, d), 2.0 * t - d, 1e-4);
        double ratio = t * t / d;
        EXPECT_NEAR(symmetric_counterpart(half, t, d), ratio, 1e-4 * ratio);
    }
}

TEST(Penalization, NearBoundsExceedsMillion) {
    const double a = 0.0, b = 1.0, eps = 1e-10 * (b - a);
    auto liq = LossFunction::interval_squared(a, b);
    auto lib = LossFunction::interval_brown_logit(a, b);
    EXPECT_TRUE(liq.penalizes_boundary());
    for (double t : {0.1, 0.5, 0.9}) {
        EXPECT_GT(evaluate(liq, t, a + eps), 1e6);
        EXPECT_GT(evaluate(liq, t, b - eps), 1e6);
        double prev = 0.0;
        for (double d = 0.99; d > a + eps; d = a + (d - a) * 0.5) {
            if (d <= t) {
                double v = evaluate(liq, t, d);
                EXPECT_GT(v, prev);
                prev = v;
            }
        }
        EXPECT_GT(evaluate(lib, t, a + 1e-300), evaluate(lib, t, a + 1e-10));
    }
    auto l1 = LossFunction::scale_family(1.0);
    EXPECT_TRUE(l1.penalizes_boundary());
    EXPECT_GT(evaluate(l1, 1.0, 1e-10), 1e6);
    EXPECT_GT(evaluate(l1, 1.0, 1e10), 1e6);
    EXPECT_FALSE(LossFunction::normalized_squared().penalizes_boundary());
}

TEST(Penalization, FlagMatchesBehaviourOnHalfLine) {
    for (const auto& loss : {LossFunction::precautionary(), LossFunction::scale_family(0.5),
                             LossFunction::scale_invariant_precautionary(), LossFunction::normalized_squared(),
                             LossFunction::stein(), LossFunction::brown_log()}) {
        bool unbounded = evaluate(loss, 1.0, 1e-100) > 100.0 && evaluate(loss, 1.0, 1e100) > 100.0;
        EXPECT_EQ(loss.penalizes_boundary(), unbounded) << loss.name();
    }
}

TEST(Penalization, ThetaNormalizedLossStaysBounded) {
    for (double t : {0.1, 0.5, 0.9}) {
        EXPECT_LT(theta_normalized_loss(t, 1e-12), 1.0 / (1.0 - t) + 1e-9);
        EXPECT_LT(theta_normalized_loss(t, 1.0 - 1e-12), 1.0 / t + 1e-9);
        EXPECT_LT(theta_normalized_loss(t, 1e-12), evaluate(LossFunction::interval_squared(0.0, 1.0), t, 1e-12));
    }
}

TEST(Convexity, ScaleFamilyAndIntervalSquared) {
    std::mt19937_64 g(17);
    for (const auto& loss : {LossFunction::scale_family(1.0), LossFunction::scale_family(1.5),
                             LossFunction::scale_family(3.0)}) {
        for (int i = 0; i < 3000; ++i) {
            double t = log_uniform(g, 0.05, 20.0), d1 = log_uniform(g, 0.05, 20.0),
                   d2 = log_uniform(g, 0.05, 20.0), w = uniform(g, 0.0, 1.0);
            double lhs = evaluate(loss, t, w * d1 + (1 - w) * d2);
            double rhs = w * evaluate(loss, t, d1) + (1 - w) * evaluate(loss, t, d2);
            EXPECT_LE(lhs, rhs + 1e-10 * std::max(1.0, rhs));
        }
    }
    auto liq = LossFunction::interval_squared(-1.0, 1.0);
    for (int i = 0; i < 3000; ++i) {
        double t = uniform(g, -0.99, 0.99), d1 = uniform(g, -0.99, 0.99), d2 = uniform(g, -0.99, 0.99),
               w = uniform(g, 0.0, 1.0);
        double lhs = evaluate(liq, t, w * d1 + (1 - w) * d2);
        double rhs = w * evaluate(liq, t, d1) + (1 - w) * evaluate(liq, t, d2);
        EXPECT_LE(lhs, rhs + 1e-10 * std::max(1.0, rhs));
    }
}

TEST(Convexity, BrownLogFailsSweep) {
    auto brown = LossFunction::brown_log();
    int violations = 0;
    for (double d1 = 0.5; d1 < 50.0; d1 *= 1.3) {
        for (double d2 = d1 * 1.3; d2 < 50.0; d2 *= 1.3) {
            double lhs = evaluate(brown, 1.0, 0.5 * (d1 + d2));
            double rhs = 0.5 * (evaluate(brown, 1.0, d1) + evaluate(brown, 1.0, d2));
            if (lhs > rhs + 1e-10) ++violations;
        }
    }
    EXPECT_GT(violations, 0);
}

TEST(MultivariateDistance, Examples) {
    auto rect = ParameterSpace::rectangle({{0.0, 1.0}});
    std::vector<double> x{0.5}, y{0.75};
    EXPECT_NEAR(multivariate_distance(rect, x, y), std::log(3.0), 1e-15);

    auto pos2 = ParameterSpace::positive_half_line(2);
    std::vector<double> ones{1.0, 1.0}, es{std::exp(1.0), std::exp(1.0)};
    EXPECT_NEAR(multivariate_distance(pos2, ones, es), std::sqrt(2.0), 1e-15);

    auto s2 = ParameterSpace::unit_simplex(2);
    std::vector<double> half{0.5, 0.5};
    EXPECT_EQ(multivariate_distance(s2, half, half), 0.0);

    auto r2 = ParameterSpace::real_line(2);
    std::vector<double> o{0.0, 0.0}, p{3.0, 4.0};
    EXPECT_DOUBLE_EQ(multivariate_distance(r2, o, p), 5.0);

    std::vector<double> three{1.0, 2.0, 3.0};
    EXPECT_THROW(multivariate_distance(pos2, ones, three), DimensionError);
}

TEST(MultivariateDistance, AitchisonPerturbationInvariance) {
    std::mt19937_64 g(19);
    auto s4 = ParameterSpace::unit_simplex(4);
    auto close = [](std::vector<double> v) {
        double s = 0.0;
        for (double e : v) s += e;
        for (double& e : v) e /= s;
        return v;
    };
    for (int i = 0; i < 200; ++i) {
        std::vector<double> x(4), y(4), c(4);
        for (int j = 0; j < 4; ++j) {
            x[j] = uniform(g, 0.05, 1.0);
            y[j] = uniform(g, 0.05, 1.0);
            c[j] = log_uniform(g, 0.1, 10.0);
        }
        x = close(x);
        y = close(y);
        double base = multivariate_distance(s4, x, y);
        std::vector<double> xp(4), yp(4);
        for (int j = 0; j < 4; ++j) {
            xp[j] = x[j] * c[j];
            yp[j] = y[j] * c[j];
        }
        EXPECT_NEAR(multivariate_distance(s4, close(xp), close(yp)), base, 1e-12 * std::max(1.0, base));
        // Common rescaling of each composition leaves it unchanged after closure.
        std::vector<double> xs(4);
        for (int j = 0; j < 4; ++j) xs[j] = 7.0 * x[j];
        EXPECT_NEAR(multivariate_distance(s4, close(xs), y), base, 1e-12 * std::max(1.0, base));
    }
}
