#pragma once

#include <cstdint>
#include <optional>

#include "rsloss/losses.hpp"
#include "rsloss/moments.hpp"

namespace rsloss {

enum class EstimatorMethod { ClosedForm, ClosedFormLimit, NumericMinimize };

struct EstimatorResult {
    double point = 0.0;
    /// Minimized posterior expected loss (scale variance for scale-symmetric losses).
    std::optional<double> achieved_risk;
    EstimatorMethod method = EstimatorMethod::ClosedForm;
};

/// Bayes estimator under the scale family L_k: (E[theta^k] / E[theta^-k])^(1/2k),
/// with the scale variance 2 sqrt(E[theta^k] E[theta^-k]) - 2 as achieved risk.
EstimatorResult scale_mean(const MomentSet& m);

/// Bayes estimator under the precautionary loss: sqrt(E[theta^2]) >= E[theta],
/// achieved risk 2 (sqrt(E[theta^2]) - E[theta]).
EstimatorResult precautionary_estimate(const MomentSet& m);

/// Whether interval_estimate insists that the moments come from a posterior on (a, b).
enum class IntervalSupport {
    Enforce,        ///< DomainError unless m1 in (a, b) and m2 is consistent with that support
    PluginMoments,  ///< accept any moments whose minimizer lands inside (a, b)
};

/// Bayes estimator under the interval squared loss (d - theta)^2 / ((d - a)(b - d)).
/// Returns (a + b) / 2 when |a + b - 2 m1| < 1e-9 (b - a).
EstimatorResult interval_estimate(const MomentSet& m, double a, double b,
                                  IntervalSupport support = IntervalSupport::Enforce);

/// Interval estimator on (0, 1) under a Beta(x + 1, n - x + 1) posterior:
/// 1 / (1 + sqrt((n - x + 1)(n - x + 2) / ((x + 1)(x + 2)))).
double probability_estimate(std::int64_t x, std::int64_t n);

/// Same expression with a real-valued success count.
double probability_estimate_real(double x, double n);

/// d/dx of probability_estimate_real.
double probability_estimate_derivative(double x, double n);

/// Posterior expected loss E[L(theta, d)] over a discretized posterior.
double expected_loss(const LossFunction& loss, const DiscreteDensity& posterior, double d);

/// Brent minimization of d -> E[L(theta, d)] on (lo, hi), polished by a root
/// search on the central-difference derivative.
EstimatorResult numeric_minimize(const LossFunction& loss, const PosteriorModel& posterior,
                                 double lo, double hi);
EstimatorResult numeric_minimize(const LossFunction& loss, const DiscreteDensity& posterior,
                                 double lo, double hi);

/// Per-arm sample size for a one-sided two-proportion test:
/// ceil((z_a sqrt(2 pbar (1 - pbar)) + z_b sqrt(pt (1 - pt) + pp (1 - pp)))^2 / (pt - pp)^2).
std::int64_t required_sample_size(double p_target, double p_placebo, double alpha, double beta);

/// Unrounded version of required_sample_size.
double required_sample_size_exact(double p_target, double p_placebo, double alpha, double beta);

}  // namespace rsloss
