#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>

#include "rsloss/moments.hpp"

namespace rsloss {

/// Gamma(shape, rate) prior, density proportional to t^(shape - 1) exp(-rate t).
struct GammaPrior {
    double shape = 1e-4;
    double rate = 1e-4;
};

/// Which Weibull quantity carries the second Gamma prior: the scale nu itself,
/// or the power nu^lambda (the scale of t^lambda).
enum class WeibullPriorOn { Scale, ScalePower };

struct PosteriorGridOptions {
    std::size_t nodes = 160;      ///< quadrature nodes per axis
    double half_width_sd = 12.0;  ///< support = mode +/- this many Laplace sds (log scale)
    int max_widenings = 6;        ///< retries with a 1.5x wider box on EdgeMassError
};

/// Gaussian approximation at the mode of a bivariate log-density in log
/// coordinates u = (log t1, log t2).
struct LaplaceFit {
    double mode1 = 0.0;
    double mode2 = 0.0;
    double sd1 = 0.0;
    double sd2 = 0.0;
    double correlation = 0.0;
};

/// Newton ascent with finite-difference derivatives; `log_density_u` must
/// already include the log-Jacobian. Throws NumericalError on failure.
LaplaceFit laplace_fit(const std::function<double(double, double)>& log_density_u, double start1,
                       double start2);

/// Posterior of Gamma(shape a1, scale a2) data under independent priors.
/// Support comes from a Laplace fit and spans mode +/- half_width_sd sds in log scale.
Grid2D gamma_shape_scale_posterior(std::span<const double> data, GammaPrior prior = {},
                                   const PosteriorGridOptions& options = {});

/// Posterior of Weibull(shape lambda, scale nu) data, density
/// (lambda/nu) (t/nu)^(lambda - 1) exp(-(t/nu)^lambda), under independent priors.
Grid2D weibull_posterior(std::span<const double> data, GammaPrior prior = {},
                         const PosteriorGridOptions& options = {},
                         WeibullPriorOn prior_on = WeibullPriorOn::Scale);

/// Marginals of a Grid2D; widens each cutoff edge of the box 1.5x around its
/// center whenever the edge-mass check fails, or (given k) whenever a moment of
/// order up to k has not decayed at a cutoff. At most options.max_widenings retries.
std::pair<DiscreteDensity, DiscreteDensity> adaptive_marginals(Grid2D grid,
                                                               const PosteriorGridOptions& options = {},
                                                               std::optional<double> k = std::nullopt);

}  // namespace rsloss
