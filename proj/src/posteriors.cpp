#include "rsloss/posteriors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "rsloss/errors.hpp"

namespace rsloss {

namespace {

struct Sufficient {
    double n = 0.0;
    double sum = 0.0;
    double sum_log = 0.0;
};

Sufficient sufficient(std::span<const double> data, const char* who) {
    if (data.size() < 2) throw DomainError(std::string(who) + ": need at least 2 observations");
    Sufficient s;
    for (double x : data) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            std::ostringstream os;
            os << who << ": observations must be positive and finite, got " << x;
            throw DomainError(os.str());
        }
        s.sum += x;
        s.sum_log += std::log(x);
    }
    s.n = static_cast<double>(data.size());
    return s;
}

void check_prior(const GammaPrior& prior) {
    if (!(prior.shape > 0.0) || !(prior.rate > 0.0))
        throw DomainError("prior shape and rate must be positive");
}

double log_prior(const GammaPrior& p, double t) { return (p.shape - 1.0) * std::log(t) - p.rate * t; }

Axis log_axis(double mode_u, double sd_u, const PosteriorGridOptions& opt) {
    Axis a;
    a.lo = std::exp(mode_u - opt.half_width_sd * sd_u);
    a.hi = std::exp(mode_u + opt.half_width_sd * sd_u);
    a.lo_edge = Edge::Cutoff;
    a.hi_edge = Edge::Cutoff;
    a.scale = AxisScale::Log;
    a.nodes = opt.nodes;
    return a;
}

double log_sum_pow(std::span<const double> log_t, double lambda) {
    double mx = -INFINITY;
    for (double l : log_t) mx = std::max(mx, lambda * l);
    double s = 0.0;
    for (double l : log_t) s += std::exp(lambda * l - mx);
    return mx + std::log(s);
}

}  // namespace

LaplaceFit laplace_fit(const std::function<double(double, double)>& f, double x, double y) {
    constexpr double hg = 1e-5;
    constexpr double hh = 1e-4;
    auto grad = [&](double u, double v) {
        return std::pair{(f(u + hg, v) - f(u - hg, v)) / (2 * hg), (f(u, v + hg) - f(u, v - hg)) / (2 * hg)};
    };
    struct H {
        double a, b, c;  // [[a, b], [b, c]]
    };
    auto hess = [&](double u, double v) {
        const double f0 = f(u, v);
        const double a = (f(u + hh, v) - 2 * f0 + f(u - hh, v)) / (hh * hh);
        const double c = (f(u, v + hh) - 2 * f0 + f(u, v - hh)) / (hh * hh);
        const double b =
            (f(u + hh, v + hh) - f(u + hh, v - hh) - f(u - hh, v + hh) + f(u - hh, v - hh)) / (4 * hh * hh);
        return H{a, b, c};
    };

    double fx = f(x, y);
    if (!std::isfinite(fx)) throw NumericalError("laplace_fit: log-density not finite at start");
    bool converged = false;
    for (int it = 0; it < 200 && !converged; ++it) {
        auto [g1, g2] = grad(x, y);
        const H h = hess(x, y);
        const double det = h.a * h.c - h.b * h.b;
        double s1, s2;
        if (h.a < 0 && det > 0) {
            s1 = -(h.c * g1 - h.b * g2) / det;
            s2 = -(-h.b * g1 + h.a * g2) / det;
        } else {
            s1 = g1;
            s2 = g2;
            const double len = std::hypot(s1, s2);
            if (len > 1.0) {
                s1 /= len;
                s2 /= len;
            }
        }
        double t = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
            const double nx = x + t * s1;
            const double ny = y + t * s2;
            const double fn = f(nx, ny);
            if (std::isfinite(fn) && fn >= fx) {
                converged = std::hypot(t * s1, t * s2) < 1e-9 || fn - fx < 1e-13 * std::max(1.0, std::abs(fx));
                x = nx;
                y = ny;
                fx = fn;
                moved = true;
                break;
            }
        }
        if (!moved) converged = true;
    }
    const H h = hess(x, y);
    const double det = h.a * h.c - h.b * h.b;
    if (!(h.a < 0 && det > 0)) throw NumericalError("laplace_fit: Hessian at the mode is not negative definite");
    // Covariance = -H^-1.
    const double v1 = -h.c / det;
    const double v2 = -h.a / det;
    const double cv = h.b / det;
    LaplaceFit out;
    out.mode1 = x;
    out.mode2 = y;
    out.sd1 = std::sqrt(v1);
    out.sd2 = std::sqrt(v2);
    out.correlation = cv / (out.sd1 * out.sd2);
    return out;
}

Grid2D gamma_shape_scale_posterior(std::span<const double> data, GammaPrior prior,
                                   const PosteriorGridOptions& options) {
    check_prior(prior);
    const Sufficient s = sufficient(data, "gamma_shape_scale_posterior");
    const double n = s.n;

    auto log_post = [=](double a1, double a2) {
        return log_prior(prior, a1) + log_prior(prior, a2) + (a1 - 1.0) * s.sum_log - s.sum / a2 -
               n * a1 * std::log(a2) - n * std::lgamma(a1);
    };
    const double mean = s.sum / n;
    double ss = 0.0;
    for (double x : data) ss += (x - mean) * (x - mean);
    const double var = std::max(ss / (n - 1.0), 1e-12 * mean * mean);
    const LaplaceFit fit = laplace_fit(
        [&](double u1, double u2) { return log_post(std::exp(u1), std::exp(u2)) + u1 + u2; },
        std::log(mean * mean / var), std::log(var / mean));

    Grid2D g;
    g.axis1 = log_axis(fit.mode1, fit.sd1, options);
    g.axis2 = log_axis(fit.mode2, fit.sd2, options);
    g.log_density = [=](std::span<const double> t1, std::span<const double> t2, std::span<double> out) {
        std::vector<double> log_a2(t2.size()), b(t2.size());
        for (std::size_t j = 0; j < t2.size(); ++j) {
            log_a2[j] = std::log(t2[j]);
            b[j] = log_prior(prior, t2[j]) - s.sum / t2[j];
        }
        for (std::size_t i = 0; i < t1.size(); ++i) {
            const double a1 = t1[i];
            const double a = log_prior(prior, a1) + (a1 - 1.0) * s.sum_log - n * std::lgamma(a1);
            const double na1 = n * a1;
            double* row = out.data() + i * t2.size();
            for (std::size_t j = 0; j < t2.size(); ++j) row[j] = a + b[j] - na1 * log_a2[j];
        }
    };
    return g;
}

Grid2D weibull_posterior(std::span<const double> data, GammaPrior prior, const PosteriorGridOptions& options,
                         WeibullPriorOn prior_on) {
    check_prior(prior);
    const Sufficient s = sufficient(data, "weibull_posterior");
    const double n = s.n;
    std::vector<double> log_t(data.size());
    std::transform(data.begin(), data.end(), log_t.begin(), [](double x) { return std::log(x); });

    const bool on_power = prior_on == WeibullPriorOn::ScalePower;
    // Prior of the second parameter expressed in nu; for nu^lambda this
    // includes the Jacobian lambda nu^(lambda - 1).
    auto log_prior_nu = [prior, on_power](double lambda, double log_nu) {
        if (!on_power) return (prior.shape - 1.0) * log_nu - prior.rate * std::exp(log_nu);
        return (lambda * prior.shape - 1.0) * log_nu - prior.rate * std::exp(lambda * log_nu) + std::log(lambda);
    };
    auto log_post = [&](double lambda, double nu) {
        const double log_nu = std::log(nu);
        return log_prior(prior, lambda) + log_prior_nu(lambda, log_nu) + n * std::log(lambda) -
               n * lambda * log_nu + (lambda - 1.0) * s.sum_log -
               std::exp(log_sum_pow(log_t, lambda) - lambda * log_nu);
    };
    const double ml = s.sum_log / n;
    double ss = 0.0;
    for (double l : log_t) ss += (l - ml) * (l - ml);
    const double sd = std::max(std::sqrt(ss / (n - 1.0)), 1e-8);
    const double lambda0 = 1.2825 / sd;  // pi / sqrt(6) over the log-scale sd
    const double nu0 = std::exp(ml + 0.5772156649 / lambda0);
    const LaplaceFit fit = laplace_fit(
        [&](double u1, double u2) { return log_post(std::exp(u1), std::exp(u2)) + u1 + u2; }, std::log(lambda0),
        std::log(nu0));

    Grid2D g;
    g.axis1 = log_axis(fit.mode1, fit.sd1, options);
    g.axis2 = log_axis(fit.mode2, fit.sd2, options);
    // The nu-marginal falls off only like 1 / (nu log(1/nu)^n) as nu -> 0 (the
    // lambda -> 0 ridge), so E[nu^-k] is infinite under these priors. The
    // posterior is truncated at the lower end of the box instead.
    g.axis2.lo_edge = Edge::Hard;
    g.log_density = [=, log_t = std::move(log_t)](std::span<const double> t1, std::span<const double> t2,
                                                  std::span<double> out) {
        std::vector<double> log_nu(t2.size()), b(t2.size());
        for (std::size_t j = 0; j < t2.size(); ++j) {
            log_nu[j] = std::log(t2[j]);
            b[j] = on_power ? 0.0 : log_prior_nu(1.0, log_nu[j]);
        }
        for (std::size_t i = 0; i < t1.size(); ++i) {
            const double lambda = t1[i];
            const double a = log_prior(prior, lambda) + n * std::log(lambda) + (lambda - 1.0) * s.sum_log;
            const double log_s = log_sum_pow(log_t, lambda);
            const double nl = n * lambda;
            double* row = out.data() + i * t2.size();
            for (std::size_t j = 0; j < t2.size(); ++j) {
                const double pj = on_power ? log_prior_nu(lambda, log_nu[j]) : b[j];
                row[j] = a + pj - nl * log_nu[j] - std::exp(log_s - lambda * log_nu[j]);
            }
        }
    };
    return g;
}

std::pair<DiscreteDensity, DiscreteDensity> adaptive_marginals(Grid2D grid, const PosteriorGridOptions& options,
                                                               std::optional<double> k) {
    auto widen = [](Axis& a) {
        const bool log = a.scale == AxisScale::Log;
        const double lo = log ? std::log(a.lo) : a.lo;
        const double hi = log ? std::log(a.hi) : a.hi;
        const double c = 0.5 * (lo + hi);
        const double h = 0.75 * (hi - lo);
        if (a.lo_edge == Edge::Cutoff) a.lo = log ? std::exp(c - h) : c - h;
        if (a.hi_edge == Edge::Cutoff) a.hi = log ? std::exp(c + h) : c + h;
        // Keep the node spacing, so a wider box is not a coarser one.
        const double grown = ((log ? std::log(a.hi) : a.hi) - (log ? std::log(a.lo) : a.lo)) / (hi - lo);
        a.nodes = static_cast<std::size_t>(std::ceil(static_cast<double>(a.nodes) * grown));
    };
    for (int attempt = 0;; ++attempt) {
        try {
            auto out = discretize(grid);
            if (k) {
                (void)out.first.moments(*k);
                (void)out.second.moments(*k);
            }
            return out;
        } catch (const EdgeMassError&) {
            if (attempt >= options.max_widenings) throw;
        } catch (const DivergentMomentError&) {
            // Either a slow tail that a wider box resolves, or a true divergence
            // that persists through every retry.
            if (attempt >= options.max_widenings) throw;
        }
        widen(grid.axis1);
        widen(grid.axis2);
    }
}

}  // namespace rsloss
