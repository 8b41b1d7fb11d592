#include "rsloss/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "rsloss/errors.hpp"
#include "rsloss/estimators.hpp"
#include "rsloss/intervals.hpp"
#include "rsloss/losses.hpp"
#include "rsloss/moments.hpp"
#include "rsloss/rng.hpp"
#include "rsloss/spaces.hpp"

namespace rsloss {

namespace {

class Checker {
public:
    explicit Checker(std::string family) { report_.family = std::move(family); }

    void close(double got, double want, double tol, bool relative, const std::string& what) {
        const double scale = relative ? std::max(std::abs(want), 1e-300) : 1.0;
        const double err = std::abs(got - want) / scale;
        std::ostringstream os;
        os.precision(17);
        os << what << ": got " << got << ", want " << want << " (err " << err << ", tol " << tol << ")";
        expect(err <= tol, os.str());
    }

    void expect(bool ok, const std::string& what) {
        ++report_.checks;
        if (ok) return;
        ++report_.failed;
        if (report_.failures.size() < 5) report_.failures.push_back(what);
    }

    // Runs f, recording any library exception as a failure.
    void guard(const std::string& what, const std::function<void()>& f) {
        try {
            f();
        } catch (const std::exception& e) {
            expect(false, what + ": " + e.what());
        }
    }

    CheckReport take() { return std::move(report_); }

private:
    CheckReport report_;
};

using Uniform = std::uniform_real_distribution<double>;

Grid1D lognormal_grid(double mu, double sigma) {
    Grid1D g;
    g.axis.lo = std::exp(mu - 12.0 * sigma);
    g.axis.hi = std::exp(mu + 12.0 * sigma);
    g.axis.lo_edge = Edge::Cutoff;
    g.axis.hi_edge = Edge::Cutoff;
    g.axis.scale = AxisScale::Log;
    g.axis.nodes = 400;
    g.log_density = [mu, sigma](double t) {
        const double z = (std::log(t) - mu) / sigma;
        return -0.5 * z * z - std::log(t);
    };
    return g;
}

CheckReport check_symmetry(std::uint64_t seed) {
    Checker c("symmetry");
    StreamEngine eng(stream_id(seed, 1, 0));
    Uniform u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double theta = std::exp(4.0 * u(eng) - 2.0);
        const double d = std::exp(4.0 * u(eng) - 2.0);
        const double k = 0.5 + 3.5 * u(eng);
        const auto loss = LossFunction::scale_family(k);
        c.close(evaluate(loss, theta, theta * theta / d), evaluate(loss, theta, d), 1e-10, true,
                "scale family L_k(theta, theta^2/d) = L_k(theta, d)");
        const auto half = ParameterSpace::positive_half_line();
        c.close(symmetric_counterpart(half, theta, d), theta * theta / d, 1e-12, true,
                "half-line counterpart theta^2/d");

        const double a = 4.0 * u(eng) - 2.0;
        const double b = a + 0.1 + 3.0 * u(eng);
        const double t2 = a + (b - a) * (0.02 + 0.96 * u(eng));
        const double d2 = a + (b - a) * (0.02 + 0.96 * u(eng));
        const auto iv = ParameterSpace::interval(a, b);
        const auto iq = LossFunction::interval_squared(a, b);
        c.guard("interval counterpart", [&] {
            const double d3 = symmetric_counterpart(iv, t2, d2);
            c.close(evaluate(iq, t2, d3), evaluate(iq, t2, d2), 1e-10, true,
                    "interval loss at the logit counterpart");
        });

        const double x = 10.0 * u(eng) - 5.0;
        const double y = 10.0 * u(eng) - 5.0;
        c.close(evaluate(LossFunction::squared_error(), x, 2.0 * x - y),
                evaluate(LossFunction::squared_error(), x, y), 1e-10, true, "squared error reflection");
    }
    // The precautionary loss is not scale invariant.
    const auto prec = LossFunction::precautionary();
    const double p1 = evaluate(prec, 1.0, 2.0);
    const double p2 = evaluate(prec, 10.0, 20.0);
    c.expect(std::abs(p1 - p2) > 1e-3, "precautionary loss should change under rescaling");
    return c.take();
}

CheckReport check_moments(std::uint64_t seed) {
    Checker c("moments");
    StreamEngine eng(stream_id(seed, 2, 0));
    Uniform u(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const std::int64_t n = 2 + static_cast<std::int64_t>(60 * u(eng));
        const std::int64_t x = 1 + static_cast<std::int64_t>(static_cast<double>(n - 1) * u(eng));
        c.guard("beta vs quadrature", [&] {
            const MomentSet exact = beta_moments(x, n, 1.0);
            Grid1D g;
            g.axis = Axis{0.0, 1.0, Edge::Hard, Edge::Hard, AxisScale::Linear, 2001};
            g.log_density = [x, n](double t) {
                return static_cast<double>(x) * std::log(t) + static_cast<double>(n - x) * std::log1p(-t);
            };
            const MomentSet q = grid_moments_1d(g, 1.0);
            c.close(q.m1, exact.m1, 1e-8, true, "beta m1");
            c.close(q.m2, exact.m2, 1e-8, true, "beta m2");
            c.close(*q.mnegk, *exact.mnegk, 1e-8, true, "beta E[1/theta]");
        });

        const double mu = 2.0 * u(eng) - 1.0;
        const double sigma = 0.1 + 0.5 * u(eng);
        const double k = 1.0 + 2.0 * u(eng);
        c.guard("lognormal vs analytic", [&] {
            const MomentSet q = grid_moments_1d(lognormal_grid(mu, sigma), k);
            c.close(q.m1, std::exp(mu + 0.5 * sigma * sigma), 1e-9, true, "lognormal m1");
            c.close(q.m2, std::exp(2 * mu + 2 * sigma * sigma), 1e-9, true, "lognormal m2");
            c.close(*q.mk, std::exp(k * mu + 0.5 * k * k * sigma * sigma), 1e-9, true, "lognormal E[theta^k]");
            c.close(*q.mnegk, std::exp(-k * mu + 0.5 * k * k * sigma * sigma), 1e-9, true,
                    "lognormal E[theta^-k]");
        });

        const double a = -1.0 - 2.0 * u(eng);
        const double b = 1.0 + 2.0 * u(eng);
        const double center = a + (b - a) * u(eng);
        const double sd = 0.2 + u(eng);
        c.guard("truncated normal vs quadrature", [&] {
            const MomentSet exact = truncated_normal_moments(center, sd, a, b);
            Grid1D g;
            g.axis = Axis{a, b, Edge::Hard, Edge::Hard, AxisScale::Linear, 2001};
            g.log_density = [center, sd](double t) {
                const double z = (t - center) / sd;
                return -0.5 * z * z;
            };
            const MomentSet q = grid_moments_1d(g, 1.0);
            c.close(q.m1, exact.m1, 1e-9, false, "truncated normal m1");
            c.close(q.m2, exact.m2, 1e-9, false, "truncated normal m2");
        });
    }
    return c.take();
}

CheckReport check_estimators(std::uint64_t seed) {
    Checker c("estimators");
    StreamEngine eng(stream_id(seed, 3, 0));
    Uniform u(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const std::int64_t n = 5 + static_cast<std::int64_t>(50 * u(eng));
        const std::int64_t x = 2 + static_cast<std::int64_t>(static_cast<double>(n - 3) * u(eng));
        c.guard("beta estimators", [&] {
            const BetaConjugate model{x, n};
            const MomentSet m = beta_moments(x, n, 1.0);
            c.close(numeric_minimize(LossFunction::scale_family(1.0), model, 0.0, 1.0).point,
                    scale_mean(m).point, 1e-6, false, "beta scale_mean vs numeric");
            c.close(numeric_minimize(LossFunction::precautionary(), model, 0.0, 1.0).point,
                    precautionary_estimate(m).point, 1e-6, false, "beta precautionary vs numeric");
            c.close(numeric_minimize(LossFunction::interval_squared(0.0, 1.0), model, 0.0, 1.0).point,
                    interval_estimate(m, 0.0, 1.0).point, 1e-6, false, "beta interval vs numeric");
            c.close(probability_estimate(x, n), interval_estimate(m, 0.0, 1.0).point, 1e-12, false,
                    "probability_estimate closed form");
        });

        const double mu = 2.0 * u(eng) - 1.0;
        const double sigma = 0.1 + 0.4 * u(eng);
        c.guard("lognormal estimators", [&] {
            const Grid1D g = lognormal_grid(mu, sigma);
            const DiscreteDensity d = discretize(g);
            const MomentSet m = d.moments(1.0);
            const double lo = g.axis.lo;
            const double hi = g.axis.hi;
            c.close(numeric_minimize(LossFunction::scale_family(1.0), d, lo, hi).point, scale_mean(m).point, 1e-6,
                    false, "lognormal scale_mean vs numeric");
            c.close(scale_mean(m).point, std::exp(mu), 1e-9, true, "lognormal scale_mean = exp(mu)");
            c.close(numeric_minimize(LossFunction::precautionary(), d, lo, hi).point,
                    precautionary_estimate(m).point, 1e-6, false, "lognormal precautionary vs numeric");
            const double a = 0.5 * lo;
            const double b = 2.0 * hi;
            c.close(numeric_minimize(LossFunction::interval_squared(a, b), d, lo, hi).point,
                    interval_estimate(m, a, b).point, 1e-6, false, "lognormal interval vs numeric");
        });
    }
    return c.take();
}

CheckReport check_intervals(std::uint64_t seed) {
    Checker c("intervals");
    StreamEngine eng(stream_id(seed, 4, 0));
    Uniform u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(200 * u(eng));
        const std::int64_t x = static_cast<std::int64_t>(static_cast<double>(n + 1) * u(eng)) % (n + 1);
        c.guard("interval identities", [&] {
            const auto w = ci_wilson_ac(x, n);
            const auto wr = ci_wilson_ac(n - x, n);
            c.close(w.lo, 1.0 - wr.hi, 1e-12, false, "wilson_ac reflection");
            const auto dq = ci_delta_iq(x, n);
            const auto dr = ci_delta_iq(n - x, n);
            c.close(dq.lo, 1.0 - dr.hi, 1e-12, false, "delta_iq reflection");
            c.close(dq.center, probability_estimate(x, n), 1e-15, false, "delta_iq centre");
            c.expect(dq.lo <= dq.center && dq.center <= dq.hi, "delta_iq contains its centre");
            const double xr = static_cast<double>(x);
            const double dn = static_cast<double>(n);
            const double h = 1e-5;
            const double fd = (probability_estimate_real(xr + h, dn) - probability_estimate_real(xr - h, dn)) / (2 * h);
            c.close(probability_estimate_derivative(xr, dn), fd, 1e-6, true, "derivative vs finite difference");
            const double p = (xr + 1.0) / (dn + 2.0);
            const auto nq = ci_normal(p, n);
            c.close(nq.hi - nq.lo, 2.0 * 1.959963984540054 * std::sqrt(p * (1 - p) / dn), 1e-12, true,
                    "normal interval width");
        });
    }
    return c.take();
}

}  // namespace

const std::vector<std::string>& verify_families() {
    static const std::vector<std::string> families{"symmetry", "moments", "estimators", "intervals"};
    return families;
}

std::vector<CheckReport> run_verify(const std::optional<std::string>& family, std::uint64_t seed) {
    const auto& all = verify_families();
    if (family && std::find(all.begin(), all.end(), *family) == all.end())
        throw ConfigError("unknown check family '" + *family + "'");
    std::vector<CheckReport> out;
    for (const auto& f : all) {
        if (family && *family != f) continue;
        if (f == "symmetry") out.push_back(check_symmetry(seed));
        else if (f == "moments") out.push_back(check_moments(seed));
        else if (f == "estimators") out.push_back(check_estimators(seed));
        else out.push_back(check_intervals(seed));
    }
    return out;
}

}  // namespace rsloss
