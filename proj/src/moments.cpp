#include "rsloss/moments.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "overloaded.hpp"
#include "rsloss/errors.hpp"
#include "rsloss/special.hpp"

namespace rsloss {

using detail::overloaded;

namespace {

constexpr double kDecayRatio = 1e-12;
constexpr double kMaxEdgeMass = 1e-9;
// Edge-panel share of E[|theta|] and E[theta^2], roughly their relative truncation error.
constexpr double kMaxEdgeMomentWeight = 1e-7;

void check_axis(const Axis& axis, const char* what) {
    if (!std::isfinite(axis.lo) || !std::isfinite(axis.hi) || !(axis.lo < axis.hi)) {
        std::ostringstream os;
        os << what << ": support must be finite with lo < hi, got [" << axis.lo << ", " << axis.hi
           << "]";
        throw DomainError(os.str());
    }
    if (axis.scale == AxisScale::Log && !(axis.lo > 0.0)) {
        std::ostringstream os;
        os << what << ": log-scaled axis needs lo > 0, got " << axis.lo;
        throw DomainError(os.str());
    }
    if (axis.nodes < 101) {
        std::ostringstream os;
        os << what << ": at least 101 nodes required, got " << axis.nodes;
        throw DomainError(os.str());
    }
}

struct AxisGrid {
    QuadratureRule rule;          // in the integration variable
    std::vector<double> theta;    // node positions in parameter units
    std::vector<double> log_jac;  // log d theta / d u
};

AxisGrid build_axis(const Axis& axis) {
    AxisGrid g;
    const bool log_scale = axis.scale == AxisScale::Log;
    const double ulo = log_scale ? std::log(axis.lo) : axis.lo;
    const double uhi = log_scale ? std::log(axis.hi) : axis.hi;
    // Hard edges on a linear axis may carry a fractional-power density.
    g.rule = gauss_legendre_panels(ulo, uhi, axis.nodes, !log_scale && axis.lo_edge == Edge::Hard,
                                   !log_scale && axis.hi_edge == Edge::Hard);
    g.theta.resize(g.rule.nodes.size());
    g.log_jac.assign(g.rule.nodes.size(), 0.0);
    for (std::size_t i = 0; i < g.theta.size(); ++i) {
        const double u = g.rule.nodes[i];
        g.theta[i] = log_scale ? std::exp(u) : u;
        if (log_scale) g.log_jac[i] = u;
    }
    return g;
}

double edge_jacobian(const Axis& axis, double theta) {
    return axis.scale == AxisScale::Log ? std::log(theta) : 0.0;
}

void check_log_density(double v) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
        throw NumericalError("log-density is not finite at an interior quadrature node");
}

// Mass fraction in the outermost panel at each cutoff edge; hard edges are
// true support boundaries and may carry mass.
double panel_mass_fraction(std::span<const double> w, std::size_t order, const Axis& axis) {
    double total = 0.0;
    for (double x : w) total += x;
    double first = 0.0;
    double last = 0.0;
    for (std::size_t i = 0; i < order; ++i) {
        first += w[i];
        last += w[w.size() - 1 - i];
    }
    if (axis.lo_edge == Edge::Hard) first = 0.0;
    if (axis.hi_edge == Edge::Hard) last = 0.0;
    return std::max(first, last) / total;
}

// Exponent p of f(theta) ~ theta^p at a hard zero edge, from two probes.
std::optional<double> zero_edge_exponent(const Axis& axis,
                                         const std::function<double(double)>& log_density) {
    if (axis.scale != AxisScale::Linear || axis.lo != 0.0 || axis.lo_edge != Edge::Hard)
        return std::nullopt;
    const double span = axis.hi - axis.lo;
    const double e1 = span * 1e-9;
    const double e2 = span * 1e-7;
    const double f1 = log_density(e1);
    const double f2 = log_density(e2);
    if (!std::isfinite(f1) || !std::isfinite(f2)) return std::nullopt;
    return (f2 - f1) / (std::log(e2) - std::log(e1));
}

}  // namespace

QuadratureRule gauss_legendre_panels(double lo, double hi, std::size_t min_nodes, bool grade_lo, bool grade_hi) {
    using Gauss = boost::math::quadrature::gauss<double, QuadratureRule::order>;
    const auto& abscissa = Gauss::abscissa();
    const auto& gweights = Gauss::weights();
    QuadratureRule rule;
    const auto add_panel = [&](double left, double right) {
        const double mid = 0.5 * (left + right);
        const double half = 0.5 * (right - left);
        // Order 10 is even: abscissae come in +/- pairs, none at zero.
        for (std::size_t i = abscissa.size(); i-- > 0;) {
            rule.nodes.push_back(mid - half * abscissa[i]);
            rule.weights.push_back(half * gweights[i]);
        }
        for (std::size_t i = 0; i < abscissa.size(); ++i) {
            rule.nodes.push_back(mid + half * abscissa[i]);
            rule.weights.push_back(half * gweights[i]);
        }
        ++rule.panels;
    };
    // Geometric refinement of an end panel toward its edge, so densities that
    // behave like a fractional power there still converge quickly.
    constexpr int kGradedLevels = 24;
    constexpr double kGradeRatio = 0.15;
    const std::size_t uniform =
        std::max<std::size_t>(1, (min_nodes + QuadratureRule::order - 1) / QuadratureRule::order);
    const double width = (hi - lo) / static_cast<double>(uniform);
    for (std::size_t p = 0; p < uniform; ++p) {
        const double left = lo + width * static_cast<double>(p);
        const double right = p + 1 == uniform ? hi : left + width;
        const bool at_lo = grade_lo && p == 0;
        const bool at_hi = grade_hi && p + 1 == uniform;
        if (!at_lo && !at_hi) {
            add_panel(left, right);
            continue;
        }
        // Split a panel touching both graded edges at its midpoint.
        const double split = at_lo && at_hi ? 0.5 * (left + right) : (at_lo ? right : left);
        // Stop grading before nodes next to a nonzero edge round onto it.
        const auto levels = [&](double edge, double h) {
            const double floor_width = 1e4 * std::numeric_limits<double>::epsilon() * std::abs(edge);
            int n = 0;
            for (double w = h * kGradeRatio; n < kGradedLevels && w > floor_width; w *= kGradeRatio) ++n;
            return n;
        };
        if (at_lo) {
            const double h = split - left;
            const int n = levels(left, h);
            double scale = std::pow(kGradeRatio, n);
            add_panel(left, left + h * scale);
            for (int j = n; j > 0; --j, scale /= kGradeRatio)
                add_panel(left + h * scale, left + h * scale / kGradeRatio);
        }
        if (at_hi) {
            const double h = right - split;
            const int n = levels(right, h);
            double scale = 1.0;
            for (int j = 0; j < n; ++j, scale *= kGradeRatio)
                add_panel(right - h * scale, right - h * scale * kGradeRatio);
            add_panel(right - h * scale, right);
        }
    }
    return rule;
}

DiscreteDensity::DiscreteDensity(std::vector<double> theta, std::vector<double> weight)
    : theta_(std::move(theta)), weight_(std::move(weight)) {
    if (theta_.size() != weight_.size() || theta_.empty())
        throw DimensionError("DiscreteDensity: node and weight counts differ or are empty");
}

MomentSet DiscreteDensity::moments(double k, GridDiagnostics* diag) const {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("moment order k must be positive");
    MomentSet out;
    out.k = k;
    double s1 = 0.0;
    double s2 = 0.0;
    bool positive = true;
    for (std::size_t i = 0; i < theta_.size(); ++i) {
        s1 += weight_[i] * theta_[i];
        s2 += weight_[i] * theta_[i] * theta_[i];
        positive = positive && theta_[i] > 0.0;
    }
    out.m1 = s1;
    out.m2 = s2;
    if (!positive) return out;

    if (zero_edge_exponent && *zero_edge_exponent - k <= -1.0 + 1e-6) {
        std::ostringstream os;
        os << "E[theta^-" << k << "] diverges: density behaves like theta^" << *zero_edge_exponent
           << " at zero";
        throw DivergentMomentError(os.str());
    }

    double sk = 0.0;
    double snk = 0.0;
    for (std::size_t i = 0; i < theta_.size(); ++i) {
        const double p = std::pow(theta_[i], k);
        sk += weight_[i] * p;
        snk += weight_[i] / p;
    }
    out.mk = sk;
    out.mnegk = snk;

    if (!cutoffs.empty() && !node_log_density.empty()) {
        const double powers[] = {0.0, 1.0, 2.0, k, -k};
        const double threshold = std::log(kDecayRatio);
        for (double j : powers) {
            double peak = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < theta_.size(); ++i)
                peak = std::max(peak, node_log_density[i] + j * std::log(theta_[i]));
            for (const auto& edge : cutoffs) {
                const double at_edge = edge.log_density + j * std::log(edge.theta);
                if (at_edge - peak <= threshold) continue;
                const bool left = edge.theta <= theta_.front();
                if (j < 0.0 && left) {
                    std::ostringstream os;
                    os << "E[theta^-" << k << "] integrand not decayed at the left cutoff "
                       << edge.theta;
                    throw DivergentMomentError(os.str());
                }
                if (diag) diag->tail_decayed = false;
            }
        }
    }
    return out;
}

DiscreteDensity discretize(const Grid1D& model, GridDiagnostics* diag) {
    check_axis(model.axis, "grid_moments_1d");
    if (!model.log_density) throw DomainError("grid_moments_1d: missing log-density");
    const AxisGrid g = build_axis(model.axis);
    const std::size_t n = g.theta.size();
    std::vector<double> lw(n);
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double v = model.log_density(g.theta[i]);
        check_log_density(v);
        lw[i] = v + g.log_jac[i];
        peak = std::max(peak, lw[i]);
    }
    if (!std::isfinite(peak)) throw NumericalError("grid_moments_1d: density vanishes on the grid");
    std::vector<double> w(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = g.rule.weights[i] * std::exp(lw[i] - peak);
        total += w[i];
    }
    if (diag) {
        diag->nodes_used = n;
        diag->edge_mass = std::max(diag->edge_mass, panel_mass_fraction(w, QuadratureRule::order, model.axis));
    }
    for (double& x : w) x /= total;

    DiscreteDensity out(g.theta, std::move(w));
    out.log_norm = peak + std::log(total);
    out.max_log_density = peak;
    out.log_axis = model.axis.scale == AxisScale::Log;
    out.node_log_density = std::move(lw);
    out.zero_edge_exponent = zero_edge_exponent(model.axis, model.log_density);
    const auto add_cutoff = [&](double theta) {
        out.cutoffs.push_back({theta, model.log_density(theta) + edge_jacobian(model.axis, theta)});
    };
    if (model.axis.lo_edge == Edge::Cutoff) add_cutoff(model.axis.lo);
    if (model.axis.hi_edge == Edge::Cutoff) add_cutoff(model.axis.hi);
    if (diag) {
        // Zeroth-order decay is reported even when no positive moments are taken.
        for (const auto& edge : out.cutoffs)
            if (edge.log_density - peak > std::log(kDecayRatio)) diag->tail_decayed = false;
    }
    return out;
}

Grid2D Grid2D::pointwise(Axis axis1, Axis axis2, std::function<double(double, double)> f) {
    Grid2D g;
    g.axis1 = axis1;
    g.axis2 = axis2;
    g.log_density = [f = std::move(f)](std::span<const double> t1, std::span<const double> t2,
                                       std::span<double> out) {
        for (std::size_t i = 0; i < t1.size(); ++i)
            for (std::size_t j = 0; j < t2.size(); ++j) out[i * t2.size() + j] = f(t1[i], t2[j]);
    };
    return g;
}

std::pair<DiscreteDensity, DiscreteDensity> discretize(const Grid2D& model, GridDiagnostics* diag) {
    check_axis(model.axis1, "grid_moments_2d axis 1");
    check_axis(model.axis2, "grid_moments_2d axis 2");
    if (!model.log_density) throw DomainError("grid_moments_2d: missing log-density");
    const AxisGrid g1 = build_axis(model.axis1);
    const AxisGrid g2 = build_axis(model.axis2);
    const std::size_t n1 = g1.theta.size();
    const std::size_t n2 = g2.theta.size();

    std::vector<double> lw(n1 * n2);
    model.log_density(g1.theta, g2.theta, lw);
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
            double& v = lw[i * n2 + j];
            check_log_density(v);
            v += g1.log_jac[i] + g2.log_jac[j];
            peak = std::max(peak, v);
        }
    if (!std::isfinite(peak)) throw NumericalError("grid_moments_2d: density vanishes on the grid");

    std::vector<double> w1(n1, 0.0);
    std::vector<double> w2(n2, 0.0);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
            const double w = g1.rule.weights[i] * g2.rule.weights[j] * std::exp(lw[i * n2 + j] - peak);
            w1[i] += w;
            w2[j] += w;
        }
    double total = 0.0;
    for (double x : w1) total += x;

    // A thin ridge can carry negligible mass yet shift the first two moments,
    // so the edge panels are also checked under |theta|^1 and |theta|^2 weights.
    // cross1[p][j] integrates |theta1|^p over axis 1; cross2[p][i] likewise.
    std::vector<double> cross1[2] = {std::vector<double>(n2, 0.0), std::vector<double>(n2, 0.0)};
    std::vector<double> cross2[2] = {std::vector<double>(n1, 0.0), std::vector<double>(n1, 0.0)};
    for (std::size_t i = 0; i < n1; ++i) {
        const double a1 = std::abs(g1.theta[i]);
        for (std::size_t j = 0; j < n2; ++j) {
            const double a2 = std::abs(g2.theta[j]);
            const double w = g1.rule.weights[i] * g2.rule.weights[j] * std::exp(lw[i * n2 + j] - peak);
            cross1[0][j] += w * a1;
            cross1[1][j] += w * a1 * a1;
            cross2[0][i] += w * a2;
            cross2[1][i] += w * a2 * a2;
        }
    }
    const double edge = std::max(panel_mass_fraction(w1, QuadratureRule::order, model.axis1),
                                 panel_mass_fraction(w2, QuadratureRule::order, model.axis2));
    double weighted = 0.0;
    for (int p = 0; p < 2; ++p) {
        std::vector<double> own1(n1), own2(n2);
        for (std::size_t i = 0; i < n1; ++i) own1[i] = w1[i] * std::pow(std::abs(g1.theta[i]), p + 1);
        for (std::size_t j = 0; j < n2; ++j) own2[j] = w2[j] * std::pow(std::abs(g2.theta[j]), p + 1);
        weighted = std::max({weighted, panel_mass_fraction(own1, QuadratureRule::order, model.axis1),
                             panel_mass_fraction(cross1[p], QuadratureRule::order, model.axis2),
                             panel_mass_fraction(own2, QuadratureRule::order, model.axis2),
                             panel_mass_fraction(cross2[p], QuadratureRule::order, model.axis1)});
    }
    if (diag) {
        diag->nodes_used = n1 * n2;
        diag->edge_mass = std::max(diag->edge_mass, edge);
    }
    if (edge > kMaxEdgeMass) {
        std::ostringstream os;
        os << "grid_moments_2d: " << edge << " of the posterior mass lies in an outermost panel";
        throw EdgeMassError(os.str());
    }
    if (weighted > kMaxEdgeMomentWeight) {
        std::ostringstream os;
        os << "grid_moments_2d: " << weighted << " of a first or second moment lies in an outermost panel";
        throw EdgeMassError(os.str());
    }

    // Marginal log-densities per unit of each integration variable.
    const auto marginal_log = [&](std::span<const double> w, const QuadratureRule& rule) {
        std::vector<double> out(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) out[i] = std::log(w[i] / rule.weights[i]) + peak;
        return out;
    };
    std::vector<double> ml1 = marginal_log(w1, g1.rule);
    std::vector<double> ml2 = marginal_log(w2, g2.rule);
    for (double& x : w1) x /= total;
    for (double& x : w2) x /= total;

    DiscreteDensity d1(g1.theta, std::move(w1));
    DiscreteDensity d2(g2.theta, std::move(w2));
    d1.node_log_density = std::move(ml1);
    d2.node_log_density = std::move(ml2);
    d1.log_axis = model.axis1.scale == AxisScale::Log;
    d2.log_axis = model.axis2.scale == AxisScale::Log;
    d1.log_norm = d2.log_norm = peak + std::log(total);

    // Marginal density on the cutoff edges, integrated along the other axis.
    const auto edge_marginal = [&](double fixed, bool first_axis) {
        const AxisGrid& other = first_axis ? g2 : g1;
        std::vector<double> line(other.theta.size());
        const double one[1] = {fixed};
        if (first_axis)
            model.log_density(std::span<const double>(one, 1), other.theta, line);
        else
            model.log_density(other.theta, std::span<const double>(one, 1), line);
        const Axis& axis = first_axis ? model.axis1 : model.axis2;
        double sum = 0.0;
        for (std::size_t j = 0; j < line.size(); ++j) {
            const double v = line[j] + other.log_jac[j] + edge_jacobian(axis, fixed) - peak;
            if (std::isfinite(v)) sum += other.rule.weights[j] * std::exp(v);
        }
        return sum > 0.0 ? std::log(sum) + peak : -std::numeric_limits<double>::infinity();
    };
    const auto add_cutoffs = [&](DiscreteDensity& d, const Axis& axis, bool first_axis) {
        if (axis.lo_edge == Edge::Cutoff) d.cutoffs.push_back({axis.lo, edge_marginal(axis.lo, first_axis)});
        if (axis.hi_edge == Edge::Cutoff) d.cutoffs.push_back({axis.hi, edge_marginal(axis.hi, first_axis)});
    };
    add_cutoffs(d1, model.axis1, true);
    add_cutoffs(d2, model.axis2, false);
    return {std::move(d1), std::move(d2)};
}

MomentSet beta_moments(std::int64_t x, std::int64_t n, std::optional<double> k) {
    if (x < 0 || n < 0 || x > n) {
        std::ostringstream os;
        os << "beta_moments: need 0 <= x <= n, got x=" << x << ", n=" << n;
        throw DomainError(os.str());
    }
    const double xd = static_cast<double>(x);
    const double nd = static_cast<double>(n);
    MomentSet out;
    out.m1 = (xd + 1.0) / (nd + 2.0);
    out.m2 = (xd + 1.0) * (xd + 2.0) / ((nd + 2.0) * (nd + 3.0));
    if (!k) return out;
    const double kk = *k;
    if (!(kk > 0.0) || !std::isfinite(kk)) throw DomainError("beta_moments: k must be positive");
    out.k = kk;
    const double alpha = xd + 1.0;
    const double beta = nd - xd + 1.0;
    // E[theta^s] = Gamma(alpha + s) Gamma(alpha + beta) / (Gamma(alpha) Gamma(alpha + beta + s))
    const auto raw = [&](double s) {
        return std::exp(std::lgamma(alpha + s) + std::lgamma(alpha + beta) - std::lgamma(alpha) -
                        std::lgamma(alpha + beta + s));
    };
    out.mk = raw(kk);
    if (kk >= alpha) {
        std::ostringstream os;
        os << "beta_moments: E[theta^-" << kk << "] diverges for Beta(" << alpha << ", " << beta
           << ") (need k < x + 1)";
        throw DivergentMomentError(os.str());
    }
    out.mnegk = raw(-kk);
    return out;
}

MomentSet truncated_normal_moments(double center, double sd, double a, double b) {
    if (!(sd > 0.0) || !std::isfinite(sd)) throw DomainError("truncated_normal_moments: sd must be positive");
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw DomainError("truncated_normal_moments: need finite a < b");
    if (!std::isfinite(center)) throw DomainError("truncated_normal_moments: center must be finite");
    // Put the interval in the lower tail, where Phi has full relative precision.
    const bool reflect = (a - center) + (b - center) > 0.0;
    double lo = (a - center) / sd;
    double hi = (b - center) / sd;
    if (reflect) {
        const double t = lo;
        lo = -hi;
        hi = -t;
    }
    const double z = normal_cdf(hi) - normal_cdf(lo);
    if (!(z > 1e-300)) throw NumericalError("truncated_normal_moments: truncation mass underflows");
    const double pa = normal_pdf(lo);
    const double pb = normal_pdf(hi);
    const double ratio = (pa - pb) / z;
    double shift = sd * ratio;  // E[theta] - center in the reflected frame
    const double var = sd * sd * (1.0 + (lo * pa - hi * pb) / z - ratio * ratio);
    if (reflect) shift = -shift;
    MomentSet out;
    out.m1 = center + shift;
    out.m2 = std::max(var, 0.0) + out.m1 * out.m1;
    return out;
}

MomentSet grid_moments_1d(const Grid1D& model, double k, GridDiagnostics* diag) {
    return discretize(model, diag).moments(k, diag);
}

std::pair<MomentSet, MomentSet> grid_moments_2d(const Grid2D& model, double k, GridDiagnostics* diag) {
    const auto [d1, d2] = discretize(model, diag);
    return {d1.moments(k, diag), d2.moments(k, diag)};
}

MomentSet mc_moments(std::span<const double> samples, std::optional<double> k) {
    if (samples.size() < 2) throw DomainError("mc_moments: at least two samples required");
    MomentSet out;
    double s1 = 0.0;
    double s2 = 0.0;
    for (double v : samples) {
        if (!std::isfinite(v)) throw NumericalError("mc_moments: non-finite sample");
        s1 += v;
        s2 += v * v;
    }
    const double inv = 1.0 / static_cast<double>(samples.size());
    out.m1 = s1 * inv;
    out.m2 = s2 * inv;
    if (!k) return out;
    if (!(*k > 0.0) || !std::isfinite(*k)) throw DomainError("mc_moments: k must be positive");
    out.k = *k;
    double sk = 0.0;
    double snk = 0.0;
    for (double v : samples) {
        if (!(v > 0.0)) throw DomainError("mc_moments: negative moments need positive samples");
        const double p = std::pow(v, *k);
        sk += p;
        snk += 1.0 / p;
    }
    out.mk = sk * inv;
    out.mnegk = snk * inv;
    return out;
}

namespace {

Grid1D beta_grid(const BetaConjugate& b, std::size_t nodes) {
    if (b.x < 0 || b.x > b.n) throw DomainError("BetaConjugate: need 0 <= x <= n");
    const double s = static_cast<double>(b.x);
    const double f = static_cast<double>(b.n - b.x);
    Grid1D g;
    g.axis = Axis{0.0, 1.0, Edge::Hard, Edge::Hard, AxisScale::Linear, nodes};
    g.log_density = [s, f](double t) {
        return (s == 0.0 ? 0.0 : s * std::log(t)) + (f == 0.0 ? 0.0 : f * std::log1p(-t));
    };
    return g;
}

Grid1D truncated_normal_grid(const TruncatedNormal& t, std::size_t nodes) {
    if (!(t.sd > 0.0) || !(t.a < t.b)) throw DomainError("TruncatedNormal: need sd > 0 and a < b");
    Grid1D g;
    g.axis = Axis{t.a, t.b, Edge::Hard, Edge::Hard, AxisScale::Linear, nodes};
    g.log_density = [t](double x) {
        const double z = (x - t.center) / t.sd;
        return -0.5 * z * z;
    };
    return g;
}

}  // namespace

MomentSet moments(const PosteriorModel& model, double k) {
    return std::visit(
        overloaded{[&](const BetaConjugate& b) {
                       if (k < static_cast<double>(b.x) + 1.0) return beta_moments(b.x, b.n, k);
                       MomentSet m = beta_moments(b.x, b.n);
                       m.k = k;
                       return m;
                   },
                   [&](const TruncatedNormal& t) {
                       return truncated_normal_moments(t.center, t.sd, t.a, t.b);
                   },
                   [&](const Grid1D& g) { return grid_moments_1d(g, k); },
                   [&](const Grid2D&) -> MomentSet {
                       throw DimensionError("moments: Grid2D is bivariate; use grid_moments_2d");
                   },
                   [&](const MonteCarlo& m) {
                       const bool positive = std::all_of(m.samples.begin(), m.samples.end(),
                                                         [](double v) { return v > 0.0; });
                       return mc_moments(m.samples, positive ? std::optional<double>(k) : std::nullopt);
                   }},
        model);
}

DiscreteDensity discretize(const PosteriorModel& model, std::size_t nodes) {
    return std::visit(
        overloaded{[&](const BetaConjugate& b) { return discretize(beta_grid(b, nodes)); },
                   [&](const TruncatedNormal& t) { return discretize(truncated_normal_grid(t, nodes)); },
                   [&](const Grid1D& g) { return discretize(g); },
                   [&](const Grid2D&) -> DiscreteDensity {
                       throw DimensionError("discretize: Grid2D is bivariate");
                   },
                   [&](const MonteCarlo& m) {
                       if (m.samples.empty()) throw DomainError("MonteCarlo: no samples");
                       std::vector<double> w(m.samples.size(), 1.0 / static_cast<double>(m.samples.size()));
                       return DiscreteDensity(m.samples, std::move(w));
                   }},
        model);
}

}  // namespace rsloss
