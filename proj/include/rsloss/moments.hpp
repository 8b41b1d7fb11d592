#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace rsloss {

/// Posterior moments E[theta], E[theta^2], E[theta^k], E[theta^-k].
/// mk / mnegk are empty when they were not requested or do not exist for the
/// support (any support reaching zero or below).
struct MomentSet {
    double m1 = 0.0;
    double m2 = 0.0;
    double k = 1.0;
    std::optional<double> mk;
    std::optional<double> mnegk;

    [[nodiscard]] double variance() const noexcept { return m2 - m1 * m1; }
};

/// How a quadrature support edge relates to the posterior: a Hard edge is a
/// true boundary of the support, a Cutoff truncates a decaying tail.
enum class Edge { Hard, Cutoff };

/// Integration variable: theta itself, or u = log(theta) (requires lo > 0).
enum class AxisScale { Linear, Log };

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    Edge lo_edge = Edge::Hard;
    Edge hi_edge = Edge::Hard;
    AxisScale scale = AxisScale::Linear;
    /// Minimum number of quadrature nodes; rounded up to whole panels.
    std::size_t nodes = 2001;
};

/// Univariate posterior known up to a constant through its log-density.
struct Grid1D {
    Axis axis;
    std::function<double(double)> log_density;
};

/// Bivariate posterior on a tensor grid. The batch evaluator fills
/// out[i * t2.size() + j] with log f(t1[i], t2[j]) so separable terms can be
/// hoisted out of the inner loop.
struct Grid2D {
    using BatchLogDensity = std::function<void(std::span<const double> t1,
                                               std::span<const double> t2, std::span<double> out)>;
    Axis axis1;
    Axis axis2;
    BatchLogDensity log_density;

    static Grid2D pointwise(Axis axis1, Axis axis2, std::function<double(double, double)> f);
};

/// Beta(x + 1, n - x + 1): binomial likelihood under a uniform prior.
struct BetaConjugate {
    std::int64_t x;
    std::int64_t n;
};

/// N(center, sd^2) truncated to (a, b): normal-mean posterior under a flat prior on (a, b).
struct TruncatedNormal {
    double center;
    double sd;
    double a;
    double b;
};

struct MonteCarlo {
    std::vector<double> samples;
};

using PosteriorModel = std::variant<BetaConjugate, TruncatedNormal, Grid1D, Grid2D, MonteCarlo>;

/// Quadrature health report. Grid routines fill it when a pointer is passed.
struct GridDiagnostics {
    /// False when some moment integrand is not below 1e-12 of its peak at a cutoff.
    bool tail_decayed = true;
    /// Largest fraction of probability mass found in an outermost panel next to a cutoff edge.
    double edge_mass = 0.0;
    std::size_t nodes_used = 0;
};

/// A normalized discrete approximation of a univariate posterior.
class DiscreteDensity {
public:
    DiscreteDensity(std::vector<double> theta, std::vector<double> weight);

    [[nodiscard]] std::span<const double> theta() const noexcept { return theta_; }
    [[nodiscard]] std::span<const double> weight() const noexcept { return weight_; }

    /// All four moments; throws DivergentMomentError when E[theta^-k] is not
    /// integrable at a zero boundary.
    [[nodiscard]] MomentSet moments(double k, GridDiagnostics* diag = nullptr) const;

    template <class F>
    [[nodiscard]] double expectation(F&& f) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < theta_.size(); ++i) sum += weight_[i] * f(theta_[i]);
        return sum;
    }

    // Tail information recorded by the discretizer.
    std::optional<double> zero_edge_exponent;  // p in f(theta) ~ theta^p near a hard zero edge
    struct CutoffEdge {
        double theta;
        double log_density;  // per unit of the integration variable
    };
    std::vector<CutoffEdge> cutoffs;
    std::vector<double> node_log_density;  // per unit of the integration variable
    double log_norm = 0.0;
    double max_log_density = 0.0;
    bool log_axis = false;

private:
    std::vector<double> theta_;
    std::vector<double> weight_;
};

/// Composite Gauss-Legendre nodes/weights on [lo, hi], order-10 panels, in
/// ascending order. A graded end is refined geometrically toward that edge.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t panels = 0;
    static constexpr std::size_t order = 10;
};
QuadratureRule gauss_legendre_panels(double lo, double hi, std::size_t min_nodes, bool grade_lo = false,
                                     bool grade_hi = false);

DiscreteDensity discretize(const Grid1D& model, GridDiagnostics* diag = nullptr);

/// Marginal densities of a Grid2D. Throws EdgeMassError when more than 1e-9 of
/// the mass falls in an outermost panel at a cutoff edge of either axis.
std::pair<DiscreteDensity, DiscreteDensity> discretize(const Grid2D& model,
                                                       GridDiagnostics* diag = nullptr);

/// Closed-form moments of Beta(x + 1, n - x + 1). mk / mnegk are computed only
/// when k is given; mnegk diverges for k >= x + 1.
MomentSet beta_moments(std::int64_t x, std::int64_t n, std::optional<double> k = std::nullopt);

/// Mean and second moment of N(center, sd^2) truncated to (a, b).
MomentSet truncated_normal_moments(double center, double sd, double a, double b);

MomentSet grid_moments_1d(const Grid1D& model, double k, GridDiagnostics* diag = nullptr);

std::pair<MomentSet, MomentSet> grid_moments_2d(const Grid2D& model, double k,
                                                GridDiagnostics* diag = nullptr);

/// Plug-in sample moments.
MomentSet mc_moments(std::span<const double> samples, std::optional<double> k = std::nullopt);

/// Moments of any univariate model (Grid2D is rejected).
MomentSet moments(const PosteriorModel& model, double k);

/// Quadrature-ready view of a univariate model. BetaConjugate and
/// TruncatedNormal are discretized on their support with `nodes` nodes.
DiscreteDensity discretize(const PosteriorModel& model, std::size_t nodes = 2001);

}  // namespace rsloss
