#include "rsloss/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "rsloss/errors.hpp"
#include "rsloss/estimators.hpp"
#include "rsloss/intervals.hpp"
#include "rsloss/rng.hpp"

namespace rsloss {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Neumaier summation.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Mean and sample sd of a sequence, both compensated.
template <class F>
std::pair<double, double> mean_sd(std::size_t count, F&& value) {
    CompensatedSum s;
    for (std::size_t i = 0; i < count; ++i) s.add(value(i));
    const double mean = s.value() / static_cast<double>(count);
    CompensatedSum ss;
    for (std::size_t i = 0; i < count; ++i) {
        const double d = value(i) - mean;
        ss.add(d * d);
    }
    const double sd = count > 1 ? std::sqrt(ss.value() / static_cast<double>(count - 1)) : 0.0;
    return {mean, sd};
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17e", x);
    return buf;
}

std::string format_k(double k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", k);
    return buf;
}

void parallel_chunks(std::size_t count, unsigned workers,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
    const unsigned w = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
    const std::size_t chunk = std::clamp<std::size_t>(count / (8 * std::size_t{w}), 1, 256);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        try {
            for (;;) {
                const std::size_t b = next.fetch_add(chunk);
                if (b >= count) break;
                fn(b, std::min(b + chunk, count));
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(count);
        }
    };
    if (w == 1) {
        work();
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(w - 1);
        for (unsigned i = 0; i + 1 < w; ++i) threads.emplace_back(work);
        work();
    }
    if (error) std::rethrow_exception(error);
}

// One replication writes `width` outputs; returning false marks it failed.
using Replicate = std::function<bool(StreamEngine&, std::span<double>)>;

struct Buffer {
    std::size_t width = 0;
    std::vector<double> values;  // successful replications only, row-major
    std::size_t ok = 0;
    std::size_t failed = 0;

    [[nodiscard]] double at(std::size_t rep, std::size_t slot) const { return values[rep * width + slot]; }
};

Buffer simulate(const ExperimentSpec& spec, std::size_t grid_index, std::size_t width, const Replicate& rep) {
    std::vector<double> raw(spec.reps * width, kNaN);
    std::vector<char> ok(spec.reps, 0);
    parallel_chunks(spec.reps, spec.workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t r = b; r < e; ++r) {
            StreamEngine eng(stream_id(spec.seed, grid_index, r));
            ok[r] = rep(eng, std::span<double>(raw.data() + r * width, width)) ? 1 : 0;
        }
    });
    Buffer out;
    out.width = width;
    out.values.reserve(raw.size());
    for (std::size_t r = 0; r < spec.reps; ++r) {
        if (!ok[r]) {
            ++out.failed;
            continue;
        }
        out.values.insert(out.values.end(), raw.begin() + r * width, raw.begin() + (r + 1) * width);
        ++out.ok;
    }
    return out;
}

// Estimator output slot with the truth it targets.
struct Column {
    std::string estimator;
    std::string target;
    std::optional<double> k;
    double theta = 0.0;
    std::size_t slot = 0;
    double scale = 1.0;  // multiplies squared-error quantities
};

void emit_estimator_rows(SweepResult& res, std::size_t g, const GridPoint& pt, const Buffer& buf,
                         const std::vector<Column>& cols) {
    if (buf.ok < 2) throw NumericalError("fewer than 2 successful replications at a grid point");
    std::vector<double> e(buf.ok);
    for (const Column& c : cols) {
        for (std::size_t r = 0; r < buf.ok; ++r) e[r] = buf.at(r, c.slot);
        const Aggregate a = aggregate(e, c.theta);
        SweepRow row;
        row.grid_index = g;
        row.point = pt;
        row.kind = RowKind::Estimator;
        row.estimator = c.estimator;
        row.target = c.target;
        row.k = c.k;
        row.mse = a.mse * c.scale;
        row.bias = a.bias * std::sqrt(c.scale);
        row.variance = a.variance * c.scale;
        row.mc_se = a.mc_se * c.scale;
        row.n_reps = buf.ok;
        res.rows.push_back(std::move(row));
    }
    // Paired differences, earlier estimator minus later, within each target.
    std::vector<double> e2(buf.ok);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        for (std::size_t j = i + 1; j < cols.size(); ++j) {
            if (cols[i].target != cols[j].target) continue;
            for (std::size_t r = 0; r < buf.ok; ++r) {
                e[r] = buf.at(r, cols[i].slot);
                e2[r] = buf.at(r, cols[j].slot);
            }
            const auto [diff, se] = paired_mse_difference(e, e2, cols[i].theta);
            SweepRow row;
            row.grid_index = g;
            row.point = pt;
            row.kind = RowKind::Difference;
            row.estimator = cols[i].estimator + "-" + cols[j].estimator;
            row.target = cols[i].target;
            row.mse = diff * cols[i].scale;
            row.mc_se = se * cols[i].scale;
            row.n_reps = buf.ok;
            res.rows.push_back(std::move(row));
        }
    }
}

SweepResult make_result(const ExperimentSpec& spec) {
    SweepResult r;
    r.study = spec.study;
    r.n = spec.n;
    r.reps = spec.reps;
    r.seed = spec.seed;
    return r;
}

void check_failures(const SweepResult& res, const ExperimentSpec& spec) {
    const double total = static_cast<double>(spec.reps * spec.grid.size());
    if (static_cast<double>(res.failed_replications) > kMaxFailedFraction * total) {
        std::ostringstream os;
        os << to_string(spec.study) << " study: " << res.failed_replications << " of " << total
           << " replications failed in quadrature (limit " << kMaxFailedFraction * 100 << "%)";
        throw NumericalError(os.str());
    }
}

void require_study(const ExperimentSpec& spec, Study s) {
    if (spec.study != s) throw ConfigError("spec.study is " + to_string(spec.study) + ", expected " + to_string(s));
    validate(spec);
}

std::vector<std::string> canonical_tags(const ExperimentSpec& spec) {
    std::vector<std::string> tags;
    for (const auto& t : spec.estimators.empty() ? default_estimators(spec.study) : spec.estimators) {
        std::string c = lower(t);
        if (spec.study == Study::RestrictedNormalMean) {
            if (c == "j") c = "J";
            else if (c == "u1") c = "U1";
            else if (c == "u2") c = "U2";
            else if (c == "u2prime" || c == "u2'") c = "U2prime";
        }
        if (std::find(tags.begin(), tags.end(), c) == tags.end()) tags.push_back(c);
    }
    return tags;
}

bool in(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

std::string to_string(Study s) {
    switch (s) {
        case Study::BinomialProbability: return "binomial";
        case Study::RestrictedNormalMean: return "normal";
        case Study::GammaParams: return "gamma";
        case Study::WeibullParams: return "weibull";
    }
    return "unknown";
}

std::vector<std::string> default_estimators(Study study) {
    switch (study) {
        case Study::BinomialProbability: return {"p_q", "p_ac", "p_iq"};
        case Study::RestrictedNormalMean: return {"J", "U1", "U2", "U2prime"};
        case Study::GammaParams: return {"posterior_mean", "precautionary"};
        case Study::WeibullParams: return {"posterior_mean", "scale_mean"};
    }
    return {};
}

std::vector<GridPoint> default_grid(Study study, double a) {
    std::vector<GridPoint> g;
    switch (study) {
        case Study::BinomialProbability:
            for (int i = 1; i <= 99; ++i) g.push_back({i / 100.0, std::nullopt});
            break;
        case Study::RestrictedNormalMean:
            for (int i = -19; i <= 19; ++i) g.push_back({a * i / 20.0, std::nullopt});
            break;
        case Study::GammaParams:
            for (double x : {1.0, 3.0, 5.0, 7.0, 9.0})
                for (double y : {1.0, 3.0, 5.0, 7.0, 9.0}) g.push_back({x, y});
            break;
        case Study::WeibullParams:
            for (double l : {1.0, 2.0, 3.0, 4.0, 5.0})
                for (double v : {1.0, 2.0, 5.0, 10.0, 15.0}) g.push_back({l, v});
            break;
    }
    return g;
}

void validate(const ExperimentSpec& spec) {
    auto fail = [](const std::string& m) { throw ConfigError(m); };
    if (spec.reps < 100) fail("reps must be at least 100");
    if (spec.grid.empty()) fail("grid must not be empty");
    const bool bivariate = spec.study == Study::GammaParams || spec.study == Study::WeibullParams;
    const std::int64_t min_n = spec.study == Study::BinomialProbability ? 1 : 2;
    if (spec.n < min_n) fail("n must be at least " + std::to_string(min_n));
    const auto& x = spec.extras;
    if (spec.study == Study::RestrictedNormalMean) {
        if (!(x.a > 0.0)) fail("restricted normal study: a must be positive");
        if (!(x.sigma2 > 0.0)) fail("restricted normal study: sigma2 must be positive");
        if (!(x.wide_factor >= 1.0)) fail("restricted normal study: wide_factor must be >= 1");
    }
    if (bivariate && (!(x.prior.shape > 0.0) || !(x.prior.rate > 0.0)))
        fail("prior shape and rate must be positive");
    for (const GridPoint& p : spec.grid) {
        std::ostringstream os;
        os << "grid point (" << p.param1;
        if (p.param2) os << ", " << *p.param2;
        os << ") is outside the " << to_string(spec.study) << " parameter space";
        if (bivariate != p.param2.has_value()) fail(os.str());
        bool inside = false;
        switch (spec.study) {
            case Study::BinomialProbability: inside = p.param1 > 0.0 && p.param1 < 1.0; break;
            case Study::RestrictedNormalMean: inside = std::abs(p.param1) < x.a; break;
            default: inside = p.param1 > 0.0 && *p.param2 > 0.0 && std::isfinite(p.param1) && std::isfinite(*p.param2);
        }
        if (!inside) fail(os.str());
    }
    const auto tags = canonical_tags(spec);
    const auto known = default_estimators(spec.study);
    for (const auto& t : tags)
        if (!in(known, t)) fail("unknown estimator tag '" + t + "' for the " + to_string(spec.study) + " study");
    if (spec.study == Study::WeibullParams) {
        if (x.k_list.empty() && in(tags, "scale_mean")) fail("weibull study: k_list must not be empty");
        for (double k : x.k_list)
            if (!(k > 0.0)) fail("weibull study: k values must be positive");
    }
    if (spec.study == Study::BinomialProbability) {
        if (!(x.ci_level > 0.0 && x.ci_level < 1.0)) fail("ci_level must lie in (0, 1)");
        for (const auto& kind : x.ci_kinds) {
            const std::string c = lower(kind);
            const bool ok = c == "wilson_ac" || c == "delta_iq" ||
                            (c.rfind("normal:", 0) == 0 && in(known, c.substr(7)));
            if (!ok) fail("unknown CI kind '" + kind + "'");
        }
    } else if (!x.ci_kinds.empty()) {
        fail("CI kinds apply only to the binomial study");
    }
}

std::string SweepRow::label() const { return target.empty() ? estimator : estimator + "@" + target; }

const SweepRow* SweepResult::find(std::size_t grid_index, RowKind kind, const std::string& estimator,
                                  const std::string& target, const std::string& coverage_kind) const {
    for (const auto& r : rows)
        if (r.grid_index == grid_index && r.kind == kind && r.estimator == estimator && r.target == target &&
            r.coverage_kind == coverage_kind)
            return &r;
    return nullptr;
}

Aggregate aggregate(std::span<const double> estimates, double theta) {
    if (estimates.size() < 2) throw DomainError("aggregate: need at least 2 estimates");
    const std::size_t n = estimates.size();
    const auto [mean_sq, sd_sq] = mean_sd(n, [&](std::size_t i) {
        const double d = estimates[i] - theta;
        return d * d;
    });
    CompensatedSum dev;
    for (double e : estimates) dev.add(e - theta);
    Aggregate a;
    a.mse = mean_sq;
    a.bias = dev.value() / static_cast<double>(n);
    a.variance = std::max(0.0, a.mse - a.bias * a.bias);
    a.mc_se = sd_sq / std::sqrt(static_cast<double>(n));
    return a;
}

std::pair<double, double> paired_mse_difference(std::span<const double> e1, std::span<const double> e2,
                                                double theta) {
    if (e1.size() != e2.size()) throw DimensionError("paired_mse_difference: runs differ in length");
    if (e1.size() < 2) throw DomainError("paired_mse_difference: need at least 2 estimates per run");
    const auto [mean, sd] = mean_sd(e1.size(), [&](std::size_t i) {
        const double a = e1[i] - theta;
        const double b = e2[i] - theta;
        return a * a - b * b;
    });
    return {mean, sd / std::sqrt(static_cast<double>(e1.size()))};
}

SweepResult run_binomial_study(const ExperimentSpec& spec) {
    require_study(spec, Study::BinomialProbability);
    const auto tags = canonical_tags(spec);
    const std::int64_t n = spec.n;
    const double dn = static_cast<double>(n);

    auto estimate_of = [&](const std::string& tag, std::int64_t x) {
        if (tag == "p_q") return (static_cast<double>(x) + 1.0) / (dn + 2.0);
        if (tag == "p_ac") return (static_cast<double>(x) + 2.0) / (dn + 4.0);
        return probability_estimate(x, n);
    };
    // Every estimator is a function of x alone.
    std::vector<std::vector<double>> table(tags.size(), std::vector<double>(n + 1));
    for (std::size_t t = 0; t < tags.size(); ++t)
        for (std::int64_t x = 0; x <= n; ++x) table[t][x] = estimate_of(tags[t], x);

    struct CiKind {
        std::string name;    // coverage_kind column
        std::string centre;  // estimator column
        std::vector<ConfidenceInterval> by_x;
    };
    std::vector<CiKind> cis;
    for (const auto& raw : spec.extras.ci_kinds) {
        const std::string c = lower(raw);
        CiKind k;
        if (c == "wilson_ac") {
            k = {"wilson_ac", "p_ac", {}};
            for (std::int64_t x = 0; x <= n; ++x) k.by_x.push_back(ci_wilson_ac(x, n));
        } else if (c == "delta_iq") {
            k = {"delta_iq", "p_iq", {}};
            for (std::int64_t x = 0; x <= n; ++x) k.by_x.push_back(ci_delta_iq(x, n));
        } else {
            k = {"normal", c.substr(7), {}};
            for (std::int64_t x = 0; x <= n; ++x) {
                const double p = estimate_of(k.centre, x);
                try {
                    k.by_x.push_back(ci_normal(p, n, spec.extras.ci_level));
                } catch (const DomainError&) {
                    // Degenerate zero-width interval at the point estimate.
                    k.by_x.push_back(ConfidenceInterval{p, p, p, IntervalKind::NormalApprox, spec.extras.ci_level});
                }
            }
        }
        cis.push_back(std::move(k));
    }

    SweepResult res = make_result(spec);
    const std::size_t width = tags.size() + cis.size();
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
        const double theta = spec.grid[g].param1;
        std::vector<std::vector<double>> cover(cis.size(), std::vector<double>(n + 1));
        for (std::size_t c = 0; c < cis.size(); ++c)
            for (std::int64_t x = 0; x <= n; ++x) cover[c][x] = cis[c].by_x[x].covers(theta) ? 1.0 : 0.0;

        const Buffer buf = simulate(spec, g, width, [&](StreamEngine& eng, std::span<double> out) {
            std::binomial_distribution<std::int64_t> draw(n, theta);
            const std::int64_t x = draw(eng);
            for (std::size_t t = 0; t < tags.size(); ++t) out[t] = table[t][x];
            for (std::size_t c = 0; c < cis.size(); ++c) out[tags.size() + c] = cover[c][x];
            return true;
        });
        std::vector<Column> cols;
        for (std::size_t t = 0; t < tags.size(); ++t) cols.push_back({tags[t], "", std::nullopt, theta, t});
        emit_estimator_rows(res, g, spec.grid[g], buf, cols);
        for (std::size_t c = 0; c < cis.size(); ++c) {
            CompensatedSum s;
            for (std::size_t r = 0; r < buf.ok; ++r) s.add(buf.at(r, tags.size() + c));
            const double cov = s.value() / static_cast<double>(buf.ok);
            SweepRow row;
            row.grid_index = g;
            row.point = spec.grid[g];
            row.kind = RowKind::Coverage;
            row.estimator = cis[c].centre;
            row.coverage_kind = cis[c].name;
            row.coverage = cov;
            row.mc_se = std::sqrt(cov * (1.0 - cov) / static_cast<double>(buf.ok));
            row.n_reps = buf.ok;
            res.rows.push_back(std::move(row));
        }
    }
    return res;
}

SweepResult run_restricted_normal_study(const ExperimentSpec& spec) {
    require_study(spec, Study::RestrictedNormalMean);
    const auto tags = canonical_tags(spec);
    const double a = spec.extras.a;
    const double wide = spec.extras.wide_factor * a;
    const double sigma = std::sqrt(spec.extras.sigma2);
    const double se = sigma / std::sqrt(static_cast<double>(spec.n));

    SweepResult res = make_result(spec);
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
        const double mu = spec.grid[g].param1;
        const Buffer buf = simulate(spec, g, tags.size(), [&](StreamEngine& eng, std::span<double> out) {
            std::normal_distribution<double> draw(mu, sigma);
            CompensatedSum s;
            for (std::int64_t i = 0; i < spec.n; ++i) s.add(draw(eng));
            const double xbar = s.value() / static_cast<double>(spec.n);
            try {
                const MomentSet m = truncated_normal_moments(xbar, se, -a, a);
                for (std::size_t t = 0; t < tags.size(); ++t) {
                    if (tags[t] == "J") out[t] = xbar;
                    else if (tags[t] == "U1") out[t] = m.m1;
                    else if (tags[t] == "U2") out[t] = interval_estimate(m, -a, a).point;
                    else out[t] = interval_estimate(m, -wide, wide).point;
                }
            } catch (const Error&) {
                return false;
            }
            return true;
        });
        res.failed_replications += buf.failed;
        std::vector<Column> cols;
        for (std::size_t t = 0; t < tags.size(); ++t) cols.push_back({tags[t], "", std::nullopt, mu, t});
        emit_estimator_rows(res, g, spec.grid[g], buf, cols);
    }
    check_failures(res, spec);
    return res;
}

SweepResult run_gamma_study(const ExperimentSpec& spec) {
    require_study(spec, Study::GammaParams);
    const auto tags = canonical_tags(spec);
    const std::size_t nt = tags.size();

    SweepResult res = make_result(spec);
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
        const double a1 = spec.grid[g].param1;
        const double a2 = *spec.grid[g].param2;
        const Buffer buf = simulate(spec, g, 2 * nt, [&](StreamEngine& eng, std::span<double> out) {
            std::gamma_distribution<double> draw(a1, a2);
            std::vector<double> data(static_cast<std::size_t>(spec.n));
            for (double& x : data) x = draw(eng);
            try {
                const auto [d1, d2] = adaptive_marginals(
                    gamma_shape_scale_posterior(data, spec.extras.prior, spec.extras.grid), spec.extras.grid, 1.0);
                const MomentSet m[2] = {d1.moments(1.0), d2.moments(1.0)};
                for (std::size_t p = 0; p < 2; ++p)
                    for (std::size_t t = 0; t < nt; ++t)
                        out[p * nt + t] = tags[t] == "posterior_mean" ? m[p].m1 : precautionary_estimate(m[p]).point;
            } catch (const Error&) {
                return false;
            }
            return true;
        });
        res.failed_replications += buf.failed;
        std::vector<Column> cols;
        for (std::size_t t = 0; t < nt; ++t) cols.push_back({tags[t], "alpha1", std::nullopt, a1, t});
        for (std::size_t t = 0; t < nt; ++t) cols.push_back({tags[t], "alpha2", std::nullopt, a2, nt + t});
        emit_estimator_rows(res, g, spec.grid[g], buf, cols);
    }
    check_failures(res, spec);
    return res;
}

SweepResult run_weibull_study(const ExperimentSpec& spec) {
    require_study(spec, Study::WeibullParams);
    struct Est {
        std::string tag;
        std::optional<double> k;
    };
    std::vector<Est> ests;
    for (const auto& t : canonical_tags(spec)) {
        if (t == "posterior_mean") ests.push_back({t, std::nullopt});
        else
            for (double k : spec.extras.k_list) ests.push_back({"scale_mean_k" + format_k(k), k});
    }
    const std::size_t ne = ests.size();
    double k_max = 1.0;
    for (const auto& e : ests) k_max = std::max(k_max, e.k.value_or(1.0));

    SweepResult res = make_result(spec);
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
        const double lambda = spec.grid[g].param1;
        const double nu = *spec.grid[g].param2;
        const Buffer buf = simulate(spec, g, 2 * ne, [&](StreamEngine& eng, std::span<double> out) {
            std::weibull_distribution<double> draw(lambda, nu);
            std::vector<double> data(static_cast<std::size_t>(spec.n));
            for (double& x : data) x = draw(eng);
            try {
                const auto [d1, d2] = adaptive_marginals(
                    weibull_posterior(data, spec.extras.prior, spec.extras.grid, spec.extras.weibull_prior_on),
                    spec.extras.grid, k_max);
                const DiscreteDensity* d[2] = {&d1, &d2};
                for (std::size_t p = 0; p < 2; ++p)
                    for (std::size_t e = 0; e < ne; ++e)
                        out[p * ne + e] = ests[e].k ? scale_mean(d[p]->moments(*ests[e].k)).point
                                                    : d[p]->moments(1.0).m1;
            } catch (const Error&) {
                return false;
            }
            return true;
        });
        res.failed_replications += buf.failed;
        const double scaled = 1.0 / std::pow(nu, lambda);
        std::vector<Column> cols;
        for (std::size_t e = 0; e < ne; ++e) cols.push_back({ests[e].tag, "lambda", ests[e].k, lambda, e});
        for (std::size_t e = 0; e < ne; ++e) cols.push_back({ests[e].tag, "nu", ests[e].k, nu, ne + e});
        for (std::size_t e = 0; e < ne; ++e)
            cols.push_back({ests[e].tag, "nu_scaled", ests[e].k, nu, ne + e, scaled});
        emit_estimator_rows(res, g, spec.grid[g], buf, cols);
    }
    check_failures(res, spec);
    return res;
}

SweepResult run_study(const ExperimentSpec& spec) {
    switch (spec.study) {
        case Study::BinomialProbability: return run_binomial_study(spec);
        case Study::RestrictedNormalMean: return run_restricted_normal_study(spec);
        case Study::GammaParams: return run_gamma_study(spec);
        case Study::WeibullParams: return run_weibull_study(spec);
    }
    throw ConfigError("unknown study");
}

void write_csv(std::ostream& os, const SweepResult& res) {
    os << kCsvHeader << '\n';
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    for (const SweepRow& r : res.rows) {
        os << to_string(res.study) << ',' << res.n << ',' << res.reps << ',' << res.seed << ','
           << format_number(r.point.param1) << ',' << opt(r.point.param2) << ',' << r.label() << ','
           << (r.k ? format_k(*r.k) : std::string()) << ',' << opt(r.mse) << ',' << opt(r.bias) << ','
           << opt(r.variance) << ',' << format_number(r.mc_se) << ',' << r.coverage_kind << ','
           << opt(r.coverage) << '\n';
    }
}

}  // namespace rsloss
