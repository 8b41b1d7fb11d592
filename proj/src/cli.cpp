#include "rsloss/cli.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rsloss/errors.hpp"
#include "rsloss/estimators.hpp"
#include "rsloss/harness.hpp"
#include "rsloss/losses.hpp"
#include "rsloss/moments.hpp"
#include "rsloss/verify.hpp"

namespace rsloss::cli {

namespace {

// Shortest of %.15g / %.17g that reads back exactly.
std::string text(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    if (std::strtod(buf, nullptr) != x) std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
template <class T>
    requires std::is_integral_v<T>
std::string text(T x) {
    if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
    return std::to_string(x);
}
std::string text(const std::string& s) { return s; }
template <class T>
std::string text(const std::vector<T>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + text(v[i]);
    return s;
}
template <class T, std::size_t N>
std::string text(const std::array<T, N>& v) {
    std::string s;
    for (std::size_t i = 0; i < N; ++i) s += (i ? " " : "") + text(v[i]);
    return s;
}

template <class T>
std::string text(const std::optional<T>& v) {
    return v ? text(*v) : std::string();
}

// Options of one subcommand plus the callbacks that echo their resolved values.
struct Command {
    CLI::App* app = nullptr;
    std::string config;
    std::vector<std::pair<std::string, std::function<std::string()>>> echo;

    template <class T>
    CLI::Option* add(const std::string& name, T& var, const std::string& desc) {
        echo.emplace_back(name, [&var] { return text(var); });
        return app->add_option("--" + name, var, desc);
    }
    CLI::Option* flag(const std::string& name, bool& var, const std::string& desc) {
        echo.emplace_back(name, [&var] { return text(var); });
        return app->add_flag("--" + name, var, desc);
    }
};

struct ExperimentOptions {
    std::int64_t n = 15;
    std::size_t reps = 0;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string out = "-";
    std::vector<std::string> estimators;
    std::vector<double> grid1;
    std::vector<double> grid2;
    double sigma2 = 4.0;
    double a = 2.0;
    double wide_factor = 1.25;
    double prior_shape = 1e-4;
    double prior_rate = 1e-4;
    std::string prior_on = "scale";
    std::vector<double> k_list{1.0, 2.0, 3.0, 4.0};
    std::vector<std::string> ci;
    double level = 0.95;
    std::size_t nodes = 160;
};

struct EstimateOptions {
    std::vector<std::int64_t> beta;
    std::vector<double> truncnorm;
    std::string mc;
    std::string loss = "sq";
    double k = 1.0;
    std::array<double, 2> interval{0.0, 1.0};
    bool numeric = false;
};

struct LossesOptions {
    std::string loss = "sq";
    double k = 1.0;
    std::array<double, 2> interval{0.0, 1.0};
    std::vector<double> theta;
    std::vector<double> d;
};

struct SampleSizeOptions {
    std::optional<std::int64_t> x;
    std::optional<std::int64_t> n;
    std::array<double, 2> interval{0.1, 1.0};
    double target = 0.5;
    double alpha = 0.05;
    double power = 0.9;
    std::optional<double> p_placebo;
};

struct VerifyOptions {
    std::string family;
    std::uint64_t seed = 1;
};

class Program {
public:
    Program() {
        app.require_subcommand(1);
        app.set_version_flag("--version", std::string("rsloss ") + version());
        setup_experiment("binomial", "Binomial probability study: MSE of p_q, p_ac, p_iq and CI coverage",
                         Study::BinomialProbability, binomial);
        setup_experiment("coverage", "Coverage of the binomial confidence intervals (all CI kinds by default)",
                         Study::BinomialProbability, coverage);
        setup_experiment("normal", "Restricted normal mean study: J, U1, U2, U2prime",
                         Study::RestrictedNormalMean, normal);
        setup_experiment("gamma", "Gamma shape/scale study: posterior mean vs precautionary estimator",
                         Study::GammaParams, gamma);
        setup_experiment("weibull", "Weibull shape/scale study: posterior mean vs scale-family estimators",
                         Study::WeibullParams, weibull);
        setup_estimate();
        setup_losses();
        setup_samplesize();
        setup_verify();
    }

    CLI::App app{"Loss functions and Bayes estimators for restricted parameter spaces", "rsloss"};
    ExperimentOptions binomial, coverage, normal, gamma, weibull;
    EstimateOptions estimate;
    LossesOptions losses;
    SampleSizeOptions samplesize;
    VerifyOptions verify;
    std::map<std::string, Command> commands;
    std::map<std::string, Study> studies;
    std::map<std::string, ExperimentOptions*> experiments;

    Command* selected() {
        for (auto& [name, cmd] : commands)
            if (cmd.app->parsed()) return &cmd;
        return nullptr;
    }

private:
    Command& command(const std::string& name, const std::string& desc) {
        Command& c = commands[name];
        c.app = app.add_subcommand(name, desc);
        c.app->add_option("--config", c.config, "Flat key=value file; flags take precedence")
            ->check(CLI::ExistingFile);
        return c;
    }

    void setup_experiment(const std::string& name, const std::string& desc, Study study, ExperimentOptions& o) {
        Command& c = command(name, desc);
        studies[name] = study;
        experiments[name] = &o;
        const bool bivariate = study == Study::GammaParams || study == Study::WeibullParams;
        o.reps = bivariate ? 1000 : 100000;
        c.add("n", o.n, "Sample size per replication")->capture_default_str();
        c.add("reps", o.reps, "Replications per grid point")->capture_default_str();
        c.add("seed", o.seed, "Random seed")->capture_default_str();
        c.add("workers", o.workers, "Worker threads (0 = all cores); results do not depend on it")
            ->capture_default_str();
        c.add("out", o.out, "CSV output path ('-' for standard output)")->capture_default_str();
        c.add("estimators", o.estimators, "Estimator tags")->delimiter(',');
        switch (study) {
            case Study::BinomialProbability:
                c.add("theta", o.grid1, "True probabilities")->delimiter(',');
                c.add("ci", o.ci, "CI kinds: normal:p_q, normal:p_ac, normal:p_iq, wilson_ac, delta_iq")
                    ->delimiter(',');
                c.add("level", o.level, "Level of the normal-approximation intervals")->capture_default_str();
                break;
            case Study::RestrictedNormalMean:
                c.add("mu", o.grid1, "True means inside (-a, a)")->delimiter(',');
                c.add("a", o.a, "Half-width of the parameter interval")->capture_default_str();
                c.add("sigma2", o.sigma2, "Observation variance")->capture_default_str();
                c.add("wide-factor", o.wide_factor, "U2prime uses the loss interval (-f a, f a)")
                    ->capture_default_str();
                break;
            case Study::GammaParams:
            case Study::WeibullParams: {
                const bool g = study == Study::GammaParams;
                c.add(g ? "alpha1" : "lambda", o.grid1, g ? "True shapes" : "True shapes lambda")->delimiter(',');
                c.add(g ? "alpha2" : "nu", o.grid2, g ? "True scales" : "True scales nu")->delimiter(',');
                c.add("prior-shape", o.prior_shape, "Gamma prior shape")->capture_default_str();
                c.add("prior-rate", o.prior_rate, "Gamma prior rate")->capture_default_str();
                c.add("nodes", o.nodes, "Quadrature nodes per axis")->capture_default_str();
                if (!g) {
                    c.add("k", o.k_list, "Orders k of the scale-family estimator")->delimiter(',');
                    c.add("prior-on", o.prior_on, "Second prior on the scale nu or on nu^lambda")
                        ->check(CLI::IsMember({"scale", "scale_power"}))
                        ->capture_default_str();
                }
                break;
            }
        }
    }

    void setup_estimate() {
        Command& c = command("estimate", "Bayes estimate and achieved risk for one posterior");
        auto& o = estimate;
        auto* beta = c.add("beta", o.beta, "Beta posterior from x successes in n trials (uniform prior)")
                         ->expected(2);
        auto* tn = c.add("truncnorm", o.truncnorm, "Normal posterior N(center, sd^2) truncated to (a, b)")
                       ->expected(4);
        auto* mc = c.add("mc", o.mc, "File of posterior samples")->check(CLI::ExistingFile);
        beta->excludes(tn)->excludes(mc);
        tn->excludes(mc);
        c.add("loss", o.loss, "sq, prec, scale or iq")
            ->check(CLI::IsMember({"sq", "prec", "scale", "iq"}))
            ->capture_default_str();
        c.add("k", o.k, "Order of the scale-family loss")->capture_default_str();
        c.add("interval", o.interval, "Interval (a, b) of the iq loss");
        c.flag("numeric", o.numeric, "Minimize the posterior expected loss numerically");
    }

    void setup_losses() {
        Command& c = command("losses", "Evaluate a loss function");
        auto& o = losses;
        c.add("loss", o.loss,
              "sq, prec, scale, sip, nsq, stein, brown, iq, iblogit (multivariate: scale, prec with list values)")
            ->check(CLI::IsMember({"sq", "prec", "scale", "sip", "nsq", "stein", "brown", "iq", "iblogit"}))
            ->capture_default_str();
        c.add("k", o.k, "Order of the scale-family loss")->capture_default_str();
        c.add("interval", o.interval, "Interval (a, b) of the iq / iblogit losses");
        c.add("theta", o.theta, "True value(s)")->delimiter(',')->required();
        c.add("d", o.d, "Decision(s)")->delimiter(',')->required();
    }

    void setup_samplesize() {
        Command& c = command("samplesize", "Per-arm sample size with naive and interval placebo estimates");
        auto& o = samplesize;
        c.add("x", o.x, "Placebo responders in the reference data");
        c.add("n", o.n, "Placebo patients in the reference data");
        c.add("interval", o.interval, "Interval (a, b) for the placebo response");
        c.add("target", o.target, "Clinically important response")->capture_default_str();
        c.add("alpha", o.alpha, "One-sided type-I error")->capture_default_str();
        c.add("power", o.power, "Power 1 - beta")->capture_default_str();
        c.add("p-placebo", o.p_placebo, "Placebo response used directly");
    }

    void setup_verify() {
        Command& c = command("verify", "Run the oracle cross-check suite");
        c.add("family", verify.family, "Only this family: symmetry, moments, estimators, intervals");
        c.add("seed", verify.seed, "Seed of the randomized inputs")->capture_default_str();
    }
};

// key -> values from a flat key=value file. Lines of a previous CSV output
// ("# config: key=value") are accepted as well; other '#' lines are comments.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    const std::string echo_prefix = "# config: ";
    while (std::getline(in, line)) {
        if (line.rfind(echo_prefix, 0) == 0) line = line.substr(echo_prefix.size());
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#' || line[first] == ';') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r\"");
            const auto e = s.find_last_not_of(" \t\r\"");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

int parse(Program& p, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"rsloss"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        p.app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        const Program* prog = &p;
        const CLI::App* target = &prog->app;
        for (const auto& [name, cmd] : prog->commands)
            if (cmd.app->parsed()) target = cmd.app;
        out << target->help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << p.app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << "rsloss " << version() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return -1;
}

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_header(std::ostream& os, const std::string& name, const Command& cmd, std::uint64_t seed) {
    os << "# rsloss " << version() << '\n';
    os << "# command: " << name << '\n';
    os << "# seed: " << seed << '\n';
    os << "# timestamp: " << utc_timestamp() << '\n';
    for (const auto& [key, value] : cmd.echo) os << "# config: " << key << '=' << value() << '\n';
}

std::vector<double> values_or(const std::vector<double>& v, std::vector<double> fallback) {
    return v.empty() ? std::move(fallback) : v;
}

int cmd_experiment(Program& p, const std::string& name, Command& cmd, std::ostream& out, std::ostream& err) {
    ExperimentOptions& o = *p.experiments.at(name);
    const Study study = p.studies.at(name);

    ExperimentSpec spec;
    spec.study = study;
    spec.n = o.n;
    spec.reps = o.reps;
    spec.seed = o.seed;
    spec.workers = o.workers;
    spec.extras.sigma2 = o.sigma2;
    spec.extras.a = o.a;
    spec.extras.wide_factor = o.wide_factor;
    spec.extras.prior = {o.prior_shape, o.prior_rate};
    spec.extras.weibull_prior_on = o.prior_on == "scale_power" ? WeibullPriorOn::ScalePower : WeibullPriorOn::Scale;
    spec.extras.k_list = o.k_list;
    spec.extras.ci_level = o.level;
    spec.extras.grid.nodes = o.nodes;

    // Resolve defaults into the options so the header records them.
    if (o.estimators.empty()) o.estimators = default_estimators(study);
    spec.estimators = o.estimators;
    switch (study) {
        case Study::BinomialProbability: {
            std::vector<double> fallback;
            if (name == "coverage") {
                for (int i = 1; i <= 19; ++i) fallback.push_back(0.05 * i);
                if (o.ci.empty()) o.ci = {"normal:p_q", "normal:p_ac", "normal:p_iq", "wilson_ac", "delta_iq"};
            } else {
                for (const auto& g : default_grid(study)) fallback.push_back(g.param1);
            }
            o.grid1 = values_or(o.grid1, fallback);
            spec.extras.ci_kinds = o.ci;
            for (double t : o.grid1) spec.grid.push_back({t, std::nullopt});
            break;
        }
        case Study::RestrictedNormalMean: {
            std::vector<double> fallback;
            for (const auto& g : default_grid(study, o.a)) fallback.push_back(g.param1);
            o.grid1 = values_or(o.grid1, fallback);
            for (double m : o.grid1) spec.grid.push_back({m, std::nullopt});
            break;
        }
        case Study::GammaParams:
            o.grid1 = values_or(o.grid1, {1, 3, 5, 7, 9});
            o.grid2 = values_or(o.grid2, {1, 3, 5, 7, 9});
            for (double x : o.grid1)
                for (double y : o.grid2) spec.grid.push_back({x, y});
            break;
        case Study::WeibullParams:
            o.grid1 = values_or(o.grid1, {1, 2, 3, 4, 5});
            o.grid2 = values_or(o.grid2, {1, 2, 5, 10, 15});
            for (double x : o.grid1)
                for (double y : o.grid2) spec.grid.push_back({x, y});
            break;
    }

    const SweepResult result = run_study(spec);

    std::ofstream file;
    const bool to_stdout = o.out == "-";
    if (!to_stdout) {
        file.open(o.out);
        if (!file) throw NumericalError("cannot open output file " + o.out);
    }
    std::ostream& csv = to_stdout ? out : file;
    write_header(csv, name, cmd, o.seed);
    write_csv(csv, result);
    csv.flush();
    if (!csv) throw NumericalError("failed writing " + (to_stdout ? std::string("standard output") : o.out));

    std::ostream& summary = to_stdout ? err : out;
    summary << name << ": " << spec.grid.size() << " grid points, " << spec.reps << " replications each, "
            << result.rows.size() << " rows";
    if (result.failed_replications) summary << ", " << result.failed_replications << " replications skipped";
    if (!to_stdout) summary << " -> " << o.out;
    summary << '\n';
    return kExitOk;
}

std::vector<double> read_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read samples from " + path);
    std::vector<double> v;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw DomainError("not a number in " + path + ": '" + tok + "'");
        v.push_back(x);
    }
    return v;
}

int cmd_estimate(Program& p, std::ostream& out) {
    const auto& o = p.estimate;
    PosteriorModel model;
    double lo = 0.0;
    double hi = 1.0;
    if (!o.beta.empty()) {
        model = BetaConjugate{o.beta[0], o.beta[1]};
    } else if (!o.truncnorm.empty()) {
        model = TruncatedNormal{o.truncnorm[0], o.truncnorm[1], o.truncnorm[2], o.truncnorm[3]};
        lo = o.truncnorm[2];
        hi = o.truncnorm[3];
    } else if (!o.mc.empty()) {
        auto s = read_samples(o.mc);
        if (s.size() < 2) throw DomainError("need at least 2 samples in " + o.mc);
        lo = *std::min_element(s.begin(), s.end());
        hi = *std::max_element(s.begin(), s.end());
        model = MonteCarlo{std::move(s)};
    } else {
        throw ConfigError("estimate needs one of --beta, --truncnorm or --mc");
    }

    LossFunction loss = LossFunction::squared_error();
    if (o.loss == "prec") loss = LossFunction::precautionary();
    if (o.loss == "scale") loss = LossFunction::scale_family(o.k);
    if (o.loss == "iq") loss = LossFunction::interval_squared(o.interval[0], o.interval[1]);

    EstimatorResult r;
    if (o.numeric) {
        if (o.loss == "iq") {
            lo = std::max(lo, o.interval[0]);
            hi = std::min(hi, o.interval[1]);
        }
        r = numeric_minimize(loss, model, lo, hi);
    } else {
        const auto* mc = std::get_if<MonteCarlo>(&model);
        const double k = o.loss == "scale" ? o.k : 1.0;
        const MomentSet m = mc ? mc_moments(mc->samples, o.loss == "scale" ? std::optional<double>(k) : std::nullopt)
                               : moments(model, k);
        if (o.loss == "sq") r = {m.m1, m.variance(), EstimatorMethod::ClosedForm};
        else if (o.loss == "prec") r = precautionary_estimate(m);
        else if (o.loss == "scale") r = scale_mean(m);
        else r = interval_estimate(m, o.interval[0], o.interval[1]);
    }
    out << std::setprecision(12) << r.point << '\t';
    if (r.achieved_risk) out << *r.achieved_risk;
    else out << "nan";
    out << '\n';
    return kExitOk;
}

int cmd_losses(Program& p, std::ostream& out) {
    const auto& o = p.losses;
    if (o.theta.size() != o.d.size()) throw DimensionError("--theta and --d need the same number of values");
    const double a = o.interval[0];
    const double b = o.interval[1];
    double value = 0.0;
    if (o.theta.size() > 1) {
        LossFunction loss = o.loss == "scale" ? LossFunction::multivariate_scale_family(o.k, o.theta.size())
                            : o.loss == "prec"
                                ? LossFunction::multivariate_precautionary(o.theta.size())
                                : throw ConfigError("only scale and prec have multivariate forms");
        value = evaluate(loss, o.theta, o.d);
    } else {
        const std::map<std::string, std::function<LossFunction()>> make{
            {"sq", [] { return LossFunction::squared_error(); }},
            {"prec", [] { return LossFunction::precautionary(); }},
            {"scale", [&] { return LossFunction::scale_family(o.k); }},
            {"sip", [] { return LossFunction::scale_invariant_precautionary(); }},
            {"nsq", [] { return LossFunction::normalized_squared(); }},
            {"stein", [] { return LossFunction::stein(); }},
            {"brown", [] { return LossFunction::brown_log(); }},
            {"iq", [&] { return LossFunction::interval_squared(a, b); }},
            {"iblogit", [&] { return LossFunction::interval_brown_logit(a, b); }},
        };
        value = evaluate(make.at(o.loss)(), o.theta[0], o.d[0]);
    }
    out << std::setprecision(17) << value << '\n';
    return kExitOk;
}

int cmd_samplesize(Program& p, std::ostream& out, std::ostream& err) {
    const auto& o = p.samplesize;
    const double beta = 1.0 - o.power;
    out << std::setprecision(12);
    if (o.p_placebo) {
        const auto n = required_sample_size(o.target, *o.p_placebo, o.alpha, beta);
        out << "n=" << n << " p_placebo=" << *o.p_placebo << '\n';
        return kExitOk;
    }
    if (!o.x || !o.n) throw ConfigError("samplesize needs --x and --n, or --p-placebo");
    // The paper's plug-in: Beta(x + 1, n - x + 1) moments used with the interval
    // loss on (a, b) even though the posterior is not restricted to it.
    const double p_iq =
        interval_estimate(beta_moments(*o.x, *o.n), o.interval[0], o.interval[1], IntervalSupport::PluginMoments).point;
    const double p_naive = static_cast<double>(*o.x) / static_cast<double>(*o.n);
    int code = kExitOk;
    try {
        const auto n_naive = required_sample_size(o.target, p_naive, o.alpha, beta);
        out << "n_naive=" << n_naive << " p_naive=" << p_naive << '\n';
    } catch (const DomainError& e) {
        err << "n_naive: " << e.what() << '\n';
        code = kExitDomain;
    }
    out << "n_iq=" << required_sample_size(o.target, p_iq, o.alpha, beta) << " p_iq=" << p_iq << '\n';
    return code;
}

int cmd_verify(Program& p, std::ostream& out) {
    const auto& o = p.verify;
    const auto reports = run_verify(o.family.empty() ? std::nullopt : std::optional(o.family), o.seed);
    bool ok = true;
    for (const auto& r : reports) {
        ok = ok && r.passed();
        out << (r.passed() ? "PASS " : "FAIL ") << r.family << " (" << r.checks - r.failed << '/' << r.checks
            << " checks)\n";
        for (const auto& f : r.failures) out << "  " << f << '\n';
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

const char* version() { return "0.1.0"; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto program = std::make_unique<Program>();
    if (int code = parse(*program, args, out, err); code >= 0) return code;

    // Config precedence: flags > config file > defaults. Config entries become
    // flags placed ahead of the user's own, for options the user did not set.
    Command* cmd = program->selected();
    std::string name;
    for (auto& [n, c] : program->commands)
        if (&c == cmd) name = n;
    if (!cmd->config.empty()) {
        std::vector<std::string> merged;
        std::size_t sub_pos = 0;
        while (sub_pos < args.size() && args[sub_pos] != name) ++sub_pos;
        merged.assign(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(sub_pos + 1));
        try {
            for (const auto& [key, value] : read_config(cmd->config)) {
                const CLI::Option* opt = cmd->app->get_option_no_throw("--" + key);
                if (!opt || key == "config") throw ConfigError("unknown key '" + key + "' in " + cmd->config);
                if (opt->count() > 0 || value.empty()) continue;
                if (opt->get_expected_max() == 0) {
                    if (value == "true" || value == "1") merged.push_back("--" + key);
                    continue;
                }
                merged.push_back("--" + key);
                std::istringstream words(value);
                for (std::string w; words >> w;) merged.push_back(w);
            }
        } catch (const ConfigError& e) {
            err << "error: " << e.what() << '\n';
            return kExitUsage;
        }
        merged.insert(merged.end(), args.begin() + static_cast<std::ptrdiff_t>(sub_pos + 1), args.end());
        program = std::make_unique<Program>();
        if (int code = parse(*program, merged, out, err); code >= 0) return code;
        cmd = &program->commands.at(name);
    }

    try {
        if (program->experiments.count(name)) return cmd_experiment(*program, name, *cmd, out, err);
        if (name == "estimate") return cmd_estimate(*program, out);
        if (name == "losses") return cmd_losses(*program, out);
        if (name == "samplesize") return cmd_samplesize(*program, out, err);
        return cmd_verify(*program, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
}

}  // namespace rsloss::cli
