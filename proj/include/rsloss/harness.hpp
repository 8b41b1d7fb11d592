#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsloss/posteriors.hpp"

namespace rsloss {

enum class Study { BinomialProbability, RestrictedNormalMean, GammaParams, WeibullParams };

std::string to_string(Study s);

/// A true-parameter point; param2 is set for the bivariate studies.
struct GridPoint {
    double param1 = 0.0;
    std::optional<double> param2;
};

struct StudyExtras {
    double sigma2 = 4.0;        ///< normal study: observation variance
    double a = 2.0;             ///< normal study: mean restricted to (-a, a)
    double wide_factor = 1.25;  ///< normal study: U2prime loss interval (-wide_factor a, wide_factor a)
    GammaPrior prior{};         ///< Gamma / Weibull priors, one per parameter
    WeibullPriorOn weibull_prior_on = WeibullPriorOn::Scale;
    std::vector<double> k_list{1.0};  ///< Weibull: k values of the scale-family estimator
    /// Binomial CI kinds: "normal:p_q", "normal:p_ac", "normal:p_iq", "wilson_ac", "delta_iq".
    std::vector<std::string> ci_kinds;
    double ci_level = 0.95;     ///< level of the normal-approximation intervals
    PosteriorGridOptions grid{};
};

/// Estimator tags by study:
///   BinomialProbability   p_q, p_ac, p_iq
///   RestrictedNormalMean  J, U1, U2, U2prime
///   GammaParams           posterior_mean, precautionary
///   WeibullParams         posterior_mean, scale_mean (expanded over extras.k_list)
struct ExperimentSpec {
    Study study = Study::BinomialProbability;
    std::int64_t n = 15;
    std::size_t reps = 100000;
    std::vector<GridPoint> grid;
    std::vector<std::string> estimators;
    std::uint64_t seed = 1;
    StudyExtras extras{};
    unsigned workers = 0;  ///< 0 = hardware concurrency; results do not depend on it
};

/// Throws ConfigError when the spec breaks a precondition of its study.
void validate(const ExperimentSpec& spec);

/// Default grids: 99 probabilities, 39 means in (-a, a), a 5x5 Gamma lattice,
/// and the lambda x nu Weibull table.
std::vector<GridPoint> default_grid(Study study, double a = 2.0);
std::vector<std::string> default_estimators(Study study);

enum class RowKind { Estimator, Difference, Coverage };

struct SweepRow {
    std::size_t grid_index = 0;
    GridPoint point;
    RowKind kind = RowKind::Estimator;
    /// Estimator tag; "x-y" for a paired MSE difference; the centre estimator for coverage rows.
    std::string estimator;
    /// Parameter of a bivariate study ("alpha1", "alpha2", "lambda", "nu", "nu_scaled").
    std::string target;
    std::optional<double> k;
    std::optional<double> mse;
    std::optional<double> bias;
    std::optional<double> variance;
    double mc_se = 0.0;
    std::string coverage_kind;
    std::optional<double> coverage;
    std::size_t n_reps = 0;

    /// Estimator column of the CSV: tag, or tag@target.
    [[nodiscard]] std::string label() const;
};

struct SweepResult {
    Study study = Study::BinomialProbability;
    std::int64_t n = 0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    std::vector<SweepRow> rows;
    std::size_t failed_replications = 0;

    /// First row matching the keys, or nullptr.
    [[nodiscard]] const SweepRow* find(std::size_t grid_index, RowKind kind, const std::string& estimator,
                                       const std::string& target = "",
                                       const std::string& coverage_kind = "") const;
};

struct Aggregate {
    double mse = 0.0;
    double bias = 0.0;
    double variance = 0.0;
    double mc_se = 0.0;
};

/// Mean squared error, bias, population variance and the Monte-Carlo standard
/// error of the MSE. Needs at least 2 estimates.
Aggregate aggregate(std::span<const double> estimates, double theta_true);

/// Paired MSE difference of two estimators on the same replications:
/// mean of (e1 - theta)^2 - (e2 - theta)^2 and its standard error.
std::pair<double, double> paired_mse_difference(std::span<const double> e1, std::span<const double> e2,
                                                double theta_true);

SweepResult run_binomial_study(const ExperimentSpec& spec);
SweepResult run_restricted_normal_study(const ExperimentSpec& spec);
SweepResult run_gamma_study(const ExperimentSpec& spec);
SweepResult run_weibull_study(const ExperimentSpec& spec);
/// Dispatches on spec.study.
SweepResult run_study(const ExperimentSpec& spec);

/// Quadrature failures beyond this fraction of replications fail the run.
inline constexpr double kMaxFailedFraction = 1e-3;

inline constexpr const char* kCsvHeader =
    "study,n,reps,seed,param1,param2,estimator,k,mse,bias,variance,mc_se,coverage_kind,coverage";

/// Header plus one line per row; numbers in %.17e.
void write_csv(std::ostream& os, const SweepResult& result);

}  // namespace rsloss
