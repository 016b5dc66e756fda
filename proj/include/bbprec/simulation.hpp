#pragma once

#include "bbprec/distributions.hpp"
#include "bbprec/estimation.hpp"
#include "bbprec/intervals.hpp"
#include "bbprec/random.hpp"
#include "bbprec/study.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace bbprec {

struct SimulationConfig {
    BetaParams shape{2.0, 3.0};
    int n = 5;
    int labs = 10;
    std::int64_t replicates = 1000;
    std::uint64_t master_seed = 1;
    double overall_alpha = 0.05;
    IntervalMode interval_mode = IntervalMode::Definition;
    AbFormula ab_formula = AbFormula::Paper;
    // Interval coverage and the lab-effect test need two quantiles per lab and
    // replicate; switch off when only estimator means are of interest.
    bool score_intervals = true;
    // 0 = hardware concurrency, 1 = serial. Results do not depend on it.
    unsigned threads = 0;

    /// Throws InputError on out-of-range values.
    void validate() const;
};

// A synthetic study together with the realized lab sensitivities p_i.
struct SimulatedStudy {
    StudyData data;
    std::vector<double> true_p;
};

struct EstimatorSummary {
    double mean = 0.0;
    double std_error = 0.0;
    double expected = 0.0;  // closed-form value under the generating shape

    /// |mean - expected| in units of the standard error.
    double z_score() const;
};

struct SimulationSummary {
    SimulationConfig config;
    EstimatorSummary p_hat;
    EstimatorSummary sigma2_r;
    EstimatorSummary sigma2_L;
    EstimatorSummary sigma2_R;
    // Fraction of labs whose interval (built from the estimated shape) covers
    // the realized p_i; nullopt when no replicate produced intervals.
    std::optional<double> per_lab_coverage;
    std::optional<double> lab_effect_rejection_rate;
    std::int64_t scored_labs = 0;
    std::int64_t scored_replicates = 0;
    std::int64_t degenerate_count = 0;     // (a, b) estimation failed
    std::int64_t invalid_shape_count = 0;  // some lab's interval shape <= 0
};

namespace simulation {

/// Draws p_i ~ Beta(a, b) and n Bernoulli(p_i) trials for each of L labs.
SimulatedStudy simulate_study(const BetaParams& shape, int n, int labs, RandomSource& rng);

/// Monte Carlo check of the estimators and intervals. Replicate k uses
/// RandomSource(master_seed).split(k), and aggregation runs in replicate
/// order, so the summary is identical for every thread count.
SimulationSummary run_verification(const SimulationConfig& config);

}  // namespace simulation
}  // namespace bbprec
