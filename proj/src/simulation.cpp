#include "bbprec/simulation.hpp"

#include "bbprec/error.hpp"
#include "bbprec/summation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

namespace bbprec {

void SimulationConfig::validate() const {
    if (n < 2) throw InputError("simulation needs n >= 2 trials per lab");
    if (labs < 2) throw InputError("simulation needs at least 2 labs");
    if (replicates < 1) throw InputError("replicates must be >= 1");
    if (!(overall_alpha > 0.0 && overall_alpha < 1.0)) {
        throw InputError("alpha must lie strictly between 0 and 1");
    }
}

double EstimatorSummary::z_score() const {
    const double diff = std::fabs(mean - expected);
    if (std_error == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return diff / std_error;
}

namespace simulation {
namespace {

struct ReplicateOutcome {
    double p_hat = 0.0;
    double sigma2_r = 0.0;
    double sigma2_L = 0.0;
    double sigma2_R = 0.0;
    bool degenerate = false;
    bool invalid_shape = false;
    bool scored = false;
    bool lab_effect = false;
    int covered = 0;
};

ReplicateOutcome run_replicate(const SimulationConfig& cfg, RandomSource rng) {
    const auto study = simulate_study(cfg.shape, cfg.n, cfg.labs, rng);
    const auto est = estimation::estimate_variances(study.data);
    ReplicateOutcome out;
    out.p_hat = est.p_hat;
    out.sigma2_r = est.sigma2_r;
    out.sigma2_L = est.sigma2_L;
    out.sigma2_R = est.sigma2_R;
    if (!cfg.score_intervals) return out;

    std::optional<BetaParams> fitted;
    try {
        fitted = estimation::estimate_beta_params(est, cfg.ab_formula);
    } catch (const DegenerateModel&) {
        out.degenerate = true;
        return out;
    }

    const double level = intervals::per_lab_level(cfg.overall_alpha, cfg.labs);
    // All labs share the fitted shape, so intervals depend only on x.
    std::map<int, Interval> by_count;
    std::vector<Interval> bounds;
    bounds.reserve(study.data.labs().size());
    try {
        for (const auto& lab : study.data.labs()) {
            auto it = by_count.find(lab.success_count);
            if (it == by_count.end()) {
                const auto li = intervals::jeffreys_interval(lab.success_count, cfg.n, *fitted,
                                                             level, cfg.interval_mode);
                it = by_count.emplace(lab.success_count, li.bounds()).first;
            }
            bounds.push_back(it->second);
        }
    } catch (const ShapeError&) {
        out.invalid_shape = true;
        return out;
    }
    out.scored = true;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (bounds[i].contains(study.true_p[i])) ++out.covered;
    }
    out.lab_effect = !intervals::intersect(bounds).has_value();
    return out;
}

EstimatorSummary summarize(const std::vector<ReplicateOutcome>& reps,
                           double ReplicateOutcome::*field, double expected) {
    CompensatedSum sum;
    for (const auto& r : reps) sum.add(r.*field);
    const double count = static_cast<double>(reps.size());
    const double mean = sum.value() / count;
    CompensatedSum sq;
    for (const auto& r : reps) sq.add((r.*field - mean) * (r.*field - mean));
    EstimatorSummary s;
    s.mean = mean;
    s.expected = expected;
    s.std_error = reps.size() > 1 ? std::sqrt(sq.value() / (count - 1.0) / count) : 0.0;
    return s;
}

}  // namespace

SimulatedStudy simulate_study(const BetaParams& shape, int n, int labs, RandomSource& rng) {
    if (n < 1) throw InputError("simulation needs n >= 1");
    if (labs < 2) throw InputError("simulation needs at least 2 labs");
    std::vector<LabRecord> records;
    std::vector<double> true_p;
    records.reserve(labs);
    true_p.reserve(labs);
    for (int i = 0; i < labs; ++i) {
        const double p = dist::sample_beta(shape, rng);
        std::vector<std::uint8_t> trials(n);
        for (auto& y : trials) y = static_cast<std::uint8_t>(dist::sample_bernoulli(p, rng));
        records.push_back(LabRecord::from_outcomes(std::to_string(i + 1), std::move(trials)));
        true_p.push_back(p);
    }
    return {StudyData("simulated", n, std::move(records)), std::move(true_p)};
}

SimulationSummary run_verification(const SimulationConfig& config) {
    config.validate();
    const auto total = static_cast<std::size_t>(config.replicates);
    std::vector<ReplicateOutcome> reps(total);
    const RandomSource master(config.master_seed);

    unsigned workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                           : config.threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));

    constexpr std::size_t kChunk = 256;
    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
        for (;;) {
            const std::size_t begin = cursor.fetch_add(kChunk);
            if (begin >= total) return;
            const std::size_t end = std::min(total, begin + kChunk);
            for (std::size_t k = begin; k < end; ++k) {
                reps[k] = run_replicate(config, master.split(k));
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    }

    const auto theory = estimation::theoretical_variances(config.shape);
    SimulationSummary summary;
    summary.config = config;
    summary.p_hat = summarize(reps, &ReplicateOutcome::p_hat, config.shape.mean());
    summary.sigma2_r = summarize(reps, &ReplicateOutcome::sigma2_r, theory.sigma2_r);
    summary.sigma2_L = summarize(reps, &ReplicateOutcome::sigma2_L, theory.sigma2_L);
    summary.sigma2_R = summarize(reps, &ReplicateOutcome::sigma2_R, theory.sigma2_R);

    std::int64_t covered = 0;
    std::int64_t rejected = 0;
    for (const auto& r : reps) {
        if (r.degenerate) ++summary.degenerate_count;
        if (r.invalid_shape) ++summary.invalid_shape_count;
        if (!r.scored) continue;
        ++summary.scored_replicates;
        summary.scored_labs += config.labs;
        covered += r.covered;
        if (r.lab_effect) ++rejected;
    }
    if (summary.scored_replicates > 0) {
        summary.per_lab_coverage =
            static_cast<double>(covered) / static_cast<double>(summary.scored_labs);
        summary.lab_effect_rejection_rate =
            static_cast<double>(rejected) / static_cast<double>(summary.scored_replicates);
    }
    return summary;
}

}  // namespace simulation
}  // namespace bbprec
