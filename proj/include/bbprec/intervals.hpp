#pragma once

#include "bbprec/distributions.hpp"
#include "bbprec/study.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bbprec {

// How the beta shape of a lab's interval is formed from (x, n) and (a, b).
enum class IntervalMode {
    Definition,  // (x - a + 1, n - x - b + 1)
    Posterior,   // (x + a, n - x + b), the conjugate posterior
};

std::string_view to_string(IntervalMode mode);
IntervalMode interval_mode_from_string(std::string_view text);

struct Interval {
    double lower;
    double upper;

    bool contains(double p) const noexcept { return lower <= p && p <= upper; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

struct LabInterval {
    std::string lab_id;
    int x = 0;
    int n = 0;
    double lower = 0.0;
    double upper = 1.0;
    BetaParams shape_used{1.0, 1.0};
    double per_lab_level = 0.0;

    Interval bounds() const noexcept { return {lower, upper}; }
};

struct SimultaneousResult {
    std::vector<LabInterval> intervals;
    std::optional<Interval> intersection;
    bool lab_effect_detected = false;
    double overall_alpha = 0.05;
    double overall_level = 0.95;
    double per_lab_level = 0.0;
};

namespace intervals {

/// Beta shape used for a lab with x successes out of n. Throws ShapeError if
/// either parameter is not positive.
BetaParams jeffreys_shape(int x, int n, const BetaParams& prior, IntervalMode mode);

/// Jeffreys-type interval at confidence `level`: lower is the (1-level)/2
/// quantile (0 when x = 0), upper the 1-(1-level)/2 quantile (1 when x = n).
LabInterval jeffreys_interval(int x, int n, const BetaParams& prior, Probability level,
                              IntervalMode mode = IntervalMode::Definition,
                              std::string lab_id = {});

/// [max lower, min upper], or nullopt when max lower > min upper.
std::optional<Interval> intersect(std::span<const Interval> parts);

/// Per-lab level 1 - alpha / L for an overall significance level alpha.
double per_lab_level(Probability overall_alpha, int lab_count);

/// Computes every lab's interval at level 1 - alpha / L and intersects them.
/// A laboratory effect is declared when the intersection is empty.
SimultaneousResult simultaneous_test(const StudyData& data, const BetaParams& prior,
                                     Probability overall_alpha,
                                     IntervalMode mode = IntervalMode::Definition);

}  // namespace intervals
}  // namespace bbprec
