#include "bbprec/intervals.hpp"

#include "bbprec/error.hpp"
#include "bbprec/numerics.hpp"

#include <algorithm>
#include <sstream>

namespace bbprec {

std::string_view to_string(IntervalMode mode) {
    return mode == IntervalMode::Definition ? "definition" : "posterior";
}

IntervalMode interval_mode_from_string(std::string_view text) {
    if (text == "definition") return IntervalMode::Definition;
    if (text == "posterior") return IntervalMode::Posterior;
    throw InputError("unknown interval mode '" + std::string(text) +
                     "' (expected definition or posterior)");
}

namespace intervals {

BetaParams jeffreys_shape(int x, int n, const BetaParams& prior, IntervalMode mode) {
    if (n < 1 || x < 0 || x > n) throw DomainError("interval requires 0 <= x <= n, n >= 1");
    double shape_a = 0.0;
    double shape_b = 0.0;
    if (mode == IntervalMode::Definition) {
        shape_a = x - prior.a + 1.0;
        shape_b = n - x - prior.b + 1.0;
    } else {
        shape_a = x + prior.a;
        shape_b = n - x + prior.b;
    }
    if (!(shape_a > 0.0) || !(shape_b > 0.0)) {
        std::ostringstream msg;
        msg << "Jeffreys-type shape invalid for (x=" << x << ", a=" << prior.a << ", b=" << prior.b
            << "): (" << shape_a << ", " << shape_b << ") must be positive";
        throw ShapeError(msg.str());
    }
    return BetaParams(shape_a, shape_b);
}

LabInterval jeffreys_interval(int x, int n, const BetaParams& prior, Probability level,
                              IntervalMode mode, std::string lab_id) {
    if (!(level.value() > 0.0 && level.value() < 1.0)) {
        throw DomainError("interval level must lie strictly between 0 and 1");
    }
    LabInterval out;
    out.lab_id = std::move(lab_id);
    out.x = x;
    out.n = n;
    out.per_lab_level = level;
    out.shape_used = jeffreys_shape(x, n, prior, mode);
    const double tail = 0.5 * (1.0 - level);
    const auto& s = out.shape_used;
    out.lower = x == 0 ? 0.0 : numerics::beta_quantile(tail, s.a, s.b);
    out.upper = x == n ? 1.0 : numerics::beta_quantile(1.0 - tail, s.a, s.b);
    return out;
}

std::optional<Interval> intersect(std::span<const Interval> parts) {
    if (parts.empty()) return Interval{0.0, 1.0};
    double lo = parts.front().lower;
    double hi = parts.front().upper;
    for (const auto& part : parts.subspan(1)) {
        lo = std::max(lo, part.lower);
        hi = std::min(hi, part.upper);
    }
    if (lo > hi) return std::nullopt;
    return Interval{lo, hi};
}

double per_lab_level(Probability overall_alpha, int lab_count) {
    if (lab_count < 1) throw DomainError("lab count must be positive");
    return 1.0 - overall_alpha / lab_count;
}

SimultaneousResult simultaneous_test(const StudyData& data, const BetaParams& prior,
                                     Probability overall_alpha, IntervalMode mode) {
    if (!(overall_alpha.value() > 0.0 && overall_alpha.value() < 1.0)) {
        throw DomainError("alpha must lie strictly between 0 and 1");
    }
    SimultaneousResult result;
    result.overall_alpha = overall_alpha;
    result.overall_level = 1.0 - overall_alpha;
    result.per_lab_level = per_lab_level(overall_alpha, data.lab_count());

    std::vector<Interval> bounds;
    for (const auto& lab : data.labs()) {
        try {
            result.intervals.push_back(jeffreys_interval(lab.success_count, data.n(), prior,
                                                         result.per_lab_level, mode, lab.lab_id));
        } catch (const ShapeError& e) {
            throw ShapeError("lab '" + lab.lab_id + "': " + e.what());
        }
        bounds.push_back(result.intervals.back().bounds());
    }
    result.intersection = intersect(bounds);
    result.lab_effect_detected = !result.intersection.has_value();
    return result;
}

}  // namespace intervals
}  // namespace bbprec
