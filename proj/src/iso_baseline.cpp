#include "bbprec/iso_baseline.hpp"

#include "bbprec/error.hpp"
#include "bbprec/numerics.hpp"
#include "bbprec/summation.hpp"

#include <cstdio>

namespace bbprec::iso {
namespace {

struct Sums {
    double p_hat;
    double squared_deviation;  // sum (p_i - p)^2
    double binomial_variance;  // sum p_i (1 - p_i)
};

Sums lab_sums(const StudyData& data) {
    if (data.n() < 2) {
        throw InputError("within-lab degrees of freedom L(n-1) are zero (n = 1)");
    }
    const auto sens = estimation::estimate_sensitivities(data);
    CompensatedSum dev;
    CompensatedSum var;
    for (double p : sens.p_hat_i) {
        dev.add((p - sens.p_hat) * (p - sens.p_hat));
        var.add(p * (1.0 - p));
    }
    return {sens.p_hat, dev.value(), var.value()};
}

}  // namespace

AnovaTable iso_anova(const StudyData& data) {
    const auto sums = lab_sums(data);
    const int labs = data.lab_count();
    const int n = data.n();
    AnovaTable t;
    t.ss_between = n * sums.squared_deviation;
    t.ss_within = n * sums.binomial_variance;
    t.ss_total = static_cast<double>(labs) * n * sums.p_hat * (1.0 - sums.p_hat);
    t.df_between = labs - 1;
    t.df_within = labs * (n - 1);
    t.df_total = labs * n - 1;
    t.ms_between = t.ss_between / t.df_between;
    t.ms_within = t.ss_within / t.df_within;
    return t;
}

VarianceComponents iso_variance_estimates(const StudyData& data) {
    const auto sums = lab_sums(data);
    const double labs = data.lab_count();
    const double n = data.n();
    const double r = n * sums.binomial_variance / (labs * (n - 1.0));
    const double l = sums.squared_deviation / (labs - 1.0) -
                     sums.binomial_variance / (labs * (n - 1.0));
    return {r, l, r + l};
}

ChiSquaredResult chi_squared_homogeneity(const StudyData& data) {
    const double n = data.n();
    CompensatedSum successes;
    for (const auto& lab : data.labs()) successes.add(lab.success_count);
    const double pooled = successes.value() / (n * data.lab_count());
    if (pooled <= 0.0 || pooled >= 1.0) {
        throw DomainError("no variation to test");
    }

    // total / L is exact when every lab has the same count.
    const double expected_pos = successes.value() / data.lab_count();
    const double expected_neg = n - expected_pos;
    CompensatedSum stat;
    for (const auto& lab : data.labs()) {
        const double pos = lab.success_count;
        const double neg = n - pos;
        stat.add((pos - expected_pos) * (pos - expected_pos) / expected_pos);
        stat.add((neg - expected_neg) * (neg - expected_neg) / expected_neg);
    }

    ChiSquaredResult out;
    out.statistic = stat.value();
    out.df = data.lab_count() - 1;
    out.p_value = numerics::chi_squared_sf(out.statistic, out.df);
    out.pooled_p = pooled;
    out.valid = expected_pos >= 5.0 && expected_neg >= 5.0;
    if (out.valid) {
        out.validity_note = "applicability conditions np >= 5 and n(1-p) >= 5 hold";
    } else {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "chi-squared approximation not applicable: requires np >= 5 and "
                      "n(1-p) >= 5, got np = %.4g, n(1-p) = %.4g",
                      expected_pos, expected_neg);
        out.validity_note = buf;
    }
    return out;
}

}  // namespace bbprec::iso
