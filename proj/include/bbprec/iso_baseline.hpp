#pragma once

#include "bbprec/estimation.hpp"
#include "bbprec/study.hpp"

#include <string>

namespace bbprec {

// One-way random-effects ANOVA of the 0/1 outcomes.
struct AnovaTable {
    double ss_between = 0.0;  // n sum (p_i - p)^2
    double ss_within = 0.0;   // n sum p_i (1 - p_i)
    double ss_total = 0.0;    // L n p (1 - p)
    int df_between = 0;       // L - 1
    int df_within = 0;        // L (n - 1)
    int df_total = 0;         // L n - 1
    double ms_between = 0.0;  // s_II^2, E = n sigma2_L + sigma2_r
    double ms_within = 0.0;   // s_I^2,  E = sigma2_r
};

struct ChiSquaredResult {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    double pooled_p = 0.0;
    bool valid = false;  // n p >= 5 and n (1 - p) >= 5
    std::string validity_note;
};

namespace iso {

AnovaTable iso_anova(const StudyData& data);

/// Estimates from the ANOVA route:
///   sigma2_r = n sum p_i (1 - p_i) / (L (n - 1))
///   sigma2_L = sum (p_i - p)^2 / (L - 1) - sum p_i (1 - p_i) / (L (n - 1))
VarianceComponents iso_variance_estimates(const StudyData& data);

/// Pearson chi-squared test of equal detection probability over the 2 x L
/// table (detected / not detected per lab), no continuity correction.
/// Throws DomainError("no variation to test") when the pooled proportion is
/// 0 or 1.
ChiSquaredResult chi_squared_homogeneity(const StudyData& data);

}  // namespace iso
}  // namespace bbprec
