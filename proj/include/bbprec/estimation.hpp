#pragma once

#include "bbprec/distributions.hpp"
#include "bbprec/study.hpp"

#include <string_view>
#include <vector>

namespace bbprec {

// Point estimates of sensitivity and of the three precision variances under
// the beta-binomial model.
struct PrecisionEstimates {
    int lab_count = 0;
    int n = 0;
    std::vector<double> p_hat_i;  // x_i / n
    double p_hat = 0.0;           // unweighted mean of p_hat_i
    double sigma2_r = 0.0;        // repeatability
    double sigma2_BBi = 0.0;      // beta-binomial variance of x_i
    double sigma2_L = 0.0;        // between-laboratory, signed (may be < 0)
    double sigma2_R = 0.0;        // reproducibility = sigma2_r + sigma2_L

    /// max(sigma2_L, 0), for display.
    double sigma2_L_truncated() const noexcept { return sigma2_L > 0.0 ? sigma2_L : 0.0; }
};

struct VarianceComponents {
    double sigma2_r;
    double sigma2_L;
    double sigma2_R;
};

// Which ratio multiplies p_hat and 1 - p_hat when moment-matching (a, b).
enum class AbFormula {
    Paper,  // sigma2_L / sigma2_r
    Prop1,  // sigma2_r / sigma2_L, which is what a + b equals under the model
};

std::string_view to_string(AbFormula mode);
AbFormula ab_formula_from_string(std::string_view text);

struct Sensitivities {
    std::vector<double> p_hat_i;
    double p_hat;
};

namespace estimation {

Sensitivities estimate_sensitivities(const StudyData& data);

/// Unbiased estimates of the precision variances. Requires n >= 2.
///
///   sigma2_r   = n sum p_i (1 - p_i) / (L (n - 1))
///   sigma2_BBi = sum (x_i - n p_hat)^2 / (L - 1)
///   sigma2_L   = (sigma2_BBi - n sigma2_r) / n^2
///   sigma2_R   = sigma2_r + sigma2_L
PrecisionEstimates estimate_variances(const StudyData& data);

/// Closed-form variances for p_i ~ Beta(a, b).
VarianceComponents theoretical_variances(const BetaParams& shape);

/// Variance of a BBi(n, a, b) count, written as n sigma2_r + n^2 sigma2_L.
double theoretical_bbi_variance(const BetaParams& shape, int n);

/// Moment estimate of (a, b). Throws DegenerateModel when sigma2_r == 0 or
/// sigma2_L <= 0.
BetaParams estimate_beta_params(const PrecisionEstimates& est, AbFormula mode = AbFormula::Paper);

}  // namespace estimation
}  // namespace bbprec
