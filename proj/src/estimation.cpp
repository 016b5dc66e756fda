#include "bbprec/estimation.hpp"

#include "bbprec/error.hpp"
#include "bbprec/summation.hpp"

#include <string>

namespace bbprec {

std::string_view to_string(AbFormula mode) {
    return mode == AbFormula::Paper ? "paper" : "prop1";
}

AbFormula ab_formula_from_string(std::string_view text) {
    if (text == "paper") return AbFormula::Paper;
    if (text == "prop1") return AbFormula::Prop1;
    throw InputError("unknown a-b formula '" + std::string(text) + "' (expected paper or prop1)");
}

namespace estimation {

Sensitivities estimate_sensitivities(const StudyData& data) {
    const double n = data.n();
    Sensitivities out;
    out.p_hat_i.reserve(data.labs().size());
    CompensatedSum total;
    for (const auto& lab : data.labs()) {
        const double p = lab.success_count / n;
        out.p_hat_i.push_back(p);
        total.add(p);
    }
    out.p_hat = total.value() / data.lab_count();
    return out;
}

PrecisionEstimates estimate_variances(const StudyData& data) {
    if (data.n() < 2) {
        throw InputError("repeatability not estimable with one repetition (n = 1)");
    }
    const int lab_count = data.lab_count();
    const double n = data.n();
    const double labs = lab_count;

    auto sens = estimate_sensitivities(data);
    PrecisionEstimates est;
    est.lab_count = lab_count;
    est.n = data.n();
    est.p_hat = sens.p_hat;

    CompensatedSum within;
    CompensatedSum between;
    const double centre = n * est.p_hat;
    for (std::size_t i = 0; i < sens.p_hat_i.size(); ++i) {
        const double p = sens.p_hat_i[i];
        within.add(p * (1.0 - p));
        const double dev = data.labs()[i].success_count - centre;
        between.add(dev * dev);
    }
    est.p_hat_i = std::move(sens.p_hat_i);
    est.sigma2_r = n * within.value() / (labs * (n - 1.0));
    est.sigma2_BBi = between.value() / (labs - 1.0);
    est.sigma2_L = (est.sigma2_BBi - n * est.sigma2_r) / (n * n);
    est.sigma2_R = est.sigma2_r + est.sigma2_L;
    return est;
}

VarianceComponents theoretical_variances(const BetaParams& shape) {
    const double a = shape.a;
    const double b = shape.b;
    const double s = a + b;
    const double r = a * b / (s * (s + 1.0));
    const double l = a * b / (s * s * (s + 1.0));
    return {r, l, a * b / (s * s)};
}

double theoretical_bbi_variance(const BetaParams& shape, int n) {
    const auto v = theoretical_variances(shape);
    return n * v.sigma2_r + static_cast<double>(n) * n * v.sigma2_L;
}

BetaParams estimate_beta_params(const PrecisionEstimates& est, AbFormula mode) {
    if (!(est.sigma2_r > 0.0)) {
        throw DegenerateModel(DegenerateModel::Kind::NoWithinLabVariation, est.sigma2_r,
                              "degenerate: no within-lab variation");
    }
    if (!(est.sigma2_L > 0.0)) {
        throw DegenerateModel(DegenerateModel::Kind::NoBetweenLabVariation, est.sigma2_L,
                              "degenerate: no between-lab variation (sigma2_L = " +
                                  std::to_string(est.sigma2_L) + ")");
    }
    const double ratio = mode == AbFormula::Paper ? est.sigma2_L / est.sigma2_r
                                                  : est.sigma2_r / est.sigma2_L;
    return BetaParams(ratio * est.p_hat, ratio * (1.0 - est.p_hat));
}

}  // namespace estimation
}  // namespace bbprec
