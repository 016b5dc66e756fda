#include "bbprec/distributions.hpp"

#include "bbprec/error.hpp"

#include <cmath>

namespace bbprec {

BetaBinomialParams::BetaBinomialParams(int trials, BetaParams s) : n(trials), shape(s) {
    if (trials < 1) throw DomainError("beta-binomial requires n >= 1");
}

namespace dist {
namespace {

double log_choose(int n, int k) {
    return numerics::log_gamma(n + 1.0) - numerics::log_gamma(k + 1.0) -
           numerics::log_gamma(n - k + 1.0);
}

}  // namespace

double beta_binomial_pmf(int k, const BetaBinomialParams& params) {
    const int n = params.n;
    if (k < 0 || k > n) return 0.0;
    const double a = params.shape.a;
    const double b = params.shape.b;
    return std::exp(log_choose(n, k) + numerics::log_beta(k + a, n - k + b) -
                    numerics::log_beta(a, b));
}

Moments beta_binomial_moments(const BetaBinomialParams& params) {
    const double n = params.n;
    const double a = params.shape.a;
    const double b = params.shape.b;
    const double s = a + b;
    return {n * a / s, n * a * b * (s + n) / (s * s * (s + 1.0))};
}

double binomial_pmf(int k, int n, double q) {
    if (n < 0) throw DomainError("binomial requires n >= 0");
    static_cast<void>(Probability{q});
    if (k < 0 || k > n) return 0.0;
    if (q == 0.0) return k == 0 ? 1.0 : 0.0;
    if (q == 1.0) return k == n ? 1.0 : 0.0;
    return std::exp(log_choose(n, k) + k * std::log(q) + (n - k) * std::log1p(-q));
}

double sample_gamma(double shape, RandomSource& rng) {
    static_cast<void>(PositiveReal{shape});
    if (shape < 1.0) {
        const double boosted = sample_gamma(shape + 1.0, rng);
        return boosted * std::exp(std::log(rng.uniform_open()) / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double z = 0.0;
        double v = 0.0;
        do {
            z = rng.normal();
            v = 1.0 + c * z;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_open();
        if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
        if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_beta(const BetaParams& params, RandomSource& rng) {
    for (;;) {
        const double x = sample_gamma(params.a, rng);
        const double y = sample_gamma(params.b, rng);
        const double total = x + y;
        // Both draws can underflow to zero when a and b are tiny.
        if (total > 0.0) return x / total;
    }
}

int sample_bernoulli(double q, RandomSource& rng) {
    return rng.uniform() < q ? 1 : 0;
}

int sample_binomial(int n, Probability q, RandomSource& rng) {
    if (n < 0) throw DomainError("binomial requires n >= 0");
    int successes = 0;
    for (int j = 0; j < n; ++j) successes += sample_bernoulli(q, rng);
    return successes;
}

}  // namespace dist
}  // namespace bbprec
