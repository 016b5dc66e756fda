#pragma once

#include "bbprec/numerics.hpp"
#include "bbprec/random.hpp"

namespace bbprec {

// Shape parameters (a, b) of Beta(a, b); both strictly positive.
struct BetaParams {
    double a;
    double b;

    BetaParams(PositiveReal a_, PositiveReal b_) : a(a_.value()), b(b_.value()) {}

    double mean() const noexcept { return a / (a + b); }

    friend bool operator==(const BetaParams&, const BetaParams&) = default;
};

// BBi(n, a, b): binomial with n trials whose success probability is Beta(a, b).
struct BetaBinomialParams {
    int n;
    BetaParams shape;

    BetaBinomialParams(int trials, BetaParams s);
};

struct Moments {
    double mean;
    double variance;
};

namespace dist {

/// P(X = k) = C(n, k) B(k + a, n - k + b) / B(a, b), evaluated in log space.
/// Returns 0 for k outside [0, n].
double beta_binomial_pmf(int k, const BetaBinomialParams& params);

/// E(X) = n a / (a + b),  V(X) = n a b (a + b + n) / ((a + b)^2 (a + b + 1)).
Moments beta_binomial_moments(const BetaBinomialParams& params);

/// Binomial(n, q) pmf; used by tests and diagnostics.
double binomial_pmf(int k, int n, double q);

/// Gamma(shape, 1) draw: Marsaglia-Tsang squeeze for shape >= 1; for
/// shape < 1 a Gamma(shape + 1) draw is scaled by U^(1/shape).
double sample_gamma(double shape, RandomSource& rng);

/// Beta(a, b) draw as G_a / (G_a + G_b).
double sample_beta(const BetaParams& params, RandomSource& rng);

/// Single Bernoulli(q) outcome.
int sample_bernoulli(double q, RandomSource& rng);

/// Binomial(n, q) draw as a sum of n Bernoulli(q) outcomes.
int sample_binomial(int n, Probability q, RandomSource& rng);

}  // namespace dist
}  // namespace bbprec
