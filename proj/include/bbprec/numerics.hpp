#pragma once

// Gamma/beta special-function kernel. Every function here is pure and
// reentrant; invalid arguments raise bbprec::DomainError.

namespace bbprec {

// A real number in [0, 1].
class Probability {
public:
    Probability(double value);  // NOLINT(google-explicit-constructor)
    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }  // NOLINT

private:
    double value_;
};

// A finite real number > 0.
class PositiveReal {
public:
    PositiveReal(double value);  // NOLINT(google-explicit-constructor)
    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }  // NOLINT

private:
    double value_;
};

namespace numerics {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b).
double log_beta(double a, double b);

/// Density of Beta(a, b) at x. Infinite at an endpoint where the shape is < 1.
double beta_pdf(double x, double a, double b);

/// Regularized incomplete beta I_x(a, b), i.e. the Beta(a, b) CDF.
///
/// Evaluated with the modified Lentz continued fraction, switching to
/// 1 - I_{1-x}(b, a) when x > (a + 1) / (a + b + 2) so the fraction
/// converges quickly.
double reg_inc_beta(double x, double a, double b);

/// Lower-tail quantile: returns q with I_q(a, b) = p. Requires 0 < p < 1.
///
/// Newton iteration from the mean a / (a + b) inside a shrinking bracket;
/// any step that leaves the bracket becomes a bisection step. Bisection is
/// geometric near 0 and 1 so that quantiles of strongly skewed shapes
/// (shape parameters near 0.02) are reached in a bounded number of steps.
/// When the true quantile falls between two adjacent doubles the closer of
/// the two (in probability) is returned.
double beta_quantile(double p, double a, double b);

/// Regularized lower incomplete gamma P(s, x).
double reg_lower_inc_gamma(double s, double x);

/// Regularized upper incomplete gamma Q(s, x) = 1 - P(s, x), computed
/// directly (not by subtraction) in the tail.
double reg_upper_inc_gamma(double s, double x);

/// Survival function of the chi-squared distribution with `df` degrees of freedom.
double chi_squared_sf(double statistic, double df);

}  // namespace numerics
}  // namespace bbprec
