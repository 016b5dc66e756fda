#include "bbprec/numerics.hpp"

#include "bbprec/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace bbprec {

Probability::Probability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw DomainError("probability must lie in [0, 1], got " + std::to_string(value));
    }
}

PositiveReal::PositiveReal(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError("value must be positive and finite, got " + std::to_string(value));
    }
}

namespace numerics {
namespace {

constexpr double kHalfLogTwoPi = 0.91893853320467274178032973640562;
constexpr double kTiny = 1e-300;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 20000;

void require_shape(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be positive and finite");
    }
}

// Bernoulli-number coefficients B_{2k} / (2k (2k-1)) of the Stirling series.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,           -1.0 / 360.0,  1.0 / 1260.0,          -1.0 / 1680.0,
    1.0 / 1188.0,         -691.0 / 360360.0, 1.0 / 156.0,       -3617.0 / 122400.0,
};

double stirling_log_gamma(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    for (auto it = kStirling.rbegin(); it != kStirling.rend(); ++it) {
        series = series * inv2 + *it;
    }
    return (x - 0.5) * std::log(x) - x + kHalfLogTwoPi + series * inv;
}

// Continued fraction for I_x(a, b) (modified Lentz). Caller guarantees
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double x, double a, double b) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) return h;
    }
    return h;
}

// ln of the common prefactor x^a (1-x)^b / B(a, b).
double log_beta_prefactor(double x, double a, double b) {
    return a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
}

double gamma_series(double s, double x) {
    double sum = 1.0 / s;
    double term = sum;
    double ap = s;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + s * std::log(x) - log_gamma(s));
}

double gamma_continued_fraction(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) break;
    }
    return std::exp(-x + s * std::log(x) - log_gamma(s)) * h;
}

void require_gamma_args(double s, double x) {
    require_shape(s, "shape");
    if (!(x >= 0.0) || std::isnan(x)) throw DomainError("incomplete gamma argument must be >= 0");
}

// Bisection point between lo and hi. Near an endpoint the split is taken in
// log-distance to that endpoint, so a bracket [0, 0.5] reaches 1e-300 in
// about ten steps instead of a thousand.
double split_point(double lo, double hi) {
    const auto log_midpoint = [](double near, double far) {
        return std::exp(0.5 * (std::log(near) + std::log(far)));
    };
    double mid = std::numeric_limits<double>::quiet_NaN();
    if (hi <= 0.5) {
        const double floor = lo > 0.0 ? lo : std::numeric_limits<double>::denorm_min();
        if (hi > 4.0 * floor) mid = log_midpoint(floor, hi);
    } else if (lo >= 0.5) {
        const double dlo = 1.0 - lo;
        const double dhi = hi < 1.0 ? 1.0 - hi : 0x1.0p-54;
        if (dlo > 4.0 * dhi) mid = 1.0 - log_midpoint(dhi, dlo);
    }
    if (mid > lo && mid < hi) return mid;
    return lo + 0.5 * (hi - lo);
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("log_gamma requires a positive finite argument");
    }
    if (x == 1.0 || x == 2.0) return 0.0;
    if (x >= 10.0) return stirling_log_gamma(x);
    // Gamma(x) = Gamma(x + k) / (x (x+1) ... (x+k-1))
    double shifted = x;
    double product = 1.0;
    while (shifted < 10.0) {
        product *= shifted;
        shifted += 1.0;
    }
    return stirling_log_gamma(shifted) - std::log(product);
}

double log_beta(double a, double b) {
    require_shape(a, "a");
    require_shape(b, "b");
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double beta_pdf(double x, double a, double b) {
    require_shape(a, "a");
    require_shape(b, "b");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("beta_pdf requires x in [0, 1]");
    const double lb = log_beta(a, b);
    if (x == 0.0) {
        if (a < 1.0) return std::numeric_limits<double>::infinity();
        return a == 1.0 ? std::exp(-lb) : 0.0;
    }
    if (x == 1.0) {
        if (b < 1.0) return std::numeric_limits<double>::infinity();
        return b == 1.0 ? std::exp(-lb) : 0.0;
    }
    return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lb);
}

double reg_inc_beta(double x, double a, double b) {
    require_shape(a, "a");
    require_shape(b, "b");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("reg_inc_beta requires x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    if (x < (a + 1.0) / (a + b + 2.0)) {
        const double head = std::exp(log_beta_prefactor(x, a, b)) * beta_continued_fraction(x, a, b) / a;
        return std::clamp(head, 0.0, 1.0);
    }
    const double y = 1.0 - x;
    const double tail = std::exp(log_beta_prefactor(y, b, a)) * beta_continued_fraction(y, b, a) / b;
    return std::clamp(1.0 - tail, 0.0, 1.0);
}

double beta_quantile(double p, double a, double b) {
    require_shape(a, "a");
    require_shape(b, "b");
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("beta_quantile requires 0 < p < 1");
    }

    double lo = 0.0;
    double hi = 1.0;
    double f_lo = -p;        // I(lo) - p
    double f_hi = 1.0 - p;   // I(hi) - p
    double x = a / (a + b);
    double previous_residual = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < kMaxIterations; ++iter) {
        const double f = reg_inc_beta(x, a, b) - p;
        if (std::fabs(f) <= 4.0 * kEps * p) return x;
        if (f < 0.0) {
            lo = x;
            f_lo = f;
        } else {
            hi = x;
            f_hi = f;
        }

        double next = std::numeric_limits<double>::quiet_NaN();
        // Newton is only trusted while it keeps shrinking the residual.
        if (std::fabs(f) < 0.5 * previous_residual) {
            const double density = beta_pdf(x, a, b);
            if (density > 0.0 && std::isfinite(density)) {
                next = x - f / density;
            }
        }
        previous_residual = std::fabs(f);
        if (!(next > lo && next < hi)) {
            next = split_point(lo, hi);
        }
        if (next <= lo || next >= hi) {
            // lo and hi are adjacent doubles.
            return (-f_lo <= f_hi) ? lo : hi;
        }
        x = next;
    }
    return (-f_lo <= f_hi) ? lo : hi;
}

double reg_lower_inc_gamma(double s, double x) {
    require_gamma_args(s, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < s + 1.0) return gamma_series(s, x);
    return 1.0 - gamma_continued_fraction(s, x);
}

double reg_upper_inc_gamma(double s, double x) {
    require_gamma_args(s, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < s + 1.0) return 1.0 - gamma_series(s, x);
    return gamma_continued_fraction(s, x);
}

double chi_squared_sf(double statistic, double df) {
    require_shape(df, "degrees of freedom");
    if (!(statistic >= 0.0)) throw DomainError("chi-squared statistic must be >= 0");
    return reg_upper_inc_gamma(0.5 * df, 0.5 * statistic);
}

}  // namespace numerics
}  // namespace bbprec
