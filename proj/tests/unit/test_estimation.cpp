#include "bbprec/error.hpp"
#include "bbprec/estimation.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

using namespace bbprec;
using namespace bbprec::estimation;

namespace {

// Random count vector for a study of `labs` labs with n trials each.
std::vector<int> random_counts(RandomSource& rng, int n, int labs) {
    std::vector<int> counts(labs);
    for (auto& c : counts) c = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n + 1));
    return counts;
}

// ISO-style form of the between-lab variance, written out independently.
double iso_form_sigma2_L(const std::vector<int>& counts, int n) {
    const double L = static_cast<double>(counts.size());
    std::vector<double> p(counts.size());
    std::transform(counts.begin(), counts.end(), p.begin(), [n](int x) { return static_cast<double>(x) / n; });
    const double mean = std::accumulate(p.begin(), p.end(), 0.0) / L;
    double between = 0.0;
    double within = 0.0;
    for (double v : p) {
        between += (v - mean) * (v - mean);
        within += v * (1.0 - v);
    }
    return between / (L - 1.0) - within / (L * (n - 1.0));
}

}  // namespace

TEST_CASE("sensitivities of the worked examples") {
    const auto listeria = estimate_sensitivities(fixtures::listeria());
    CHECK(listeria.p_hat == doctest::Approx(0.92).epsilon(1e-14));
    for (std::size_t i = 0; i < listeria.p_hat_i.size(); ++i) {
        const double expected = (i == 4 || i == 6) ? 0.6 : 1.0;
        CHECK(listeria.p_hat_i[i] == doctest::Approx(expected));
    }
    CHECK(estimate_sensitivities(fixtures::hydroquinone()).p_hat == doctest::Approx(13.0 / 15.0).epsilon(1e-14));

    const auto zeros = estimate_sensitivities(StudyData::from_counts("zeros", 4, {0, 0, 0}));
    CHECK(zeros.p_hat == 0.0);
    for (double v : zeros.p_hat_i) CHECK(v == 0.0);
}

TEST_CASE("variance estimates of the worked examples") {
    const auto listeria = estimate_variances(fixtures::listeria());
    CHECK(listeria.lab_count == 10);
    CHECK(listeria.n == 5);
    CHECK(listeria.sigma2_r == doctest::Approx(0.06).epsilon(1e-13));
    CHECK(listeria.sigma2_L == doctest::Approx(0.074 / 4.5).epsilon(1e-13));
    CHECK(listeria.sigma2_R == doctest::Approx(0.06 + 0.074 / 4.5).epsilon(1e-13));
    CHECK(listeria.sigma2_BBi == doctest::Approx(6.4 / 9.0).epsilon(1e-13));

    const auto gallate = estimate_variances(fixtures::propyl_gallate());
    CHECK(gallate.p_hat == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(gallate.sigma2_r == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
    CHECK(gallate.sigma2_L == doctest::Approx(0.4 / 9.0).epsilon(1e-13));
    CHECK(gallate.sigma2_R == doctest::Approx(1.6 / 9.0).epsilon(1e-13));
    CHECK(gallate.sigma2_BBi == doctest::Approx(0.8).epsilon(1e-13));

    // The printed 0.6667 for the two components is inconsistent with their
    // printed sum 0.1333; direct evaluation gives 1/15 each.
    const auto hydro = estimate_variances(fixtures::hydroquinone());
    CHECK(hydro.sigma2_r == doctest::Approx(1.0 / 15.0).epsilon(1e-13));
    CHECK(hydro.sigma2_L == doctest::Approx(1.0 / 15.0).epsilon(1e-13));
    CHECK(hydro.sigma2_R == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("one repetition per lab is rejected") {
    const auto data = StudyData::from_counts("single", 1, {0, 1, 1});
    CHECK_THROWS_WITH_AS(estimate_variances(data), doctest::Contains("one repetition"), InputError);
}

TEST_CASE("negative between-lab variance is reported raw and truncated") {
    const auto est = estimate_variances(StudyData::from_counts("flat", 5, {2, 2, 2, 2}));
    CHECK(est.sigma2_BBi == 0.0);
    CHECK(est.sigma2_L < 0.0);
    CHECK(est.sigma2_L_truncated() == 0.0);
    CHECK(est.sigma2_R == est.sigma2_r + est.sigma2_L);
}

TEST_CASE("beta parameters of the worked examples") {
    // Recomputed from the stated estimates; the rounded values 0.246 and
    // 0.0214 printed for this study do not follow from them.
    const auto listeria = estimate_beta_params(estimate_variances(fixtures::listeria()));
    CHECK(listeria.a == doctest::Approx(0.25214814814814815).epsilon(1e-12));
    CHECK(listeria.b == doctest::Approx(0.021925925925925925).epsilon(1e-12));

    const auto gallate = estimate_beta_params(estimate_variances(fixtures::propyl_gallate()));
    CHECK(gallate.a == doctest::Approx(1.0 / 15.0).epsilon(1e-12));
    CHECK(gallate.b == doctest::Approx(4.0 / 15.0).epsilon(1e-12));
    CHECK(gallate.a == doctest::Approx(0.0667).epsilon(5e-4));
    CHECK(gallate.b == doctest::Approx(0.267).epsilon(5e-4));

    const auto hydro = estimate_beta_params(estimate_variances(fixtures::hydroquinone()));
    CHECK(hydro.a == doctest::Approx(13.0 / 15.0).epsilon(1e-12));
    CHECK(hydro.b == doctest::Approx(2.0 / 15.0).epsilon(1e-12));

    // With the ratio inverted, a + b = sigma2_r / sigma2_L.
    const auto est = estimate_variances(fixtures::propyl_gallate());
    const auto prop1 = estimate_beta_params(est, AbFormula::Prop1);
    CHECK(prop1.a + prop1.b == doctest::Approx(est.sigma2_r / est.sigma2_L).epsilon(1e-13));
    CHECK(prop1.mean() == doctest::Approx(est.p_hat).epsilon(1e-13));
}

TEST_CASE("beta parameters refuse degenerate estimates") {
    const auto all_positive = estimate_variances(StudyData::from_counts("pos", 5, {5, 5, 5}));
    try {
        estimate_beta_params(all_positive);
        FAIL("expected DegenerateModel");
    } catch (const DegenerateModel& e) {
        CHECK(e.kind() == DegenerateModel::Kind::NoWithinLabVariation);
        CHECK(std::string(e.what()).find("no within-lab variation") != std::string::npos);
    }

    const auto flat = estimate_variances(StudyData::from_counts("flat", 5, {2, 2, 2, 2}));
    try {
        estimate_beta_params(flat);
        FAIL("expected DegenerateModel");
    } catch (const DegenerateModel& e) {
        CHECK(e.kind() == DegenerateModel::Kind::NoBetweenLabVariation);
        CHECK(e.raw_value() == doctest::Approx(flat.sigma2_L));
        CHECK(std::string(e.what()).find("no between-lab variation") != std::string::npos);
    }
}

TEST_CASE("ab formula names round-trip") {
    CHECK(ab_formula_from_string(to_string(AbFormula::Paper)) == AbFormula::Paper);
    CHECK(ab_formula_from_string(to_string(AbFormula::Prop1)) == AbFormula::Prop1);
    CHECK_THROWS(ab_formula_from_string("bogus"));
}

TEST_CASE("theoretical variances") {
    const auto uniform = theoretical_variances({1.0, 1.0});
    CHECK(uniform.sigma2_r == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(uniform.sigma2_L == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
    CHECK(uniform.sigma2_R == doctest::Approx(0.25).epsilon(1e-15));

    const auto v23 = theoretical_variances({2.0, 3.0});
    CHECK(v23.sigma2_r == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(v23.sigma2_L == doctest::Approx(0.04).epsilon(1e-15));
    CHECK(v23.sigma2_R == doctest::Approx(0.24).epsilon(1e-15));

    // E(p)(1 - E(p)) with E(p) = 0.867.
    CHECK(theoretical_variances({0.867, 0.133}).sigma2_R == doctest::Approx(0.867 * 0.133).epsilon(1e-14));

    for (double a : {0.02, 0.5, 1.0, 3.0, 50.0}) {
        for (double b : {0.02, 0.5, 1.0, 3.0, 50.0}) {
            const BetaParams shape(a, b);
            const auto v = theoretical_variances(shape);
            CHECK(std::fabs(v.sigma2_R - (v.sigma2_r + v.sigma2_L)) <= 1e-15);
            CHECK(v.sigma2_R == doctest::Approx(shape.mean() * (1.0 - shape.mean())).epsilon(1e-14));
            for (int n : {1, 3, 5, 25}) {
                const double expected = n * v.sigma2_r + n * n * v.sigma2_L;
                CHECK(std::fabs(theoretical_bbi_variance(shape, n) - expected) <= 1e-14 * std::max(1.0, expected));
                // It is also the variance of the beta-binomial count.
                CHECK(theoretical_bbi_variance(shape, n) ==
                      doctest::Approx(dist::beta_binomial_moments({n, shape}).variance).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("estimator identities over random studies") {
    RandomSource rng(123);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 30);
        const int labs = 2 + static_cast<int>(rng.next_u64() % 20);
        const auto counts = random_counts(rng, n, labs);
        const auto est = estimate_variances(StudyData::from_counts("r", n, counts));

        CHECK(est.sigma2_R == est.sigma2_r + est.sigma2_L);
        CHECK(std::fabs(est.sigma2_L - iso_form_sigma2_L(counts, n)) <= 1e-12);
        const double mean = std::accumulate(est.p_hat_i.begin(), est.p_hat_i.end(), 0.0) / labs;
        CHECK(est.p_hat == doctest::Approx(mean).epsilon(1e-15));
        CHECK(est.sigma2_r >= 0.0);
        CHECK(est.sigma2_BBi >= 0.0);

        auto shuffled = counts;
        std::reverse(shuffled.begin(), shuffled.end());
        std::rotate(shuffled.begin(), shuffled.begin() + labs / 2, shuffled.end());
        const auto permuted = estimate_variances(StudyData::from_counts("r", n, shuffled));
        CHECK(std::fabs(permuted.p_hat - est.p_hat) <= 1e-15);
        CHECK(std::fabs(permuted.sigma2_r - est.sigma2_r) <= 1e-15);
        CHECK(std::fabs(permuted.sigma2_L - est.sigma2_L) <= 1e-15);
        CHECK(std::fabs(permuted.sigma2_R - est.sigma2_R) <= 1e-15);
    }
}

TEST_CASE("estimators are unbiased under the beta-binomial model") {
    const int studies = 20000;
    for (auto [a, b, n, labs] : {std::tuple{2.0, 3.0, 5, 10}, std::tuple{0.5, 0.5, 3, 5}}) {
        const BetaParams shape(a, b);
        const auto truth = theoretical_variances(shape);
        RandomSource rng(99);
        std::vector<double> r(studies), l(studies), big_r(studies);
        for (int s = 0; s < studies; ++s) {
            std::vector<int> counts(labs);
            for (auto& c : counts) c = dist::sample_binomial(n, dist::sample_beta(shape, rng), rng);
            const auto est = estimate_variances(StudyData::from_counts("mc", n, counts));
            r[s] = est.sigma2_r;
            l[s] = est.sigma2_L;
            big_r[s] = est.sigma2_R;
        }
        const auto within_4se = [](const std::vector<double>& v, double expected) {
            const double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
            double ss = 0.0;
            for (double x : v) ss += (x - m) * (x - m);
            const double se = std::sqrt(ss / (v.size() - 1.0) / v.size());
            return std::fabs(m - expected) <= 4.0 * se;
        };
        CHECK(within_4se(r, truth.sigma2_r));
        CHECK(within_4se(l, truth.sigma2_L));
        CHECK(within_4se(big_r, truth.sigma2_R));
    }
}
