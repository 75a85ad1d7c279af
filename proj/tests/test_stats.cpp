#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "foldiff/stats.hpp"
#include "helpers.hpp"

using namespace foldiff;
using Catch::Approx;

// reference values below were frozen from an independent implementation of
// the same definitions (double precision)

// ── distribution tails ───────────────────────────────────────────────────

TEST_CASE("regularized incomplete beta basics") {
    CHECK(stats::regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(stats::regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    // I(1, b, x) = 1 - (1-x)^b in closed form
    CHECK(stats::regularized_incomplete_beta(1.0, 4.0, 0.3) ==
          Approx(1.0 - std::pow(0.7, 4)).epsilon(1e-14));
    // symmetry
    double x = 0.37;
    CHECK(stats::regularized_incomplete_beta(2.5, 7.0, x) ==
          Approx(1.0 - stats::regularized_incomplete_beta(7.0, 2.5, 1.0 - x)).epsilon(1e-13));
    CHECK_THROWS_AS(stats::regularized_incomplete_beta(0.0, 1.0, 0.5), DegenerateSampleError);
}

TEST_CASE("student t two-tailed p against frozen references") {
    CHECK(stats::student_t_two_tailed_p(2.5, 10) == Approx(0.031446844236608776).epsilon(1e-12));
    CHECK(stats::student_t_two_tailed_p(1.0, 1) == Approx(0.49999999999999956).epsilon(1e-12));
    CHECK(stats::student_t_two_tailed_p(10.72, 87) == Approx(1.392005714782564e-17).epsilon(1e-10));
    CHECK(stats::student_t_two_tailed_p(0.0, 7) == 1.0);
    CHECK(stats::student_t_two_tailed_p(-2.5, 10) ==
          Approx(stats::student_t_two_tailed_p(2.5, 10)).epsilon(1e-14));
    CHECK(stats::student_t_two_tailed_p(std::numeric_limits<double>::infinity(), 3) == 0.0);
    CHECK_THROWS_AS(stats::student_t_two_tailed_p(1.0, 0), DegenerateSampleError);
}

TEST_CASE("F tail p against frozen references") {
    CHECK(stats::f_tail_p(3.7, 4, 17) == Approx(0.02417210126678038).epsilon(1e-12));
    CHECK(stats::f_tail_p(0.0, 3, 9) == 1.0);
    CHECK(stats::f_tail_p(-1.0, 3, 9) == 1.0);
    CHECK(stats::f_tail_p(std::numeric_limits<double>::infinity(), 3, 9) == 0.0);
    // F(1, d) tail equals the two-tailed t tail at sqrt(f)
    CHECK(stats::f_tail_p(6.25, 1, 10) ==
          Approx(stats::student_t_two_tailed_p(2.5, 10)).epsilon(1e-12));
    CHECK_THROWS_AS(stats::f_tail_p(1.0, 0, 5), DegenerateSampleError);
}

// ── pearson ──────────────────────────────────────────────────────────────

TEST_CASE("pearson r and p against frozen references") {
    std::vector<double> x{1, 2, 3, 4, 5}, y{2, 1, 4, 3, 5};
    stats::CorrelationResult c = stats::pearson(x, y);
    CHECK(c.n == 5);
    CHECK(c.r == Approx(0.8).epsilon(1e-14));
    CHECK(c.p_two_tailed == Approx(0.10408803866182799).epsilon(1e-12));

    std::vector<double> x4{1, 2, 3, 4};
    stats::CorrelationResult alt = stats::pearson(x4, std::vector<double>{1, -1, 1, -1});
    CHECK(alt.r == Approx(-0.447213595499958).epsilon(1e-12));
    CHECK(alt.p_two_tailed == Approx(0.5527864045000421).epsilon(1e-12));

    stats::CorrelationResult zero = stats::pearson(x4, std::vector<double>{1, -1, -1, 1});
    CHECK(zero.r == 0.0);
    CHECK(zero.p_two_tailed == 1.0);
}

TEST_CASE("pearson edge cases") {
    std::vector<double> x{1, 2, 3}, y{2, 4, 6};
    stats::CorrelationResult perfect = stats::pearson(x, y);
    CHECK(perfect.r == 1.0);
    CHECK(perfect.p_two_tailed == 0.0);
    stats::CorrelationResult anti = stats::pearson(x, std::vector<double>{6, 4, 2});
    CHECK(anti.r == -1.0);
    CHECK(anti.p_two_tailed == 0.0);

    CHECK_THROWS_AS(stats::pearson(std::vector<double>{1, 2}, std::vector<double>{3, 4}),
                    DegenerateSampleError);
    CHECK_THROWS_AS(stats::pearson(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}),
                    DegenerateSampleError);
    CHECK_THROWS_AS(stats::pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}),
                    DegenerateSampleError);
}

TEST_CASE("pearson is symmetric and scale invariant") {
    testutil::Rng rng(0x51A7ull);
    for (int round = 0; round < 50; ++round) {
        std::size_t n = 3 + rng.below(10);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.uniform() * 10;
            y[i] = rng.uniform() * 10;
        }
        stats::CorrelationResult a = stats::pearson(x, y);
        stats::CorrelationResult b = stats::pearson(y, x);
        CHECK(a.r == Approx(b.r).margin(1e-14));
        std::vector<double> xs(x);
        for (double& v : xs)
            v = 3.0 * v + 7.0;
        CHECK(stats::pearson(xs, y).r == Approx(a.r).margin(1e-12));
    }
}

// ── williams ─────────────────────────────────────────────────────────────

TEST_CASE("williams test against frozen references") {
    stats::WilliamsResult w = stats::williams_dependent_r_test(0.5, 0.3, 0.6, 100);
    CHECK(w.df == 97);
    CHECK(w.t == Approx(2.529778924948089).epsilon(1e-12));
    CHECK(w.p == Approx(0.013024211665587138).epsilon(1e-12));

    stats::WilliamsResult w2 = stats::williams_dependent_r_test(0.51, 0.27, 0.6, 90);
    CHECK(w2.df == 87);
    CHECK(w2.t == Approx(2.899063060636246).epsilon(1e-12));
    CHECK(w2.p == Approx(0.0047365630933606274).epsilon(1e-12));
}

TEST_CASE("williams test properties and guards") {
    stats::WilliamsResult fwd = stats::williams_dependent_r_test(0.62, 0.41, 0.3, 40);
    stats::WilliamsResult rev = stats::williams_dependent_r_test(0.41, 0.62, 0.3, 40);
    CHECK(fwd.t == Approx(-rev.t).margin(1e-14));
    CHECK(fwd.p == Approx(rev.p).margin(1e-14));

    stats::WilliamsResult same = stats::williams_dependent_r_test(0.45, 0.45, 0.2, 25);
    CHECK(same.t == 0.0);
    CHECK(same.p == 1.0);

    CHECK_THROWS_AS(stats::williams_dependent_r_test(0.5, 0.3, 0.6, 3), DegenerateSampleError);
    CHECK_THROWS_AS(stats::williams_dependent_r_test(1.0, 0.3, 0.6, 10), DegenerateSampleError);
    // an impossible correlation triple is rejected rather than reported
    CHECK_THROWS_AS(stats::williams_dependent_r_test(0.9, 0.9, -0.9, 10), DegenerateSampleError);
}

// ── k-means ──────────────────────────────────────────────────────────────

TEST_CASE("kmeans_1d exact costs on hand-checked inputs") {
    std::vector<double> v{0, 0, 1, 1, 5, 5, 9, 10};
    stats::KMeansResult r = stats::kmeans_1d(v, 3);
    CHECK(r.cost == Approx(1.5).margin(1e-12));
    CHECK(r.labels == std::vector<int>{0, 0, 0, 0, 1, 1, 2, 2});
    REQUIRE(r.centroids.size() == 3);
    CHECK(r.centroids[0] == Approx(0.5));
    CHECK(r.centroids[1] == Approx(5.0));
    CHECK(r.centroids[2] == Approx(9.5));

    std::vector<double> w{0, 0, 0, 1, 1, 2, 2, 3, 4, 5, 6, 7};
    CHECK(stats::kmeans_1d(w, 5).cost == Approx(1.6666666666666667).epsilon(1e-12));
}

TEST_CASE("kmeans_1d tie between optimal cuts takes the smallest boundary") {
    // [0 | 4 5 9] and [0 4 5 | 9] both cost exactly 14 (integer sums, so
    // the tie survives floating point); the scan keeps the earlier cut
    stats::KMeansResult r = stats::kmeans_1d(std::vector<double>{0, 4, 5, 9}, 2);
    CHECK(r.cost == 14.0);
    CHECK(r.labels == std::vector<int>{0, 1, 1, 1});
    CHECK(r.centroids == std::vector<double>{0.0, 6.0});
}

TEST_CASE("kmeans_1d labels follow original positions, ties stable") {
    stats::KMeansResult r = stats::kmeans_1d(std::vector<double>{5, 0, 5, 0}, 2);
    CHECK(r.labels == std::vector<int>{1, 0, 1, 0});
    CHECK(r.cost == 0.0);

    stats::KMeansResult one = stats::kmeans_1d(std::vector<double>{0, 1}, 1);
    CHECK(one.cost == Approx(0.5));
    CHECK(one.centroids == std::vector<double>{0.5});

    CHECK_THROWS_AS(stats::kmeans_1d(std::vector<double>{1, 1, 1}, 2), TooFewDistinctValuesError);
    CHECK_THROWS_AS(stats::kmeans_1d(std::vector<double>{1, 2}, 0), Error);
}

namespace {

// minimum within-cluster sum of squares over all contiguous partitions
double brute_kmeans_cost(const std::vector<double>& sorted, std::size_t lo, int k) {
    std::size_t n = sorted.size();
    auto ss = [&](std::size_t i, std::size_t j) {
        double mean = 0;
        for (std::size_t t = i; t < j; ++t)
            mean += sorted[t];
        mean /= static_cast<double>(j - i);
        double c = 0;
        for (std::size_t t = i; t < j; ++t)
            c += (sorted[t] - mean) * (sorted[t] - mean);
        return c;
    };
    if (k == 1)
        return ss(lo, n);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t cut = lo + 1; cut + static_cast<std::size_t>(k) - 1 <= n; ++cut)
        best = std::min(best, ss(lo, cut) + brute_kmeans_cost(sorted, cut, k - 1));
    return best;
}

} // namespace

TEST_CASE("kmeans_1d matches exhaustive partition search") {
    testutil::Rng rng(0xC0DEull);
    for (int round = 0; round < 120; ++round) {
        std::size_t n = 2 + rng.below(9);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = static_cast<double>(rng.below(12)) / 2.0;
        std::vector<double> sorted(v);
        std::sort(sorted.begin(), sorted.end());
        std::size_t distinct = 1;
        for (std::size_t i = 1; i < n; ++i)
            if (sorted[i] != sorted[i - 1])
                ++distinct;
        int k = 1 + static_cast<int>(rng.below(std::min<std::size_t>(distinct, 4)));
        stats::KMeansResult r = stats::kmeans_1d(v, k);
        double brute = brute_kmeans_cost(sorted, 0, k);
        INFO("n=" << n << " k=" << k);
        CHECK(r.cost == Approx(brute).margin(1e-9));
    }
}

// ── nested OLS F-test ────────────────────────────────────────────────────

TEST_CASE("ols_nested_f against frozen references") {
    std::vector<double> y{3.1, 4.2, 5.1, 6.3, 7.2, 8.1, 9.4, 10.2};
    std::vector<double> xb{1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<double> xe{0.5, 0.1, 0.9, 0.2, 0.8, 0.4, 0.7, 0.3};
    stats::FTestResult f = stats::ols_nested_f(y, {xb}, {xe});
    CHECK(f.df_numerator == 1);
    CHECK(f.df_denominator == 5);
    CHECK(f.rss_base == Approx(0.06476190476190494).epsilon(1e-10));
    CHECK(f.rss_full == Approx(0.06354805933753321).epsilon(1e-10));
    CHECK(f.f_statistic == Approx(0.09550609704101486).epsilon(1e-9));
    CHECK(f.p == Approx(0.7697534708184153).epsilon(1e-10));
}

TEST_CASE("ols_nested_f degenerate designs") {
    std::vector<double> y{3.1, 4.2, 5.1, 6.3, 7.2, 8.1, 9.4, 10.2};
    std::vector<double> xb{1, 2, 3, 4, 5, 6, 7, 8};

    // duplicate column adds no parameters: F = 0, p = 1
    stats::FTestResult dup = stats::ols_nested_f(y, {xb}, {xb});
    CHECK(dup.df_numerator == 0);
    CHECK(dup.f_statistic == 0.0);
    CHECK(dup.p == 1.0);

    // an extra column that makes the fit exact: F = inf, p = 0
    std::vector<double> resid(8);
    for (std::size_t i = 0; i < 8; ++i)
        resid[i] = y[i] - (2.0 + 1.0 * xb[i]); // any exact completion works
    stats::FTestResult exact = stats::ols_nested_f(y, {xb}, {resid});
    CHECK(std::isinf(exact.f_statistic));
    CHECK(exact.p == 0.0);

    // constant base column duplicates the intercept: rank deficient
    std::vector<double> ones(8, 1.0);
    CHECK_THROWS_AS(stats::ols_nested_f(y, {ones}, {}), RankDeficientError);
    // column length mismatch
    CHECK_THROWS_AS(stats::ols_nested_f(y, {std::vector<double>{1, 2}}, {}),
                    DegenerateSampleError);
}

TEST_CASE("ols_nested_f agrees with pearson for one regressor") {
    // for a single extra column over an intercept-only base,
    // F = t^2 of the correlation and the p-values coincide
    std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<double> y{2.1, 2.9, 4.2, 4.4, 5.8, 6.1, 7.4, 8.2};
    stats::FTestResult f = stats::ols_nested_f(y, {}, {x});
    stats::CorrelationResult c = stats::pearson(x, y);
    double t = c.r * std::sqrt((8 - 2) / (1 - c.r * c.r));
    CHECK(f.f_statistic == Approx(t * t).epsilon(1e-9));
    CHECK(f.p == Approx(c.p_two_tailed).epsilon(1e-9));
}

// ── trimming ─────────────────────────────────────────────────────────────

TEST_CASE("trim_3sd removes only strict 3-sd outliers") {
    // a single extreme value among nine equal ones sits at exactly 3
    // population sd (mean 2, sd 3, deviation 9, all exact), so it stays
    std::vector<double> nine(9, 1.0);
    nine.push_back(11.0);
    CHECK(stats::trim_3sd(nine).size() == 10);

    std::vector<double> fifty(50, 2.0);
    fifty.push_back(26.0);
    std::vector<double> trimmed = stats::trim_3sd(fifty);
    REQUIRE(trimmed.size() == 50);
    for (double v : trimmed)
        CHECK(v == 2.0);

    // trimming again changes nothing: the survivors have zero spread
    CHECK(stats::trim_3sd(trimmed) == trimmed);

    CHECK(stats::trim_3sd(std::vector<double>{5, 5, 5}) == std::vector<double>{5, 5, 5});
    CHECK(stats::trim_3sd(std::vector<double>{}).empty());
    CHECK(stats::trim_3sd(std::vector<double>{7}) == std::vector<double>{7});
}

TEST_CASE("trim_3sd sample-sd mode widens the fence") {
    // z = 9.5/sqrt(113/12) = 3.096 under population sd (trimmed), but
    // 9.5/sqrt(113/11) = 2.964 under sample sd (kept)
    std::vector<double> v(10, 0.0);
    v.push_back(10.0);
    v.push_back(-4.0);
    std::vector<double> pop = stats::trim_3sd(v);
    CHECK(pop.size() == 11);
    CHECK(std::count(pop.begin(), pop.end(), 10.0) == 0);
    std::vector<double> samp = stats::trim_3sd(v, true);
    CHECK(samp.size() == 12);
}
