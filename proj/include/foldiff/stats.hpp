#pragma once

// Statistical primitives for the evaluation pipeline: Pearson correlation
// with Student-t p-values, Williams' test for two dependent correlations
// sharing a variable, exact 1-D k-means via dynamic programming, a nested
// OLS F-test, and 3-standard-deviation outlier trimming.
//
// t- and F-distribution tails go through the regularized incomplete beta
// function, computed with the standard continued-fraction expansion.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "foldiff/errors.hpp"

namespace foldiff::stats {

// ── distribution tails ───────────────────────────────────────────────────

namespace detail_s {

inline double betacf(double a, double b, double x) {
    const int max_iter = 500;
    const double fpmin = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin)
        d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin)
            d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin)
            c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin)
            d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin)
            c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15)
            break;
    }
    return h;
}

} // namespace detail_s

inline double regularized_incomplete_beta(double a, double b, double x) {
    if (a <= 0 || b <= 0)
        throw DegenerateSampleError("incomplete beta needs positive parameters");
    if (x <= 0)
        return 0.0;
    if (x >= 1)
        return 1.0;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                      b * std::log1p(-x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * detail_s::betacf(a, b, x) / a;
    return 1.0 - front * detail_s::betacf(b, a, 1.0 - x) / b;
}

inline double student_t_two_tailed_p(double t, int df) {
    if (df < 1)
        throw DegenerateSampleError("t distribution needs df >= 1");
    if (std::isinf(t))
        return 0.0;
    double d = static_cast<double>(df);
    return regularized_incomplete_beta(d / 2.0, 0.5, d / (d + t * t));
}

inline double f_tail_p(double f, int df1, int df2) {
    if (df1 < 1 || df2 < 1)
        throw DegenerateSampleError("F distribution needs df >= 1");
    if (f <= 0)
        return 1.0;
    if (std::isinf(f))
        return 0.0;
    double d1 = static_cast<double>(df1), d2 = static_cast<double>(df2);
    return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

// ── correlation ──────────────────────────────────────────────────────────

struct CorrelationResult {
    double r = 0;
    double p_two_tailed = 1;
    int n = 0;
};

inline CorrelationResult pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw DegenerateSampleError("pearson needs equal-length samples");
    std::size_t n = xs.size();
    if (n < 3)
        throw DegenerateSampleError("pearson needs n >= 3");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0)
        throw DegenerateSampleError("pearson undefined for zero-variance sample");
    double r = sxy / std::sqrt(sxx * syy);
    r = std::min(1.0, std::max(-1.0, r));
    double p;
    if (std::fabs(r) == 1.0) {
        p = 0.0;
    } else {
        double df = static_cast<double>(n - 2);
        double t = r * std::sqrt(df / (1.0 - r * r));
        p = student_t_two_tailed_p(t, static_cast<int>(n) - 2);
    }
    return {r, p, static_cast<int>(n)};
}

// ── Williams' test for dependent correlations ────────────────────────────

struct WilliamsResult {
    double t = 0;
    double p = 1;
    int df = 0;
};

// compares r12 and r13 (correlations of variables 2 and 3 with the shared
// variable 1), given the correlation r23 between them
inline WilliamsResult williams_dependent_r_test(double r12, double r13, double r23, int n) {
    if (n < 4)
        throw DegenerateSampleError("williams test needs n >= 4");
    if (std::fabs(r12) >= 1 || std::fabs(r13) >= 1 || std::fabs(r23) >= 1)
        throw DegenerateSampleError("williams test needs correlations in (-1, 1)");
    double nn = static_cast<double>(n);
    double det = 1.0 - r12 * r12 - r13 * r13 - r23 * r23 + 2.0 * r12 * r13 * r23;
    double rbar = (r12 + r13) / 2.0;
    double denom = 2.0 * ((nn - 1.0) / (nn - 3.0)) * det +
                   rbar * rbar * std::pow(1.0 - r23, 3);
    if (denom <= 0)
        throw DegenerateSampleError("williams test: correlation matrix not positive definite");
    double t = (r12 - r13) * std::sqrt((nn - 1.0) * (1.0 + r23) / denom);
    int df = n - 3;
    return {t, student_t_two_tailed_p(std::fabs(t), df), df};
}

// ── exact 1-D k-means ────────────────────────────────────────────────────

struct KMeansResult {
    std::vector<int> labels;        // cluster ids 0..k-1, ascending by value
    std::vector<double> centroids;  // cluster means, ascending
    double cost = 0;                // total within-cluster sum of squares
};

inline KMeansResult kmeans_1d(std::span<const double> values, int k) {
    std::size_t n = values.size();
    if (k < 1)
        throw Error("kmeans_1d needs k >= 1");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (i == 0 || sorted[i] != sorted[i - 1])
            ++distinct;
    if (distinct < static_cast<std::size_t>(k))
        throw TooFewDistinctValuesError("kmeans_1d: " + std::to_string(distinct) +
                                        " distinct values for k=" + std::to_string(k));

    std::vector<double> s1(n + 1, 0), s2(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        s1[i + 1] = s1[i] + sorted[i];
        s2[i + 1] = s2[i] + sorted[i] * sorted[i];
    }
    auto cost = [&](std::size_t i, std::size_t j) { // sorted[i..j)
        double len = static_cast<double>(j - i);
        double sum = s1[j] - s1[i];
        double c = (s2[j] - s2[i]) - sum * sum / len;
        return c > 0 ? c : 0.0;
    };

    const double inf = std::numeric_limits<double>::infinity();
    std::size_t kk = static_cast<std::size_t>(k);
    // dp[c][j]: best cost for the first j points in c+1 clusters
    std::vector<std::vector<double>> dp(kk, std::vector<double>(n + 1, inf));
    std::vector<std::vector<std::size_t>> from(kk, std::vector<std::size_t>(n + 1, 0));
    for (std::size_t j = 1; j <= n; ++j)
        dp[0][j] = cost(0, j);
    for (std::size_t c = 1; c < kk; ++c) {
        for (std::size_t j = c + 1; j <= n; ++j) {
            for (std::size_t i = c; i < j; ++i) {
                double v = dp[c - 1][i] + cost(i, j);
                if (v < dp[c][j]) { // strict: smallest boundary wins ties
                    dp[c][j] = v;
                    from[c][j] = i;
                }
            }
        }
    }

    std::vector<std::size_t> bounds(kk + 1);
    bounds[kk] = n;
    for (std::size_t c = kk; c-- > 1;)
        bounds[c] = from[c][bounds[c + 1]];
    bounds[0] = 0;

    KMeansResult out;
    out.cost = dp[kk - 1][n];
    out.centroids.resize(kk);
    std::vector<int> sorted_label(n);
    for (std::size_t c = 0; c < kk; ++c) {
        std::size_t lo = bounds[c], hi = bounds[c + 1];
        out.centroids[c] = (s1[hi] - s1[lo]) / static_cast<double>(hi - lo);
        for (std::size_t i = lo; i < hi; ++i)
            sorted_label[i] = static_cast<int>(c);
    }

    // map labels back to the original order; ties in value broken by
    // original position (stable)
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.labels[order[i]] = sorted_label[i];
    return out;
}

// ── nested OLS F-test ────────────────────────────────────────────────────

struct FTestResult {
    double f_statistic = 0;
    int df_numerator = 0;
    int df_denominator = 0;
    double p = 1;
    double rss_base = 0;
    double rss_full = 0;
};

namespace detail_s {

struct OlsFit {
    double rss = 0;
    int rank = 0;
};

// least squares via normal equations with pivoted Gaussian elimination;
// dependent columns get zero coefficients and do not count toward rank
inline OlsFit fit_ols(std::span<const double> y, const std::vector<std::vector<double>>& cols) {
    std::size_t n = y.size();
    std::size_t p = cols.size() + 1; // intercept first
    std::vector<std::vector<double>> a(n, std::vector<double>(p, 1.0));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < n; ++i)
            a[i][j + 1] = cols[j][i];

    std::vector<std::vector<double>> m(p, std::vector<double>(p, 0.0));
    std::vector<double> v(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            v[j] += a[i][j] * y[i];
            for (std::size_t l = j; l < p; ++l)
                m[j][l] += a[i][j] * a[i][l];
        }
    }
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t l = 0; l < j; ++l)
            m[j][l] = m[l][j];

    double max_entry = 0;
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t l = 0; l < p; ++l)
            max_entry = std::max(max_entry, std::fabs(m[j][l]));
    double tol = 1e-10 * max_entry;

    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < p && row < p; ++col) {
        std::size_t best = row;
        for (std::size_t i = row + 1; i < p; ++i)
            if (std::fabs(m[i][col]) > std::fabs(m[best][col]))
                best = i;
        if (std::fabs(m[best][col]) <= tol)
            continue; // dependent column
        std::swap(m[row], m[best]);
        std::swap(v[row], v[best]);
        for (std::size_t i = row + 1; i < p; ++i) {
            double factor = m[i][col] / m[row][col];
            if (factor == 0)
                continue;
            for (std::size_t l = col; l < p; ++l)
                m[i][l] -= factor * m[row][l];
            v[i] -= factor * v[row];
        }
        pivot_col.push_back(col);
        ++row;
    }

    std::vector<double> beta(p, 0.0);
    for (std::size_t r = pivot_col.size(); r-- > 0;) {
        std::size_t col = pivot_col[r];
        double acc = v[r];
        for (std::size_t l = col + 1; l < p; ++l)
            acc -= m[r][l] * beta[l];
        beta[col] = acc / m[r][col];
    }

    OlsFit fit;
    fit.rank = static_cast<int>(pivot_col.size());
    for (std::size_t i = 0; i < n; ++i) {
        double pred = 0;
        for (std::size_t j = 0; j < p; ++j)
            pred += a[i][j] * beta[j];
        double res = y[i] - pred;
        fit.rss += res * res;
    }
    return fit;
}

} // namespace detail_s

inline FTestResult ols_nested_f(std::span<const double> y,
                                const std::vector<std::vector<double>>& x_base,
                                const std::vector<std::vector<double>>& x_extra) {
    std::size_t n = y.size();
    for (const auto& c : x_base)
        if (c.size() != n)
            throw DegenerateSampleError("ols_nested_f: base column length mismatch");
    for (const auto& c : x_extra)
        if (c.size() != n)
            throw DegenerateSampleError("ols_nested_f: extra column length mismatch");

    detail_s::OlsFit base = detail_s::fit_ols(y, x_base);
    if (base.rank < static_cast<int>(x_base.size()) + 1)
        throw RankDeficientError("ols_nested_f: base design matrix is rank deficient");

    std::vector<std::vector<double>> all = x_base;
    all.insert(all.end(), x_extra.begin(), x_extra.end());
    detail_s::OlsFit full = detail_s::fit_ols(y, all);

    if (n <= static_cast<std::size_t>(full.rank))
        throw DegenerateSampleError("ols_nested_f: need n > parameters of the larger model");

    FTestResult out;
    out.rss_base = base.rss;
    out.rss_full = full.rss;
    out.df_numerator = full.rank - base.rank;
    out.df_denominator = static_cast<int>(n) - full.rank;
    if (out.df_numerator == 0) {
        out.f_statistic = 0;
        out.p = 1;
        return out;
    }

    double my = 0;
    for (std::size_t i = 0; i < n; ++i)
        my += y[i];
    my /= static_cast<double>(n);
    double sst = 0;
    for (std::size_t i = 0; i < n; ++i)
        sst += (y[i] - my) * (y[i] - my);
    if (full.rss <= 1e-12 * std::max(sst, 1e-30)) {
        out.f_statistic = std::numeric_limits<double>::infinity();
        out.p = 0;
        return out;
    }

    double num = std::max(0.0, base.rss - full.rss) / static_cast<double>(out.df_numerator);
    double den = full.rss / static_cast<double>(out.df_denominator);
    out.f_statistic = num / den;
    out.p = f_tail_p(out.f_statistic, out.df_numerator, out.df_denominator);
    return out;
}

// ── outlier trimming ─────────────────────────────────────────────────────

// removes values strictly beyond three standard deviations from the mean;
// mean and sd computed once over the input (single pass, no iteration)
inline std::vector<double> trim_3sd(std::span<const double> values, bool sample_sd = false) {
    std::size_t n = values.size();
    std::vector<double> out(values.begin(), values.end());
    if (n == 0)
        return out;
    double mean = 0;
    for (double v : values)
        mean += v;
    mean /= static_cast<double>(n);
    double ss = 0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    double denom = sample_sd ? static_cast<double>(n) - 1.0 : static_cast<double>(n);
    if (denom <= 0)
        return out;
    double sd = std::sqrt(ss / denom);
    if (sd == 0)
        return out;
    std::vector<double> kept;
    for (double v : values)
        if (std::fabs(v - mean) <= 3.0 * sd)
            kept.push_back(v);
    return kept;
}

} // namespace foldiff::stats
