#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "support/oracle.hpp"
#include "tfpkit/linreg.hpp"
#include "tfpkit/synthetic.hpp"

using namespace tfpkit;
using Catch::Matchers::WithinAbs;

namespace {

RegressionSpec make_spec(std::vector<double> y, std::vector<std::vector<double>> cols) {
    RegressionSpec s;
    s.dependent = std::move(y);
    s.regressors = std::move(cols);
    return s;
}

}  // namespace

TEST_CASE("ols_fit: perfect line") {
    auto fit = ols_fit(make_spec({2, 4, 6}, {{1, 2, 3}}));
    REQUIRE_THAT(fit.coefficients[0], WithinAbs(0.0, 1e-10));
    REQUIRE_THAT(fit.coefficients[1], WithinAbs(2.0, 1e-10));
    REQUIRE_THAT(fit.r_squared, WithinAbs(1.0, 1e-12));
}

TEST_CASE("ols_fit: 3-point hand fixture") {
    auto fit = ols_fit(make_spec({1, 2, 2}, {{1, 2, 3}}));
    REQUIRE_THAT(fit.coefficients[0], WithinAbs(2.0 / 3.0, 1e-10));
    REQUIRE_THAT(fit.coefficients[1], WithinAbs(0.5, 1e-10));
    REQUIRE_THAT(fit.r_squared, WithinAbs(0.75, 1e-10));
    REQUIRE_THAT(fit.t_statistics[0], WithinAbs(1.0690449676496951, 1e-9));
    REQUIRE_THAT(fit.t_statistics[1], WithinAbs(1.732050807568877, 1e-9));
    REQUIRE_THAT(fit.f_statistic, WithinAbs(3.0, 1e-9));
}

TEST_CASE("ols_fit: degenerate designs") {
    REQUIRE_THROWS_AS(ols_fit(make_spec({1, 2, 3}, {{5, 5, 5}})), NumericError);
    REQUIRE_THROWS_AS(ols_fit(make_spec({1, 2}, {{1, 2}})), ValidationError);  // n <= k+1
    // Duplicated column.
    REQUIRE_THROWS_AS(ols_fit(make_spec({1, 2, 3, 5}, {{1, 2, 3, 4}, {2, 4, 6, 8}})),
                      NumericError);
}

TEST_CASE("ols_fit matches the explicit normal-equation oracle") {
    SplitMix64 rng(2024);
    for (int rep = 0; rep < 50; ++rep) {
        int n = 5 + static_cast<int>(rng.next() % 36);
        int k = 1 + static_cast<int>(rng.next() % 2);
        std::vector<std::vector<double>> cols(k, std::vector<double>(n));
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < k; ++j) cols[j][i] = 10.0 * rng.next_uniform() - 5.0;
            y[i] = 1.5 + 0.7 * cols[0][i] + (k > 1 ? -0.3 * cols[1][i] : 0.0) +
                   (rng.next_uniform() - 0.5);
        }
        auto fit = ols_fit(make_spec(y, cols));

        std::vector<std::vector<double>> design{std::vector<double>(n, 1.0)};
        for (auto& c : cols) design.push_back(c);
        auto ref = oracle::ols(y, design);

        for (int j = 0; j <= k; ++j) {
            REQUIRE_THAT(fit.coefficients[j], WithinAbs(ref.beta[j], 1e-10));
            REQUIRE_THAT(fit.standard_errors[j], WithinAbs(ref.se[j], 1e-10));
        }
        REQUIRE_THAT(fit.r_squared, WithinAbs(ref.r_squared, 1e-10));
        REQUIRE_THAT(fit.f_statistic, WithinAbs(ref.f_statistic, 1e-7));
    }
}

TEST_CASE("ols_fit: invariants with an intercept") {
    SplitMix64 rng(7);
    int n = 24;
    std::vector<double> x1(n), x2(n), y(n);
    for (int i = 0; i < n; ++i) {
        x1[i] = rng.next_uniform() * 4.0;
        x2[i] = rng.next_uniform() * 4.0 - 2.0;
        y[i] = 2.0 + x1[i] - 0.5 * x2[i] + (rng.next_uniform() - 0.5);
    }
    auto fit = ols_fit(make_spec(y, {x1, x2}));

    double scale = 0.0;
    for (double v : y) scale = std::max(scale, std::fabs(v));
    // fitted + residuals reproduce the dependent.
    for (int i = 0; i < n; ++i)
        REQUIRE_THAT(fit.fitted[i] + fit.residuals[i], WithinAbs(y[i], 1e-10 * scale));
    // Residual mean zero, orthogonality to every regressor.
    double mean = 0.0, d1 = 0.0, d2 = 0.0;
    for (int i = 0; i < n; ++i) {
        mean += fit.residuals[i];
        d1 += fit.residuals[i] * x1[i];
        d2 += fit.residuals[i] * x2[i];
    }
    REQUIRE_THAT(mean / n, WithinAbs(0.0, 1e-10 * scale));
    REQUIRE_THAT(d1, WithinAbs(0.0, 1e-8 * scale * n));
    REQUIRE_THAT(d2, WithinAbs(0.0, 1e-8 * scale * n));
    REQUIRE(fit.r_squared >= 0.0);
    REQUIRE(fit.r_squared <= 1.0);
    // Covariance symmetric with nonnegative diagonal.
    for (int a = 0; a < 3; ++a) {
        REQUIRE(fit.covariance[a][a] >= 0.0);
        for (int b = 0; b < 3; ++b)
            REQUIRE_THAT(fit.covariance[a][b], WithinAbs(fit.covariance[b][a], 1e-12));
    }

    SECTION("adding a constant moves only the intercept") {
        std::vector<double> y2 = y;
        for (double& v : y2) v += 11.5;
        auto fit2 = ols_fit(make_spec(y2, {x1, x2}));
        REQUIRE_THAT(fit2.coefficients[0] - fit.coefficients[0], WithinAbs(11.5, 1e-9));
        REQUIRE_THAT(fit2.coefficients[1], WithinAbs(fit.coefficients[1], 1e-10));
        REQUIRE_THAT(fit2.coefficients[2], WithinAbs(fit.coefficients[2], 1e-10));
        REQUIRE_THAT(fit2.r_squared, WithinAbs(fit.r_squared, 1e-10));
        for (int i = 0; i < n; ++i)
            REQUIRE_THAT(fit2.residuals[i], WithinAbs(fit.residuals[i], 1e-9));
    }

    SECTION("rescaling a regressor rescales its coefficient") {
        std::vector<double> x1s = x1;
        for (double& v : x1s) v *= -4.0;
        auto fit2 = ols_fit(make_spec(y, {x1s, x2}));
        REQUIRE_THAT(fit2.coefficients[1], WithinAbs(fit.coefficients[1] / -4.0, 1e-10));
        REQUIRE_THAT(fit2.r_squared, WithinAbs(fit.r_squared, 1e-10));
        for (int i = 0; i < n; ++i)
            REQUIRE_THAT(fit2.fitted[i], WithinAbs(fit.fitted[i], 1e-9));
    }
}

TEST_CASE("ols_fit without an intercept") {
    auto fit = ols_fit(make_spec({2, 4, 6, 8}, {{1, 2, 3, 4}}));
    REQUIRE(fit.has_intercept);
    RegressionSpec s = make_spec({2, 4, 6, 8}, {{1, 2, 3, 4}});
    s.include_intercept = false;
    auto fit2 = ols_fit(s);
    REQUIRE_FALSE(fit2.has_intercept);
    REQUIRE(fit2.coefficients.size() == 1);
    REQUIRE_THAT(fit2.coefficients[0], WithinAbs(2.0, 1e-12));
    REQUIRE_THAT(fit2.r_squared, WithinAbs(1.0, 1e-12));
}

TEST_CASE("durbin_watson") {
    std::vector<double> constant{1, 1, 1, 1};
    REQUIRE_THAT(durbin_watson(constant), WithinAbs(0.0, 1e-14));
    std::vector<double> alt{1, -1, 1, -1};
    REQUIRE_THAT(durbin_watson(alt), WithinAbs(3.0, 1e-12));
    std::vector<double> mixed{1, -1, -1, 1};
    REQUIRE_THAT(durbin_watson(mixed), WithinAbs(2.0, 1e-12));

    std::vector<double> zeros{0, 0, 0};
    REQUIRE_THROWS_AS(durbin_watson(zeros), NumericError);
    std::vector<double> one{1.0};
    REQUIRE_THROWS_AS(durbin_watson(one), ValidationError);

    // Scale invariance.
    SplitMix64 rng(5);
    std::vector<double> e(40);
    for (double& v : e) v = rng.next_uniform() - 0.5;
    double base = durbin_watson(e);
    for (double c : {-3.0, 0.25, 1000.0}) {
        std::vector<double> scaled = e;
        for (double& v : scaled) v *= c;
        REQUIRE_THAT(durbin_watson(scaled), WithinAbs(base, 1e-10));
    }
}
