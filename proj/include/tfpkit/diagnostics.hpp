#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tfpkit/errors.hpp"
#include "tfpkit/linreg.hpp"
#include "tfpkit/prob.hpp"

namespace tfpkit {

enum class RefDistribution { chi_square, f_dist, none };

/// One residual-diagnostic outcome. df2 is only meaningful for F-form tests.
struct DiagnosticReport {
    std::string test;
    double statistic = 0.0;
    RefDistribution distribution = RefDistribution::none;
    int df1 = 0;
    int df2 = 0;
    double p_value = std::numeric_limits<double>::quiet_NaN();
    bool reject_5pct = false;
    std::string detail;
};

namespace detail {

inline DiagnosticReport chi_square_report(std::string name, double stat, int df,
                                          std::string detail = {}) {
    DiagnosticReport r;
    r.test = std::move(name);
    r.statistic = stat;
    r.distribution = RefDistribution::chi_square;
    r.df1 = df;
    r.p_value = chi_square_sf(stat, df);
    r.reject_5pct = r.p_value < 0.05;
    r.detail = std::move(detail);
    return r;
}

inline double centered_sum_sq(std::span<const double> v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s;
}

}  // namespace detail

/// Breusch-Pagan-Godfrey heteroskedasticity test: squared residuals on the
/// model regressors, LM = n * R_aux^2 ~ chi-square(k).
inline DiagnosticReport breusch_pagan_godfrey(const OlsFit& fit,
                                              const std::vector<std::vector<double>>& regressors) {
    const int n = static_cast<int>(fit.residuals.size());
    const int k = static_cast<int>(regressors.size());
    if (k < 1) throw ValidationError("breusch_pagan_godfrey: no regressors");
    if (n <= k + 2) throw ValidationError("breusch_pagan_godfrey: insufficient observations");

    std::vector<double> e2(n);
    for (int i = 0; i < n; ++i) e2[i] = fit.residuals[i] * fit.residuals[i];
    if (detail::centered_sum_sq(e2) <= 0.0)
        throw NumericError("breusch_pagan_godfrey: squared residuals have no variation");

    RegressionSpec aux;
    aux.dependent = std::move(e2);
    aux.regressors = regressors;
    OlsFit auxfit = ols_fit(aux);
    return detail::chi_square_report("breusch_pagan_godfrey", n * auxfit.r_squared, k);
}

/// Breusch-Godfrey serial-correlation LM test with p zero-padded residual
/// lags; statistic (n - p) * R_aux^2 ~ chi-square(p).
inline DiagnosticReport breusch_godfrey_lm(const OlsFit& fit,
                                           const std::vector<std::vector<double>>& regressors,
                                           int lag_order) {
    const int n = static_cast<int>(fit.residuals.size());
    const int k = static_cast<int>(regressors.size());
    if (lag_order < 1) throw ValidationError("breusch_godfrey_lm: lag order must be >= 1");
    if (n <= k + lag_order + 2)
        throw ValidationError("breusch_godfrey_lm: insufficient observations");

    RegressionSpec aux;
    aux.dependent = fit.residuals;
    aux.regressors = regressors;
    for (int j = 1; j <= lag_order; ++j) {
        std::vector<double> lagged(n, 0.0);
        for (int t = j; t < n; ++t) lagged[t] = fit.residuals[t - j];
        aux.regressors.push_back(std::move(lagged));
    }
    OlsFit auxfit = ols_fit(aux);
    double stat = (n - lag_order) * auxfit.r_squared;
    return detail::chi_square_report("breusch_godfrey_lm", stat, lag_order,
                                     "lag order " + std::to_string(lag_order));
}

/// Jarque-Bera normality test, JB = n/6 (S^2 + (K-3)^2 / 4) with the
/// unadjusted moment estimators of skewness and kurtosis.
inline DiagnosticReport jarque_bera(std::span<const double> residuals) {
    const int n = static_cast<int>(residuals.size());
    if (n < 4) throw ValidationError("jarque_bera: need at least four observations");
    double mean = 0.0;
    for (double v : residuals) mean += v;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : residuals) {
        double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 <= 0.0) throw NumericError("jarque_bera: zero variance");
    double skew = m3 / std::pow(m2, 1.5);
    double kurt = m4 / (m2 * m2);
    double jb = n / 6.0 * (skew * skew + 0.25 * (kurt - 3.0) * (kurt - 3.0));
    auto r = detail::chi_square_report("jarque_bera", jb, 2);
    char buf[64];
    // Semicolon separator keeps the CSV export single-field.
    std::snprintf(buf, sizeof buf, "skewness %.4f; kurtosis %.4f", skew, kurt);
    r.detail = buf;
    return r;
}

/// Residual mean and per-regressor Pearson correlations. A correlation
/// against a constant column is undefined; it is flagged, not fatal.
struct ExogeneityReport {
    double residual_mean = 0.0;
    std::vector<double> correlations;  // NaN where undefined
    std::vector<bool> defined;
};

inline ExogeneityReport residual_exogeneity(std::span<const double> residuals,
                                            const std::vector<std::vector<double>>& regressors) {
    const std::size_t n = residuals.size();
    if (n < 2) throw ValidationError("residual_exogeneity: need at least two residuals");
    ExogeneityReport rep;
    double emean = 0.0;
    for (double v : residuals) emean += v;
    emean /= static_cast<double>(n);
    rep.residual_mean = emean;

    double se = 0.0;
    for (double v : residuals) se += (v - emean) * (v - emean);
    for (const auto& col : regressors) {
        if (col.size() != n)
            throw ValidationError("residual_exogeneity: regressor length mismatch");
        double xmean = 0.0;
        for (double v : col) xmean += v;
        xmean /= static_cast<double>(n);
        double sx = 0.0, sxe = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sx += (col[i] - xmean) * (col[i] - xmean);
            sxe += (col[i] - xmean) * (residuals[i] - emean);
        }
        if (sx <= 0.0 || se <= 0.0) {
            rep.correlations.push_back(std::numeric_limits<double>::quiet_NaN());
            rep.defined.push_back(false);
        } else {
            rep.correlations.push_back(sxe / std::sqrt(sx * se));
            rep.defined.push_back(true);
        }
    }
    return rep;
}

inline ExogeneityReport residual_exogeneity(const OlsFit& fit,
                                            const std::vector<std::vector<double>>& regressors) {
    return residual_exogeneity(std::span<const double>(fit.residuals), regressors);
}

/// Sample ACF (biased estimator) and PACF (Durbin-Levinson) with the
/// approximate 95% band 1.96/sqrt(n). Index 0 holds the definitional 1.
struct Correlogram {
    std::vector<double> acf;
    std::vector<double> pacf;
    double band = 0.0;
};

inline Correlogram correlogram(std::span<const double> residuals, int max_lag) {
    const int n = static_cast<int>(residuals.size());
    if (max_lag < 1) throw ValidationError("correlogram: max_lag must be >= 1");
    if (n <= max_lag) throw ValidationError("correlogram: need more observations than lags");

    double mean = 0.0;
    for (double v : residuals) mean += v;
    mean /= n;
    double c0 = 0.0;
    for (double v : residuals) c0 += (v - mean) * (v - mean);
    c0 /= n;
    if (c0 <= 0.0) throw NumericError("correlogram: zero-variance series");

    Correlogram out;
    out.band = 1.96 / std::sqrt(static_cast<double>(n));
    out.acf.resize(max_lag + 1);
    out.acf[0] = 1.0;
    for (int kk = 1; kk <= max_lag; ++kk) {
        double ck = 0.0;
        for (int t = 0; t + kk < n; ++t) ck += (residuals[t] - mean) * (residuals[t + kk] - mean);
        out.acf[kk] = ck / n / c0;
    }

    // Durbin-Levinson recursion.
    out.pacf.assign(max_lag + 1, 0.0);
    out.pacf[0] = 1.0;
    std::vector<double> phi(max_lag + 1, 0.0), prev(max_lag + 1, 0.0);
    for (int m = 1; m <= max_lag; ++m) {
        double num = out.acf[m];
        for (int j = 1; j < m; ++j) num -= prev[j] * out.acf[m - j];
        double den = 1.0;
        for (int j = 1; j < m; ++j) den -= prev[j] * out.acf[j];
        double pm = den != 0.0 ? num / den : 0.0;
        phi[m] = pm;
        for (int j = 1; j < m; ++j) phi[j] = prev[j] - pm * prev[m - j];
        out.pacf[m] = pm;
        prev = phi;
    }
    return out;
}

}  // namespace tfpkit
