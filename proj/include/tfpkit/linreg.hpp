#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tfpkit/errors.hpp"

namespace tfpkit {

/// A least-squares problem. Regressors are stored column-wise; an intercept
/// column is prepended automatically unless include_intercept is cleared
/// (the caller may then supply its own quasi-intercept column).
struct RegressionSpec {
    std::vector<double> dependent;
    std::vector<std::vector<double>> regressors;  // k columns of length n
    bool include_intercept = true;
};

/// Full summary of an OLS fit. Coefficient order matches the design:
/// intercept first when present, then the regressor columns in spec order.
struct OlsFit {
    std::vector<double> coefficients;
    std::vector<std::vector<double>> covariance;  // (p x p), p = #coefficients
    std::vector<double> standard_errors;
    std::vector<double> t_statistics;
    std::vector<double> residuals;
    std::vector<double> fitted;
    double r_squared = 0.0;
    double adjusted_r_squared = 0.0;
    double f_statistic = 0.0;  ///< all slopes jointly zero (intercept models)
    double sigma2 = 0.0;       ///< SSR / (n - p)
    double ssr = 0.0;
    int n = 0;
    int k = 0;  ///< regressor count excluding the intercept
    bool has_intercept = true;
};

namespace detail {

// Cholesky factorization with a relative pivot threshold; the smallest pivot
// must stay above 1e-12 x the largest seen, otherwise the design is rank
// deficient. A is symmetric (row-major, dim x dim), overwritten with L.
inline void cholesky(std::vector<double>& a, int dim) {
    double max_pivot = 0.0;
    for (int j = 0; j < dim; ++j) {
        double pivot = a[j * dim + j];
        for (int t = 0; t < j; ++t) pivot -= a[j * dim + t] * a[j * dim + t];
        if (j == 0) max_pivot = pivot;
        max_pivot = std::max(max_pivot, pivot);
        if (!(pivot > 1e-12 * max_pivot) || !(pivot > 0.0))
            throw NumericError("ols_fit: singular design (rank-deficient regressor matrix)");
        double l = std::sqrt(pivot);
        a[j * dim + j] = l;
        for (int i = j + 1; i < dim; ++i) {
            double s = a[i * dim + j];
            for (int t = 0; t < j; ++t) s -= a[i * dim + t] * a[j * dim + t];
            a[i * dim + j] = s / l;
        }
    }
}

// Solve L L' x = b in place given the Cholesky factor.
inline void cholesky_solve(const std::vector<double>& l, int dim, std::vector<double>& b) {
    for (int i = 0; i < dim; ++i) {
        double s = b[i];
        for (int t = 0; t < i; ++t) s -= l[i * dim + t] * b[t];
        b[i] = s / l[i * dim + i];
    }
    for (int i = dim - 1; i >= 0; --i) {
        double s = b[i];
        for (int t = i + 1; t < dim; ++t) s -= l[t * dim + i] * b[t];
        b[i] = s / l[i * dim + i];
    }
}

// Invert a SPD matrix from its Cholesky factor.
inline std::vector<double> cholesky_inverse(const std::vector<double>& l, int dim) {
    std::vector<double> inv(dim * dim, 0.0);
    std::vector<double> e(dim);
    for (int c = 0; c < dim; ++c) {
        std::fill(e.begin(), e.end(), 0.0);
        e[c] = 1.0;
        cholesky_solve(l, dim, e);
        for (int r = 0; r < dim; ++r) inv[r * dim + c] = e[r];
    }
    // Symmetrize to kill the last-ulp asymmetry of the column solves.
    for (int r = 0; r < dim; ++r)
        for (int c = r + 1; c < dim; ++c) {
            double v = 0.5 * (inv[r * dim + c] + inv[c * dim + r]);
            inv[r * dim + c] = inv[c * dim + r] = v;
        }
    return inv;
}

}  // namespace detail

/// Ordinary least squares. Intercept models are solved on centered data for
/// conditioning and the full covariance recovered by the partitioned-inverse
/// identity; without an intercept the normal equations are solved directly.
inline OlsFit ols_fit(const RegressionSpec& spec) {
    const int n = static_cast<int>(spec.dependent.size());
    const int k = static_cast<int>(spec.regressors.size());
    const bool intercept = spec.include_intercept;
    const int p = k + (intercept ? 1 : 0);

    if (p < 1) throw ValidationError("ols_fit: no regressors");
    for (const auto& col : spec.regressors)
        if (static_cast<int>(col.size()) != n)
            throw ValidationError("ols_fit: regressor column length mismatch");
    if (n <= p)
        throw ValidationError("ols_fit: insufficient data (" + std::to_string(n) +
                              " observations for " + std::to_string(p) + " parameters)");

    const std::vector<double>& y = spec.dependent;
    double ybar = 0.0;
    for (double v : y) ybar += v;
    ybar /= n;

    std::vector<double> beta(p, 0.0);
    std::vector<double> xtx_inv;  // (p x p), row-major

    if (intercept) {
        std::vector<double> xbar(k, 0.0);
        for (int j = 0; j < k; ++j) {
            for (double v : spec.regressors[j]) xbar[j] += v;
            xbar[j] /= n;
        }
        // S = Xc' Xc on centered columns.
        std::vector<double> s(k * k, 0.0);
        for (int a = 0; a < k; ++a)
            for (int b = a; b < k; ++b) {
                double acc = 0.0;
                for (int i = 0; i < n; ++i)
                    acc += (spec.regressors[a][i] - xbar[a]) * (spec.regressors[b][i] - xbar[b]);
                s[a * k + b] = s[b * k + a] = acc;
            }
        std::vector<double> rhs(k, 0.0);
        for (int a = 0; a < k; ++a) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) acc += (spec.regressors[a][i] - xbar[a]) * (y[i] - ybar);
            rhs[a] = acc;
        }
        std::vector<double> slopes;
        std::vector<double> s_inv;
        if (k > 0) {
            std::vector<double> chol = s;
            detail::cholesky(chol, k);
            slopes = rhs;
            detail::cholesky_solve(chol, k, slopes);
            s_inv = detail::cholesky_inverse(chol, k);
        }
        double a0 = ybar;
        for (int j = 0; j < k; ++j) a0 -= slopes[j] * xbar[j];
        beta[0] = a0;
        for (int j = 0; j < k; ++j) beta[j + 1] = slopes[j];

        // (X'X)^-1 for [1 X] from the centered inverse:
        //   [ 1/n + xbar' S^-1 xbar   -(S^-1 xbar)' ]
        //   [ -S^-1 xbar                S^-1        ]
        xtx_inv.assign(p * p, 0.0);
        std::vector<double> s_inv_xbar(k, 0.0);
        double quad = 0.0;
        for (int a = 0; a < k; ++a) {
            double acc = 0.0;
            for (int b = 0; b < k; ++b) acc += s_inv[a * k + b] * xbar[b];
            s_inv_xbar[a] = acc;
            quad += xbar[a] * acc;
        }
        xtx_inv[0] = 1.0 / n + quad;
        for (int a = 0; a < k; ++a) {
            xtx_inv[0 * p + (a + 1)] = -s_inv_xbar[a];
            xtx_inv[(a + 1) * p + 0] = -s_inv_xbar[a];
            for (int b = 0; b < k; ++b) xtx_inv[(a + 1) * p + (b + 1)] = s_inv[a * k + b];
        }
    } else {
        std::vector<double> xtx(p * p, 0.0);
        for (int a = 0; a < p; ++a)
            for (int b = a; b < p; ++b) {
                double acc = 0.0;
                for (int i = 0; i < n; ++i) acc += spec.regressors[a][i] * spec.regressors[b][i];
                xtx[a * p + b] = xtx[b * p + a] = acc;
            }
        std::vector<double> rhs(p, 0.0);
        for (int a = 0; a < p; ++a) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) acc += spec.regressors[a][i] * y[i];
            rhs[a] = acc;
        }
        std::vector<double> chol = xtx;
        detail::cholesky(chol, p);
        beta = rhs;
        detail::cholesky_solve(chol, p, beta);
        xtx_inv = detail::cholesky_inverse(chol, p);
    }

    OlsFit fit;
    fit.n = n;
    fit.k = k;
    fit.has_intercept = intercept;
    fit.coefficients = beta;
    fit.fitted.resize(n);
    fit.residuals.resize(n);
    double ssr = 0.0;
    for (int i = 0; i < n; ++i) {
        double f = intercept ? beta[0] : 0.0;
        for (int j = 0; j < k; ++j) f += beta[j + (intercept ? 1 : 0)] * spec.regressors[j][i];
        fit.fitted[i] = f;
        fit.residuals[i] = y[i] - f;
        ssr += fit.residuals[i] * fit.residuals[i];
    }
    fit.ssr = ssr;
    const int dof = n - p;
    fit.sigma2 = ssr / dof;

    fit.covariance.assign(p, std::vector<double>(p, 0.0));
    fit.standard_errors.resize(p);
    fit.t_statistics.resize(p);
    for (int a = 0; a < p; ++a) {
        for (int b = 0; b < p; ++b) fit.covariance[a][b] = fit.sigma2 * xtx_inv[a * p + b];
        fit.standard_errors[a] = std::sqrt(fit.covariance[a][a]);
        fit.t_statistics[a] =
            fit.standard_errors[a] > 0.0
                ? fit.coefficients[a] / fit.standard_errors[a]
                : std::numeric_limits<double>::infinity() * (fit.coefficients[a] >= 0 ? 1 : -1);
    }

    double tss = 0.0;
    if (intercept) {
        for (double v : y) tss += (v - ybar) * (v - ybar);
    } else {
        for (double v : y) tss += v * v;  // uncentered convention
    }
    if (tss > 0.0) {
        fit.r_squared = 1.0 - ssr / tss;
    } else {
        fit.r_squared = ssr <= 0.0 ? 1.0 : 0.0;
    }
    const int r2_base = intercept ? n - 1 : n;
    fit.adjusted_r_squared = 1.0 - (1.0 - fit.r_squared) * r2_base / dof;
    if (k >= 1 && tss > 0.0) {
        fit.f_statistic = ((tss - ssr) / k) / (ssr / dof);
    } else {
        fit.f_statistic = std::numeric_limits<double>::quiet_NaN();
    }
    return fit;
}

/// Durbin-Watson first-order autocorrelation statistic,
/// sum (e_t - e_{t-1})^2 / sum e_t^2, in [0, 4].
inline double durbin_watson(std::span<const double> residuals) {
    if (residuals.size() < 2)
        throw ValidationError("durbin_watson: need at least two residuals");
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < residuals.size(); ++t) {
        den += residuals[t] * residuals[t];
        if (t > 0) {
            double d = residuals[t] - residuals[t - 1];
            num += d * d;
        }
    }
    if (den == 0.0) throw NumericError("durbin_watson: undefined for all-zero residuals");
    return num / den;
}

}  // namespace tfpkit
