#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "tfpkit/errors.hpp"
#include "tfpkit/linreg.hpp"

namespace tfpkit {

enum class Ar1Method {
    difference,   ///< drop the first observation (default)
    full_sample,  ///< keep it, scaled by sqrt(1 - rho^2)
};

/// Regression with an AR(1) disturbance, estimated by iterated
/// quasi-differencing. inner_fit is the OLS fit of the transformed model;
/// because the transformed design carries an explicit (1 - rho) intercept
/// column, every reported coefficient is already on the original scale.
struct Ar1Fit {
    double rho = 0.0;
    double rho_t_statistic = 0.0;
    OlsFit inner_fit;
    int iterations = 0;
    bool converged = false;
    int effective_n = 0;
};

/// Non-convergence carrier; .last holds the final iterate.
class Ar1ConvergenceError : public NumericError {
public:
    Ar1ConvergenceError(const std::string& what, Ar1Fit last)
        : NumericError(what), last(std::move(last)) {}
    Ar1Fit last;
};

/// Lag-one autoregression of a residual series through the origin:
/// rho = sum e_t e_{t-1} / sum e_{t-1}^2.
inline double estimate_ar1_rho(std::span<const double> residuals) {
    if (residuals.size() < 2)
        throw ValidationError("estimate_ar1_rho: need at least two residuals");
    double num = 0.0, den = 0.0;
    for (std::size_t t = 1; t < residuals.size(); ++t) {
        num += residuals[t] * residuals[t - 1];
        den += residuals[t - 1] * residuals[t - 1];
    }
    if (den == 0.0) return 0.0;
    return num / den;
}

/// t-ratio of the lag-one coefficient in the residual autoregression.
inline double ar1_rho_t_statistic(std::span<const double> residuals) {
    double rho = estimate_ar1_rho(residuals);
    const std::size_t m = residuals.size() - 1;
    if (m < 2) return 0.0;
    double den = 0.0, ssr = 0.0;
    for (std::size_t t = 1; t < residuals.size(); ++t) {
        den += residuals[t - 1] * residuals[t - 1];
        double v = residuals[t] - rho * residuals[t - 1];
        ssr += v * v;
    }
    if (den == 0.0 || ssr == 0.0) return 0.0;
    double se = std::sqrt(ssr / static_cast<double>(m - 1) / den);
    return rho / se;
}

namespace detail {

inline std::vector<double> structural_residuals(const RegressionSpec& spec,
                                                std::span<const double> beta) {
    const std::size_t n = spec.dependent.size();
    const std::size_t k = spec.regressors.size();
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) {
        double f = beta[0];
        for (std::size_t j = 0; j < k; ++j) f += beta[j + 1] * spec.regressors[j][i];
        e[i] = spec.dependent[i] - f;
    }
    return e;
}

inline OlsFit quasi_difference_fit(const RegressionSpec& spec, double rho, Ar1Method method) {
    const std::size_t n = spec.dependent.size();
    const std::size_t k = spec.regressors.size();
    const bool keep_first = method == Ar1Method::full_sample;
    const std::size_t rows = keep_first ? n : n - 1;
    const double w0 = std::sqrt(1.0 - rho * rho);

    RegressionSpec t;
    t.include_intercept = false;
    t.dependent.reserve(rows);
    t.regressors.assign(k + 1, {});
    for (auto& col : t.regressors) col.reserve(rows);
    if (keep_first) {
        t.dependent.push_back(w0 * spec.dependent[0]);
        t.regressors[0].push_back(w0);
        for (std::size_t j = 0; j < k; ++j) t.regressors[j + 1].push_back(w0 * spec.regressors[j][0]);
    }
    for (std::size_t i = 1; i < n; ++i) {
        t.dependent.push_back(spec.dependent[i] - rho * spec.dependent[i - 1]);
        t.regressors[0].push_back(1.0 - rho);
        for (std::size_t j = 0; j < k; ++j)
            t.regressors[j + 1].push_back(spec.regressors[j][i] - rho * spec.regressors[j][i - 1]);
    }
    OlsFit fit = ols_fit(t);

    // rho is an estimated parameter of the model; count it in the error
    // degrees of freedom (the convention regression packages use for AR
    // terms). Rescales sigma^2, the covariance, and the derived statistics.
    const int dof = fit.n - static_cast<int>(fit.coefficients.size());
    if (dof > 1) {
        double factor = static_cast<double>(dof) / (dof - 1);
        double root = std::sqrt(factor);
        fit.sigma2 *= factor;
        for (auto& row : fit.covariance)
            for (double& v : row) v *= factor;
        for (double& v : fit.standard_errors) v *= root;
        for (double& v : fit.t_statistics) v /= root;
        fit.f_statistic /= factor;
    }
    return fit;
}

}  // namespace detail

/// Iterated feasible estimation of y = X b + u, u_t = rho u_{t-1} + e_t:
/// OLS, rho from the residual lag regression, quasi-difference, re-fit,
/// repeat until |drho| < tolerance. Requires an intercept model.
inline Ar1Fit fit_with_ar1(const RegressionSpec& spec, Ar1Method method = Ar1Method::difference,
                           double tolerance = 1e-8, int max_iterations = 100) {
    if (!spec.include_intercept)
        throw ValidationError("fit_with_ar1: requires an intercept model");
    if (tolerance <= 0.0) throw ValidationError("fit_with_ar1: tolerance must be positive");
    if (max_iterations < 1) throw ValidationError("fit_with_ar1: max_iterations must be >= 1");

    OlsFit initial = ols_fit(spec);
    const int n = initial.n;

    // Residuals at machine zero: the disturbance is absent, rho is 0 and the
    // plain fit is the answer (quasi-differencing would only drop a row).
    double scale = 0.0;
    for (double v : spec.dependent) scale += v * v;
    if (initial.ssr <= 1e-24 * std::max(scale, 1.0)) {
        Ar1Fit fit;
        fit.rho = 0.0;
        fit.rho_t_statistic = 0.0;
        fit.inner_fit = std::move(initial);
        fit.iterations = 1;
        fit.converged = true;
        fit.effective_n = n;
        return fit;
    }

    std::vector<double> resid = initial.residuals;
    double rho = 0.0;
    Ar1Fit fit;
    for (int it = 1; it <= max_iterations; ++it) {
        double rho_new = estimate_ar1_rho(resid);
        if (!(std::fabs(rho_new) < 1.0))
            throw NumericError("fit_with_ar1: explosive disturbance (|rho| >= 1 at iteration " +
                               std::to_string(it) + ")");
        if (it == 1 && rho_new == 0.0) {
            // Exactly uncorrelated first-stage residuals: the transform is a
            // no-op and the plain fit is already the answer.
            fit.rho = 0.0;
            fit.rho_t_statistic = ar1_rho_t_statistic(resid);
            fit.inner_fit = std::move(initial);
            fit.iterations = 1;
            fit.converged = true;
            fit.effective_n = n;
            return fit;
        }
        bool done = std::fabs(rho_new - rho) < tolerance;
        rho = rho_new;
        fit.inner_fit = detail::quasi_difference_fit(spec, rho, method);
        resid = detail::structural_residuals(spec, fit.inner_fit.coefficients);
        fit.rho = rho;
        fit.rho_t_statistic = ar1_rho_t_statistic(resid);
        fit.iterations = it;
        fit.effective_n = method == Ar1Method::difference ? n - 1 : n;
        if (done) {
            fit.converged = true;
            return fit;
        }
    }
    fit.converged = false;
    throw Ar1ConvergenceError("fit_with_ar1: no convergence within " +
                                  std::to_string(max_iterations) + " iterations",
                              fit);
}

}  // namespace tfpkit
