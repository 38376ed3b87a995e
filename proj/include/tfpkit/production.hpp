#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "tfpkit/ar1.hpp"
#include "tfpkit/diagnostics.hpp"
#include "tfpkit/errors.hpp"
#include "tfpkit/linreg.hpp"
#include "tfpkit/prob.hpp"
#include "tfpkit/series.hpp"

namespace tfpkit {

enum class CobbDouglasForm { restricted, unrestricted };

/// Estimated log-linear production function. Exactly one of ols / ar1 is
/// engaged depending on whether the AR(1) correction was requested.
/// Coefficient layout of the underlying fit: [intercept, lnK, lnL, (trend)]
/// for the unrestricted form, [intercept, ln(K/L), (trend)] for the
/// restricted one.
struct CobbDouglasFit {
    CobbDouglasForm form = CobbDouglasForm::restricted;
    double alpha = 0.0;  ///< capital output elasticity
    double beta = 0.0;   ///< labor output elasticity (1 - alpha when restricted)
    double ln_A = 0.0;   ///< log technology level
    double elasticity_ratio = 0.0;  ///< alpha / beta
    bool ar1_corrected = false;
    bool time_trend = false;
    std::optional<OlsFit> ols;
    std::optional<Ar1Fit> ar1;

    const OlsFit& inner() const { return ar1_corrected ? ar1->inner_fit : *ols; }
};

namespace detail {

inline std::vector<double> log_vector(const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v) out.push_back(std::log(x));
    return out;
}

inline std::vector<double> trend_column(std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i + 1);
    return t;
}

inline CobbDouglasFit finish_fit(CobbDouglasFit fit, RegressionSpec spec, bool ar1_on,
                                 Ar1Method method) {
    if (ar1_on) {
        fit.ar1_corrected = true;
        fit.ar1 = fit_with_ar1(spec, method);
    } else {
        fit.ols = ols_fit(spec);
    }
    const auto& coef = fit.inner().coefficients;
    fit.ln_A = coef[0];
    if (fit.form == CobbDouglasForm::unrestricted) {
        fit.alpha = coef[1];
        fit.beta = coef[2];
    } else {
        fit.alpha = coef[1];
        fit.beta = 1.0 - fit.alpha;
    }
    fit.elasticity_ratio = fit.alpha / fit.beta;
    return fit;
}

}  // namespace detail

/// ln Q = ln A + alpha ln K + beta ln L (+ trend) + u.
inline CobbDouglasFit fit_unrestricted(const PanelDataset& panel, bool ar1_on = false,
                                       Ar1Method method = Ar1Method::difference,
                                       bool time_trend = false) {
    validate_panel(panel);
    if (panel.value_added.size() < 6)
        throw ValidationError("fit_unrestricted: need at least six observations");
    RegressionSpec spec;
    spec.dependent = detail::log_vector(panel.value_added.values);
    spec.regressors.push_back(detail::log_vector(panel.capital.values));
    spec.regressors.push_back(detail::log_vector(panel.labor.values));
    if (time_trend) spec.regressors.push_back(detail::trend_column(panel.value_added.size()));
    CobbDouglasFit fit;
    fit.form = CobbDouglasForm::unrestricted;
    fit.time_trend = time_trend;
    return detail::finish_fit(std::move(fit), std::move(spec), ar1_on, method);
}

/// Restricted per-capita form: ln(Q/L) = ln A + alpha ln(K/L) (+ trend) + u,
/// beta = 1 - alpha by construction.
inline CobbDouglasFit fit_restricted(const PanelDataset& panel, bool ar1_on = false,
                                     Ar1Method method = Ar1Method::difference,
                                     bool time_trend = false) {
    validate_panel(panel);
    if (panel.value_added.size() < 6)
        throw ValidationError("fit_restricted: need at least six observations");
    auto [ln_q_per_l, ln_k_per_l] = per_capita_log_panel(panel);
    RegressionSpec spec;
    spec.dependent = std::move(ln_q_per_l.values);
    spec.regressors.push_back(std::move(ln_k_per_l.values));
    if (time_trend) spec.regressors.push_back(detail::trend_column(panel.value_added.size()));
    CobbDouglasFit fit;
    fit.form = CobbDouglasForm::restricted;
    fit.time_trend = time_trend;
    return detail::finish_fit(std::move(fit), std::move(spec), ar1_on, method);
}

/// Wald test of constant returns to scale, alpha + beta = 1, on an
/// unrestricted fit. The chi-square(1) form carries the decision; the same
/// restriction is also reported as F(1, dof).
struct WaldCrsTest {
    DiagnosticReport report;  ///< W ~ chi-square(1)
    double f_statistic = 0.0;
    int f_df2 = 0;
    double f_p_value = 0.0;
};

inline WaldCrsTest wald_crs_test(const CobbDouglasFit& fit) {
    if (fit.form != CobbDouglasForm::unrestricted)
        throw ValidationError("wald_crs_test: requires an unrestricted fit");
    const OlsFit& inner = fit.inner();
    const auto& v = inner.covariance;
    double var_restriction = v[1][1] + v[2][2] + 2.0 * v[1][2];
    if (!(var_restriction > 0.0))
        throw NumericError("wald_crs_test: restriction variance is zero");
    double dev = fit.alpha + fit.beta - 1.0;
    double w = dev * dev / var_restriction;

    WaldCrsTest t;
    t.report = detail::chi_square_report("wald_crs", w, 1, "restriction alpha + beta = 1");
    t.f_statistic = w;
    t.f_df2 = inner.n - static_cast<int>(inner.coefficients.size());
    t.f_p_value = f_sf(w, 1, t.f_df2);
    return t;
}

struct MarginalProducts {
    double capital = 0.0;  ///< F_K = alpha Q / K
    double labor = 0.0;    ///< F_L = beta Q / L
};

inline MarginalProducts marginal_products(const CobbDouglasFit& fit, double q, double k,
                                          double l) {
    if (q <= 0.0 || k <= 0.0 || l <= 0.0)
        throw DomainError("marginal_products: point values must be positive");
    return {fit.alpha * q / k, fit.beta * q / l};
}

/// Factor payment shares under the price-taking assumption: shares equal the
/// output elasticities. sums_to_one is only guaranteed for restricted fits.
struct FactorShares {
    double s_K = 0.0;
    double s_L = 0.0;
    bool sums_to_one = false;
};

inline FactorShares factor_shares(const CobbDouglasFit& fit) {
    FactorShares s;
    s.s_K = fit.alpha;
    s.s_L = fit.beta;
    s.sums_to_one = std::fabs(fit.alpha + fit.beta - 1.0) < 1e-12;
    return s;
}

}  // namespace tfpkit
