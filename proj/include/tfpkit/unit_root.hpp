#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tfpkit/errors.hpp"
#include "tfpkit/linreg.hpp"

namespace tfpkit {

enum class DeterministicSpec { none, constant, constant_and_trend };

inline std::string to_string(DeterministicSpec s) {
    switch (s) {
        case DeterministicSpec::none: return "none";
        case DeterministicSpec::constant: return "constant";
        default: return "constant_and_trend";
    }
}

enum class UnitRootTestKind { adf, pp };

/// 1%/5%/10% left-tail critical values. small_sample_clamped is set when the
/// requested effective sample was below the n = 10 floor of the surface.
struct CriticalValues {
    double cv1 = 0.0;
    double cv5 = 0.0;
    double cv10 = 0.0;
    bool small_sample_clamped = false;
};

/// Outcome of one unit-root test. For the ADF, lags counts lagged
/// differences; for the PP it is the Newey-West bandwidth. When the series
/// is an exact fit of the deterministic terms the regression is degenerate;
/// exact_deterministic_fit is set, the statistic is -infinity and the unit
/// root is rejected trivially.
struct UnitRootReport {
    UnitRootTestKind test = UnitRootTestKind::adf;
    double statistic = 0.0;
    int lags = 0;
    DeterministicSpec spec = DeterministicSpec::constant_and_trend;
    CriticalValues critical_values;
    int n_effective = 0;
    bool reject_1pct = false;
    bool reject_5pct = false;
    bool reject_10pct = false;
    bool exact_deterministic_fit = false;
};

/// Sentinel for automatic lag / bandwidth selection.
inline constexpr int kAuto = -1;

// ---------------------------------------------------------------------------
// MacKinnon response-surface critical values, cv(p, n) = b0 + b1/n + b2/n^2.
// Coefficients from MacKinnon (1991); n_variables = 1 is the univariate
// unit-root case, n_variables = 2 the residual-based cointegration case.
// ---------------------------------------------------------------------------

namespace detail {

struct SurfaceRow {
    double b0, b1, b2;
};

// [spec][level]: level 0 = 1%, 1 = 5%, 2 = 10%.
inline constexpr SurfaceRow kMacKinnonN1[3][3] = {
    // none
    {{-2.5658, -1.960, -10.04}, {-1.9393, -0.398, 0.0}, {-1.6156, -0.181, 0.0}},
    // constant
    {{-3.4336, -5.999, -29.25}, {-2.8621, -2.738, -8.36}, {-2.5671, -1.438, -4.48}},
    // constant + trend
    {{-3.9638, -8.353, -47.44}, {-3.4126, -4.039, -17.83}, {-3.1279, -2.418, -7.58}},
};

inline constexpr SurfaceRow kMacKinnonN2[3][3] = {
    // none: not tabulated for the cointegration case
    {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}},
    // constant
    {{-3.9001, -10.534, -30.03}, {-3.3377, -5.967, -8.98}, {-3.0462, -4.069, -5.73}},
    // constant + trend
    {{-4.3266, -15.531, -34.03}, {-3.7809, -9.421, -15.06}, {-3.4959, -7.203, -4.01}},
};

}  // namespace detail

/// Evaluate the response surface at the effective sample size. Samples below
/// 10 are clamped to 10 and flagged.
inline CriticalValues mackinnon_critical_values(DeterministicSpec spec, int n_effective,
                                                int n_variables = 1) {
    if (n_variables != 1 && n_variables != 2)
        throw ValidationError("mackinnon_critical_values: n_variables must be 1 or 2");
    if (n_variables == 2 && spec == DeterministicSpec::none)
        throw ValidationError(
            "mackinnon_critical_values: no cointegration surface without deterministic terms");
    CriticalValues cv;
    int n = n_effective;
    if (n < 10) {
        n = 10;
        cv.small_sample_clamped = true;
    }
    const auto& table =
        n_variables == 1 ? detail::kMacKinnonN1[static_cast<int>(spec)]
                         : detail::kMacKinnonN2[static_cast<int>(spec)];
    double inv = 1.0 / n;
    cv.cv1 = table[0].b0 + table[0].b1 * inv + table[0].b2 * inv * inv;
    cv.cv5 = table[1].b0 + table[1].b1 * inv + table[1].b2 * inv * inv;
    cv.cv10 = table[2].b0 + table[2].b1 * inv + table[2].b2 * inv * inv;
    return cv;
}

/// Left-tail decision at one of the three tabulated significance levels.
inline bool rejects_unit_root(double statistic, const CriticalValues& cv, double significance) {
    if (std::fabs(significance - 0.01) < 1e-9) return statistic < cv.cv1;
    if (std::fabs(significance - 0.05) < 1e-9) return statistic < cv.cv5;
    if (std::fabs(significance - 0.10) < 1e-9) return statistic < cv.cv10;
    throw ValidationError("significance must be one of 0.01, 0.05, 0.10");
}

inline bool reject_at(const UnitRootReport& report, double significance) {
    if (std::fabs(significance - 0.01) < 1e-9) return report.reject_1pct;
    if (std::fabs(significance - 0.05) < 1e-9) return report.reject_5pct;
    if (std::fabs(significance - 0.10) < 1e-9) return report.reject_10pct;
    throw ValidationError("significance must be one of 0.01, 0.05, 0.10");
}

namespace detail {

inline void fill_decisions(UnitRootReport& r) {
    r.reject_1pct = r.statistic < r.critical_values.cv1;
    r.reject_5pct = r.statistic < r.critical_values.cv5;
    r.reject_10pct = r.statistic < r.critical_values.cv10;
}

// SSR of the deterministic-terms-only fit; detects series that the
// deterministic component reproduces exactly (zero stochastic part).
inline bool exact_deterministic(std::span<const double> y, DeterministicSpec spec) {
    const std::size_t n = y.size();
    double ssr = 0.0;
    double scale = 0.0;
    for (double v : y) scale += v * v;
    scale = std::max(scale, static_cast<double>(n));
    if (spec == DeterministicSpec::none) {
        for (double v : y) ssr += v * v;
    } else if (spec == DeterministicSpec::constant) {
        double mean = 0.0;
        for (double v : y) mean += v;
        mean /= static_cast<double>(n);
        for (double v : y) ssr += (v - mean) * (v - mean);
    } else {
        // OLS on [1, t] in closed form.
        double tm = (n - 1) / 2.0;
        double stt = 0.0, sty = 0.0, ym = 0.0;
        for (double v : y) ym += v;
        ym /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            stt += (i - tm) * (i - tm);
            sty += (i - tm) * (y[i] - ym);
        }
        double slope = stt > 0.0 ? sty / stt : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double e = y[i] - ym - slope * (i - tm);
            ssr += e * e;
        }
    }
    return ssr <= 1e-20 * scale;
}

struct DfRegression {
    OlsFit fit;
    int rho_index = 0;  // position of the y_{t-1} coefficient
    int rows = 0;
};

// Dickey-Fuller regression: dy_t on deterministic terms, y_{t-1} and k
// lagged differences, over rows t = first_row .. n-1 (0-based).
inline DfRegression df_regression(std::span<const double> y, DeterministicSpec spec, int k,
                                  int first_row) {
    const int n = static_cast<int>(y.size());
    RegressionSpec reg;
    reg.include_intercept = spec != DeterministicSpec::none;
    const bool trend = spec == DeterministicSpec::constant_and_trend;
    const int rows = n - first_row;

    std::vector<double> ylag(rows), dy(rows);
    for (int t = first_row; t < n; ++t) {
        dy[t - first_row] = y[t] - y[t - 1];
        ylag[t - first_row] = y[t - 1];
    }
    reg.dependent = std::move(dy);
    if (trend) {
        std::vector<double> tt(rows);
        for (int t = first_row; t < n; ++t) tt[t - first_row] = static_cast<double>(t);
        reg.regressors.push_back(std::move(tt));
    }
    reg.regressors.push_back(std::move(ylag));
    for (int j = 1; j <= k; ++j) {
        std::vector<double> dl(rows);
        for (int t = first_row; t < n; ++t) dl[t - first_row] = y[t - j] - y[t - j - 1];
        reg.regressors.push_back(std::move(dl));
    }

    DfRegression out;
    out.fit = ols_fit(reg);
    out.rho_index = (reg.include_intercept ? 1 : 0) + (trend ? 1 : 0);
    out.rows = rows;
    return out;
}

inline int max_auto_lags(int n) {
    return static_cast<int>(std::floor(12.0 * std::pow(n / 100.0, 0.25)));
}

inline int auto_bandwidth(int n) {
    return static_cast<int>(std::floor(4.0 * std::pow(n / 100.0, 2.0 / 9.0)));
}

inline UnitRootReport degenerate_report(UnitRootTestKind kind, DeterministicSpec spec, int lags,
                                        int n_effective, int n_variables) {
    UnitRootReport r;
    r.test = kind;
    r.statistic = -std::numeric_limits<double>::infinity();
    r.lags = std::max(lags, 0);
    r.spec = spec;
    r.n_effective = n_effective;
    r.critical_values = mackinnon_critical_values(spec, n_effective, n_variables);
    r.exact_deterministic_fit = true;
    fill_decisions(r);
    return r;
}

}  // namespace detail

/// Augmented Dickey-Fuller test. lags = kAuto selects the lag order by the
/// Akaike criterion over 0..floor(12*(n/100)^(1/4)), candidates compared on
/// a common sample and the winner refit on its full usable sample.
inline UnitRootReport adf_test(std::span<const double> y,
                               DeterministicSpec spec = DeterministicSpec::constant_and_trend,
                               int lags = kAuto, int n_variables = 1) {
    const int n = static_cast<int>(y.size());
    const int det = (spec == DeterministicSpec::none ? 0 : 1) +
                    (spec == DeterministicSpec::constant_and_trend ? 1 : 0);
    if (n < det + 5) throw ValidationError("adf_test: series too short");

    if (detail::exact_deterministic(y, spec))
        return detail::degenerate_report(UnitRootTestKind::adf, spec, lags == kAuto ? 0 : lags,
                                         n - 1, n_variables);

    int k = lags;
    if (lags == kAuto) {
        int kmax = detail::max_auto_lags(n);
        // Keep the common selection sample workable: rows > params + 2.
        while (kmax > 0 && (n - 1 - kmax) <= det + 1 + kmax + 2) --kmax;
        if (kmax < 0) kmax = 0;
        double best_aic = std::numeric_limits<double>::infinity();
        k = 0;
        const int first_row = kmax + 1;
        for (int cand = 0; cand <= kmax; ++cand) {
            auto reg = detail::df_regression(y, spec, cand, first_row);
            int params = det + 1 + cand;
            double m = static_cast<double>(reg.rows);
            double aic = m * std::log(reg.fit.ssr / m) + 2.0 * params;
            if (aic < best_aic - 1e-12) {
                best_aic = aic;
                k = cand;
            }
        }
    }
    if (k < 0) throw ValidationError("adf_test: negative lag order");
    const int first_row = k + 1;
    const int rows = n - first_row;
    if (rows <= det + 1 + k + 2)
        throw ValidationError("adf_test: insufficient observations for " + std::to_string(k) +
                              " lagged differences");

    auto reg = detail::df_regression(y, spec, k, first_row);
    UnitRootReport r;
    r.test = UnitRootTestKind::adf;
    r.statistic = reg.fit.t_statistics[reg.rho_index];
    r.lags = k;
    r.spec = spec;
    r.n_effective = reg.rows;
    r.critical_values = mackinnon_critical_values(spec, reg.rows, n_variables);
    detail::fill_decisions(r);
    return r;
}

/// Phillips-Perron test: the unaugmented Dickey-Fuller regression with the
/// t-ratio corrected through the Bartlett-kernel Newey-West long-run
/// variance. bandwidth = kAuto uses floor(4*(n/100)^(2/9)). With bandwidth 0
/// the statistic reduces to the plain DF t-ratio.
inline UnitRootReport pp_test(std::span<const double> y,
                              DeterministicSpec spec = DeterministicSpec::constant_and_trend,
                              int bandwidth = kAuto, int n_variables = 1) {
    const int n = static_cast<int>(y.size());
    const int det = (spec == DeterministicSpec::none ? 0 : 1) +
                    (spec == DeterministicSpec::constant_and_trend ? 1 : 0);
    if (n < det + 5) throw ValidationError("pp_test: series too short");

    int q = bandwidth == kAuto ? detail::auto_bandwidth(n) : bandwidth;
    if (q < 0) throw ValidationError("pp_test: negative bandwidth");

    if (detail::exact_deterministic(y, spec))
        return detail::degenerate_report(UnitRootTestKind::pp, spec, q, n - 1, n_variables);

    auto reg = detail::df_regression(y, spec, 0, 1);
    const int T = reg.rows;
    const int params = det + 1;
    if (T <= params + 2) throw ValidationError("pp_test: insufficient observations");

    const auto& e = reg.fit.residuals;
    if (q > T - 1) q = T - 1;
    double gamma0 = 0.0;
    for (double v : e) gamma0 += v * v;
    gamma0 /= T;
    if (gamma0 <= 0.0) throw NumericError("pp_test: zero residual variance");
    double lambda2 = gamma0;
    for (int j = 1; j <= q; ++j) {
        double g = 0.0;
        for (int t = j; t < T; ++t) g += e[t] * e[t - j];
        g /= T;
        lambda2 += 2.0 * (1.0 - static_cast<double>(j) / (q + 1)) * g;
    }
    if (lambda2 <= 1e-12 * gamma0)
        throw NumericError("pp_test: long-run variance estimate collapsed to zero");

    double t_rho = reg.fit.t_statistics[reg.rho_index];
    double se_rho = reg.fit.standard_errors[reg.rho_index];
    double s = std::sqrt(reg.fit.sigma2);
    double z = t_rho * std::sqrt(gamma0 / lambda2) -
               T * (lambda2 - gamma0) * se_rho / (2.0 * std::sqrt(lambda2) * s);

    UnitRootReport r;
    r.test = UnitRootTestKind::pp;
    r.statistic = z;
    r.lags = q;
    r.spec = spec;
    r.n_effective = T;
    r.critical_values = mackinnon_critical_values(spec, T, n_variables);
    detail::fill_decisions(r);
    return r;
}

// ---------------------------------------------------------------------------
// Integration-order classification
// ---------------------------------------------------------------------------

enum class IntegrationOrder { I0, I1, higher_or_undetermined };

inline std::string to_string(IntegrationOrder o) {
    switch (o) {
        case IntegrationOrder::I0: return "I(0)";
        case IntegrationOrder::I1: return "I(1)";
        default: return "higher_or_undetermined";
    }
}

/// The classification rule alone, replayable on recorded decisions: I(0)
/// needs both level tests to reject; I(1) needs both level tests to fail and
/// both first-difference tests to reject; anything else is undetermined.
inline IntegrationOrder integration_rule(bool adf_level_rej, bool pp_level_rej, bool adf_diff_rej,
                                         bool pp_diff_rej) {
    if (adf_level_rej && pp_level_rej) return IntegrationOrder::I0;
    if (!adf_level_rej && !pp_level_rej && adf_diff_rej && pp_diff_rej)
        return IntegrationOrder::I1;
    return IntegrationOrder::higher_or_undetermined;
}

struct IntegrationReport {
    IntegrationOrder order = IntegrationOrder::higher_or_undetermined;
    double significance = 0.05;
    UnitRootReport adf_level, pp_level, adf_diff, pp_diff;
};

/// ADF + PP on the level and first difference, combined by integration_rule.
inline IntegrationReport classify_integration(
    std::span<const double> y, DeterministicSpec spec = DeterministicSpec::constant_and_trend,
    double significance = 0.05, int lags = kAuto, int bandwidth = kAuto) {
    IntegrationReport rep;
    rep.significance = significance;
    rep.adf_level = adf_test(y, spec, lags);
    rep.pp_level = pp_test(y, spec, bandwidth);
    std::vector<double> diff(y.size() - 1);
    for (std::size_t i = 1; i < y.size(); ++i) diff[i - 1] = y[i] - y[i - 1];
    rep.adf_diff = adf_test(diff, spec, lags);
    rep.pp_diff = pp_test(diff, spec, bandwidth);
    rep.order = integration_rule(reject_at(rep.adf_level, significance),
                                 reject_at(rep.pp_level, significance),
                                 reject_at(rep.adf_diff, significance),
                                 reject_at(rep.pp_diff, significance));
    return rep;
}

// ---------------------------------------------------------------------------
// Residual-based cointegration step
// ---------------------------------------------------------------------------

struct CointegrationReport {
    UnitRootReport adf, pp;
    double significance = 0.05;
    bool cointegrated = false;  ///< both tests reject the residual unit root
};

/// ADF and PP on the residuals of a cointegrating regression; rejecting the
/// unit root establishes cointegration. By default the decision uses the
/// ordinary unit-root surface; use_cointegration_surface switches to the
/// two-variable residual-test surface.
inline CointegrationReport engle_granger_residual_test(
    std::span<const double> residuals,
    DeterministicSpec spec = DeterministicSpec::constant_and_trend, double significance = 0.05,
    bool use_cointegration_surface = false, int lags = kAuto, int bandwidth = kAuto) {
    const int n_vars = use_cointegration_surface ? 2 : 1;
    CointegrationReport rep;
    rep.significance = significance;
    rep.adf = adf_test(residuals, spec, lags, n_vars);
    rep.pp = pp_test(residuals, spec, bandwidth, n_vars);
    rep.cointegrated = reject_at(rep.adf, significance) && reject_at(rep.pp, significance);
    return rep;
}

}  // namespace tfpkit
