#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfpkit/ar1.hpp"
#include "tfpkit/csv.hpp"
#include "tfpkit/diagnostics.hpp"
#include "tfpkit/errors.hpp"
#include "tfpkit/growth.hpp"
#include "tfpkit/linreg.hpp"
#include "tfpkit/production.hpp"
#include "tfpkit/series.hpp"
#include "tfpkit/unit_root.hpp"

namespace tfpkit {

enum class OutputFormat { text, csv, json };

/// Everything the `run` pipeline needs. Defaults replay the reference
/// workflow: geometric interpolation on, trend-and-constant unit-root spec,
/// 5% significance, AR(1) correction on, elasticities from the restricted
/// fit, arithmetic growth rates and window averages.
struct PipelineConfig {
    std::string input_path;
    bool interpolate = true;
    InterpolationMethod interpolation_method = InterpolationMethod::geometric;
    GrowthConvention convention = GrowthConvention::arithmetic;
    DeterministicSpec det_spec = DeterministicSpec::constant_and_trend;
    double significance = 0.05;
    bool ar1 = true;
    Ar1Method ar1_method = Ar1Method::difference;
    bool time_trend = false;
    std::optional<double> fixed_alpha;      ///< nullopt: alpha from the restricted fit
    std::vector<PeriodWindow> periods;      ///< empty: default windows (see run_pipeline)
    AveragingConvention averaging = AveragingConvention::arithmetic_mean;
    int adf_lags = kAuto;
    int pp_bandwidth = kAuto;
    int lm_lag_order = 1;
    OutputFormat format = OutputFormat::text;
    std::string output_path;                ///< empty: stdout
};

inline void validate_config(const PipelineConfig& c) {
    bool sig_ok = std::fabs(c.significance - 0.01) < 1e-9 ||
                  std::fabs(c.significance - 0.05) < 1e-9 ||
                  std::fabs(c.significance - 0.10) < 1e-9;
    if (!sig_ok) throw ValidationError("config: significance must be 0.01, 0.05 or 0.10");
    if (c.fixed_alpha && !(*c.fixed_alpha > 0.0 && *c.fixed_alpha < 1.0))
        throw ValidationError("config: fixed alpha must lie in (0, 1)");
    if (c.lm_lag_order < 1) throw ValidationError("config: LM lag order must be >= 1");
}

/// A numeric report entry that may be undefined; undefined entries carry the
/// reason and serialize to an explicit null.
struct Field {
    double value = std::numeric_limits<double>::quiet_NaN();
    bool defined = false;
    std::string reason;

    static Field of(double v) { return Field{v, true, {}}; }
    static Field undefined(std::string why) {
        return Field{std::numeric_limits<double>::quiet_NaN(), false, std::move(why)};
    }
};

struct DataSummary {
    int first_year = 0;
    int last_year = 0;
    int n_observations = 0;
    int labor_gaps_filled = 0;
    double cagr_value_added = 0.0;
    double cagr_labor = 0.0;
    double cagr_capital = 0.0;
    double mean_growth_value_added = 0.0;
    double mean_growth_labor = 0.0;
    double mean_growth_capital = 0.0;
};

struct UnitRootSection {
    bool available = false;
    std::string error;
    IntegrationReport ln_q_per_l;
    IntegrationReport ln_k_per_l;
};

struct EstimationSection {
    double alpha = 0.0;
    double beta = 0.0;
    double ln_A = 0.0;
    double elasticity_ratio = 0.0;
    Field alpha_se, alpha_t, ln_A_se, ln_A_t;
    bool ar1_used = false;
    Field rho, rho_t;
    int ar1_iterations = 0;
    Field r_squared, adjusted_r_squared, f_statistic, durbin_watson;
    int n_effective = 0;
    bool perfect_fit = false;
    // Unrestricted companion fit and the CRS Wald test on it.
    bool unrestricted_available = false;
    std::string unrestricted_error;
    Field u_alpha, u_beta, u_ln_A, u_alpha_t, u_beta_t, u_elasticity_ratio;
    Field wald_statistic, wald_p_value, wald_f_statistic, wald_f_p_value;
    int wald_f_df2 = 0;
    bool crs_rejected_5pct = false;
};

struct DiagnosticsSection {
    bool skipped = false;
    std::string skipped_reason;
    std::optional<DiagnosticReport> heteroskedasticity;  // Breusch-Pagan-Godfrey
    std::optional<DiagnosticReport> serial_correlation;  // Breusch-Godfrey LM
    std::optional<DiagnosticReport> normality;           // Jarque-Bera
    std::optional<ExogeneityReport> exogeneity_regression;  // fit residuals vs design
    std::optional<ExogeneityReport> exogeneity_structural;  // structural residuals vs levels
    std::optional<Correlogram> residual_correlogram;
    int lm_lag_order = 0;
};

struct CointegrationSection {
    bool skipped = false;
    std::string skipped_reason;
    std::optional<CointegrationReport> report;
};

struct TfpSection {
    TfpSeries series;
    double alpha_used = 0.0;
    double beta_used = 0.0;
    std::string alpha_source;  // "restricted_fit" or "fixed"
};

struct DecompositionSection {
    GrowthDecomposition full_period;
    std::vector<GrowthDecomposition> subperiods;
    bool default_windows = false;
    bool fallback_full_window = false;
};

struct PipelineReport {
    // Config echo (what the numbers below were computed under).
    GrowthConvention convention = GrowthConvention::arithmetic;
    DeterministicSpec det_spec = DeterministicSpec::constant_and_trend;
    double significance = 0.05;
    bool ar1 = true;
    AveragingConvention averaging = AveragingConvention::arithmetic_mean;
    bool interpolate = true;
    InterpolationMethod interpolation_method = InterpolationMethod::geometric;

    DataSummary data;
    UnitRootSection unit_root;
    EstimationSection estimation;
    DiagnosticsSection diagnostics;
    CointegrationSection cointegration;
    TfpSection tfp;
    DecompositionSection decomposition;
    std::vector<std::string> warnings;
};

namespace detail {

// Joint F statistic that all coefficients from first_slope onward are zero,
// from the fit's covariance. Matches OlsFit::f_statistic on plain intercept
// models; needed for quasi-differenced designs whose first column is the
// scaled intercept.
inline double joint_slope_f(const OlsFit& fit, int first_slope) {
    const int p = static_cast<int>(fit.coefficients.size());
    const int q = p - first_slope;
    if (q < 1) return std::numeric_limits<double>::quiet_NaN();
    std::vector<double> v(q * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            v[a * q + b] = fit.covariance[first_slope + a][first_slope + b];
    std::vector<double> chol = v;
    cholesky(chol, q);
    std::vector<double> b(q);
    for (int a = 0; a < q; ++a) b[a] = fit.coefficients[first_slope + a];
    std::vector<double> x = b;
    cholesky_solve(chol, q, x);
    double quad = 0.0;
    for (int a = 0; a < q; ++a) quad += b[a] * x[a];
    return quad / q;
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// The reference study's five development-plan windows; applied by default
// when they fit the sample.
inline std::vector<PeriodWindow> default_plan_windows() {
    return {{1356, 1367}, {1368, 1373}, {1374, 1378}, {1379, 1383}, {1384, 1385}};
}

}  // namespace detail

/// Run the full workflow on an in-memory panel: interpolate, per-capita
/// logs, integration classification, restricted (and unrestricted) fits,
/// diagnostics, residual cointegration, TFP series and the decomposition
/// tables. Test failures along the way become warnings, not aborts, so the
/// report always carries the full evidence.
inline PipelineReport run_pipeline_on(const PanelDataset& input, const PipelineConfig& config) {
    validate_config(config);

    PipelineReport rep;
    rep.convention = config.convention;
    rep.det_spec = config.det_spec;
    rep.significance = config.significance;
    rep.ar1 = config.ar1;
    rep.averaging = config.averaging;
    rep.interpolate = config.interpolate;
    rep.interpolation_method = config.interpolation_method;

    // --- data -------------------------------------------------------------
    int gaps = 0;
    for (double v : input.labor.values)
        if (is_missing(v)) ++gaps;
    PanelDataset panel = input;
    if (config.interpolate && gaps > 0)
        panel = interpolate_panel(input, config.interpolation_method);
    validate_panel(panel);

    rep.data.first_year = panel.value_added.start_year;
    rep.data.last_year = panel.value_added.end_year();
    rep.data.n_observations = static_cast<int>(panel.value_added.size());
    rep.data.labor_gaps_filled = config.interpolate ? gaps : 0;
    rep.data.cagr_value_added = compound_annual_growth(panel.value_added);
    rep.data.cagr_labor = compound_annual_growth(panel.labor);
    rep.data.cagr_capital = compound_annual_growth(panel.capital);
    rep.data.mean_growth_value_added =
        detail::mean_of(growth_rates(panel.value_added, config.convention).rates);
    rep.data.mean_growth_labor = detail::mean_of(growth_rates(panel.labor, config.convention).rates);
    rep.data.mean_growth_capital =
        detail::mean_of(growth_rates(panel.capital, config.convention).rates);

    // --- unit roots on the per-capita logs ---------------------------------
    auto [ln_q_per_l, ln_k_per_l] = per_capita_log_panel(panel);
    try {
        rep.unit_root.ln_q_per_l = classify_integration(ln_q_per_l.values, config.det_spec,
                                                        config.significance, config.adf_lags,
                                                        config.pp_bandwidth);
        rep.unit_root.ln_k_per_l = classify_integration(ln_k_per_l.values, config.det_spec,
                                                        config.significance, config.adf_lags,
                                                        config.pp_bandwidth);
        rep.unit_root.available = true;
        if (rep.unit_root.ln_q_per_l.order == IntegrationOrder::higher_or_undetermined)
            rep.warnings.push_back("integration order of ln(Q/L) undetermined");
        if (rep.unit_root.ln_k_per_l.order == IntegrationOrder::higher_or_undetermined)
            rep.warnings.push_back("integration order of ln(K/L) undetermined");
    } catch (const std::exception& e) {
        rep.unit_root.available = false;
        rep.unit_root.error = e.what();
        rep.warnings.push_back(std::string("unit-root stage failed: ") + e.what());
    }

    // --- estimation ---------------------------------------------------------
    CobbDouglasFit restricted =
        fit_restricted(panel, config.ar1, config.ar1_method, config.time_trend);
    const OlsFit& inner = restricted.inner();

    double tss = 0.0;
    {
        double m = detail::mean_of(ln_q_per_l.values);
        for (double v : ln_q_per_l.values) tss += (v - m) * (v - m);
    }
    std::vector<double> structural(panel.value_added.size());
    for (std::size_t i = 0; i < structural.size(); ++i) {
        double fitted = restricted.ln_A + restricted.alpha * ln_k_per_l.values[i];
        if (restricted.time_trend) {
            double trend_coef = inner.coefficients[2];
            fitted += trend_coef * static_cast<double>(i + 1);
        }
        structural[i] = ln_q_per_l.values[i] - fitted;
    }
    double structural_ssr = 0.0;
    for (double u : structural) structural_ssr += u * u;
    const bool perfect = structural_ssr <= 1e-20 * std::max(tss, 1e-12);

    EstimationSection& est = rep.estimation;
    est.alpha = restricted.alpha;
    est.beta = restricted.beta;
    est.ln_A = restricted.ln_A;
    est.elasticity_ratio = restricted.elasticity_ratio;
    est.ar1_used = config.ar1;
    est.n_effective = inner.n;
    est.perfect_fit = perfect;
    if (perfect) {
        rep.warnings.push_back(
            "perfect fit: residual-based statistics are at machine precision and reported as "
            "undefined");
        Field und = Field::undefined("perfect fit");
        est.alpha_se = est.alpha_t = est.ln_A_se = est.ln_A_t = und;
        if (config.ar1 && inner.has_intercept)
            est.rho = Field::of(restricted.ar1->rho);  // zero-disturbance shortcut, exact 0
        else if (config.ar1)
            est.rho = und;
        else
            est.rho = Field::undefined("ar(1) correction off");
        est.rho_t = und;
        est.ar1_iterations = config.ar1 ? restricted.ar1->iterations : 0;
        est.r_squared = Field::of(inner.r_squared);
        est.adjusted_r_squared = Field::of(inner.adjusted_r_squared);
        est.f_statistic = und;
        est.durbin_watson = und;
    } else {
        est.alpha_se = Field::of(inner.standard_errors[1]);
        est.alpha_t = Field::of(inner.t_statistics[1]);
        est.ln_A_se = Field::of(inner.standard_errors[0]);
        est.ln_A_t = Field::of(inner.t_statistics[0]);
        if (config.ar1) {
            est.rho = Field::of(restricted.ar1->rho);
            est.rho_t = Field::of(restricted.ar1->rho_t_statistic);
            est.ar1_iterations = restricted.ar1->iterations;
            if (std::fabs(restricted.ar1->rho) > 0.95)
                rep.warnings.push_back("estimated ar(1) coefficient close to the unit circle");
            est.r_squared = Field::of(1.0 - structural_ssr / tss);
            double n_d = static_cast<double>(inner.n);
            double p_d = static_cast<double>(inner.coefficients.size());
            est.adjusted_r_squared =
                Field::of(1.0 - (structural_ssr / tss) * (n_d - 1.0) / (n_d - p_d));
            est.f_statistic = Field::of(detail::joint_slope_f(inner, 1));
        } else {
            est.rho = Field::undefined("ar(1) correction off");
            est.rho_t = Field::undefined("ar(1) correction off");
            est.r_squared = Field::of(inner.r_squared);
            est.adjusted_r_squared = Field::of(inner.adjusted_r_squared);
            est.f_statistic = Field::of(inner.f_statistic);
        }
        est.durbin_watson = Field::of(durbin_watson(inner.residuals));
    }

    std::optional<CobbDouglasFit> unrestricted;
    try {
        unrestricted = fit_unrestricted(panel, config.ar1, config.ar1_method, config.time_trend);
        est.unrestricted_available = true;
        const OlsFit& ui = unrestricted->inner();
        est.u_alpha = Field::of(unrestricted->alpha);
        est.u_beta = Field::of(unrestricted->beta);
        est.u_ln_A = Field::of(unrestricted->ln_A);
        est.u_elasticity_ratio = Field::of(unrestricted->elasticity_ratio);
        if (perfect) {
            est.u_alpha_t = est.u_beta_t = Field::undefined("perfect fit");
            est.wald_statistic = est.wald_p_value = Field::undefined("perfect fit");
            est.wald_f_statistic = est.wald_f_p_value = Field::undefined("perfect fit");
        } else {
            est.u_alpha_t = Field::of(ui.t_statistics[1]);
            est.u_beta_t = Field::of(ui.t_statistics[2]);
            WaldCrsTest wald = wald_crs_test(*unrestricted);
            est.wald_statistic = Field::of(wald.report.statistic);
            est.wald_p_value = Field::of(wald.report.p_value);
            est.wald_f_statistic = Field::of(wald.f_statistic);
            est.wald_f_p_value = Field::of(wald.f_p_value);
            est.wald_f_df2 = wald.f_df2;
            est.crs_rejected_5pct = wald.report.reject_5pct;
            if (wald.report.reject_5pct)
                rep.warnings.push_back(
                    "Wald test rejects constant returns to scale at 5%; the restricted fit "
                    "imposes it regardless");
        }
    } catch (const std::exception& e) {
        est.unrestricted_available = false;
        est.unrestricted_error = e.what();
        Field und = Field::undefined(std::string("unrestricted fit failed: ") + e.what());
        est.u_alpha = est.u_beta = est.u_ln_A = est.u_alpha_t = est.u_beta_t = und;
        est.u_elasticity_ratio = und;
        est.wald_statistic = est.wald_p_value = und;
        est.wald_f_statistic = est.wald_f_p_value = und;
        rep.warnings.push_back(std::string("unrestricted fit failed: ") + e.what());
    }

    // --- diagnostics --------------------------------------------------------
    DiagnosticsSection& diag = rep.diagnostics;
    diag.lm_lag_order = config.lm_lag_order;
    if (perfect) {
        diag.skipped = true;
        diag.skipped_reason = "perfect fit: residuals at machine precision";
    } else {
        // Rebuild the slope columns the inner fit actually used
        // (quasi-differenced under AR(1), untransformed otherwise). The AR(1)
        // zero-disturbance shortcut returns a plain intercept fit, which
        // inner.has_intercept identifies.
        std::vector<std::vector<double>> slope_cols;
        {
            const std::vector<double>& x = ln_k_per_l.values;
            std::vector<double> trend(panel.value_added.size());
            for (std::size_t i = 0; i < trend.size(); ++i) trend[i] = static_cast<double>(i + 1);
            if (config.ar1 && !inner.has_intercept) {
                double rho_hat = restricted.ar1->rho;
                std::vector<double> xq, tq;
                if (config.ar1_method == Ar1Method::full_sample) {
                    double w0 = std::sqrt(1.0 - rho_hat * rho_hat);
                    xq.push_back(w0 * x[0]);
                    tq.push_back(w0 * trend[0]);
                }
                for (std::size_t i = 1; i < x.size(); ++i) {
                    xq.push_back(x[i] - rho_hat * x[i - 1]);
                    tq.push_back(trend[i] - rho_hat * trend[i - 1]);
                }
                slope_cols.push_back(std::move(xq));
                if (config.time_trend) slope_cols.push_back(std::move(tq));
            } else {
                slope_cols.push_back(x);
                if (config.time_trend) slope_cols.push_back(trend);
            }
        }
        try {
            diag.heteroskedasticity = breusch_pagan_godfrey(inner, slope_cols);
        } catch (const std::exception& e) {
            rep.warnings.push_back(std::string("heteroskedasticity test failed: ") + e.what());
        }
        try {
            diag.serial_correlation = breusch_godfrey_lm(inner, slope_cols, config.lm_lag_order);
            if (diag.serial_correlation->reject_5pct)
                rep.warnings.push_back("serial correlation detected at 5% (Breusch-Godfrey LM)");
        } catch (const std::exception& e) {
            rep.warnings.push_back(std::string("serial-correlation test failed: ") + e.what());
        }
        try {
            diag.normality = jarque_bera(inner.residuals);
            if (diag.normality->reject_5pct)
                rep.warnings.push_back("residual normality rejected at 5% (Jarque-Bera)");
        } catch (const std::exception& e) {
            rep.warnings.push_back(std::string("normality test failed: ") + e.what());
        }
        try {
            diag.exogeneity_regression = residual_exogeneity(inner, slope_cols);
            std::vector<std::vector<double>> level_cols{ln_k_per_l.values};
            diag.exogeneity_structural =
                residual_exogeneity(std::span<const double>(structural), level_cols);
        } catch (const std::exception& e) {
            rep.warnings.push_back(std::string("exogeneity check failed: ") + e.what());
        }
        try {
            int m = std::min(12, inner.n - 2);
            if (m >= 1) diag.residual_correlogram = correlogram(inner.residuals, m);
        } catch (const std::exception& e) {
            rep.warnings.push_back(std::string("correlogram failed: ") + e.what());
        }
    }

    // --- residual cointegration ----------------------------------------------
    CointegrationSection& coin = rep.cointegration;
    if (perfect) {
        coin.skipped = true;
        coin.skipped_reason = "perfect fit: residuals at machine precision";
    } else {
        try {
            coin.report = engle_granger_residual_test(structural, config.det_spec,
                                                      config.significance, false, config.adf_lags,
                                                      config.pp_bandwidth);
            if (!coin.report->cointegrated)
                rep.warnings.push_back(
                    "no cointegration: the levels regression residuals keep their unit root");
        } catch (const std::exception& e) {
            coin.skipped = true;
            coin.skipped_reason = e.what();
            rep.warnings.push_back(std::string("cointegration stage failed: ") + e.what());
        }
    }

    // --- TFP and decomposition -------------------------------------------------
    double alpha_used = config.fixed_alpha.value_or(restricted.alpha);
    double beta_used = 1.0 - alpha_used;
    rep.tfp.alpha_used = alpha_used;
    rep.tfp.beta_used = beta_used;
    rep.tfp.alpha_source = config.fixed_alpha ? "fixed" : "restricted_fit";
    rep.tfp.series = solow_residual_series(panel, alpha_used, beta_used, config.convention);

    GrowthSeries v = growth_rates(panel.value_added, config.convention);
    PeriodWindow full{v.start_year, panel.value_added.end_year()};
    {
        AverageGrowthRates rates;
        rates.value_added =
            detail::window_average(panel.value_added, v, full, config.averaging);
        GrowthSeries kr = growth_rates(panel.capital, config.convention);
        GrowthSeries lr = growth_rates(panel.labor, config.convention);
        rates.capital = detail::window_average(panel.capital, kr, full, config.averaging);
        rates.labor = detail::window_average(panel.labor, lr, full, config.averaging);
        rep.decomposition.full_period = decompose_period(rates, alpha_used, beta_used, full);
        rep.decomposition.full_period.averaging = config.averaging;
        rep.decomposition.full_period.convention = config.convention;
    }
    if (!rep.decomposition.full_period.shares_defined)
        rep.warnings.push_back("output growth is zero over the full period; shares undefined");

    std::vector<PeriodWindow> windows = config.periods;
    if (windows.empty()) {
        rep.decomposition.default_windows = true;
        windows = detail::default_plan_windows();
        bool fits = true;
        for (const auto& w : windows)
            if (w.first_year < full.first_year || w.last_year > full.last_year) fits = false;
        if (!fits) {
            windows = {full};
            rep.decomposition.fallback_full_window = true;
            rep.warnings.push_back(
                "default plan windows do not fit the sample; using one full-sample window");
        }
    }
    rep.decomposition.subperiods = subperiod_table(panel, alpha_used, beta_used, windows,
                                                   config.convention, config.averaging);
    for (const auto& d : rep.decomposition.subperiods)
        if (!d.shares_defined)
            rep.warnings.push_back("output growth is zero in window " +
                                   std::to_string(d.period.first_year) + "-" +
                                   std::to_string(d.period.last_year) + "; shares undefined");

    return rep;
}

/// File-reading wrapper around run_pipeline_on.
inline PipelineReport run_pipeline(const PipelineConfig& config) {
    PanelDataset panel = read_panel_csv(config.input_path);
    return run_pipeline_on(panel, config);
}

}  // namespace tfpkit
