#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tfpkit/errors.hpp"
#include "tfpkit/pipeline.hpp"

// Report serialization. Text output is fixed-width with four decimal places
// and is byte-stable for a given report; JSON uses explicit nulls plus a
// *_reason key for undefined values; CSV writes one file per section into a
// directory.

namespace tfpkit {
namespace detail {

using ordered_json = nlohmann::ordered_json;

inline std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

inline std::string num4(double v) { return fmt("%.4f", v); }

// Fixed-width cell: right-aligned value or n/a.
inline std::string cell(double v, int width = 10, bool defined = true) {
    char buf[64];
    if (!defined || !std::isfinite(v))
        std::snprintf(buf, sizeof buf, "%*s", width, "n/a");
    else
        std::snprintf(buf, sizeof buf, "%*.4f", width, v);
    return buf;
}

inline std::string cell(const Field& f, int width = 10) { return cell(f.value, width, f.defined); }

inline const char* onoff(bool b) { return b ? "on" : "off"; }

inline std::string ur_stat_cell(const UnitRootReport& r) {
    if (r.exact_deterministic_fit) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%10s", "exact fit");
        return buf;
    }
    return cell(r.statistic);
}

inline void text_unit_root_row(std::string& out, const char* series, const char* sample,
                               const UnitRootReport& r, double significance) {
    char buf[256];
    bool rej = reject_at(r, significance);
    std::snprintf(buf, sizeof buf, "  %-9s %-4s %-6s%s%s%s%s %7d %5d  %s\n", series,
                  r.test == UnitRootTestKind::adf ? "ADF" : "PP", sample,
                  ur_stat_cell(r).c_str(), cell(r.critical_values.cv1).c_str(),
                  cell(r.critical_values.cv5).c_str(), cell(r.critical_values.cv10).c_str(),
                  r.lags, r.n_effective, rej ? "reject unit root" : "unit root not rejected");
    out += buf;
}

inline void text_diag_row(std::string& out, const DiagnosticReport& d) {
    char buf[256];
    std::string dist;
    if (d.distribution == RefDistribution::chi_square)
        dist = "chi2(" + std::to_string(d.df1) + ")";
    else if (d.distribution == RefDistribution::f_dist)
        dist = "F(" + std::to_string(d.df1) + "," + std::to_string(d.df2) + ")";
    else
        dist = "-";
    std::snprintf(buf, sizeof buf, "  %-24s%s  %-10s%s  %s\n", d.test.c_str(),
                  cell(d.statistic).c_str(), dist.c_str(), cell(d.p_value).c_str(),
                  d.reject_5pct ? "reject at 5%" : "fail to reject at 5%");
    out += buf;
}

inline void text_decomposition_row(std::string& out, const GrowthDecomposition& d) {
    char buf[320];
    std::string window = std::to_string(d.period.first_year) + "-" +
                         std::to_string(d.period.last_year);
    std::snprintf(buf, sizeof buf, "  %-12s%s%s%s%s%s%s%s%s%s\n", window.c_str(),
                  cell(d.value_added_growth).c_str(), cell(d.capital_growth).c_str(),
                  cell(d.labor_growth).c_str(), cell(d.capital_contribution).c_str(),
                  cell(d.labor_contribution).c_str(), cell(d.tfp_contribution).c_str(),
                  cell(d.capital_share, 10, d.shares_defined).c_str(),
                  cell(d.labor_share, 10, d.shares_defined).c_str(),
                  cell(d.tfp_share, 10, d.shares_defined).c_str());
    out += buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Text
// ---------------------------------------------------------------------------

namespace detail {

// Shared scaffolding for the text sections.
struct TextWriter {
    std::string out;
    char buf[320];

    void raw(const std::string& s) { out += s; }
    void line(const char* label, const std::string& value) {
        std::snprintf(buf, sizeof buf, "  %-24s %s\n", label, value.c_str());
        out += buf;
    }
};

}  // namespace detail

inline std::string render_config_text(const PipelineReport& r) {
    using namespace detail;
    TextWriter w;
    w.raw("-- configuration ----------------------------------------------\n");
    w.line("growth convention", to_string(r.convention));
    w.line("deterministic spec", to_string(r.det_spec));
    w.line("significance", fmt("%.2f", r.significance));
    w.line("ar(1) correction", onoff(r.ar1));
    w.line("window averaging", to_string(r.averaging));
    w.line("interpolation", std::string(onoff(r.interpolate)) +
                                (r.interpolate
                                     ? (r.interpolation_method == InterpolationMethod::geometric
                                            ? " (geometric)"
                                            : " (linear)")
                                     : ""));
    return w.out;
}

inline std::string render_data_text(const DataSummary& d) {
    using namespace detail;
    TextWriter w;
    w.raw("-- data ---------------------------------------------------------\n");
    std::snprintf(w.buf, sizeof w.buf, "  %-24s %d-%d  (%d observations)\n", "years",
                  d.first_year, d.last_year, d.n_observations);
    w.raw(w.buf);
    w.line("labor gaps filled", std::to_string(d.labor_gaps_filled));
    std::snprintf(w.buf, sizeof w.buf, "  %-26s value_added      labor    capital\n", "");
    w.raw(w.buf);
    std::snprintf(w.buf, sizeof w.buf, "  %-24s %11s%11s%11s\n", "compound annual growth %",
                  num4(d.cagr_value_added).c_str(), num4(d.cagr_labor).c_str(),
                  num4(d.cagr_capital).c_str());
    w.raw(w.buf);
    std::snprintf(w.buf, sizeof w.buf, "  %-24s %11s%11s%11s\n", "mean annual growth %",
                  num4(d.mean_growth_value_added).c_str(), num4(d.mean_growth_labor).c_str(),
                  num4(d.mean_growth_capital).c_str());
    w.raw(w.buf);
    return w.out;
}

inline std::string render_unit_root_text(const UnitRootSection& s) {
    using namespace detail;
    TextWriter w;
    w.raw("-- unit roots (per-capita logs) ---------------------------------\n");
    if (!s.available) {
        w.raw("  unavailable: " + s.error + "\n");
        return w.out;
    }
    w.raw("  series    test sample  statistic        1%        5%       10%  lags/bw"
          "     n  decision\n");
    const auto& q = s.ln_q_per_l;
    const auto& k = s.ln_k_per_l;
    text_unit_root_row(w.out, "ln(Q/L)", "level", q.adf_level, q.significance);
    text_unit_root_row(w.out, "ln(Q/L)", "level", q.pp_level, q.significance);
    text_unit_root_row(w.out, "ln(Q/L)", "diff", q.adf_diff, q.significance);
    text_unit_root_row(w.out, "ln(Q/L)", "diff", q.pp_diff, q.significance);
    text_unit_root_row(w.out, "ln(K/L)", "level", k.adf_level, k.significance);
    text_unit_root_row(w.out, "ln(K/L)", "level", k.pp_level, k.significance);
    text_unit_root_row(w.out, "ln(K/L)", "diff", k.adf_diff, k.significance);
    text_unit_root_row(w.out, "ln(K/L)", "diff", k.pp_diff, k.significance);
    std::snprintf(w.buf, sizeof w.buf, "  integration order        ln(Q/L): %s   ln(K/L): %s\n",
                  to_string(q.order).c_str(), to_string(k.order).c_str());
    w.raw(w.buf);
    return w.out;
}

inline std::string render_estimation_text(const EstimationSection& e) {
    using namespace detail;
    TextWriter w;
    w.raw("-- estimation (restricted per-capita form) ----------------------\n");
    std::snprintf(w.buf, sizeof w.buf, "  %-24s %s   se %s   t %s\n", "alpha (capital)",
                  cell(e.alpha).c_str(), cell(e.alpha_se).c_str(), cell(e.alpha_t).c_str());
    w.raw(w.buf);
    w.line("beta (labor)", cell(e.beta));
    std::snprintf(w.buf, sizeof w.buf, "  %-24s %s   se %s   t %s\n", "ln A",
                  cell(e.ln_A).c_str(), cell(e.ln_A_se).c_str(), cell(e.ln_A_t).c_str());
    w.raw(w.buf);
    w.line("elasticity ratio a/b", cell(e.elasticity_ratio));
    if (e.ar1_used) {
        std::snprintf(w.buf, sizeof w.buf, "  %-24s %s   t %s   (%d iterations)\n", "rho (ar1)",
                      cell(e.rho).c_str(), cell(e.rho_t).c_str(), e.ar1_iterations);
        w.raw(w.buf);
    } else {
        w.line("rho (ar1)", "off");
    }
    w.line("r-squared", cell(e.r_squared));
    w.line("adjusted r-squared", cell(e.adjusted_r_squared));
    w.line("f-statistic", cell(e.f_statistic));
    w.line("durbin-watson", cell(e.durbin_watson));
    w.line("effective n", std::to_string(e.n_effective));
    if (e.perfect_fit) w.line("note", "perfect fit; residual statistics undefined");
    w.raw("\n");
    if (e.unrestricted_available) {
        std::snprintf(w.buf, sizeof w.buf,
                      "  unrestricted fit         alpha %s (t %s)   beta %s (t %s)   ratio %s\n",
                      cell(e.u_alpha).c_str(), cell(e.u_alpha_t).c_str(), cell(e.u_beta).c_str(),
                      cell(e.u_beta_t).c_str(), cell(e.u_elasticity_ratio).c_str());
        w.raw(w.buf);
        std::snprintf(w.buf, sizeof w.buf,
                      "  wald crs test            W %s   p %s   F(1,%d) %s   p %s   -> %s\n",
                      cell(e.wald_statistic).c_str(), cell(e.wald_p_value).c_str(), e.wald_f_df2,
                      cell(e.wald_f_statistic).c_str(), cell(e.wald_f_p_value).c_str(),
                      !e.wald_statistic.defined ? "n/a"
                      : e.crs_rejected_5pct     ? "reject CRS at 5%"
                                                : "CRS not rejected at 5%");
        w.raw(w.buf);
    } else {
        w.line("unrestricted fit", "unavailable: " + e.unrestricted_error);
    }
    return w.out;
}

inline std::string render_diagnostics_text(const DiagnosticsSection& d) {
    using namespace detail;
    TextWriter w;
    w.raw("-- diagnostics --------------------------------------------------\n");
    if (d.skipped) {
        w.raw("  skipped: " + d.skipped_reason + "\n");
        return w.out;
    }
    w.raw("  test                     statistic  dist          p-value  decision\n");
    if (d.heteroskedasticity) text_diag_row(w.out, *d.heteroskedasticity);
    if (d.serial_correlation) text_diag_row(w.out, *d.serial_correlation);
    if (d.normality) text_diag_row(w.out, *d.normality);
    if (d.exogeneity_regression) {
        std::snprintf(w.buf, sizeof w.buf, "  %-24s %.4e\n", "residual mean",
                      d.exogeneity_regression->residual_mean);
        w.raw(w.buf);
        for (std::size_t i = 0; i < d.exogeneity_regression->correlations.size(); ++i) {
            std::string label = "corr(resid, design[" + std::to_string(i) + "])";
            w.line(label.c_str(), cell(d.exogeneity_regression->correlations[i], 10,
                                       d.exogeneity_regression->defined[i]));
        }
    }
    if (d.exogeneity_structural) {
        for (std::size_t i = 0; i < d.exogeneity_structural->correlations.size(); ++i) {
            std::string label = i == 0 ? "corr(struct u, lnK/L)"
                                       : "corr(struct u, x" + std::to_string(i) + ")";
            w.line(label.c_str(), cell(d.exogeneity_structural->correlations[i], 10,
                                       d.exogeneity_structural->defined[i]));
        }
    }
    if (d.residual_correlogram) {
        std::snprintf(w.buf, sizeof w.buf, "  correlogram (+-%.4f band)\n",
                      d.residual_correlogram->band);
        w.raw(w.buf);
        w.raw("    lag       acf      pacf\n");
        for (std::size_t kk = 1; kk < d.residual_correlogram->acf.size(); ++kk) {
            std::snprintf(w.buf, sizeof w.buf, "    %3zu%s%s\n", kk,
                          cell(d.residual_correlogram->acf[kk]).c_str(),
                          cell(d.residual_correlogram->pacf[kk]).c_str());
            w.raw(w.buf);
        }
    }
    return w.out;
}

inline std::string render_cointegration_text(const CointegrationSection& s) {
    using namespace detail;
    TextWriter w;
    w.raw("-- residual cointegration ---------------------------------------\n");
    if (s.skipped) {
        w.raw("  skipped: " + s.skipped_reason + "\n");
    } else if (s.report) {
        const auto& c = *s.report;
        w.raw("  series    test sample  statistic        1%        5%       10%  lags/bw"
              "     n  decision\n");
        text_unit_root_row(w.out, "resid", "level", c.adf, c.significance);
        text_unit_root_row(w.out, "resid", "level", c.pp, c.significance);
        std::snprintf(w.buf, sizeof w.buf, "  decision: %s at %.0f%%\n",
                      c.cointegrated ? "cointegrated" : "not cointegrated",
                      100.0 * c.significance);
        w.raw(w.buf);
    }
    return w.out;
}

inline std::string render_tfp_text(const TfpSection& t) {
    using namespace detail;
    TextWriter w;
    w.raw("-- tfp growth (solow residual) ----------------------------------\n");
    std::snprintf(w.buf, sizeof w.buf, "  alpha used %.4f (%s)   beta %.4f   convention %s\n",
                  t.alpha_used, t.alpha_source.c_str(), t.beta_used,
                  to_string(t.series.growth.convention).c_str());
    w.raw(w.buf);
    w.raw("  year   tfp growth %\n");
    for (std::size_t i = 0; i < t.series.growth.size(); ++i) {
        std::snprintf(w.buf, sizeof w.buf, "  %4d  %s\n", t.series.growth.year_at(i),
                      cell(t.series.growth.rates[i]).c_str());
        w.raw(w.buf);
    }
    std::snprintf(w.buf, sizeof w.buf, "  mean  %s\n", cell(t.series.mean).c_str());
    w.raw(w.buf);
    return w.out;
}

inline std::string render_decomposition_text(const DecompositionSection& s) {
    using namespace detail;
    TextWriter w;
    w.raw("-- growth decomposition -----------------------------------------\n");
    std::snprintf(w.buf, sizeof w.buf,
                  "  averaging %s, rates %s, contributions in pp, shares in %%\n",
                  to_string(s.full_period.averaging).c_str(),
                  to_string(s.full_period.convention).c_str());
    w.raw(w.buf);
    w.raw("  period         output   capital     labor   cap.pp    lab.pp    tfp.pp"
          "      cap%      lab%      tfp%\n");
    text_decomposition_row(w.out, s.full_period);
    for (const auto& sub : s.subperiods) text_decomposition_row(w.out, sub);
    return w.out;
}

inline std::string render_warnings_text(const std::vector<std::string>& warnings) {
    std::string out = "-- warnings -----------------------------------------------------\n";
    if (warnings.empty()) {
        out += "  (none)\n";
    } else {
        for (const auto& w : warnings) out += "  - " + w + "\n";
    }
    return out;
}

inline std::string render_text(const PipelineReport& r) {
    std::string out;
    out += "================================================================\n";
    out += " tfpkit growth-accounting report\n";
    out += "================================================================\n\n";
    out += render_config_text(r) + "\n";
    out += render_data_text(r.data) + "\n";
    out += render_unit_root_text(r.unit_root) + "\n";
    out += render_estimation_text(r.estimation) + "\n";
    out += render_diagnostics_text(r.diagnostics) + "\n";
    out += render_cointegration_text(r.cointegration) + "\n";
    out += render_tfp_text(r.tfp) + "\n";
    out += render_decomposition_text(r.decomposition) + "\n";
    out += render_warnings_text(r.warnings);
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace detail {

inline void put_field(ordered_json& j, const std::string& key, const Field& f) {
    if (f.defined && std::isfinite(f.value)) {
        j[key] = f.value;
    } else {
        j[key] = nullptr;
        j[key + "_reason"] = f.defined ? "non-finite value" : f.reason;
    }
}

// For plain doubles that are finite in every ordinary run but can blow up
// on boundary fits (a zero labor elasticity makes the ratio infinite).
inline void put_number(ordered_json& j, const std::string& key, double v) {
    if (std::isfinite(v)) {
        j[key] = v;
    } else {
        j[key] = nullptr;
        j[key + "_reason"] = "non-finite value";
    }
}

inline ordered_json json_unit_root(const UnitRootReport& r) {
    ordered_json j;
    j["test"] = r.test == UnitRootTestKind::adf ? "adf" : "pp";
    if (r.exact_deterministic_fit) {
        j["statistic"] = nullptr;
        j["statistic_reason"] = "exact deterministic fit; unit root rejected trivially";
    } else {
        j["statistic"] = r.statistic;
    }
    j[r.test == UnitRootTestKind::adf ? "lags" : "bandwidth"] = r.lags;
    j["deterministic_spec"] = to_string(r.spec);
    j["critical_values"] = {{"cv_1pct", r.critical_values.cv1},
                            {"cv_5pct", r.critical_values.cv5},
                            {"cv_10pct", r.critical_values.cv10},
                            {"small_sample_clamped", r.critical_values.small_sample_clamped}};
    j["n_effective"] = r.n_effective;
    j["reject_1pct"] = r.reject_1pct;
    j["reject_5pct"] = r.reject_5pct;
    j["reject_10pct"] = r.reject_10pct;
    j["exact_deterministic_fit"] = r.exact_deterministic_fit;
    return j;
}

inline ordered_json json_integration(const IntegrationReport& r) {
    ordered_json j;
    j["order"] = to_string(r.order);
    j["significance"] = r.significance;
    j["adf_level"] = json_unit_root(r.adf_level);
    j["pp_level"] = json_unit_root(r.pp_level);
    j["adf_diff"] = json_unit_root(r.adf_diff);
    j["pp_diff"] = json_unit_root(r.pp_diff);
    return j;
}

inline ordered_json json_diagnostic(const DiagnosticReport& d) {
    ordered_json j;
    j["test"] = d.test;
    j["statistic"] = d.statistic;
    switch (d.distribution) {
        case RefDistribution::chi_square: j["distribution"] = "chi_square"; break;
        case RefDistribution::f_dist: j["distribution"] = "f"; break;
        default: j["distribution"] = "none";
    }
    j["df1"] = d.df1;
    if (d.distribution == RefDistribution::f_dist) j["df2"] = d.df2;
    j["p_value"] = d.p_value;
    j["reject_5pct"] = d.reject_5pct;
    if (!d.detail.empty()) j["detail"] = d.detail;
    return j;
}

inline ordered_json json_exogeneity(const ExogeneityReport& e) {
    ordered_json j;
    j["residual_mean"] = e.residual_mean;
    ordered_json cor = ordered_json::array();
    for (std::size_t i = 0; i < e.correlations.size(); ++i) {
        if (e.defined[i])
            cor.push_back(e.correlations[i]);
        else
            cor.push_back(nullptr);
    }
    j["correlations"] = cor;
    return j;
}

inline ordered_json json_decomposition(const GrowthDecomposition& d) {
    ordered_json j;
    j["first_year"] = d.period.first_year;
    j["last_year"] = d.period.last_year;
    j["value_added_growth"] = d.value_added_growth;
    j["capital_growth"] = d.capital_growth;
    j["labor_growth"] = d.labor_growth;
    j["capital_contribution"] = d.capital_contribution;
    j["labor_contribution"] = d.labor_contribution;
    j["tfp_contribution"] = d.tfp_contribution;
    if (d.shares_defined) {
        j["capital_share"] = d.capital_share;
        j["labor_share"] = d.labor_share;
        j["tfp_share"] = d.tfp_share;
    } else {
        j["capital_share"] = nullptr;
        j["labor_share"] = nullptr;
        j["tfp_share"] = nullptr;
        j["shares_reason"] = "output growth is zero";
    }
    j["shares_defined"] = d.shares_defined;
    return j;
}

}  // namespace detail

inline nlohmann::ordered_json render_json(const PipelineReport& r) {
    using namespace detail;
    ordered_json j;
    j["format_version"] = 1;

    ordered_json cfg;
    cfg["growth_convention"] = to_string(r.convention);
    cfg["deterministic_spec"] = to_string(r.det_spec);
    cfg["significance"] = r.significance;
    cfg["ar1"] = r.ar1;
    cfg["averaging"] = to_string(r.averaging);
    cfg["interpolation"] = r.interpolate;
    cfg["interpolation_method"] =
        r.interpolation_method == InterpolationMethod::geometric ? "geometric" : "linear";
    j["config"] = cfg;

    ordered_json data;
    data["first_year"] = r.data.first_year;
    data["last_year"] = r.data.last_year;
    data["n_observations"] = r.data.n_observations;
    data["labor_gaps_filled"] = r.data.labor_gaps_filled;
    data["cagr"] = {{"value_added", r.data.cagr_value_added},
                    {"labor", r.data.cagr_labor},
                    {"capital", r.data.cagr_capital}};
    data["mean_growth"] = {{"value_added", r.data.mean_growth_value_added},
                           {"labor", r.data.mean_growth_labor},
                           {"capital", r.data.mean_growth_capital}};
    j["data"] = data;

    ordered_json ur;
    ur["available"] = r.unit_root.available;
    if (!r.unit_root.available) {
        ur["error"] = r.unit_root.error;
    } else {
        ur["ln_q_per_l"] = json_integration(r.unit_root.ln_q_per_l);
        ur["ln_k_per_l"] = json_integration(r.unit_root.ln_k_per_l);
    }
    j["unit_root"] = ur;

    ordered_json est;
    const auto& e = r.estimation;
    est["form"] = "restricted";
    est["alpha"] = e.alpha;
    est["beta"] = e.beta;
    est["ln_A"] = e.ln_A;
    put_number(est, "elasticity_ratio", e.elasticity_ratio);
    put_field(est, "alpha_se", e.alpha_se);
    put_field(est, "alpha_t", e.alpha_t);
    put_field(est, "ln_A_se", e.ln_A_se);
    put_field(est, "ln_A_t", e.ln_A_t);
    est["ar1_used"] = e.ar1_used;
    put_field(est, "rho", e.rho);
    put_field(est, "rho_t", e.rho_t);
    est["ar1_iterations"] = e.ar1_iterations;
    put_field(est, "r_squared", e.r_squared);
    put_field(est, "adjusted_r_squared", e.adjusted_r_squared);
    put_field(est, "f_statistic", e.f_statistic);
    put_field(est, "durbin_watson", e.durbin_watson);
    est["n_effective"] = e.n_effective;
    est["perfect_fit"] = e.perfect_fit;
    ordered_json unres;
    unres["available"] = e.unrestricted_available;
    if (!e.unrestricted_available) unres["error"] = e.unrestricted_error;
    put_field(unres, "alpha", e.u_alpha);
    put_field(unres, "beta", e.u_beta);
    put_field(unres, "ln_A", e.u_ln_A);
    put_field(unres, "alpha_t", e.u_alpha_t);
    put_field(unres, "beta_t", e.u_beta_t);
    put_field(unres, "elasticity_ratio", e.u_elasticity_ratio);
    est["unrestricted"] = unres;
    ordered_json wald;
    put_field(wald, "statistic", e.wald_statistic);
    put_field(wald, "p_value", e.wald_p_value);
    put_field(wald, "f_statistic", e.wald_f_statistic);
    put_field(wald, "f_p_value", e.wald_f_p_value);
    wald["f_df2"] = e.wald_f_df2;
    wald["crs_rejected_5pct"] = e.crs_rejected_5pct;
    est["wald_crs"] = wald;
    j["estimation"] = est;

    ordered_json diag;
    diag["skipped"] = r.diagnostics.skipped;
    if (r.diagnostics.skipped) {
        diag["skipped_reason"] = r.diagnostics.skipped_reason;
    } else {
        if (r.diagnostics.heteroskedasticity)
            diag["heteroskedasticity"] = json_diagnostic(*r.diagnostics.heteroskedasticity);
        if (r.diagnostics.serial_correlation)
            diag["serial_correlation"] = json_diagnostic(*r.diagnostics.serial_correlation);
        if (r.diagnostics.normality) diag["normality"] = json_diagnostic(*r.diagnostics.normality);
        if (r.diagnostics.exogeneity_regression)
            diag["exogeneity_regression"] = json_exogeneity(*r.diagnostics.exogeneity_regression);
        if (r.diagnostics.exogeneity_structural)
            diag["exogeneity_structural"] = json_exogeneity(*r.diagnostics.exogeneity_structural);
        if (r.diagnostics.residual_correlogram) {
            ordered_json c;
            c["band"] = r.diagnostics.residual_correlogram->band;
            c["acf"] = r.diagnostics.residual_correlogram->acf;
            c["pacf"] = r.diagnostics.residual_correlogram->pacf;
            diag["correlogram"] = c;
        }
    }
    j["diagnostics"] = diag;

    ordered_json coin;
    coin["skipped"] = r.cointegration.skipped;
    if (r.cointegration.skipped) {
        coin["skipped_reason"] = r.cointegration.skipped_reason;
    } else if (r.cointegration.report) {
        coin["adf"] = json_unit_root(r.cointegration.report->adf);
        coin["pp"] = json_unit_root(r.cointegration.report->pp);
        coin["significance"] = r.cointegration.report->significance;
        coin["cointegrated"] = r.cointegration.report->cointegrated;
    }
    j["cointegration"] = coin;

    ordered_json tfp;
    tfp["alpha_used"] = r.tfp.alpha_used;
    tfp["beta_used"] = r.tfp.beta_used;
    tfp["alpha_source"] = r.tfp.alpha_source;
    tfp["convention"] = to_string(r.tfp.series.growth.convention);
    tfp["start_year"] = r.tfp.series.growth.start_year;
    tfp["rates"] = r.tfp.series.growth.rates;
    tfp["mean"] = r.tfp.series.mean;
    j["tfp"] = tfp;

    ordered_json dec;
    dec["averaging"] = to_string(r.averaging);
    dec["full_period"] = json_decomposition(r.decomposition.full_period);
    ordered_json subs = ordered_json::array();
    for (const auto& s : r.decomposition.subperiods) subs.push_back(json_decomposition(s));
    dec["subperiods"] = subs;
    dec["default_windows"] = r.decomposition.default_windows;
    dec["fallback_full_window"] = r.decomposition.fallback_full_window;
    j["decomposition"] = dec;

    j["warnings"] = r.warnings;
    return j;
}

// ---------------------------------------------------------------------------
// CSV (one file per section)
// ---------------------------------------------------------------------------

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream f(p);
    if (!f) throw ValidationError("cannot open output file '" + p.string() + "'");
    return f;
}

inline std::string csvnum(double v, bool defined = true) {
    if (!defined || !std::isfinite(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline void csv_unit_root_row(std::ostream& f, const char* series, const char* sample,
                              const UnitRootReport& r) {
    f << series << ',' << (r.test == UnitRootTestKind::adf ? "adf" : "pp") << ',' << sample << ','
      << csvnum(r.statistic, !r.exact_deterministic_fit) << ',' << r.lags << ','
      << csvnum(r.critical_values.cv1) << ',' << csvnum(r.critical_values.cv5) << ','
      << csvnum(r.critical_values.cv10) << ',' << r.n_effective << ',' << r.reject_1pct << ','
      << r.reject_5pct << ',' << r.reject_10pct << ',' << r.exact_deterministic_fit << '\n';
}

}  // namespace detail

inline void write_report_csv(const PipelineReport& r, const std::string& directory) {
    namespace fs = std::filesystem;
    using detail::csvnum;
    if (directory.empty())
        throw ValidationError("csv output requires an output directory (--out)");
    std::error_code ec;
    fs::create_directories(directory, ec);
    fs::path dir(directory);

    {
        auto f = detail::open_out(dir / "data.csv");
        f << "key,value\n";
        f << "first_year," << r.data.first_year << '\n';
        f << "last_year," << r.data.last_year << '\n';
        f << "n_observations," << r.data.n_observations << '\n';
        f << "labor_gaps_filled," << r.data.labor_gaps_filled << '\n';
        f << "cagr_value_added," << csvnum(r.data.cagr_value_added) << '\n';
        f << "cagr_labor," << csvnum(r.data.cagr_labor) << '\n';
        f << "cagr_capital," << csvnum(r.data.cagr_capital) << '\n';
        f << "mean_growth_value_added," << csvnum(r.data.mean_growth_value_added) << '\n';
        f << "mean_growth_labor," << csvnum(r.data.mean_growth_labor) << '\n';
        f << "mean_growth_capital," << csvnum(r.data.mean_growth_capital) << '\n';
    }
    {
        auto f = detail::open_out(dir / "unit_root.csv");
        f << "series,test,sample,statistic,lags,cv_1pct,cv_5pct,cv_10pct,n_effective,"
             "reject_1pct,reject_5pct,reject_10pct,exact_deterministic_fit\n";
        if (r.unit_root.available) {
            const auto& q = r.unit_root.ln_q_per_l;
            const auto& k = r.unit_root.ln_k_per_l;
            detail::csv_unit_root_row(f, "ln_q_per_l", "level", q.adf_level);
            detail::csv_unit_root_row(f, "ln_q_per_l", "level", q.pp_level);
            detail::csv_unit_root_row(f, "ln_q_per_l", "diff", q.adf_diff);
            detail::csv_unit_root_row(f, "ln_q_per_l", "diff", q.pp_diff);
            detail::csv_unit_root_row(f, "ln_k_per_l", "level", k.adf_level);
            detail::csv_unit_root_row(f, "ln_k_per_l", "level", k.pp_level);
            detail::csv_unit_root_row(f, "ln_k_per_l", "diff", k.adf_diff);
            detail::csv_unit_root_row(f, "ln_k_per_l", "diff", k.pp_diff);
        }
    }
    {
        auto f = detail::open_out(dir / "estimation.csv");
        const auto& e = r.estimation;
        f << "key,value,note\n";
        f << "alpha," << csvnum(e.alpha) << ",\n";
        f << "beta," << csvnum(e.beta) << ",\n";
        f << "ln_A," << csvnum(e.ln_A) << ",\n";
        f << "elasticity_ratio," << csvnum(e.elasticity_ratio) << ",\n";
        auto field = [&](const char* key, const Field& v) {
            f << key << ',' << csvnum(v.value, v.defined) << ',' << (v.defined ? "" : v.reason)
              << '\n';
        };
        field("alpha_se", e.alpha_se);
        field("alpha_t", e.alpha_t);
        field("ln_A_se", e.ln_A_se);
        field("ln_A_t", e.ln_A_t);
        f << "ar1_used," << e.ar1_used << ",\n";
        field("rho", e.rho);
        field("rho_t", e.rho_t);
        field("r_squared", e.r_squared);
        field("adjusted_r_squared", e.adjusted_r_squared);
        field("f_statistic", e.f_statistic);
        field("durbin_watson", e.durbin_watson);
        f << "n_effective," << e.n_effective << ",\n";
        f << "perfect_fit," << e.perfect_fit << ",\n";
        field("unrestricted_alpha", e.u_alpha);
        field("unrestricted_beta", e.u_beta);
        field("unrestricted_ln_A", e.u_ln_A);
        field("wald_statistic", e.wald_statistic);
        field("wald_p_value", e.wald_p_value);
        field("wald_f_statistic", e.wald_f_statistic);
        field("wald_f_p_value", e.wald_f_p_value);
        f << "crs_rejected_5pct," << e.crs_rejected_5pct << ",\n";
    }
    {
        auto f = detail::open_out(dir / "diagnostics.csv");
        f << "test,statistic,distribution,df1,df2,p_value,reject_5pct,detail\n";
        auto row = [&](const DiagnosticReport& d) {
            const char* dist = d.distribution == RefDistribution::chi_square ? "chi_square"
                               : d.distribution == RefDistribution::f_dist   ? "f"
                                                                             : "none";
            f << d.test << ',' << csvnum(d.statistic) << ',' << dist << ',' << d.df1 << ','
              << d.df2 << ',' << csvnum(d.p_value) << ',' << d.reject_5pct << ',' << d.detail
              << '\n';
        };
        if (!r.diagnostics.skipped) {
            if (r.diagnostics.heteroskedasticity) row(*r.diagnostics.heteroskedasticity);
            if (r.diagnostics.serial_correlation) row(*r.diagnostics.serial_correlation);
            if (r.diagnostics.normality) row(*r.diagnostics.normality);
        }
    }
    if (!r.diagnostics.skipped && r.diagnostics.residual_correlogram) {
        auto f = detail::open_out(dir / "correlogram.csv");
        write_correlogram_csv(*r.diagnostics.residual_correlogram, f);
    }
    {
        auto f = detail::open_out(dir / "cointegration.csv");
        f << "series,test,sample,statistic,lags,cv_1pct,cv_5pct,cv_10pct,n_effective,"
             "reject_1pct,reject_5pct,reject_10pct,exact_deterministic_fit\n";
        if (!r.cointegration.skipped && r.cointegration.report) {
            detail::csv_unit_root_row(f, "residuals", "level", r.cointegration.report->adf);
            detail::csv_unit_root_row(f, "residuals", "level", r.cointegration.report->pp);
        }
    }
    {
        auto f = detail::open_out(dir / "tfp.csv");
        f << "year,tfp_growth_pct\n";
        for (std::size_t i = 0; i < r.tfp.series.growth.size(); ++i)
            f << r.tfp.series.growth.year_at(i) << ',' << csvnum(r.tfp.series.growth.rates[i])
              << '\n';
        f << "mean," << csvnum(r.tfp.series.mean) << '\n';
    }
    {
        auto f = detail::open_out(dir / "decomposition.csv");
        f << "first_year,last_year,value_added_growth,capital_growth,labor_growth,"
             "capital_contribution,labor_contribution,tfp_contribution,"
             "capital_share,labor_share,tfp_share,shares_defined\n";
        auto row = [&](const GrowthDecomposition& d) {
            f << d.period.first_year << ',' << d.period.last_year << ','
              << csvnum(d.value_added_growth) << ',' << csvnum(d.capital_growth) << ','
              << csvnum(d.labor_growth) << ',' << csvnum(d.capital_contribution) << ','
              << csvnum(d.labor_contribution) << ',' << csvnum(d.tfp_contribution) << ','
              << csvnum(d.capital_share, d.shares_defined) << ','
              << csvnum(d.labor_share, d.shares_defined) << ','
              << csvnum(d.tfp_share, d.shares_defined) << ',' << d.shares_defined << '\n';
        };
        row(r.decomposition.full_period);
        for (const auto& s : r.decomposition.subperiods) row(s);
    }
    {
        auto f = detail::open_out(dir / "warnings.csv");
        f << "warning\n";
        for (const auto& w : r.warnings) f << w << '\n';
    }
}

/// Serialize per the configured format. text/json write to stdout when path
/// is empty; csv always needs a directory.
inline void emit_report(const PipelineReport& report, OutputFormat format,
                        const std::string& path) {
    if (format == OutputFormat::csv) {
        write_report_csv(report, path);
        return;
    }
    std::string payload = format == OutputFormat::text ? render_text(report)
                                                       : render_json(report).dump(2) + "\n";
    if (path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(path);
        if (!f) throw ValidationError("cannot open output file '" + path + "'");
        f << payload;
    }
}

}  // namespace tfpkit
