// Acceptance gate: ten criteria, one pass/fail line each. Exits with the
// number of failed criteria.
//
// usage: acceptance <cli-binary> <golden-dir> <tmp-dir>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "support/oracle.hpp"
#include "tfpkit/tfpkit.hpp"

namespace fs = std::filesystem;
using namespace tfpkit;

namespace {

struct Criterion {
    explicit Criterion(std::string n) : name(std::move(n)) {}

    std::string name;
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void check_close(double got, double want, double tol, const std::string& what) {
        if (!(std::fabs(got - want) <= tol)) {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s: got %.10g, want %.10g (tol %.3g)", what.c_str(),
                          got, want, tol);
            failures.push_back(buf);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

int g_failed = 0;

void report(Criterion& c) {
    if (c.failures.empty()) {
        std::printf("[PASS] %s\n", c.name.c_str());
    } else {
        ++g_failed;
        std::printf("[FAIL] %s\n", c.name.c_str());
        for (const auto& f : c.failures) std::printf("       %s\n", f.c_str());
    }
    for (const auto& n : c.notes) std::printf("       note: %s\n", n.c_str());
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_cmd(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    if (WIFEXITED(rc)) return WEXITSTATUS(rc);
    return -2;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// The committed noise-free reference economy (matches golden/noise_free_economy.csv).
EconomySpec golden_economy_spec() {
    EconomySpec spec;
    spec.n_years = 31;
    spec.start_year = 1355;
    spec.alpha_true = 0.52;
    spec.ln_A0 = 1.0;
    spec.tfp_growth_pct = {0.0};
    spec.capital_growth_pct = {3.0, 1.0, 4.0, -2.0, 5.0, 2.0, 1.5, 6.0, -1.0, 2.5,
                               3.5, 0.5, 2.0, 4.5, -0.5, 1.0, 3.0, 2.0, 5.5, -1.5,
                               2.0, 3.0, 1.0, 4.0, 2.5, 0.25, 3.5, 1.5, 2.0, 4.0};
    spec.labor_growth_pct = {2.65};
    spec.capital0 = 100.0;
    spec.labor0 = 1000.0;
    return spec;
}

// Reference-magnitude Monte Carlo economy: drifts of 2.21%/2.65% with yearly
// swings of several points, an AR(1) log disturbance with rho 0.5, and sigma
// tuned so the restricted fit's R^2 averages about 0.94. Input-growth noise
// is built from differenced shocks (one shared, one opposing component) so
// both the per-capita ratio and the joint input level carry identifying
// variation around their trends.
EconomySpec mc_economy_spec(std::uint64_t seed) {
    EconomySpec spec;
    spec.n_years = 31;
    spec.alpha_true = 0.52;
    spec.rho = 0.5;
    spec.sigma = 0.015;
    spec.seed = seed;
    NormalSampler path_rng(seed ^ 0xABCDEF12345ull);
    spec.capital_growth_pct.assign(30, 0.0);
    spec.labor_growth_pct.assign(30, 0.0);
    double w_prev = 0.0, v_prev = 0.0;
    for (int i = 0; i < 30; ++i) {
        double w = path_rng.next(), v = path_rng.next();
        spec.capital_growth_pct[i] = 2.21 + 6.0 * (w - w_prev) + 6.0 * (v - v_prev);
        spec.labor_growth_pct[i] = 2.65 + 6.0 * (w - w_prev) - 6.0 * (v - v_prev);
        w_prev = w;
        v_prev = v;
    }
    return spec;
}

const double kTfpFixture[30] = {
    -3.46, -13.88, -10.50, 1.68,  1.52,  14.42, 5.67,  1.20,  -5.09, -16.67,
    1.44,  -5.55,  -0.48,  17.36, 0.95,  1.99,  -6.31, 18.05, 2.51,  9.25,
    -6.00, 8.62,   12.97,  -2.82, 6.33,  19.07, 11.38, 5.58,  10.70, 8.33};

}  // namespace

// --------------------------------------------------------------------------
// Criteria
// --------------------------------------------------------------------------

static void criterion_1_table9_replay() {
    Criterion c{"1. full-period decomposition replay (recorded sector averages)"};
    auto t0 = std::chrono::steady_clock::now();
    auto d = decompose_period({5.48, 2.21, 2.65}, 0.52, 0.48);
    c.check_close(d.capital_contribution, 1.15, 0.01, "capital contribution");
    c.check_close(d.labor_contribution, 1.27, 0.01, "labor contribution");
    c.check_close(d.tfp_contribution, 3.06, 0.01, "tfp contribution");
    c.check(d.shares_defined, "shares defined");
    c.check_close(d.capital_share, 20.98, 0.1, "capital share %");
    c.check_close(d.labor_share, 23.18, 0.1, "labor share %");
    c.check_close(d.tfp_share, 55.84, 0.1, "tfp share %");
    double dt = elapsed_s(t0);
    c.check(dt < 1.0, "runtime " + std::to_string(dt) + "s exceeds 1s");
    report(c);
}

static void criterion_2_table10_replay() {
    Criterion c{"2. sub-period decomposition replay (five recorded windows)"};
    struct Row {
        double l, k, v;           // recorded window-average growth rates
        double lab, cap, tfp;     // recorded contribution cells
    };
    // Five recorded rows; two cells are documented discrepancies in the
    // source table and are asserted at the recomputed values instead.
    const Row rows[5] = {
        {3.80, 1.26, 0.01, 1.8240, 0.6552, -2.4791},
        {4.11, 9.43, 13.91, 1.9728, 4.9063, 7.0309},
        {2.65, -3.99, 5.49, 1.2720, -2.0748, 6.2928},
        {0.38, 6.01, 14.80, 0.1824, 3.1252, 11.4924},
        {9.49, -0.23, 13.38, 4.5552, 0.1196, 8.7052},
    };
    for (int i = 0; i < 5; ++i) {
        auto d = decompose_period({rows[i].v, rows[i].k, rows[i].l}, 0.52, 0.48);
        std::string tag = "row " + std::to_string(i + 1) + " ";
        c.check_close(d.labor_contribution, rows[i].lab, 0.01, tag + "labor");
        if (i == 4) {
            // Documented discrepancy: the recorded table prints +0.1196 for a
            // window with negative capital growth; the formula gives -0.1196,
            // and the residual tfp cell moves accordingly.
            c.check_close(d.capital_contribution, -0.1196, 5e-5, tag + "capital (recomputed)");
            c.check_close(d.tfp_contribution, 8.9444, 5e-5, tag + "tfp (recomputed)");
            c.note("row 5 capital printed as +0.1196 in the source; formula value -0.1196 "
                   "asserted, tfp residual 8.9444 vs printed 8.7052");
        } else {
            c.check_close(d.capital_contribution, rows[i].cap, 0.01, tag + "capital");
            if (i == 0) {
                c.check_close(d.tfp_contribution, -2.4692, 5e-5, tag + "tfp (recomputed)");
                c.note("row 1 tfp printed as -2.4791 in the source; recomputed from the printed "
                       "averages it is -2.4692, asserted at the recomputed value");
            } else {
                c.check_close(d.tfp_contribution, rows[i].tfp, 0.01, tag + "tfp");
            }
        }
    }
    report(c);
}

static void criterion_3_tfp_mean() {
    Criterion c{"3. recorded annual TFP series: 30-value mean"};
    double sum = 0.0;
    for (double v : kTfpFixture) sum += v;
    double mean = sum / 30.0;
    c.check_close(mean, 2.94, 0.01, "mean of the recorded series");
    report(c);
}

static void criterion_4_mackinnon() {
    Criterion c{"4. MacKinnon critical values at the recorded sample sizes"};
    auto cv30 = mackinnon_critical_values(DeterministicSpec::constant_and_trend, 30);
    c.check_close(cv30.cv1, -4.310, 0.02, "n=30 1%");
    c.check_close(cv30.cv5, -3.568, 0.02, "n=30 5%");
    c.check_close(cv30.cv10, -3.218, 0.02, "n=30 10%");
    auto cv29 = mackinnon_critical_values(DeterministicSpec::constant_and_trend, 29);
    c.check_close(cv29.cv1, -4.310, 0.02, "n=29 1%");
    c.check_close(cv29.cv5, -3.574, 0.02, "n=29 5%");
    c.check_close(cv29.cv10, -3.222, 0.02, "n=29 10%");
    report(c);
}

static void criterion_5_decision_replay() {
    Criterion c{"5. decision replay on recorded statistics"};
    CriticalValues level{-4.310, -3.568, -3.218, false};
    CriticalValues diff{-4.310, -3.568, -3.222, false};

    // ln(Q/L): level (ADF -1.034, PP -1.040), difference (-4.764, -4.724).
    auto q_order = integration_rule(
        rejects_unit_root(-1.034, level, 0.05), rejects_unit_root(-1.040, level, 0.05),
        rejects_unit_root(-4.764, diff, 0.05), rejects_unit_root(-4.724, diff, 0.05));
    c.check(q_order == IntegrationOrder::I1, "ln(Q/L) classified I(1)");

    // ln(K/L): level (ADF -1.693, PP -1.804), difference (-5.005, -5.002).
    auto k_order = integration_rule(
        rejects_unit_root(-1.693, level, 0.05), rejects_unit_root(-1.804, level, 0.05),
        rejects_unit_root(-5.005, diff, 0.05), rejects_unit_root(-5.002, diff, 0.05));
    c.check(k_order == IntegrationOrder::I1, "ln(K/L) classified I(1)");

    // Residual series: ADF -4.999 and PP -6.019 against 1% value -4.310.
    CriticalValues resid{-4.310, -3.574, -3.222, false};
    bool coint_1pct =
        rejects_unit_root(-4.999, resid, 0.01) && rejects_unit_root(-6.019, resid, 0.01);
    c.check(coint_1pct, "residuals stationary at 1% => cointegrated");
    report(c);
}

static void criterion_6_ols_oracle() {
    Criterion c{"6. OLS against explicit normal-equation solutions"};

    {  // 3-point perfect line
        RegressionSpec s;
        s.dependent = {2, 4, 6};
        s.regressors = {{1, 2, 3}};
        auto fit = ols_fit(s);
        c.check_close(fit.coefficients[0], 0.0, 1e-10, "3pt intercept");
        c.check_close(fit.coefficients[1], 2.0, 1e-10, "3pt slope");
        c.check_close(fit.r_squared, 1.0, 1e-10, "3pt R^2");
    }
    {  // 3-point imperfect fixture vs oracle
        RegressionSpec s;
        s.dependent = {1, 2, 2};
        s.regressors = {{1, 2, 3}};
        auto fit = ols_fit(s);
        auto ref = oracle::ols(s.dependent, {{1, 1, 1}, {1, 2, 3}});
        c.check_close(fit.coefficients[0], ref.beta[0], 1e-10, "3pt intercept vs oracle");
        c.check_close(fit.coefficients[1], ref.beta[1], 1e-10, "3pt slope vs oracle");
        c.check_close(fit.r_squared, ref.r_squared, 1e-10, "3pt R^2 vs oracle");
        c.check_close(fit.t_statistics[0], ref.t[0], 1e-10, "3pt t(intercept) vs oracle");
        c.check_close(fit.t_statistics[1], ref.t[1], 1e-10, "3pt t(slope) vs oracle");
        c.check_close(fit.coefficients[0], 2.0 / 3.0, 1e-10, "3pt intercept hand value");
        c.check_close(fit.r_squared, 0.75, 1e-10, "3pt R^2 hand value");
    }
    {  // 5-point fixture vs oracle (hand values frozen from the oracle)
        RegressionSpec s;
        s.dependent = {1, 3, 2, 5, 4};
        s.regressors = {{1, 2, 3, 4, 5}};
        auto fit = ols_fit(s);
        auto ref = oracle::ols(s.dependent, {{1, 1, 1, 1, 1}, {1, 2, 3, 4, 5}});
        c.check_close(fit.coefficients[0], ref.beta[0], 1e-10, "5pt intercept vs oracle");
        c.check_close(fit.coefficients[1], ref.beta[1], 1e-10, "5pt slope vs oracle");
        c.check_close(fit.r_squared, ref.r_squared, 1e-10, "5pt R^2 vs oracle");
        c.check_close(fit.t_statistics[1], ref.t[1], 1e-10, "5pt t(slope) vs oracle");
        c.check_close(fit.coefficients[0], 0.6, 1e-10, "5pt intercept hand value");
        c.check_close(fit.coefficients[1], 0.8, 1e-10, "5pt slope hand value");
        c.check_close(fit.r_squared, 0.64, 1e-10, "5pt R^2 hand value");
        c.check_close(fit.t_statistics[1], 2.309401076758503, 1e-9, "5pt t(slope) hand value");
    }
    report(c);
}

static void criterion_7_test_statistic_oracles() {
    Criterion c{"7. ADF/PP statistics against hand-computed fixtures"};
    const std::vector<double> fixture{1, 2, 4, 3, 5, 4, 6, 5, 7, 6, 8, 7};

    auto adf = adf_test(fixture, DeterministicSpec::constant, 0);
    c.check_close(adf.statistic, -1.867988163533004, 1e-6, "ADF 12-point fixture, lags 0");
    c.check_close(adf.statistic, oracle::df_t_constant(fixture), 1e-10,
                  "ADF vs in-test normal-equation oracle");

    auto pp0 = pp_test(fixture, DeterministicSpec::constant, 0);
    c.check(std::fabs(pp0.statistic - adf.statistic) < 1e-12,
            "PP bandwidth 0 equals the DF t-statistic exactly");

    auto pp1 = pp_test(fixture, DeterministicSpec::constant, 1);
    c.check_close(pp1.statistic, -2.117198752272460, 1e-6, "PP 12-point fixture, bandwidth 1");
    c.check_close(pp1.statistic, oracle::pp_z_constant(fixture, 1), 1e-10,
                  "PP vs in-test Newey-West oracle");
    report(c);
}

static void criterion_8_estimator_recovery() {
    Criterion c{"8. estimator recovery on 100 reference-magnitude economies"};
    auto t0 = std::chrono::steady_clock::now();
    int alpha_ok = 0, tfp_ok = 0, crs_rejections = 0, converged = 0;
    double r2_sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto eco = generate_economy(mc_economy_spec(seed));

        auto fit = fit_restricted(eco.panel, /*ar1_on=*/true, Ar1Method::full_sample);
        if (fit.ar1->converged) ++converged;
        double se = fit.inner().standard_errors[1];
        if (std::fabs(fit.alpha - 0.52) <= 2.0 * se) ++alpha_ok;

        // CRS size check on the trend-augmented unrestricted fit: with
        // trending inputs the trendless quasi-differenced Wald is known to
        // over-reject at n = 31 (the restriction direction loads on the
        // smooth component), so the trend term carries that direction.
        auto unres = fit_unrestricted(eco.panel, /*ar1_on=*/true, Ar1Method::full_sample,
                                      /*time_trend=*/true);
        auto wald = wald_crs_test(unres);
        if (wald.report.reject_5pct) ++crs_rejections;

        auto tfp = solow_residual_series(eco.panel, fit.alpha, fit.beta,
                                         GrowthConvention::logarithmic);
        double truth = 0.0;
        for (double g : eco.truth.tfp_log_growth_pct) truth += g;
        truth /= static_cast<double>(eco.truth.tfp_log_growth_pct.size());
        if (std::fabs(tfp.mean - truth) <= 0.5) ++tfp_ok;

        // Structural R^2 bookkeeping (documentation only).
        auto [lq, lk] = per_capita_log_panel(eco.panel);
        double mean_q = 0.0;
        for (double v : lq.values) mean_q += v;
        mean_q /= static_cast<double>(lq.values.size());
        double tss = 0.0, ssr = 0.0;
        for (std::size_t i = 0; i < lq.values.size(); ++i) {
            double u = lq.values[i] - fit.ln_A - fit.alpha * lk.values[i];
            ssr += u * u;
            tss += (lq.values[i] - mean_q) * (lq.values[i] - mean_q);
        }
        r2_sum += 1.0 - ssr / tss;
    }
    double dt = elapsed_s(t0);
    c.check(alpha_ok >= 90, "alpha within 2 s.e. in " + std::to_string(alpha_ok) + "/100 seeds");
    c.check(crs_rejections <= 10,
            "Wald CRS rejected in " + std::to_string(crs_rejections) + "/100 seeds at 5%");
    c.check(tfp_ok >= 90,
            "mean TFP within 0.5pp of generator truth in " + std::to_string(tfp_ok) + "/100");
    c.check(converged == 100, "AR(1) convergence in " + std::to_string(converged) + "/100");
    c.check(dt < 10.0, "runtime " + std::to_string(dt) + "s exceeds 10s");
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "alpha 2se coverage %d/100, CRS rejections %d/100, TFP-mean hits %d/100, "
                  "mean restricted R^2 %.3f, %.2fs",
                  alpha_ok, crs_rejections, tfp_ok, r2_sum / 100.0, dt);
    c.note(buf);
    report(c);
}

static void criterion_9_invariants() {
    Criterion c{"9. invariant property suites"};
    auto t0 = std::chrono::steady_clock::now();

    {  // Decomposition additivity and share sum.
        SplitMix64 rng(909);
        for (int rep = 0; rep < 200; ++rep) {
            AverageGrowthRates r{30.0 * rng.next_uniform() - 12.0,
                                 24.0 * rng.next_uniform() - 12.0,
                                 12.0 * rng.next_uniform() - 6.0};
            double alpha = 0.05 + 0.9 * rng.next_uniform();
            auto d = decompose_period(r, alpha, 1.0 - alpha);
            if (std::fabs(d.capital_contribution + d.labor_contribution + d.tfp_contribution -
                          r.value_added) > 1e-12) {
                c.check(false, "decomposition additivity violated");
                break;
            }
            if (d.shares_defined &&
                std::fabs(d.capital_share + d.labor_share + d.tfp_share - 100.0) > 1e-9) {
                c.check(false, "share sum differs from 100%");
                break;
            }
        }
    }
    {  // OLS orthogonality and affine equivariance.
        SplitMix64 rng(910);
        for (int rep = 0; rep < 50; ++rep) {
            int n = 8 + static_cast<int>(rng.next() % 30);
            std::vector<double> x(n), y(n);
            for (int i = 0; i < n; ++i) {
                x[i] = 5.0 * rng.next_uniform();
                y[i] = 1.0 + 2.0 * x[i] + (rng.next_uniform() - 0.5);
            }
            RegressionSpec s;
            s.dependent = y;
            s.regressors = {x};
            auto fit = ols_fit(s);
            double mean = 0.0, dot = 0.0;
            for (int i = 0; i < n; ++i) {
                mean += fit.residuals[i];
                dot += fit.residuals[i] * x[i];
            }
            if (std::fabs(mean / n) > 1e-10 || std::fabs(dot) > 1e-8 * n) {
                c.check(false, "OLS orthogonality violated");
                break;
            }
            RegressionSpec shifted = s;
            for (double& v : shifted.dependent) v += 4.25;
            auto fit2 = ols_fit(shifted);
            if (std::fabs(fit2.coefficients[1] - fit.coefficients[1]) > 1e-10 ||
                std::fabs(fit2.coefficients[0] - fit.coefficients[0] - 4.25) > 1e-9 ||
                std::fabs(fit2.r_squared - fit.r_squared) > 1e-10) {
                c.check(false, "OLS affine equivariance violated");
                break;
            }
        }
    }
    {  // ADF scale invariance and PP identity.
        NormalSampler normal(911);
        std::vector<double> y(80);
        double v = 0.0;
        for (double& x : y) {
            v += normal.next();
            x = v;
        }
        auto base = adf_test(y, DeterministicSpec::constant, 1);
        for (double s : {0.01, 5.0, 250.0}) {
            std::vector<double> scaled = y;
            for (double& x : scaled) x = s * x + 3.0;
            auto rep = adf_test(scaled, DeterministicSpec::constant, 1);
            c.check(std::fabs(rep.statistic - base.statistic) < 1e-7,
                    "ADF scale invariance at c=" + std::to_string(s));
        }
        auto adf0 = adf_test(y, DeterministicSpec::constant, 0);
        auto pp0 = pp_test(y, DeterministicSpec::constant, 0);
        c.check(std::fabs(adf0.statistic - pp0.statistic) < 1e-12,
                "PP(bandwidth 0) == DF identity");
    }
    {  // Jarque-Bera affine invariance.
        NormalSampler normal(912);
        std::vector<double> e(60);
        for (double& x : e) x = normal.next() + 0.2 * normal.next() * normal.next();
        double base = jarque_bera(e).statistic;
        for (double scale : {2.0, -0.5}) {
            std::vector<double> t = e;
            for (double& x : t) x = 1.5 + scale * x;
            c.check(std::fabs(jarque_bera(t).statistic - base) < 1e-8,
                    "Jarque-Bera affine invariance");
        }
    }
    {  // AR(1) with zero disturbance reproduces OLS.
        EconomySpec spec = golden_economy_spec();
        auto eco = generate_economy(spec);
        auto [lq, lk] = per_capita_log_panel(eco.panel);
        RegressionSpec s;
        s.dependent = lq.values;
        s.regressors = {lk.values};
        auto plain = ols_fit(s);
        auto ar1 = fit_with_ar1(s);
        c.check(ar1.rho == 0.0, "zero-disturbance fit returns rho = 0");
        c.check(ar1.inner_fit.coefficients == plain.coefficients,
                "AR(1) inner fit equals plain OLS bit-for-bit");
        auto identity = detail::quasi_difference_fit(s, 0.0, Ar1Method::full_sample);
        bool same = true;
        for (std::size_t j = 0; j < plain.coefficients.size(); ++j)
            if (std::fabs(identity.coefficients[j] - plain.coefficients[j]) > 1e-12) same = false;
        c.check(same, "quasi-differencing at rho = 0 is the identity");
    }

    double dt = elapsed_s(t0);
    c.check(dt < 5.0, "runtime " + std::to_string(dt) + "s exceeds 5s");
    report(c);
}

static void criterion_10_pipeline(const std::string& cli, const fs::path& golden,
                                  const fs::path& tmp) {
    Criterion c{"10. pipeline integration: golden output, JSON schema, exit codes"};
    fs::create_directories(tmp);

    const fs::path csv = golden / "noise_free_economy.csv";
    const fs::path golden_txt = golden / "noise_free_report.txt";
    c.check(fs::exists(csv), "golden CSV fixture present");
    c.check(fs::exists(golden_txt), "golden text fixture present");

    // Library-level golden comparison.
    if (fs::exists(csv) && fs::exists(golden_txt)) {
        PipelineConfig cfg;
        cfg.input_path = csv.string();
        auto rep = run_pipeline(cfg);
        std::string text = render_text(rep);
        std::string want = slurp(golden_txt);
        c.check(text == want, "library text report matches the golden file byte-for-byte");

        // CLI produces the same bytes.
        fs::path cli_txt = tmp / "cli_report.txt";
        int rc = run_cmd(cli + " run --input " + csv.string() + " --out " + cli_txt.string());
        c.check(rc == 0, "cli run exit code 0 (got " + std::to_string(rc) + ")");
        c.check(slurp(cli_txt) == want, "cli text report matches the golden file");

        // JSON: schema-valid and numerically exact round trip.
        fs::path json_path = tmp / "report.json";
        rc = run_cmd(cli + " run --input " + csv.string() + " --format json --out " +
                     json_path.string());
        c.check(rc == 0, "cli json exit code 0");
        try {
            auto j = nlohmann::ordered_json::parse(slurp(json_path));
            auto require = [&](bool ok, const char* what) {
                c.check(ok, std::string("json schema: ") + what);
            };
            require(j["format_version"].is_number_integer(), "format_version integer");
            require(j["config"].is_object() && j["config"]["growth_convention"].is_string() &&
                        j["config"]["significance"].is_number(),
                    "config block");
            require(j["data"].is_object() && j["data"]["first_year"].is_number_integer() &&
                        j["data"]["cagr"]["value_added"].is_number(),
                    "data block");
            require(j["unit_root"]["available"].is_boolean() &&
                        j["unit_root"]["ln_q_per_l"]["order"].is_string() &&
                        j["unit_root"]["ln_q_per_l"]["adf_level"]["critical_values"]["cv_5pct"]
                            .is_number(),
                    "unit_root block");
            require(j["estimation"]["alpha"].is_number() &&
                        j["estimation"]["wald_crs"].is_object() &&
                        j["estimation"]["perfect_fit"].is_boolean(),
                    "estimation block");
            require(j["estimation"]["f_statistic"].is_null() &&
                        j["estimation"]["f_statistic_reason"].is_string(),
                    "undefined values are null with a reason");
            require(j["diagnostics"]["skipped"].is_boolean(), "diagnostics block");
            require(j["cointegration"]["skipped"].is_boolean(), "cointegration block");
            require(j["tfp"]["rates"].is_array() && j["tfp"]["mean"].is_number() &&
                        j["tfp"]["start_year"].is_number_integer(),
                    "tfp block");
            require(j["decomposition"]["full_period"]["tfp_contribution"].is_number() &&
                        j["decomposition"]["subperiods"].is_array(),
                    "decomposition block");
            require(j["warnings"].is_array(), "warnings array");
            c.check(j["estimation"]["alpha"].get<double>() == rep.estimation.alpha,
                    "json round-trips alpha exactly");
            c.check(j["tfp"]["rates"].size() == rep.tfp.series.growth.rates.size(),
                    "tfp series length preserved");
            bool rates_exact = true;
            for (std::size_t i = 0; i < rep.tfp.series.growth.rates.size(); ++i)
                if (j["tfp"]["rates"][i].get<double>() != rep.tfp.series.growth.rates[i])
                    rates_exact = false;
            c.check(rates_exact, "json round-trips every tfp rate exactly");
        } catch (const std::exception& e) {
            c.check(false, std::string("json parse/schema: ") + e.what());
        }
    }

    // Exit-code contract.
    {
        fs::path bad = tmp / "bad.csv";
        std::ofstream f(bad);
        f << "year,output\n1,2\n";
        f.close();
        int rc = run_cmd(cli + " run --input " + bad.string() + " > /dev/null 2>&1");
        c.check(rc == 2, "malformed input exits 2 (got " + std::to_string(rc) + ")");

        rc = run_cmd(cli + " run --definitely-not-a-flag > /dev/null 2>&1");
        c.check(rc == 1, "unknown flag exits 1 (got " + std::to_string(rc) + ")");

        rc = run_cmd(cli + " --help > /dev/null 2>&1");
        c.check(rc == 0, "--help exits 0 (got " + std::to_string(rc) + ")");

        rc = run_cmd(cli + " run --input " + (tmp / "does_not_exist.csv").string() +
                     " > /dev/null 2>&1");
        c.check(rc == 2, "missing input exits 2 (got " + std::to_string(rc) + ")");

        // K proportional to L makes ln(K/L) constant: singular design.
        fs::path singular = tmp / "singular.csv";
        std::ofstream g(singular);
        g << "year,value_added,labor,capital\n";
        double l = 1000.0;
        for (int i = 0; i < 12; ++i) {
            g << 1355 + i << ',' << 100.0 + 3.0 * i << ',' << l << ',' << 2.0 * l << "\n";
            l *= 1.02;
        }
        g.close();
        rc = run_cmd(cli + " run --input " + singular.string() + " > /dev/null 2>&1");
        c.check(rc == 3, "singular design exits 3 (got " + std::to_string(rc) + ")");
    }
    report(c);
}

int main(int argc, char** argv) {
    if (argc < 4) {
        std::fprintf(stderr, "usage: acceptance <cli-binary> <golden-dir> <tmp-dir>\n");
        return 64;
    }
    const std::string cli = argv[1];
    const fs::path golden = argv[2];
    const fs::path tmp = argv[3];

    criterion_1_table9_replay();
    criterion_2_table10_replay();
    criterion_3_tfp_mean();
    criterion_4_mackinnon();
    criterion_5_decision_replay();
    criterion_6_ols_oracle();
    criterion_7_test_statistic_oracles();
    criterion_8_estimator_recovery();
    criterion_9_invariants();
    criterion_10_pipeline(cli, golden, tmp);

    if (g_failed == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", g_failed);
    return g_failed;
}
