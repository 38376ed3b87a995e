// Command-line front end. Each subcommand is a thin wrapper over the library:
//   run         full pipeline -> text/csv/json report
//   ingest      validate + interpolate + echo the panel CSV
//   unitroot    integration-order classification of the per-capita logs
//   estimate    restricted/unrestricted production-function fits
//   diagnose    residual diagnostics battery
//   accounting  TFP series and growth decomposition
//   synth       seeded synthetic-economy CSV generator
//
// Exit codes: 0 success, 1 usage error, 2 data/validation error,
// 3 numeric failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tfpkit/tfpkit.hpp"

namespace {

using namespace tfpkit;

GrowthConvention parse_convention(const std::string& s) {
    if (s == "arithmetic") return GrowthConvention::arithmetic;
    if (s == "log" || s == "logarithmic") return GrowthConvention::logarithmic;
    throw ValidationError("unknown convention '" + s + "' (use arithmetic|log)");
}

DeterministicSpec parse_spec(const std::string& s) {
    if (s == "none") return DeterministicSpec::none;
    if (s == "constant") return DeterministicSpec::constant;
    if (s == "trend" || s == "constant_and_trend") return DeterministicSpec::constant_and_trend;
    throw ValidationError("unknown deterministic spec '" + s + "' (use none|constant|trend)");
}

AveragingConvention parse_averaging(const std::string& s) {
    if (s == "mean" || s == "arithmetic_mean") return AveragingConvention::arithmetic_mean;
    if (s == "compound" || s == "cagr") return AveragingConvention::compound;
    throw ValidationError("unknown averaging '" + s + "' (use mean|compound)");
}

Ar1Method parse_ar1_method(const std::string& s) {
    if (s == "difference") return Ar1Method::difference;
    if (s == "full" || s == "full_sample") return Ar1Method::full_sample;
    throw ValidationError("unknown ar1 method '" + s + "' (use difference|full)");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "text") return OutputFormat::text;
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ValidationError("unknown format '" + s + "' (use text|csv|json)");
}

std::optional<double> parse_alpha(const std::string& s) {
    if (s == "fit") return std::nullopt;
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("--alpha expects 'fit' or a number in (0,1), got '" + s + "'");
    }
}

std::vector<PeriodWindow> parse_periods(const std::string& s) {
    std::vector<PeriodWindow> out;
    if (s.empty()) return out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
        std::size_t dash = tok.find('-');
        if (dash == std::string::npos)
            throw ValidationError("--periods expects a-b,c-d,... (got '" + tok + "')");
        try {
            PeriodWindow w;
            w.first_year = std::stoi(tok.substr(0, dash));
            w.last_year = std::stoi(tok.substr(dash + 1));
            out.push_back(w);
        } catch (const std::exception&) {
            throw ValidationError("--periods expects a-b,c-d,... (got '" + tok + "')");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int parse_lag_opt(const std::string& s, const char* what) {
    if (s == "auto") return kAuto;
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size() || v < 0) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(std::string(what) + " expects 'auto' or a nonnegative integer");
    }
}

// Raw option strings shared by the analysis subcommands.
struct CommonOpts {
    std::string input;
    bool no_interpolation = false;
    bool linear_interpolation = false;
    std::string convention = "arithmetic";
    std::string spec = "trend";
    double significance = 0.05;
    bool no_ar1 = false;
    std::string ar1_method = "difference";
    bool time_trend = false;
    std::string alpha = "fit";
    std::string periods;
    std::string averaging = "mean";
    std::string lags = "auto";
    std::string bandwidth = "auto";
    int lm_lags = 1;
    std::string format = "text";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_format) {
    cmd->add_option("-i,--input", o.input, "input panel CSV")->required();
    cmd->add_flag("--no-interpolation", o.no_interpolation, "reject labor gaps instead of filling");
    cmd->add_flag("--linear-interpolation", o.linear_interpolation,
                  "linear instead of geometric gap filling");
    cmd->add_option("--convention", o.convention, "growth-rate convention: arithmetic|log");
    cmd->add_option("--spec", o.spec, "deterministic terms: none|constant|trend");
    cmd->add_option("--significance", o.significance, "test level: 0.01|0.05|0.10");
    cmd->add_flag("--no-ar1", o.no_ar1, "plain OLS, no AR(1) correction");
    cmd->add_option("--ar1-method", o.ar1_method, "difference|full");
    cmd->add_flag("--trend", o.time_trend, "add a time-trend regressor to the production function");
    cmd->add_option("--alpha", o.alpha, "capital elasticity: 'fit' or a fixed value in (0,1)");
    cmd->add_option("--periods", o.periods, "decomposition windows a-b,c-d,...");
    cmd->add_option("--averaging", o.averaging, "window averages: mean|compound");
    cmd->add_option("--lags", o.lags, "ADF lag order: auto|N");
    cmd->add_option("--bandwidth", o.bandwidth, "PP Newey-West bandwidth: auto|N");
    cmd->add_option("--lm-lags", o.lm_lags, "Breusch-Godfrey LM lag order");
    if (with_format) cmd->add_option("-f,--format", o.format, "output format: text|csv|json");
    cmd->add_option("-o,--out", o.out, "output path (file, or directory for csv)");
}

PipelineConfig build_config(const CommonOpts& o) {
    PipelineConfig cfg;
    cfg.input_path = o.input;
    cfg.interpolate = !o.no_interpolation;
    cfg.interpolation_method = o.linear_interpolation ? InterpolationMethod::linear
                                                      : InterpolationMethod::geometric;
    cfg.convention = parse_convention(o.convention);
    cfg.det_spec = parse_spec(o.spec);
    cfg.significance = o.significance;
    cfg.ar1 = !o.no_ar1;
    cfg.ar1_method = parse_ar1_method(o.ar1_method);
    cfg.time_trend = o.time_trend;
    cfg.fixed_alpha = parse_alpha(o.alpha);
    cfg.periods = parse_periods(o.periods);
    cfg.averaging = parse_averaging(o.averaging);
    cfg.adf_lags = parse_lag_opt(o.lags, "--lags");
    cfg.pp_bandwidth = parse_lag_opt(o.bandwidth, "--bandwidth");
    cfg.lm_lag_order = o.lm_lags;
    cfg.format = parse_format(o.format);
    cfg.output_path = o.out;
    validate_config(cfg);
    return cfg;
}

void write_text_out(const std::string& payload, const std::string& path) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot open output file '" + path + "'");
    f << payload;
}

struct SynthOpts {
    std::uint64_t seed = 0;
    int years = 31;
    int start_year = 1355;
    double alpha = 0.52;
    double rho = 0.0;
    double sigma = 0.0;
    double ln_a0 = 0.0;
    double tfp_growth = 0.0;
    double k_growth = 2.21;
    double l_growth = 2.65;
    double capital0 = 100.0;
    double labor0 = 1000.0;
    std::string out;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tfpkit: production-function estimation and growth accounting for annual "
                 "sector panels"};
    app.require_subcommand(1);

    CommonOpts run_o, ingest_o, unitroot_o, estimate_o, diagnose_o, accounting_o;
    std::string diagnose_correlogram_out;
    SynthOpts synth_o;

    auto* run_cmd = app.add_subcommand("run", "full pipeline report");
    add_common(run_cmd, run_o, true);
    auto* ingest_cmd = app.add_subcommand("ingest", "validate + interpolate + echo the panel");
    add_common(ingest_cmd, ingest_o, false);
    auto* unitroot_cmd = app.add_subcommand("unitroot", "integration order of the per-capita logs");
    add_common(unitroot_cmd, unitroot_o, false);
    auto* estimate_cmd = app.add_subcommand("estimate", "production-function estimation");
    add_common(estimate_cmd, estimate_o, false);
    auto* diagnose_cmd = app.add_subcommand("diagnose", "residual diagnostics battery");
    add_common(diagnose_cmd, diagnose_o, false);
    diagnose_cmd->add_option("--correlogram-out", diagnose_correlogram_out,
                             "write the residual correlogram CSV here");
    auto* accounting_cmd = app.add_subcommand("accounting", "TFP series and decomposition");
    add_common(accounting_cmd, accounting_o, false);

    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic economy CSV");
    synth_cmd->add_option("--seed", synth_o.seed, "random seed");
    synth_cmd->add_option("--years", synth_o.years, "number of years");
    synth_cmd->add_option("--start-year", synth_o.start_year, "first year label");
    synth_cmd->add_option("--alpha", synth_o.alpha, "true capital elasticity");
    synth_cmd->add_option("--rho", synth_o.rho, "AR(1) coefficient of the disturbance");
    synth_cmd->add_option("--sigma", synth_o.sigma, "disturbance innovation sd");
    synth_cmd->add_option("--ln-a0", synth_o.ln_a0, "initial log technology level");
    synth_cmd->add_option("--tfp-growth", synth_o.tfp_growth, "constant TFP growth %/yr");
    synth_cmd->add_option("--k-growth", synth_o.k_growth, "constant capital growth %/yr");
    synth_cmd->add_option("--l-growth", synth_o.l_growth, "constant labor growth %/yr");
    synth_cmd->add_option("--capital0", synth_o.capital0, "initial capital level");
    synth_cmd->add_option("--labor0", synth_o.labor0, "initial labor level");
    synth_cmd->add_option("-o,--out", synth_o.out, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) {
            PipelineConfig cfg = build_config(run_o);
            PipelineReport rep = run_pipeline(cfg);
            emit_report(rep, cfg.format, cfg.output_path);
        } else if (ingest_cmd->parsed()) {
            PipelineConfig cfg = build_config(ingest_o);
            PanelDataset panel = read_panel_csv(cfg.input_path);
            if (cfg.interpolate)
                panel = interpolate_panel(panel, cfg.interpolation_method);
            else
                validate_panel(panel);
            if (ingest_o.out.empty()) {
                write_panel_csv(panel, std::cout);
            } else {
                write_panel_csv(panel, ingest_o.out);
            }
        } else if (unitroot_cmd->parsed()) {
            PipelineConfig cfg = build_config(unitroot_o);
            PanelDataset panel = read_panel_csv(cfg.input_path);
            if (cfg.interpolate) panel = interpolate_panel(panel, cfg.interpolation_method);
            auto [lq, lk] = per_capita_log_panel(panel);
            UnitRootSection sec;
            sec.available = true;
            sec.ln_q_per_l = classify_integration(lq.values, cfg.det_spec, cfg.significance,
                                                  cfg.adf_lags, cfg.pp_bandwidth);
            sec.ln_k_per_l = classify_integration(lk.values, cfg.det_spec, cfg.significance,
                                                  cfg.adf_lags, cfg.pp_bandwidth);
            write_text_out(render_unit_root_text(sec), unitroot_o.out);
        } else if (estimate_cmd->parsed()) {
            PipelineConfig cfg = build_config(estimate_o);
            PipelineReport rep = run_pipeline(cfg);
            write_text_out(render_estimation_text(rep.estimation), estimate_o.out);
        } else if (diagnose_cmd->parsed()) {
            PipelineConfig cfg = build_config(diagnose_o);
            PipelineReport rep = run_pipeline(cfg);
            std::string payload = render_estimation_text(rep.estimation) + "\n" +
                                  render_diagnostics_text(rep.diagnostics) + "\n" +
                                  render_cointegration_text(rep.cointegration);
            write_text_out(payload, diagnose_o.out);
            if (!diagnose_correlogram_out.empty()) {
                if (!rep.diagnostics.residual_correlogram)
                    throw NumericError("correlogram unavailable for this fit");
                std::ofstream f(diagnose_correlogram_out);
                if (!f)
                    throw ValidationError("cannot open output file '" + diagnose_correlogram_out +
                                          "'");
                write_correlogram_csv(*rep.diagnostics.residual_correlogram, f);
            }
        } else if (accounting_cmd->parsed()) {
            PipelineConfig cfg = build_config(accounting_o);
            PipelineReport rep = run_pipeline(cfg);
            std::string payload = render_tfp_text(rep.tfp) + "\n" +
                                  render_decomposition_text(rep.decomposition) + "\n" +
                                  render_warnings_text(rep.warnings);
            write_text_out(payload, accounting_o.out);
        } else if (synth_cmd->parsed()) {
            EconomySpec spec;
            spec.n_years = synth_o.years;
            spec.start_year = synth_o.start_year;
            spec.alpha_true = synth_o.alpha;
            spec.ln_A0 = synth_o.ln_a0;
            spec.tfp_growth_pct = {synth_o.tfp_growth};
            spec.capital_growth_pct = {synth_o.k_growth};
            spec.labor_growth_pct = {synth_o.l_growth};
            spec.capital0 = synth_o.capital0;
            spec.labor0 = synth_o.labor0;
            spec.rho = synth_o.rho;
            spec.sigma = synth_o.sigma;
            spec.seed = synth_o.seed;
            SyntheticEconomy eco = generate_economy(spec);
            if (synth_o.out.empty()) {
                write_panel_csv(eco.panel, std::cout);
            } else {
                write_panel_csv(eco.panel, synth_o.out);
            }
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
