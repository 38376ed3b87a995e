#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "tfpkit/errors.hpp"
#include "tfpkit/series.hpp"

namespace tfpkit {

/// splitmix64: the 64-bit mixing recurrence of Steele, Lea and Flood.
/// Chosen because the whole generator fits in a dozen lines, so fixtures are
/// reproducible bit-for-bit from the seed alone, in any language.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Standard normal deviates by the Marsaglia polar transform (uses only
/// sqrt/log, no trigonometry).
struct NormalSampler {
    SplitMix64 rng;
    bool has_spare = false;
    double spare = 0.0;

    explicit NormalSampler(std::uint64_t seed = 0) : rng(seed) {}

    double next() {
        if (has_spare) {
            has_spare = false;
            return spare;
        }
        double u, v, s;
        do {
            u = 2.0 * rng.next_uniform() - 1.0;
            v = 2.0 * rng.next_uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare = v * f;
        has_spare = true;
        return u * f;
    }
};

/// Blueprint of a synthetic constant-returns economy. Growth paths are
/// annual arithmetic percentages; a single-element path is broadcast to
/// every year, otherwise n_years - 1 entries are required.
struct EconomySpec {
    int n_years = 31;
    int start_year = 1355;
    double alpha_true = 0.52;
    double ln_A0 = 0.0;
    std::vector<double> tfp_growth_pct = {0.0};
    std::vector<double> capital_growth_pct = {2.21};
    std::vector<double> labor_growth_pct = {2.65};
    double capital0 = 100.0;
    double labor0 = 1000.0;
    double rho = 0.0;    ///< AR(1) coefficient of the log disturbance
    double sigma = 0.0;  ///< innovation standard deviation
    std::uint64_t seed = 0;
};

/// Everything latent behind a generated panel.
struct EconomyTruth {
    double alpha = 0.0;
    std::vector<double> ln_A;               ///< technology level path
    std::vector<double> disturbance;        ///< u_t
    std::vector<double> tfp_log_growth_pct; ///< 100 * d(ln A + u), realized TFP growth
    std::vector<double> tfp_path_log_growth_pct;  ///< 100 * d ln A, disturbance-free part
};

struct SyntheticEconomy {
    PanelDataset panel;
    EconomyTruth truth;
};

namespace detail {

inline std::vector<double> broadcast_path(const std::vector<double>& path, int periods,
                                          const char* name) {
    if (path.size() == 1) return std::vector<double>(periods, path[0]);
    if (static_cast<int>(path.size()) != periods)
        throw ValidationError(std::string("generate_economy: ") + name + " path must have 1 or " +
                              std::to_string(periods) + " entries");
    return path;
}

}  // namespace detail

/// Simulate Q_t = A_t K_t^alpha L_t^(1-alpha) exp(u_t) forward. K, L and A
/// evolve multiplicatively along their growth paths; u follows a stationary
/// AR(1) started from its stationary distribution. A fixed seed gives a
/// bit-identical economy.
inline SyntheticEconomy generate_economy(const EconomySpec& spec) {
    if (spec.n_years < 6) throw ValidationError("generate_economy: n_years must be >= 6");
    if (spec.sigma < 0.0) throw ValidationError("generate_economy: sigma must be >= 0");
    if (!(std::fabs(spec.rho) < 1.0)) throw ValidationError("generate_economy: |rho| must be < 1");
    if (spec.capital0 <= 0.0 || spec.labor0 <= 0.0)
        throw ValidationError("generate_economy: initial levels must be positive");

    const int periods = spec.n_years - 1;
    auto g_a = detail::broadcast_path(spec.tfp_growth_pct, periods, "tfp_growth");
    auto g_k = detail::broadcast_path(spec.capital_growth_pct, periods, "capital_growth");
    auto g_l = detail::broadcast_path(spec.labor_growth_pct, periods, "labor_growth");
    for (const auto* path : {&g_a, &g_k, &g_l})
        for (double g : *path)
            if (g <= -100.0)
                throw ValidationError("generate_economy: growth rate <= -100% collapses the series");

    NormalSampler normal(spec.seed);
    const double beta = 1.0 - spec.alpha_true;

    SyntheticEconomy out;
    out.truth.alpha = spec.alpha_true;
    out.truth.ln_A.resize(spec.n_years);
    out.truth.disturbance.resize(spec.n_years);

    std::vector<double> capital(spec.n_years), labor(spec.n_years), value(spec.n_years);
    out.truth.ln_A[0] = spec.ln_A0;
    capital[0] = spec.capital0;
    labor[0] = spec.labor0;
    for (int t = 1; t < spec.n_years; ++t) {
        out.truth.ln_A[t] = out.truth.ln_A[t - 1] + std::log1p(g_a[t - 1] / 100.0);
        capital[t] = capital[t - 1] * (1.0 + g_k[t - 1] / 100.0);
        labor[t] = labor[t - 1] * (1.0 + g_l[t - 1] / 100.0);
    }
    if (spec.sigma > 0.0) {
        out.truth.disturbance[0] =
            spec.sigma / std::sqrt(1.0 - spec.rho * spec.rho) * normal.next();
        for (int t = 1; t < spec.n_years; ++t)
            out.truth.disturbance[t] =
                spec.rho * out.truth.disturbance[t - 1] + spec.sigma * normal.next();
    }
    for (int t = 0; t < spec.n_years; ++t) {
        value[t] = std::exp(out.truth.ln_A[t] + spec.alpha_true * std::log(capital[t]) +
                            beta * std::log(labor[t]) + out.truth.disturbance[t]);
    }

    out.truth.tfp_log_growth_pct.resize(periods);
    out.truth.tfp_path_log_growth_pct.resize(periods);
    for (int t = 1; t < spec.n_years; ++t) {
        double da = out.truth.ln_A[t] - out.truth.ln_A[t - 1];
        double du = out.truth.disturbance[t] - out.truth.disturbance[t - 1];
        out.truth.tfp_path_log_growth_pct[t - 1] = 100.0 * da;
        out.truth.tfp_log_growth_pct[t - 1] = 100.0 * (da + du);
    }

    out.panel.value_added = AnnualSeries{spec.start_year, std::move(value)};
    out.panel.labor = AnnualSeries{spec.start_year, std::move(labor)};
    out.panel.capital = AnnualSeries{spec.start_year, std::move(capital)};
    validate_panel(out.panel);
    return out;
}

}  // namespace tfpkit
