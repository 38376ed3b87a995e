#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "tfpkit/errors.hpp"
#include "tfpkit/series.hpp"

namespace tfpkit {

/// How per-window average growth rates are formed.
enum class AveragingConvention {
    arithmetic_mean,  ///< mean of the annual rates (keeps the table additive)
    compound,         ///< CAGR between the window's endpoint levels
};

inline std::string to_string(AveragingConvention a) {
    return a == AveragingConvention::arithmetic_mean ? "arithmetic_mean" : "compound";
}

/// Annual TFP growth by the residual identity tfp_t = v_t - alpha k_t -
/// beta l_t on the chosen growth-rate convention, plus its sample mean.
struct TfpSeries {
    GrowthSeries growth;
    double mean = 0.0;
};

inline TfpSeries solow_residual_series(const PanelDataset& panel, double alpha, double beta,
                                       GrowthConvention convention) {
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw ValidationError("solow_residual_series: elasticities must be finite");
    validate_panel(panel);
    GrowthSeries v = growth_rates(panel.value_added, convention);
    GrowthSeries k = growth_rates(panel.capital, convention);
    GrowthSeries l = growth_rates(panel.labor, convention);

    TfpSeries out;
    out.growth.start_year = v.start_year;
    out.growth.convention = convention;
    out.growth.rates.resize(v.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.growth.rates[i] = v.rates[i] - alpha * k.rates[i] - beta * l.rates[i];
        sum += out.growth.rates[i];
    }
    out.mean = sum / static_cast<double>(v.size());
    return out;
}

struct PeriodWindow {
    int first_year = 0;
    int last_year = 0;
};

struct AverageGrowthRates {
    double value_added = 0.0;
    double capital = 0.0;
    double labor = 0.0;
};

/// One growth-accounting row: window-average growth rates, factor
/// contributions in percentage points (TFP defined residually, so the three
/// contributions add back to output growth), and shares in percent of output
/// growth (undefined when output growth is zero).
struct GrowthDecomposition {
    PeriodWindow period;
    double value_added_growth = 0.0;
    double capital_growth = 0.0;
    double labor_growth = 0.0;
    double capital_contribution = 0.0;
    double labor_contribution = 0.0;
    double tfp_contribution = 0.0;
    double capital_share = 0.0;
    double labor_share = 0.0;
    double tfp_share = 0.0;
    bool shares_defined = false;
    AveragingConvention averaging = AveragingConvention::arithmetic_mean;
    GrowthConvention convention = GrowthConvention::arithmetic;
};

/// Decompose output growth given window-average rates. alpha + beta = 1 is
/// enforced unless enforce_crs is cleared (explicit override for
/// unrestricted elasticities).
inline GrowthDecomposition decompose_period(const AverageGrowthRates& rates, double alpha,
                                            double beta, PeriodWindow period = {},
                                            bool enforce_crs = true) {
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw ValidationError("decompose_period: elasticities must be finite");
    if (enforce_crs && std::fabs(alpha + beta - 1.0) > 1e-9)
        throw ValidationError("decompose_period: alpha + beta = 1 required "
                              "(pass enforce_crs = false to override)");
    GrowthDecomposition d;
    d.period = period;
    d.value_added_growth = rates.value_added;
    d.capital_growth = rates.capital;
    d.labor_growth = rates.labor;
    d.capital_contribution = alpha * rates.capital;
    d.labor_contribution = beta * rates.labor;
    d.tfp_contribution = rates.value_added - d.capital_contribution - d.labor_contribution;
    if (rates.value_added != 0.0) {
        d.shares_defined = true;
        d.capital_share = 100.0 * d.capital_contribution / rates.value_added;
        d.labor_share = 100.0 * d.labor_contribution / rates.value_added;
        d.tfp_share = 100.0 - d.capital_share - d.labor_share;
    }
    return d;
}

namespace detail {

inline std::size_t year_index(const AnnualSeries& s, int year) {
    return static_cast<std::size_t>(year - s.start_year);
}

inline double window_average(const AnnualSeries& levels, const GrowthSeries& rates,
                             const PeriodWindow& w, AveragingConvention averaging) {
    if (averaging == AveragingConvention::arithmetic_mean) {
        std::size_t i0 = static_cast<std::size_t>(w.first_year - rates.start_year);
        std::size_t i1 = static_cast<std::size_t>(w.last_year - rates.start_year);
        double sum = 0.0;
        for (std::size_t i = i0; i <= i1; ++i) sum += rates.rates[i];
        return sum / static_cast<double>(i1 - i0 + 1);
    }
    AnnualSeries sub;
    sub.start_year = w.first_year - 1;
    std::size_t lo = year_index(levels, w.first_year - 1);
    std::size_t hi = year_index(levels, w.last_year);
    sub.values.assign(levels.values.begin() + static_cast<std::ptrdiff_t>(lo),
                      levels.values.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    return compound_annual_growth(sub);
}

}  // namespace detail

/// Validate a PeriodSpec against the sample: windows sorted, disjoint, and
/// inside [start + 1, end] of the level series (rates exist from start + 1).
inline void validate_periods(std::span<const PeriodWindow> periods, int first_rate_year,
                             int last_year) {
    int prev_end = first_rate_year - 1;
    for (const auto& w : periods) {
        if (w.first_year > w.last_year)
            throw ValidationError("periods: window " + std::to_string(w.first_year) + "-" +
                                  std::to_string(w.last_year) + " is reversed");
        if (w.first_year < first_rate_year || w.last_year > last_year)
            throw ValidationError("periods: window " + std::to_string(w.first_year) + "-" +
                                  std::to_string(w.last_year) + " outside sample range " +
                                  std::to_string(first_rate_year) + "-" + std::to_string(last_year));
        if (w.first_year <= prev_end)
            throw ValidationError("periods: windows must be sorted and non-overlapping");
        prev_end = w.last_year;
    }
}

/// One decomposition per window, on within-window average growth rates.
inline std::vector<GrowthDecomposition> subperiod_table(
    const PanelDataset& panel, double alpha, double beta, std::span<const PeriodWindow> periods,
    GrowthConvention convention = GrowthConvention::arithmetic,
    AveragingConvention averaging = AveragingConvention::arithmetic_mean,
    bool enforce_crs = true) {
    validate_panel(panel);
    GrowthSeries v = growth_rates(panel.value_added, convention);
    GrowthSeries k = growth_rates(panel.capital, convention);
    GrowthSeries l = growth_rates(panel.labor, convention);
    validate_periods(periods, v.start_year, panel.value_added.end_year());

    std::vector<GrowthDecomposition> out;
    out.reserve(periods.size());
    for (const auto& w : periods) {
        AverageGrowthRates rates;
        rates.value_added = detail::window_average(panel.value_added, v, w, averaging);
        rates.capital = detail::window_average(panel.capital, k, w, averaging);
        rates.labor = detail::window_average(panel.labor, l, w, averaging);
        GrowthDecomposition d = decompose_period(rates, alpha, beta, w, enforce_crs);
        d.averaging = averaging;
        d.convention = convention;
        out.push_back(d);
    }
    return out;
}

}  // namespace tfpkit
