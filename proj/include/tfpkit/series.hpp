#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "tfpkit/errors.hpp"

namespace tfpkit {

/// Sentinel for a missing observation inside an AnnualSeries.
inline double missing_value() { return std::numeric_limits<double>::quiet_NaN(); }

inline bool is_missing(double x) { return std::isnan(x); }

/// Year-indexed annual time series. Years are consecutive integer labels
/// starting at start_year; their calendar is opaque to the library.
/// A NaN entry marks a missing observation (allowed only before
/// interpolation, and only for series that permit gaps).
struct AnnualSeries {
    int start_year = 0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    int year_at(std::size_t i) const { return start_year + static_cast<int>(i); }
    int end_year() const { return start_year + static_cast<int>(values.size()) - 1; }

    bool has_missing() const {
        for (double v : values)
            if (is_missing(v)) return true;
        return false;
    }
};

/// Aligned output/labor/capital panel; the pipeline's input. value_added and
/// capital are constant-price monetary levels, labor a head count.
struct PanelDataset {
    AnnualSeries value_added;
    AnnualSeries labor;
    AnnualSeries capital;
};

enum class GrowthConvention {
    arithmetic,   ///< 100 * (x_t / x_{t-1} - 1)
    logarithmic,  ///< 100 * ln(x_t / x_{t-1})
};

inline std::string to_string(GrowthConvention c) {
    return c == GrowthConvention::arithmetic ? "arithmetic" : "logarithmic";
}

/// Per-year growth rates in percent. start_year is the first year with a
/// defined rate (base year + 1), so size() is one less than the level series.
struct GrowthSeries {
    int start_year = 0;
    std::vector<double> rates;
    GrowthConvention convention = GrowthConvention::arithmetic;

    std::size_t size() const { return rates.size(); }
    int year_at(std::size_t i) const { return start_year + static_cast<int>(i); }
};

enum class InterpolationMethod {
    geometric,  ///< constant growth rate across the gap (default for level data)
    linear,     ///< straight line, for sensitivity checks
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Year-over-year growth rates in percent under the chosen convention.
/// Requires at least two entries, no gaps, strictly positive values.
inline GrowthSeries growth_rates(const AnnualSeries& series, GrowthConvention convention) {
    if (series.size() < 2)
        throw ValidationError("growth_rates: need at least two observations");
    for (std::size_t i = 0; i < series.size(); ++i) {
        double v = series.values[i];
        if (is_missing(v))
            throw ValidationError("growth_rates: missing value at year " +
                                  std::to_string(series.year_at(i)));
        if (v <= 0.0)
            throw DomainError("growth_rates: nonpositive value at year " +
                              std::to_string(series.year_at(i)));
    }
    GrowthSeries out;
    out.start_year = series.start_year + 1;
    out.convention = convention;
    out.rates.reserve(series.size() - 1);
    for (std::size_t i = 1; i < series.size(); ++i) {
        double ratio = series.values[i] / series.values[i - 1];
        if (convention == GrowthConvention::arithmetic)
            out.rates.push_back(100.0 * (ratio - 1.0));
        else
            out.rates.push_back(100.0 * std::log(ratio));
    }
    return out;
}

/// Compound annual growth rate in percent over the whole sample:
/// 100 * ((x_T / x_0)^(1/T) - 1) with T the number of year intervals.
inline double compound_annual_growth(const AnnualSeries& series) {
    if (series.size() < 2)
        throw ValidationError("compound_annual_growth: need at least two observations");
    double first = series.values.front();
    double last = series.values.back();
    if (is_missing(first) || is_missing(last))
        throw ValidationError("compound_annual_growth: endpoint is missing");
    if (first <= 0.0 || last <= 0.0)
        throw DomainError("compound_annual_growth: endpoints must be positive");
    double intervals = static_cast<double>(series.size() - 1);
    return 100.0 * (std::pow(last / first, 1.0 / intervals) - 1.0);
}

/// Fill gaps between benchmark (non-missing) observations. Interior gaps are
/// interpolated between the nearest flanking benchmarks; leading/trailing
/// gaps are extrapolated at the growth rate (or slope, for linear) of the
/// nearest benchmark pair. Benchmarks pass through unchanged, so the
/// operation is idempotent. A series with no gaps is returned as-is.
inline AnnualSeries interpolate_gaps(const AnnualSeries& series,
                                     InterpolationMethod method = InterpolationMethod::geometric) {
    if (series.values.empty())
        throw ValidationError("interpolate_gaps: empty series");
    if (!series.has_missing()) return series;

    std::vector<std::size_t> bench;
    for (std::size_t i = 0; i < series.size(); ++i)
        if (!is_missing(series.values[i])) bench.push_back(i);
    if (bench.size() < 2)
        throw ValidationError("interpolate_gaps: need at least two benchmark observations");
    if (method == InterpolationMethod::geometric) {
        for (std::size_t i : bench)
            if (series.values[i] <= 0.0)
                throw DomainError("interpolate_gaps: geometric interpolation requires positive "
                                  "benchmarks (year " + std::to_string(series.year_at(i)) + ")");
    }

    AnnualSeries out = series;
    auto fill = [&](std::size_t i, std::size_t lo, std::size_t hi) {
        // Position i filled from the benchmark pair (lo, hi); i may lie
        // outside [lo, hi] for leading/trailing extrapolation.
        double a = series.values[lo];
        double b = series.values[hi];
        double span = static_cast<double>(hi - lo);
        double offs = static_cast<double>(i) - static_cast<double>(lo);
        if (method == InterpolationMethod::geometric)
            out.values[i] = a * std::pow(b / a, offs / span);
        else
            out.values[i] = a + (b - a) * offs / span;
    };

    for (std::size_t i = 0; i < bench.front(); ++i) fill(i, bench[0], bench[1]);
    for (std::size_t j = 0; j + 1 < bench.size(); ++j)
        for (std::size_t i = bench[j] + 1; i < bench[j + 1]; ++i) fill(i, bench[j], bench[j + 1]);
    for (std::size_t i = bench.back() + 1; i < series.size(); ++i)
        fill(i, bench[bench.size() - 2], bench.back());
    return out;
}

/// Panel validation. Gaps are permitted only in the labor series and only
/// when allow_labor_gaps is set (pre-interpolation state); everything else
/// must be complete and strictly positive.
inline void validate_panel(const PanelDataset& panel, bool allow_labor_gaps = false) {
    const AnnualSeries* all[3] = {&panel.value_added, &panel.labor, &panel.capital};
    const char* names[3] = {"value_added", "labor", "capital"};
    if (panel.value_added.values.empty())
        throw ValidationError("panel: empty value_added series");
    for (int s = 0; s < 3; ++s) {
        if (all[s]->start_year != panel.value_added.start_year ||
            all[s]->size() != panel.value_added.size())
            throw ValidationError(std::string("panel: ") + names[s] +
                                  " does not cover the same year range as value_added");
    }
    for (int s = 0; s < 3; ++s) {
        for (std::size_t i = 0; i < all[s]->size(); ++i) {
            double v = all[s]->values[i];
            if (is_missing(v)) {
                if (s == 1 && allow_labor_gaps) continue;
                throw ValidationError(std::string("panel: missing ") + names[s] + " at year " +
                                      std::to_string(all[s]->year_at(i)));
            }
            if (v <= 0.0)
                throw DomainError(std::string("panel: nonpositive ") + names[s] + " at year " +
                                  std::to_string(all[s]->year_at(i)));
        }
    }
}

/// Fill labor gaps (the only series allowed to have them) and return the
/// completed panel.
inline PanelDataset interpolate_panel(const PanelDataset& panel,
                                      InterpolationMethod method = InterpolationMethod::geometric) {
    validate_panel(panel, /*allow_labor_gaps=*/true);
    PanelDataset out = panel;
    out.labor = interpolate_gaps(panel.labor, method);
    validate_panel(out, /*allow_labor_gaps=*/false);
    return out;
}

/// Per-capita log transform: ln(Q/L) and ln(K/L), same year range.
inline std::pair<AnnualSeries, AnnualSeries> per_capita_log_panel(const PanelDataset& panel) {
    validate_panel(panel, /*allow_labor_gaps=*/false);
    AnnualSeries ln_q_per_l{panel.value_added.start_year, {}};
    AnnualSeries ln_k_per_l{panel.value_added.start_year, {}};
    ln_q_per_l.values.reserve(panel.value_added.size());
    ln_k_per_l.values.reserve(panel.value_added.size());
    for (std::size_t i = 0; i < panel.value_added.size(); ++i) {
        double q = panel.value_added.values[i];
        double l = panel.labor.values[i];
        double k = panel.capital.values[i];
        ln_q_per_l.values.push_back(std::log(q / l));
        ln_k_per_l.values.push_back(std::log(k / l));
    }
    return {std::move(ln_q_per_l), std::move(ln_k_per_l)};
}

}  // namespace tfpkit
