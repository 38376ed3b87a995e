#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tfpkit/diagnostics.hpp"
#include "tfpkit/errors.hpp"
#include "tfpkit/series.hpp"

// Panel CSV contract: UTF-8, comma-separated, mandatory header
// `year,value_added,labor,capital`, rows in ascending consecutive year
// order. An empty labor field marks a missing observation; value_added and
// capital must always be present.

namespace tfpkit {
namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

inline double parse_double(const std::string& raw, int line_no, const char* field) {
    std::string s = trim(raw);
    if (s.empty())
        throw ValidationError("csv line " + std::to_string(line_no) + ": empty " + field +
                              " field");
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ValidationError("csv line " + std::to_string(line_no) + ": cannot parse " + field +
                              " value '" + s + "'");
    }
    if (pos != s.size())
        throw ValidationError("csv line " + std::to_string(line_no) + ": trailing characters in " +
                              field + " value '" + s + "'");
    return v;
}

inline int parse_year(const std::string& raw, int line_no) {
    std::string s = trim(raw);
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw ValidationError("csv line " + std::to_string(line_no) + ": cannot parse year '" + s +
                              "'");
    }
    if (pos != s.size())
        throw ValidationError("csv line " + std::to_string(line_no) + ": bad year '" + s + "'");
    return static_cast<int>(v);
}

}  // namespace detail

inline PanelDataset read_panel_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("csv: empty input");
    // Strip a UTF-8 byte-order mark if present.
    if (line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' && line[2] == '\xBF')
        line.erase(0, 3);
    auto header = detail::split_csv_line(line);
    const char* expected[4] = {"year", "value_added", "labor", "capital"};
    if (header.size() != 4)
        throw ValidationError("csv: header must be 'year,value_added,labor,capital'");
    for (int i = 0; i < 4; ++i)
        if (detail::trim(header[i]) != expected[i])
            throw ValidationError("csv: header must be 'year,value_added,labor,capital' (got '" +
                                  detail::trim(header[i]) + "' in column " + std::to_string(i + 1) +
                                  ")");

    PanelDataset panel;
    bool first = true;
    int prev_year = 0;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() != 4)
            throw ValidationError("csv line " + std::to_string(line_no) + ": expected 4 fields, got " +
                                  std::to_string(fields.size()));
        int year = detail::parse_year(fields[0], line_no);
        if (first) {
            panel.value_added.start_year = year;
            panel.labor.start_year = year;
            panel.capital.start_year = year;
            first = false;
        } else if (year != prev_year + 1) {
            throw ValidationError("csv line " + std::to_string(line_no) +
                                  ": years must be consecutive and ascending (got " +
                                  std::to_string(year) + " after " + std::to_string(prev_year) +
                                  ")");
        }
        prev_year = year;
        panel.value_added.values.push_back(detail::parse_double(fields[1], line_no, "value_added"));
        std::string labor = detail::trim(fields[2]);
        panel.labor.values.push_back(labor.empty()
                                         ? missing_value()
                                         : detail::parse_double(fields[2], line_no, "labor"));
        panel.capital.values.push_back(detail::parse_double(fields[3], line_no, "capital"));
    }
    if (panel.value_added.values.empty()) throw ValidationError("csv: no data rows");
    return panel;
}

inline PanelDataset read_panel_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file '" + path + "'");
    return read_panel_csv(in);
}

inline void write_panel_csv(const PanelDataset& panel, std::ostream& out) {
    out << "year,value_added,labor,capital\n";
    char buf[64];
    for (std::size_t i = 0; i < panel.value_added.size(); ++i) {
        out << panel.value_added.year_at(i) << ',';
        std::snprintf(buf, sizeof buf, "%.17g", panel.value_added.values[i]);
        out << buf << ',';
        if (!is_missing(panel.labor.values[i])) {
            std::snprintf(buf, sizeof buf, "%.17g", panel.labor.values[i]);
            out << buf;
        }
        out << ',';
        std::snprintf(buf, sizeof buf, "%.17g", panel.capital.values[i]);
        out << buf << '\n';
    }
}

inline void write_panel_csv(const PanelDataset& panel, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file '" + path + "'");
    write_panel_csv(panel, out);
}

/// Correlogram export for external plotting: lag,acf,pacf,band.
inline void write_correlogram_csv(const Correlogram& c, std::ostream& out) {
    out << "lag,acf,pacf,band\n";
    char buf[128];
    for (std::size_t k = 0; k < c.acf.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f,%.6f\n", k, c.acf[k], c.pacf[k], c.band);
        out << buf;
    }
}

}  // namespace tfpkit
