// CSV ingestion of decile-grouped income/expenditure datasets.
#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "decfit/types.hpp"

namespace decfit {

// One country/year/variable observation: mean value per decile, poorest
// decile first, in the record's own currency units.
struct DecileRecord {
    std::string country;
    int year = 0;
    Variable variable = Variable::income;
    std::string currency;
    std::array<double, 10> means{};

    SourceId source() const { return {country, year, variable}; }

    friend bool operator==(const DecileRecord&, const DecileRecord&) = default;
};

struct Dataset {
    std::vector<DecileRecord> records;
    std::string source_note;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

enum class violation {
    non_monotone,    // means must be nondecreasing from decile 1 to 10
    negative_mean,   // all means must be >= 0
    zero_top_decile, // decile 10 mean must be > 0
};

inline const char* to_string(violation v) {
    switch (v) {
        case violation::non_monotone: return "non_monotone";
        case violation::negative_mean: return "negative_mean";
        case violation::zero_top_decile: return "zero_top_decile";
    }
    return "unknown";
}

inline std::vector<violation> validate_record(const DecileRecord& record) {
    std::vector<violation> out;
    bool monotone = true, nonnegative = true;
    for (std::size_t i = 0; i < record.means.size(); ++i) {
        if (record.means[i] < 0.0) nonnegative = false;
        if (i > 0 && record.means[i] < record.means[i - 1]) monotone = false;
    }
    if (!monotone) out.push_back(violation::non_monotone);
    if (!nonnegative) out.push_back(violation::negative_mean);
    if (!(record.means.back() > 0.0)) out.push_back(violation::zero_top_decile);
    return out;
}

inline constexpr std::string_view kDatasetHeader =
    "country,year,variable,currency,d1,d2,d3,d4,d5,d6,d7,d8,d9,d10";

namespace detail {

inline std::vector<std::string_view> split_row(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

// Full-consume numeric parse. Scientific notation is accepted; anything
// else (including locale decimal commas, which also break the column
// count) is rejected.
inline bool parse_number(std::string_view cell, double& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

inline bool parse_int(std::string_view cell, int& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

inline std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

inline bool blank(std::string_view line) {
    return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace detail

// Parses the dataset CSV. The first row must equal kDatasetHeader exactly.
// Every returned record passes validate_record; any defect is reported
// with its 1-based row number (the header is row 1).
inline Dataset parse_dataset(std::string_view csv_text) {
    Dataset dataset;
    std::set<std::tuple<std::string, int, Variable>> seen;

    std::size_t offset = 0;
    int row = 0;
    bool header_seen = false;
    while (offset <= csv_text.size()) {
        const std::size_t nl = csv_text.find('\n', offset);
        std::string_view line = csv_text.substr(
            offset, nl == std::string_view::npos ? std::string_view::npos : nl - offset);
        offset = nl == std::string_view::npos ? csv_text.size() + 1 : nl + 1;
        line = detail::strip_cr(line);
        ++row;

        if (!header_seen) {
            if (line != kDatasetHeader)
                throw error(errc::parse, "malformed header, row 1");
            header_seen = true;
            continue;
        }
        if (detail::blank(line)) continue;

        const auto cells = detail::split_row(line);
        if (cells.size() != 14)
            throw error(errc::parse, "wrong column count, row " + std::to_string(row));

        DecileRecord record;
        record.country = std::string(cells[0]);
        if (!detail::parse_int(cells[1], record.year))
            throw error(errc::parse, "non-numeric year, row " + std::to_string(row));
        if (!parse_variable(std::string(cells[2]), record.variable))
            throw error(errc::parse, "unknown variable, row " + std::to_string(row));
        record.currency = std::string(cells[3]);
        for (int i = 0; i < 10; ++i) {
            if (!detail::parse_number(cells[4 + i], record.means[i]))
                throw error(errc::parse, "non-numeric decile cell d" + std::to_string(i + 1) +
                                             ", row " + std::to_string(row));
        }

        if (const auto violations = validate_record(record); !violations.empty()) {
            std::string msg = "invalid record, row " + std::to_string(row) + ":";
            for (auto v : violations) msg += std::string(" ") + to_string(v);
            throw error(errc::parse, msg);
        }
        if (!seen.insert({record.country, record.year, record.variable}).second)
            throw error(errc::parse,
                        "duplicate (country, year, variable), row " + std::to_string(row));
        dataset.records.push_back(std::move(record));
    }
    if (!header_seen) throw error(errc::parse, "malformed header, row 1");
    return dataset;
}

namespace detail {

// Shortest exact decimal form; %.17g guarantees parse round-trip.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    double back = 0.0;
    if (parse_number(buf, back) && back == v) {
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[40];
            std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
            if (parse_number(shorter, back) && back == v) return shorter;
        }
    }
    return buf;
}

}  // namespace detail

inline std::string serialize_dataset(const Dataset& dataset) {
    std::string out(kDatasetHeader);
    out += '\n';
    for (const auto& r : dataset.records) {
        out += r.country;
        out += ',';
        out += std::to_string(r.year);
        out += ',';
        out += to_string(r.variable);
        out += ',';
        out += r.currency;
        for (double m : r.means) {
            out += ',';
            out += detail::format_double(m);
        }
        out += '\n';
    }
    return out;
}

}  // namespace decfit
