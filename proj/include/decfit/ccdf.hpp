// Complementary cumulative distribution construction from decile means.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "decfit/ingest.hpp"
#include "decfit/types.hpp"

namespace decfit {

enum class FitSpace { linear, loglog };

inline const char* to_string(FitSpace s) {
    return s == FitSpace::linear ? "linear" : "loglog";
}

struct CcdfPoint {
    double x = 0.0;  // value threshold, currency units (log10 in loglog space)
    double p = 0.0;  // percent of population above x (log10 in loglog space)
};

struct CcdfSeries {
    std::vector<CcdfPoint> points;  // strictly increasing x, strictly decreasing p
    FitSpace space = FitSpace::linear;
    SourceId source;
};

// Builds the 11-point set (0, 100), (m1, 90), ..., (m9, 10), (m10, 0).
// Everyone has a value above zero, so the series is anchored at (0, 100).
// Tied abscissae would make the set fail to be a function; they are
// rejected rather than jittered.
inline CcdfSeries build_ccdf(const DecileRecord& record) {
    if (const auto violations = validate_record(record); !violations.empty()) {
        std::string msg = "record fails validation:";
        for (auto v : violations) msg += std::string(" ") + to_string(v);
        throw error(errc::precondition, msg);
    }

    CcdfSeries series;
    series.space = FitSpace::linear;
    series.source = record.source();
    series.points.reserve(11);
    series.points.push_back({0.0, 100.0});
    for (std::size_t i = 0; i < record.means.size(); ++i)
        series.points.push_back({record.means[i], 100.0 - 10.0 * double(i + 1)});

    for (std::size_t i = 1; i < series.points.size(); ++i) {
        if (!(series.points[i].x > series.points[i - 1].x))
            throw error(errc::degenerate_abscissa,
                        "tied decile means at position " + std::to_string(i));
    }
    return series;
}

namespace detail {

// Keeps only points with both coordinates strictly positive and maps
// them to (log10 x, log10 p).
inline std::vector<CcdfPoint> loglog_points(const std::vector<CcdfPoint>& points) {
    std::vector<CcdfPoint> out;
    out.reserve(points.size());
    for (const auto& pt : points) {
        if (pt.x > 0.0 && pt.p > 0.0)
            out.push_back({std::log10(pt.x), std::log10(pt.p)});
    }
    return out;
}

}  // namespace detail

// Log-log transform of a linear-space series. The anchor (x = 0) and the
// terminal point (p = 0) drop out; the canonical 11-point series keeps 9.
inline CcdfSeries log_transform(const CcdfSeries& series) {
    if (series.space != FitSpace::linear)
        throw error(errc::precondition, "log_transform requires a linear-space series");

    CcdfSeries out;
    out.space = FitSpace::loglog;
    out.source = series.source;
    out.points = detail::loglog_points(series.points);
    if (out.points.size() < 3)
        throw error(errc::insufficient_data,
                    "fewer than 3 points survive the log transform");
    return out;
}

}  // namespace decfit
