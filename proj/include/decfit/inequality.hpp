// Gini coefficient from grouped means and the R^2-vs-Gini correlation.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <vector>

#include "decfit/types.hpp"

namespace decfit {

struct GiniResult {
    double value = 0.0;  // in [0, 1 - 1/n_groups]
    int n_groups = 0;
    SourceId source;
};

enum class Verdict { negative, positive, indeterminate };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::negative: return "negative";
        case Verdict::positive: return "positive";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "unknown";
}

struct CorrelationReport {
    std::vector<int> years;
    std::vector<double> r2_series;    // percent
    std::vector<double> gini_series;
    double pearson_r = 0.0;
    Verdict verdict = Verdict::indeterminate;
};

// Gini coefficient for groups of equal population share, sorted poorest
// first: (2 * sum(i * m_i)) / (n * sum(m_i)) - (n + 1) / n. Equivalent to
// one minus twice the area under the piecewise-linear Lorenz curve; it
// underestimates the continuous Gini, which is fine for trend analysis.
inline GiniResult gini_from_deciles(std::span<const double> means, SourceId source = {}) {
    const int n = int(means.size());
    if (n < 2)
        throw error(errc::precondition, "gini requires at least 2 groups");
    double total = 0.0, weighted = 0.0;
    for (int i = 0; i < n; ++i) {
        if (means[i] < 0.0)
            throw error(errc::precondition, "group means must be nonnegative");
        if (i > 0 && means[i] < means[i - 1])
            throw error(errc::precondition, "group means must be nondecreasing");
        total += means[i];
        weighted += double(i + 1) * means[i];
    }
    if (!(total > 0.0))
        throw error(errc::degenerate_total, "total of group means is zero");

    GiniResult out;
    out.value = 2.0 * weighted / (double(n) * total) - double(n + 1) / double(n);
    out.n_groups = n;
    out.source = std::move(source);
    return out;
}

inline double pearson_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 3)
        throw error(errc::precondition, "pearson correlation requires equal lengths >= 3");
    const double n = double(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (!(va > 0.0) || !(vb > 0.0))
        throw error(errc::degenerate_variance, "a constant series has no correlation");
    return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

struct YearlyValue {
    int year = 0;
    double value = 0.0;
};

// Aligns the two yearly series by inner join on year and correlates
// them. The sign verdict treats |r| <= 1e-12 as indeterminate.
inline CorrelationReport r2_gini_correlation(std::span<const YearlyValue> r2_by_year,
                                             std::span<const YearlyValue> gini_by_year) {
    std::map<int, double> gini;
    for (const auto& g : gini_by_year) {
        if (!gini.emplace(g.year, g.value).second)
            throw error(errc::precondition, "duplicate year in gini series");
    }
    std::map<int, std::pair<double, double>> joined;
    for (const auto& f : r2_by_year) {
        auto it = gini.find(f.year);
        if (it == gini.end()) continue;
        if (!joined.emplace(f.year, std::make_pair(f.value, it->second)).second)
            throw error(errc::precondition, "duplicate year in r2 series");
    }
    if (joined.size() < 3)
        throw error(errc::insufficient_overlap,
                    "need at least 3 overlapping years, have " + std::to_string(joined.size()));

    CorrelationReport report;
    for (const auto& [year, pair] : joined) {
        report.years.push_back(year);
        report.r2_series.push_back(pair.first);
        report.gini_series.push_back(pair.second);
    }
    report.pearson_r = pearson_correlation(report.r2_series, report.gini_series);
    if (report.pearson_r < -1e-12)
        report.verdict = Verdict::negative;
    else if (report.pearson_r > 1e-12)
        report.verdict = Verdict::positive;
    else
        report.verdict = Verdict::indeterminate;
    return report;
}

}  // namespace decfit
