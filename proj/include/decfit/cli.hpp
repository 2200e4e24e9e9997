// Command implementations behind the decfit CLI. Each command returns
// the process exit code: 0 success, 2 input error, 3 insufficient data,
// 4 numerical failure.
#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "decfit/ccdf.hpp"
#include "decfit/ingest.hpp"
#include "decfit/inequality.hpp"
#include "decfit/polyfit.hpp"
#include "decfit/report.hpp"
#include "decfit/synth.hpp"
#include "decfit/types.hpp"

namespace decfit {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error(errc::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw error(errc::io, "cannot write " + path);
    out << content;
    if (!out)
        throw error(errc::io, "write failed for " + path);
}

inline json error_entry(const error& e) {
    return json{{"code", to_string(e.code())}, {"message", e.what()}};
}

// First failure decides the exit code; records are processed in input order.
class ExitTracker {
public:
    void record(errc code) {
        if (!code_) code_ = code;
    }
    int exit_code() const { return code_ ? exit_code_for(*code_) : 0; }

private:
    std::optional<errc> code_;
};

}  // namespace detail

struct FitOptions {
    std::string input;
    std::string output;
    std::string curve_samples;   // optional CSV of observed points and model samples
    std::string degree = "auto"; // "auto", "1" or "2"
    double r2_threshold = 90.0;  // percent
    bool loglog = false;
    bool no_anchor = false;      // exclude the (0, 100) point from fits
};

inline int cmd_fit(const FitOptions& opt) {
    Dataset dataset;
    try {
        dataset = parse_dataset(detail::read_file(opt.input));
    } catch (const error& e) {
        std::fprintf(stderr, "decfit fit: %s\n", e.what());
        return exit_code_for(e.code());
    }

    detail::ExitTracker tracker;
    json records = json::array();
    std::string curves = "country,year,variable,space,kind,x,y\n";

    for (const auto& record : dataset.records) {
        json rec;
        rec["source"] = to_json(record.source(), record.currency);
        rec["anchor_included"] = !opt.no_anchor;
        json errors = json::array();
        try {
            const CcdfSeries series = build_ccdf(record);
            std::vector<double> xs, ys;
            for (std::size_t i = opt.no_anchor ? 1 : 0; i < series.points.size(); ++i) {
                xs.push_back(series.points[i].x);
                ys.push_back(series.points[i].p);
            }

            SelectionResult sel;
            if (opt.degree == "auto") {
                sel = select_degree(xs, ys, FitSpace::linear, opt.r2_threshold);
            } else {
                const int degree = opt.degree == "1" ? 1 : 2;
                sel.candidates.push_back(fit_ols(xs, ys, degree, FitSpace::linear));
                sel.chosen = sel.candidates.back();
                sel.threshold = opt.r2_threshold;
                sel.passed = sel.chosen.r_squared >= opt.r2_threshold;
            }
            rec["selection"] = to_json(sel);
            json fits;
            fits["linear"] = to_json(sel.chosen);

            if (opt.loglog) {
                try {
                    std::vector<CcdfPoint> pts;
                    for (std::size_t i = 0; i < xs.size(); ++i) pts.push_back({xs[i], ys[i]});
                    const auto ll = detail::loglog_points(pts);
                    std::vector<double> lx, ly;
                    for (const auto& pt : ll) {
                        lx.push_back(pt.x);
                        ly.push_back(pt.p);
                    }
                    fits["loglog"] =
                        to_json(fit_ols(lx, ly, sel.chosen.model.degree(), FitSpace::loglog));
                } catch (const error& e) {
                    errors.push_back(detail::error_entry(e));
                    tracker.record(e.code());
                }
            }
            rec["fits"] = std::move(fits);

            if (!opt.curve_samples.empty()) {
                char row[160];
                const auto emit = [&](const char* kind, double x, double y) {
                    std::snprintf(row, sizeof row, "%s,%d,%s,linear,%s,%s,%s\n",
                                  record.country.c_str(), record.year,
                                  to_string(record.variable), kind,
                                  detail::format_double(x).c_str(),
                                  detail::format_double(y).c_str());
                    curves += row;
                };
                for (std::size_t i = 0; i < xs.size(); ++i) emit("observed", xs[i], ys[i]);
                const double x_top = series.points.back().x;
                for (int k = 0; k <= 100; ++k) {
                    const double x = x_top * double(k) / 100.0;
                    emit("fitted", x, evaluate(sel.chosen.model, x));
                }
            }
        } catch (const error& e) {
            errors.push_back(detail::error_entry(e));
            tracker.record(e.code());
        }
        rec["errors"] = std::move(errors);
        records.push_back(std::move(rec));
    }

    json report{{"schema", kFitReportSchema}, {"records", std::move(records)}};
    try {
        detail::write_file(opt.output, report.dump(2) + "\n");
        if (!opt.curve_samples.empty()) detail::write_file(opt.curve_samples, curves);
    } catch (const error& e) {
        std::fprintf(stderr, "decfit fit: %s\n", e.what());
        return exit_code_for(e.code());
    }
    return tracker.exit_code();
}

struct GiniOptions {
    std::string input;
    std::string output;
    std::string external_gini;  // optional country,year,gini CSV
};

namespace detail {

inline std::map<std::pair<std::string, int>, double> parse_external_gini(
    const std::string& csv_text) {
    std::map<std::pair<std::string, int>, double> out;
    std::istringstream in{csv_text};
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        std::string_view view = strip_cr(line);
        if (row == 1) {
            if (view != "country,year,gini")
                throw error(errc::parse, "malformed external gini header, row 1");
            continue;
        }
        if (blank(view)) continue;
        const auto cells = split_row(view);
        if (cells.size() != 3)
            throw error(errc::parse, "wrong column count, row " + std::to_string(row));
        int year = 0;
        double gini = 0.0;
        if (!parse_int(cells[1], year))
            throw error(errc::parse, "non-numeric year, row " + std::to_string(row));
        if (!parse_number(cells[2], gini) || gini < 0.0 || gini > 1.0)
            throw error(errc::parse, "gini outside [0, 1], row " + std::to_string(row));
        out[{std::string(cells[0]), year}] = gini;
    }
    if (row == 0) throw error(errc::parse, "malformed external gini header, row 1");
    return out;
}

}  // namespace detail

inline int cmd_gini(const GiniOptions& opt) {
    Dataset dataset;
    std::map<std::pair<std::string, int>, double> external;
    const bool have_external = !opt.external_gini.empty();
    try {
        dataset = parse_dataset(detail::read_file(opt.input));
        if (have_external)
            external = detail::parse_external_gini(detail::read_file(opt.external_gini));
    } catch (const error& e) {
        std::fprintf(stderr, "decfit gini: %s\n", e.what());
        return exit_code_for(e.code());
    }

    detail::ExitTracker tracker;
    json records = json::array();
    for (const auto& record : dataset.records) {
        json rec;
        rec["source"] = to_json(record.source(), record.currency);
        json errors = json::array();
        const auto hit = external.find({record.country, record.year});
        if (hit != external.end()) {
            rec["gini"] = hit->second;
            rec["gini_source"] = "external";
        } else {
            if (have_external)
                std::fprintf(stderr,
                             "decfit gini: no external gini for %s %d, using computed value\n",
                             record.country.c_str(), record.year);
            try {
                const GiniResult g = gini_from_deciles(record.means, record.source());
                rec["gini"] = g.value;
                rec["gini_source"] = "computed";
                rec["n_groups"] = g.n_groups;
            } catch (const error& e) {
                errors.push_back(detail::error_entry(e));
                tracker.record(e.code());
            }
        }
        rec["errors"] = std::move(errors);
        records.push_back(std::move(rec));
    }

    json report{{"schema", kGiniReportSchema}, {"records", std::move(records)}};
    try {
        detail::write_file(opt.output, report.dump(2) + "\n");
    } catch (const error& e) {
        std::fprintf(stderr, "decfit gini: %s\n", e.what());
        return exit_code_for(e.code());
    }
    return tracker.exit_code();
}

struct CorrelateOptions {
    std::string fit_report;
    std::string gini_report;
    std::string output;
};

inline int cmd_correlate(const CorrelateOptions& opt) {
    using GroupKey = std::pair<std::string, std::string>;  // (country, variable)
    std::map<GroupKey, std::vector<YearlyValue>> fit_groups, gini_groups;
    try {
        const json fit_doc = json::parse(detail::read_file(opt.fit_report));
        if (fit_doc.value("schema", "") != kFitReportSchema)
            throw error(errc::parse, "not a fit report: " + opt.fit_report);
        for (const auto& rec : fit_doc.at("records")) {
            if (!rec.at("errors").empty() || !rec.contains("selection")) continue;
            const auto& src = rec.at("source");
            fit_groups[{src.at("country"), src.at("variable")}].push_back(
                {src.at("year").get<int>(),
                 rec.at("selection").at("r_squared_percent").get<double>()});
        }
        const json gini_doc = json::parse(detail::read_file(opt.gini_report));
        if (gini_doc.value("schema", "") != kGiniReportSchema)
            throw error(errc::parse, "not a gini report: " + opt.gini_report);
        for (const auto& rec : gini_doc.at("records")) {
            if (!rec.at("errors").empty() || !rec.contains("gini")) continue;
            const auto& src = rec.at("source");
            gini_groups[{src.at("country"), src.at("variable")}].push_back(
                {src.at("year").get<int>(), rec.at("gini").get<double>()});
        }
    } catch (const json::exception& e) {
        std::fprintf(stderr, "decfit correlate: bad report json: %s\n", e.what());
        return 2;
    } catch (const error& e) {
        std::fprintf(stderr, "decfit correlate: %s\n", e.what());
        return exit_code_for(e.code());
    }

    detail::ExitTracker tracker;
    json records = json::array();
    int attempted = 0;
    for (const auto& [key, fits] : fit_groups) {
        const auto match = gini_groups.find(key);
        if (match == gini_groups.end()) continue;
        ++attempted;
        json rec{{"country", key.first}, {"variable", key.second}};
        json errors = json::array();
        try {
            const CorrelationReport corr = r2_gini_correlation(fits, match->second);
            rec.update(to_json(corr));
        } catch (const error& e) {
            errors.push_back(detail::error_entry(e));
            tracker.record(e.code());
        }
        rec["errors"] = std::move(errors);
        records.push_back(std::move(rec));
    }
    if (attempted == 0) {
        std::fprintf(stderr, "decfit correlate: no (country, variable) series present in both reports\n");
        return 3;
    }

    json report{{"schema", kCorrelationReportSchema}, {"records", std::move(records)}};
    try {
        detail::write_file(opt.output, report.dump(2) + "\n");
    } catch (const error& e) {
        std::fprintf(stderr, "decfit correlate: %s\n", e.what());
        return exit_code_for(e.code());
    }
    return tracker.exit_code();
}

struct SynthOptions {
    std::string input;   // SynthSpec JSON
    std::string output;  // dataset CSV
    std::optional<std::uint64_t> seed;
    std::optional<double> noise_sigma;
};

inline int cmd_synth(const SynthOptions& opt) {
    try {
        json doc;
        try {
            doc = json::parse(detail::read_file(opt.input));
        } catch (const json::exception& e) {
            throw error(errc::parse, std::string{"bad synth spec json: "} + e.what());
        }
        SynthSpec spec = synth_spec_from_json(doc);
        if (opt.seed) spec.seed = *opt.seed;
        if (opt.noise_sigma) spec.noise_sigma = *opt.noise_sigma;

        Dataset dataset;
        dataset.records.push_back(synthesize_record(spec));
        detail::write_file(opt.output, serialize_dataset(dataset));
        return 0;
    } catch (const error& e) {
        std::fprintf(stderr, "decfit synth: %s\n", e.what());
        return exit_code_for(e.code());
    }
}

}  // namespace decfit
