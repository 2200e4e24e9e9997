// JSON report assembly. Field names are the wire contract; the schema
// files under schema/ document them.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "decfit/inequality.hpp"
#include "decfit/polyfit.hpp"
#include "decfit/synth.hpp"
#include "decfit/types.hpp"

namespace decfit {

using json = nlohmann::json;

inline constexpr const char* kFitReportSchema = "decfit.fit_report.v1";
inline constexpr const char* kGiniReportSchema = "decfit.gini_report.v1";
inline constexpr const char* kCorrelationReportSchema = "decfit.correlation_report.v1";

inline json to_json(const SourceId& source, const std::string& currency) {
    return json{{"country", source.country},
                {"year", source.year},
                {"variable", to_string(source.variable)},
                {"currency", currency}};
}

inline json to_json(const FitResult& fit) {
    json intervals = json::array();
    for (const auto& [lo, hi] : fit.ci) intervals.push_back(json::array({lo, hi}));
    return json{{"space", to_string(fit.space)},
                {"degree", fit.model.degree()},
                {"coefficients", fit.model.coefficients},
                {"r_squared_percent", fit.r_squared},
                {"confidence_level", 0.95},
                {"confidence_intervals", intervals},
                {"standard_errors", fit.standard_errors},
                {"residuals", fit.residuals},
                {"n_points", fit.n_points}};
}

inline json to_json(const SelectionResult& sel) {
    json candidates = json::array();
    for (const auto& c : sel.candidates)
        candidates.push_back(json{{"degree", c.model.degree()},
                                  {"r_squared_percent", c.r_squared}});
    json intervals = json::array();
    for (const auto& [lo, hi] : sel.chosen.ci) intervals.push_back(json::array({lo, hi}));
    return json{{"degree", sel.chosen.model.degree()},
                {"coefficients", sel.chosen.model.coefficients},
                {"r_squared_percent", sel.chosen.r_squared},
                {"confidence_intervals", intervals},
                {"threshold_percent", sel.threshold},
                {"passed", sel.passed},
                {"candidates", candidates}};
}

inline json to_json(const CorrelationReport& report) {
    return json{{"years", report.years},
                {"r2_percent", report.r2_series},
                {"gini", report.gini_series},
                {"pearson_r", report.pearson_r},
                {"verdict", to_string(report.verdict)}};
}

// SynthSpec input document.
inline SynthSpec synth_spec_from_json(const json& doc) {
    SynthSpec spec;
    try {
        const auto& model = doc.at("model");
        spec.model.coefficients = model.at("coefficients").get<std::vector<double>>();
        const int degree = model.at("degree").get<int>();
        if (degree != spec.model.degree())
            throw error(errc::parse, "degree does not match the coefficient count");
        if (degree < 1 || degree > 2)
            throw error(errc::parse, "synth model degree must be 1 or 2");
        spec.noise_sigma = doc.value("noise_sigma", 0.0);
        spec.seed = doc.value("seed", std::uint64_t{0});
        spec.country = doc.value("country", std::string{"synthetic"});
        spec.year = doc.value("year", 0);
        std::string variable = doc.value("variable", std::string{"income"});
        if (!parse_variable(variable, spec.variable))
            throw error(errc::parse, "unknown variable in synth spec");
        spec.currency = doc.value("currency", std::string{"unit"});
    } catch (const json::exception& e) {
        throw error(errc::parse, std::string{"bad synth spec: "} + e.what());
    }
    return spec;
}

inline json to_json(const SynthSpec& spec) {
    return json{{"model", {{"degree", spec.model.degree()},
                           {"coefficients", spec.model.coefficients}}},
                {"noise_sigma", spec.noise_sigma},
                {"seed", spec.seed},
                {"country", spec.country},
                {"year", spec.year},
                {"variable", to_string(spec.variable)},
                {"currency", spec.currency}};
}

}  // namespace decfit
