// Test fixtures: the shipped catalog of published fits and the exact
// point sets synthesized from its models.
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "decfit/polyfit.hpp"
#include "decfit/synth.hpp"
#include "oracles.hpp"

namespace fixtures {

inline std::string source_dir() { return DECFIT_SOURCE_DIR; }

struct CatalogRow {
    std::string country;
    std::string variable;
    int year = 0;
    int degree = 1;
    std::vector<double> coefficients;  // highest power first
    double r2_percent = 0.0;
    std::string suspect;  // empty when the row is trusted

    decfit::PolynomialModel model() const { return {coefficients}; }
};

inline std::vector<CatalogRow> load_catalog() {
    const std::string path = source_dir() + "/data/fit_catalog.csv";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing " + path);
    std::vector<CatalogRow> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        CatalogRow row;
        std::getline(ss, row.country, ',');
        std::getline(ss, row.variable, ',');
        std::getline(ss, cell, ',');
        row.year = std::stoi(cell);
        std::getline(ss, cell, ',');
        row.degree = std::stoi(cell);
        for (int i = 0; i < 3; ++i) {
            std::getline(ss, cell, ',');
            if (!cell.empty()) row.coefficients.push_back(std::stod(cell));
        }
        std::getline(ss, cell, ',');
        row.r2_percent = std::stod(cell);
        std::getline(ss, row.suspect, ',');
        if (int(row.coefficients.size()) != row.degree + 1)
            throw std::runtime_error("catalog row has wrong coefficient count");
        rows.push_back(std::move(row));
    }
    return rows;
}

inline decfit::PolynomialModel figure_quadratic() {
    return {{9.289e-11, -0.0001862, 90.89}};  // Philippine 1997 income
}

inline decfit::PolynomialModel figure_linear() {
    return {{-0.0002116, 87.89}};  // Uganda 2006 expenditure
}

// Ordinate targets 100, 90, ..., 0 restricted to what the decreasing
// branch can reach; convex quadratics may stop short of 0 and concave
// ones short of 100. The margin keeps discriminants safely positive.
inline std::vector<double> reachable_targets(const decfit::PolynomialModel& model) {
    const double floor = oracle::branch_minimum(model.coefficients) + 1e-6;
    const double ceiling = oracle::branch_maximum(model.coefficients) - 1e-6;
    std::vector<double> targets;
    for (double p = 100.0; p >= -0.5; p -= 10.0)
        if (p >= floor && p <= ceiling) targets.push_back(p);
    return targets;
}

struct CurvePoints {
    std::vector<double> x;
    std::vector<double> p;
};

// Exact points on the model curve at the reachable canonical targets,
// synthesized through the library's bisection inverter.
inline CurvePoints synthesize_curve(const decfit::PolynomialModel& model) {
    const auto targets = reachable_targets(model);
    const auto xs = decfit::invert_targets(model, targets);
    return {xs, targets};
}

}  // namespace fixtures
