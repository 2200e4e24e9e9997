// Shared domain types and the library error taxonomy.
#pragma once

#include <stdexcept>
#include <string>

namespace decfit {

enum class Variable { income, expenditure };

inline const char* to_string(Variable v) {
    return v == Variable::income ? "income" : "expenditure";
}

inline bool parse_variable(const std::string& text, Variable& out) {
    if (text == "income") { out = Variable::income; return true; }
    if (text == "expenditure") { out = Variable::expenditure; return true; }
    return false;
}

// Identifies one observation: which country, which year, which variable.
struct SourceId {
    std::string country;
    int year = 0;
    Variable variable = Variable::income;

    friend bool operator==(const SourceId&, const SourceId&) = default;
};

enum class errc {
    io,
    parse,
    precondition,
    degenerate_abscissa,
    insufficient_data,
    singular_design,
    degenerate_variance,
    no_degrees_of_freedom,
    bracket,
    non_monotone,
    insufficient_overlap,
    degenerate_total,
    no_convergence,
};

inline const char* to_string(errc c) {
    switch (c) {
        case errc::io: return "io";
        case errc::parse: return "parse";
        case errc::precondition: return "precondition";
        case errc::degenerate_abscissa: return "degenerate_abscissa";
        case errc::insufficient_data: return "insufficient_data";
        case errc::singular_design: return "singular_design";
        case errc::degenerate_variance: return "degenerate_variance";
        case errc::no_degrees_of_freedom: return "no_degrees_of_freedom";
        case errc::bracket: return "bracket";
        case errc::non_monotone: return "non_monotone";
        case errc::insufficient_overlap: return "insufficient_overlap";
        case errc::degenerate_total: return "degenerate_total";
        case errc::no_convergence: return "no_convergence";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

// Stable CLI contract: 0 success, 2 input error, 3 insufficient data,
// 4 numerical failure.
inline int exit_code_for(errc c) {
    switch (c) {
        case errc::io:
        case errc::parse:
        case errc::precondition:
            return 2;
        case errc::insufficient_data:
        case errc::insufficient_overlap:
            return 3;
        default:
            return 4;
    }
}

}  // namespace decfit
