// Argument parsing for the decfit tool, kept separate so tests can run
// the full CLI in process.
#pragma once

#include <string>
#include <vector>

#include <CLI11.hpp>

#include "decfit/cli.hpp"

namespace decfit {

inline int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Fit polynomial complementary CDFs to decile-grouped "
                 "income or expenditure data"};
    app.require_subcommand(1);

    FitOptions fit;
    auto* fit_cmd = app.add_subcommand("fit", "Fit CCDF polynomials per record");
    fit_cmd->add_option("--input", fit.input, "dataset CSV")->required();
    fit_cmd->add_option("--output", fit.output, "fit report JSON")->required();
    fit_cmd->add_option("--degree", fit.degree, "auto, 1 or 2")
        ->check(CLI::IsMember({"auto", "1", "2"}))
        ->capture_default_str();
    fit_cmd->add_option("--r2-threshold", fit.r2_threshold, "acceptance threshold, percent")
        ->capture_default_str();
    fit_cmd->add_flag("--log-log", fit.loglog, "also fit in log-log space");
    fit_cmd->add_flag("--no-anchor", fit.no_anchor, "exclude the (0, 100) point");
    fit_cmd->add_option("--curve-samples", fit.curve_samples,
                        "CSV of observed points and 101 fitted samples");

    GiniOptions gini;
    auto* gini_cmd = app.add_subcommand("gini", "Gini coefficient per record");
    gini_cmd->add_option("--input", gini.input, "dataset CSV")->required();
    gini_cmd->add_option("--output", gini.output, "gini report JSON")->required();
    gini_cmd->add_option("--external-gini", gini.external_gini,
                         "country,year,gini CSV overriding computed values");

    CorrelateOptions corr;
    auto* corr_cmd = app.add_subcommand("correlate", "Correlate yearly R^2 against Gini");
    corr_cmd->add_option("--fit-report", corr.fit_report, "fit report JSON")->required();
    corr_cmd->add_option("--gini-report", corr.gini_report, "gini report JSON")->required();
    corr_cmd->add_option("--output", corr.output, "correlation report JSON")->required();

    SynthOptions synth;
    std::uint64_t seed_flag = 0;
    double sigma_flag = 0.0;
    auto* synth_cmd = app.add_subcommand("synth", "Synthesize a decile record from a model");
    synth_cmd->add_option("--input", synth.input, "synth spec JSON")->required();
    synth_cmd->add_option("--output", synth.output, "dataset CSV")->required();
    auto* seed_opt = synth_cmd->add_option("--seed", seed_flag, "override the spec seed");
    auto* sigma_opt =
        synth_cmd->add_option("--noise-sigma", sigma_flag, "override the spec noise sigma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (fit_cmd->parsed()) return cmd_fit(fit);
    if (gini_cmd->parsed()) return cmd_gini(gini);
    if (corr_cmd->parsed()) return cmd_correlate(corr);
    if (synth_cmd->parsed()) {
        if (*seed_opt) synth.seed = seed_flag;
        if (*sigma_opt) synth.noise_sigma = sigma_flag;
        return cmd_synth(synth);
    }
    return 2;
}

}  // namespace decfit
