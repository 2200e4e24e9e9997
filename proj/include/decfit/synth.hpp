// Synthetic decile records whose CCDF lies exactly on a given model,
// with optional Gaussian perturbation of the probability targets.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "decfit/ingest.hpp"
#include "decfit/polyfit.hpp"
#include "decfit/types.hpp"

namespace decfit {

struct SynthSpec {
    PolynomialModel model;     // must be strictly decreasing where inverted
    double noise_sigma = 0.0;  // percent, applied to ordinates
    std::uint64_t seed = 0;
    std::string country = "synthetic";
    int year = 0;
    Variable variable = Variable::income;
    std::string currency = "unit";
};

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

// Finds a bracket on which the model is strictly decreasing and spans
// the ordinate range [p_min, p_max]. Starts from x = 0 and expands
// outward; fails when the decreasing branch cannot reach a target.
inline Bracket find_decreasing_bracket(const PolynomialModel& model, double p_min,
                                       double p_max) {
    if (!(p_min <= p_max))
        throw error(errc::precondition, "p_min must not exceed p_max");
    const PolynomialModel density = implied_density(model);  // positive where decreasing
    const auto decreasing_at = [&](double x) { return evaluate(density, x) > 0.0; };

    if (!decreasing_at(0.0))
        throw error(errc::non_monotone, "model is not decreasing at x = 0");

    // A concave quadratic stops decreasing left of its vertex; cap the
    // leftward search there. Convex and linear models decrease from -inf.
    double left_limit = -std::numeric_limits<double>::infinity();
    if (model.degree() == 2 && model.coefficients[0] < 0.0) {
        const double vertex = -model.coefficients[1] / (2.0 * model.coefficients[0]);
        left_limit = vertex * (1.0 - 1e-12);  // vertex < 0 here, nudged rightward
    }

    Bracket b{0.0, 0.0};
    double step = 1.0;
    while (evaluate(model, b.lo) < p_max) {
        if (b.lo <= left_limit)
            throw error(errc::bracket,
                        "decreasing branch ends before reaching the upper target");
        b.lo = std::max(b.lo - step, left_limit);
        step *= 2.0;
        if (step > 1e300)
            throw error(errc::bracket, "upper target unreachable");
    }

    // A convex quadratic stops decreasing at its vertex; the branch can
    // only reach ordinates above its value there. Linear and concave
    // models decrease without bound to the right.
    if (model.degree() == 2 && model.coefficients[0] > 0.0) {
        const double vertex = -model.coefficients[1] / (2.0 * model.coefficients[0]);
        b.hi = vertex * (1.0 - 1e-12);
        if (evaluate(model, b.hi) > p_min)
            throw error(errc::bracket,
                        "decreasing branch ends before reaching the lower target");
    } else {
        step = 1.0;
        b.hi = b.lo + step;
        while (evaluate(model, b.hi) > p_min) {
            step *= 2.0;
            if (step > 1e300)
                throw error(errc::bracket, "lower target unreachable");
            b.hi = b.lo + step;
        }
    }
    return b;
}

namespace detail {

// Perturbed ordinate targets: Gaussian noise on each target, clamped
// into (0, 100]; the sequence must remain strictly decreasing or the
// record would not be a function of x.
inline std::vector<double> perturb_targets(const std::vector<double>& targets, double sigma,
                                           std::uint64_t seed) {
    if (sigma == 0.0) return targets;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    std::vector<double> out(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i)
        out[i] = std::clamp(targets[i] + noise(rng), 1e-6, 100.0);
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (!(out[i] < out[i - 1]))
            throw error(errc::non_monotone,
                        "noise destroyed the strict ordering of the probability targets");
    }
    return out;
}

}  // namespace detail

// Inverts the model at each ordinate target, in descending target order,
// so the abscissae come out increasing. Targets below the reachable
// minimum of the decreasing branch raise a bracket error.
inline std::vector<double> invert_targets(const PolynomialModel& model,
                                          const std::vector<double>& targets) {
    if (targets.empty()) return {};
    const double p_max = *std::max_element(targets.begin(), targets.end());
    const double p_min = *std::min_element(targets.begin(), targets.end());
    const Bracket b = find_decreasing_bracket(model, p_min, p_max);
    std::vector<double> xs(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i)
        xs[i] = invert_ccdf(model, targets[i], b.lo, b.hi);
    return xs;
}

// The decile means implied by the model: inversion at p = 90, 80, ..., 0.
// With sigma = 0 the output is a deterministic function of the model; the
// emitted record may still fail ingest validation when the model implies
// a negative lowest mean.
inline DecileRecord synthesize_record(const SynthSpec& spec) {
    if (spec.noise_sigma < 0.0)
        throw error(errc::precondition, "noise_sigma must be nonnegative");

    std::vector<double> targets(10);
    for (int i = 0; i < 10; ++i) targets[i] = 90.0 - 10.0 * i;
    targets = detail::perturb_targets(targets, spec.noise_sigma, spec.seed);

    const std::vector<double> xs = invert_targets(spec.model, targets);

    DecileRecord record;
    record.country = spec.country;
    record.year = spec.year;
    record.variable = spec.variable;
    record.currency = spec.currency;
    std::copy(xs.begin(), xs.end(), record.means.begin());
    return record;
}

}  // namespace decfit
