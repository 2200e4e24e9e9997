// Student-t quantiles via regularized incomplete beta inversion.
#pragma once

#include <cmath>
#include <limits>

#include "decfit/types.hpp"

namespace decfit {

namespace detail {

// Continued fraction for the regularized incomplete beta, modified
// Lentz iteration. Valid for x < (a+1)/(a+b+2); callers use the
// symmetry relation otherwise.
inline double beta_continued_fraction(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;

    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;

    for (int m = 1; m <= 300; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw error(errc::no_convergence, "incomplete beta continued fraction did not converge");
}

}  // namespace detail

// Regularized incomplete beta function I_x(a, b) for a, b > 0 and x in [0, 1].
inline double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw error(errc::precondition, "incomplete beta requires positive shape parameters");
    if (!(x >= 0.0 && x <= 1.0))
        throw error(errc::precondition, "incomplete beta requires x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * detail::beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

// Inverse of I_x(a, b) in x for target q in [0, 1]. Bisection with a
// Newton refinement; monotone in x, so the bracket never fails.
inline double inverse_incomplete_beta(double a, double b, double q) {
    if (!(q >= 0.0 && q <= 1.0))
        throw error(errc::precondition, "inverse incomplete beta requires q in [0, 1]");
    if (q == 0.0) return 0.0;
    if (q == 1.0) return 1.0;

    double lo = 0.0, hi = 1.0;
    double x = 0.5;
    for (int i = 0; i < 200; ++i) {
        const double f = regularized_incomplete_beta(a, b, x) - q;
        if (f > 0.0) hi = x; else lo = x;

        // Newton step using the beta density; fall back to bisection
        // whenever it leaves the bracket.
        const double ln_pdf = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                              (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x);
        const double pdf = std::exp(ln_pdf);
        double next = (pdf > 0.0 && std::isfinite(pdf)) ? x - f / pdf : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);

        if (std::fabs(next - x) <= 1e-15 * std::max(1.0, std::fabs(x))) return next;
        x = next;
    }
    return x;
}

// Quantile of Student's t distribution with df degrees of freedom at
// probability prob in (0, 1).
inline double t_quantile(double prob, int df) {
    if (df < 1)
        throw error(errc::precondition, "t quantile requires df >= 1");
    if (!(prob > 0.0 && prob < 1.0))
        throw error(errc::precondition, "t quantile requires prob in (0, 1)");
    if (prob == 0.5) return 0.0;
    if (prob < 0.5) return -t_quantile(1.0 - prob, df);

    // For t >= 0: P(T <= t) = 1 - I_x(df/2, 1/2) / 2 with x = df / (df + t^2).
    const double tail2 = 2.0 * (1.0 - prob);
    const double x = inverse_incomplete_beta(0.5 * df, 0.5, tail2);
    if (x <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(df * (1.0 - x) / x);
}

}  // namespace decfit
