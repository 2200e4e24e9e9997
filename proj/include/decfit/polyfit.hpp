// Ordinary least-squares polynomial fitting of CCDF point sets: degree 1
// or 2 models, coefficient of determination, confidence intervals at a
// configurable level, minimal-degree selection, inversion on a monotone
// branch, and the implied density.
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "decfit/ccdf.hpp"
#include "decfit/stats.hpp"
#include "decfit/types.hpp"

namespace decfit {

// Polynomial in one variable, coefficients ordered highest power first.
// Fitted models have degree 1 or 2; densities derived from them may be
// constant (degree 0).
struct PolynomialModel {
    std::vector<double> coefficients;

    int degree() const { return int(coefficients.size()) - 1; }

    friend bool operator==(const PolynomialModel&, const PolynomialModel&) = default;
};

inline double evaluate(const PolynomialModel& model, double x) {
    double acc = 0.0;
    for (double c : model.coefficients) acc = acc * x + c;
    return acc;
}

// Negated derivative of the model: the density implied by a fitted
// complementary CDF, in percent per currency unit.
inline PolynomialModel implied_density(const PolynomialModel& model) {
    const int deg = model.degree();
    if (deg <= 0) return PolynomialModel{{0.0}};
    std::vector<double> out(deg);
    for (int i = 0; i < deg; ++i)
        out[i] = -model.coefficients[i] * double(deg - i);
    return PolynomialModel{std::move(out)};
}

struct FitResult {
    PolynomialModel model;
    double r_squared = 0.0;  // percent; may be negative, never clamped
    std::vector<std::pair<double, double>> ci;  // per-coefficient (low, high)
    std::vector<double> standard_errors;
    std::vector<double> residuals;  // observed - fitted, percent
    FitSpace space = FitSpace::linear;
    int n_points = 0;

    int degrees_of_freedom() const {
        return n_points - int(model.coefficients.size());
    }
};

struct SelectionResult {
    FitResult chosen;
    double threshold = 90.0;  // percent
    std::vector<FitResult> candidates;
    bool passed = false;
};

// 100 * (1 - SSres / SStot). Errors when the observations carry no
// variance; never clamps, so a fit worse than the mean goes negative.
inline double r_squared(std::span<const double> observed, std::span<const double> fitted) {
    if (observed.size() != fitted.size() || observed.size() < 2)
        throw error(errc::precondition, "r_squared requires equal lengths >= 2");
    double mean = 0.0;
    for (double y : observed) mean += y;
    mean /= double(observed.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double r = observed[i] - fitted[i];
        const double d = observed[i] - mean;
        ss_res += r * r;
        ss_tot += d * d;
    }
    if (!(ss_tot > 0.0))
        throw error(errc::degenerate_variance, "observed values are all equal");
    return 100.0 * (1.0 - ss_res / ss_tot);
}

namespace detail {

// Householder QR of the n x m scaled Vandermonde design, m <= 3.
// Columns are ordered highest power first to match PolynomialModel.
struct QrFit {
    std::vector<double> beta;        // solution in scaled units
    std::vector<double> fitted;      // design * beta
    std::vector<double> gram_inv_diag;  // diag of (Z^T Z)^(-1)
};

inline QrFit qr_solve(const std::vector<std::vector<double>>& columns,
                      std::span<const double> y) {
    const std::size_t m = columns.size();
    const std::size_t n = y.size();

    // Work in column-major copies; q_y accumulates Q^T y.
    std::vector<std::vector<double>> a(columns);
    std::vector<double> q_y(y.begin(), y.end());
    std::vector<std::vector<double>> reflectors;

    for (std::size_t k = 0; k < m; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm += a[k][i] * a[k][i];
        norm = std::sqrt(norm);
        const double alpha = a[k][k] >= 0.0 ? -norm : norm;

        std::vector<double> v(n, 0.0);
        v[k] = a[k][k] - alpha;
        for (std::size_t i = k + 1; i < n; ++i) v[i] = a[k][i];
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) vnorm2 += v[i] * v[i];

        if (vnorm2 > 0.0) {
            for (std::size_t j = k; j < m; ++j) {
                double dot = 0.0;
                for (std::size_t i = k; i < n; ++i) dot += v[i] * a[j][i];
                const double f = 2.0 * dot / vnorm2;
                for (std::size_t i = k; i < n; ++i) a[j][i] -= f * v[i];
            }
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i] * q_y[i];
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < n; ++i) q_y[i] -= f * v[i];
        }
        reflectors.push_back(std::move(v));
    }

    // Rank check on the diagonal of R.
    double max_diag = 0.0;
    for (std::size_t k = 0; k < m; ++k) max_diag = std::max(max_diag, std::fabs(a[k][k]));
    for (std::size_t k = 0; k < m; ++k) {
        if (std::fabs(a[k][k]) <= 1e-12 * std::max(max_diag, 1e-300))
            throw error(errc::singular_design, "design matrix is rank deficient");
    }

    QrFit fit;
    fit.beta.assign(m, 0.0);
    for (std::size_t k = m; k-- > 0;) {
        double s = q_y[k];
        for (std::size_t j = k + 1; j < m; ++j) s -= a[j][k] * fit.beta[j];
        fit.beta[k] = s / a[k][k];
    }

    fit.fitted.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += columns[j][i] * fit.beta[j];
        fit.fitted[i] = s;
    }

    // (Z^T Z)^(-1) = R^(-1) R^(-T); only the diagonal is needed for
    // standard errors. Solve R^T w = e_k, then R u = w.
    fit.gram_inv_diag.assign(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<double> w(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            double s = (i == k) ? 1.0 : 0.0;
            for (std::size_t j = 0; j < i; ++j) s -= a[i][j] * w[j];
            w[i] = s / a[i][i];
        }
        std::vector<double> u(m, 0.0);
        for (std::size_t i = m; i-- > 0;) {
            double s = w[i];
            for (std::size_t j = i + 1; j < m; ++j) s -= a[j][i] * u[j];
            u[i] = s / a[i][i];
        }
        fit.gram_inv_diag[k] = u[k];
    }
    return fit;
}

}  // namespace detail

// Least-squares polynomial fit of y against x at the given degree.
// The abscissae are internally scaled by max|x| before the QR solve and
// the coefficients transformed back, so results are reported in the
// original units while the factorization stays well conditioned even
// when x spans 1e6 currency units.
inline FitResult fit_ols(std::span<const double> x, std::span<const double> y,
                         int degree, FitSpace space = FitSpace::linear) {
    if (degree < 1 || degree > 2)
        throw error(errc::precondition, "degree must be 1 or 2");
    if (x.size() != y.size())
        throw error(errc::precondition, "x and y lengths differ");
    const int n = int(x.size());
    const int m = degree + 1;
    if (n < degree + 2)
        throw error(errc::insufficient_data,
                    "need at least " + std::to_string(degree + 2) + " points for degree " +
                        std::to_string(degree));

    double scale = 0.0;
    for (double xi : x) scale = std::max(scale, std::fabs(xi));
    if (!(scale > 0.0))
        throw error(errc::singular_design, "all abscissae are zero");

    std::vector<std::vector<double>> columns(m, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        const double z = x[i] / scale;
        double zp = 1.0;
        for (int j = m - 1; j >= 0; --j) {  // fill constant column last
            columns[j][i] = zp;
            zp *= z;
        }
    }

    const auto qr = detail::qr_solve(columns, y);

    FitResult fit;
    fit.space = space;
    fit.n_points = n;
    fit.residuals.resize(n);
    double ss_res = 0.0;
    for (int i = 0; i < n; ++i) {
        fit.residuals[i] = y[i] - qr.fitted[i];
        ss_res += fit.residuals[i] * fit.residuals[i];
    }
    double mean = 0.0;
    for (double yi : y) mean += yi;
    mean /= double(n);
    double ss_tot = 0.0;
    for (double yi : y) ss_tot += (yi - mean) * (yi - mean);
    if (!(ss_tot > 0.0))
        throw error(errc::degenerate_variance, "ordinates carry no variance");
    fit.r_squared = 100.0 * (1.0 - ss_res / ss_tot);

    // Unscale: the column for x^k was (x/scale)^k.
    fit.model.coefficients.resize(m);
    fit.standard_errors.resize(m);
    const int df = n - m;
    const double sigma2 = df > 0 ? ss_res / double(df) : 0.0;
    for (int j = 0; j < m; ++j) {
        const double unscale = std::pow(scale, double(m - 1 - j));
        fit.model.coefficients[j] = qr.beta[j] / unscale;
        fit.standard_errors[j] = std::sqrt(std::max(0.0, sigma2 * qr.gram_inv_diag[j])) / unscale;
    }

    const double t = t_quantile(0.975, df);
    fit.ci.resize(m);
    for (int j = 0; j < m; ++j) {
        const double half = t * fit.standard_errors[j];
        fit.ci[j] = {fit.model.coefficients[j] - half, fit.model.coefficients[j] + half};
    }
    return fit;
}

inline FitResult fit_ols(const CcdfSeries& series, int degree) {
    std::vector<double> x, y;
    x.reserve(series.points.size());
    y.reserve(series.points.size());
    for (const auto& pt : series.points) {
        x.push_back(pt.x);
        y.push_back(pt.p);
    }
    return fit_ols(x, y, degree, series.space);
}

// Per-coefficient confidence intervals at an arbitrary level, from the
// standard errors stored in the fit.
inline std::vector<std::pair<double, double>> confidence_intervals(const FitResult& fit,
                                                                   double level = 0.95) {
    if (!(level > 0.0 && level < 1.0))
        throw error(errc::precondition, "confidence level must lie in (0, 1)");
    const int df = fit.degrees_of_freedom();
    if (df < 1)
        throw error(errc::no_degrees_of_freedom, "no residual degrees of freedom");
    const double t = t_quantile(1.0 - (1.0 - level) / 2.0, df);
    std::vector<std::pair<double, double>> out(fit.model.coefficients.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double half = t * fit.standard_errors[j];
        out[j] = {fit.model.coefficients[j] - half, fit.model.coefficients[j] + half};
    }
    return out;
}

// Tries degrees 1..max_degree in order and keeps the first whose R^2
// meets the threshold; the lowest passing degree wins even when a higher
// one scores better. When none passes, returns the best candidate with
// passed = false.
inline SelectionResult select_degree(std::span<const double> x, std::span<const double> y,
                                     FitSpace space = FitSpace::linear,
                                     double threshold = 90.0, int max_degree = 2) {
    if (max_degree < 1 || max_degree > 2)
        throw error(errc::precondition, "max_degree must be 1 or 2");

    SelectionResult sel;
    sel.threshold = threshold;
    for (int degree = 1; degree <= max_degree; ++degree) {
        sel.candidates.push_back(fit_ols(x, y, degree, space));
        if (sel.candidates.back().r_squared >= threshold) {
            sel.chosen = sel.candidates.back();
            sel.passed = true;
            return sel;
        }
    }
    sel.passed = false;
    sel.chosen = *std::max_element(
        sel.candidates.begin(), sel.candidates.end(),
        [](const FitResult& a, const FitResult& b) { return a.r_squared < b.r_squared; });
    return sel;
}

inline SelectionResult select_degree(const CcdfSeries& series, double threshold = 90.0,
                                     int max_degree = 2) {
    std::vector<double> x, y;
    for (const auto& pt : series.points) {
        x.push_back(pt.x);
        y.push_back(pt.p);
    }
    return select_degree(x, y, series.space, threshold, max_degree);
}

// Solves evaluate(model, x) = p by bisection on a bracket where the
// model is strictly decreasing. The answer satisfies
// |evaluate(model, x) - p| <= 1e-9 * max(1, |p|).
inline double invert_ccdf(const PolynomialModel& model, double p, double lo, double hi) {
    if (!(lo < hi))
        throw error(errc::precondition, "bracket must satisfy lo < hi");

    // Degree <= 2 means the derivative is affine: negative at both ends
    // implies negative throughout, hence strictly decreasing.
    const PolynomialModel density = implied_density(model);  // density = -model'
    if (!(evaluate(density, lo) > 0.0 && evaluate(density, hi) > 0.0))
        throw error(errc::non_monotone, "model is not strictly decreasing on the bracket");

    const double f_lo = evaluate(model, lo);
    const double f_hi = evaluate(model, hi);
    if (!(f_lo >= p && p >= f_hi))
        throw error(errc::bracket, "p is not bracketed by the model values at the endpoints");

    const double tol = 1e-9 * std::max(1.0, std::fabs(p));
    if (std::fabs(f_lo - p) <= tol) return lo;
    if (std::fabs(f_hi - p) <= tol) return hi;

    double a = lo, b = hi;
    while (true) {
        const double mid = a + 0.5 * (b - a);
        if (!(a < mid && mid < b)) break;  // no representable midpoint left
        const double f = evaluate(model, mid);
        if (std::fabs(f - p) <= tol) return mid;
        (f > p ? a : b) = mid;
    }
    throw error(errc::no_convergence, "bisection failed to meet the ordinate tolerance");
}

}  // namespace decfit
