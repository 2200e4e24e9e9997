#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "decfit/stats.hpp"
#include "oracles.hpp"

using namespace decfit;

TEST_CASE("t quantile matches the published two-sided 95% value at df 8") {
    // 2.306 from standard tables; the quadrature oracle pins more digits.
    const double t = t_quantile(0.975, 8);
    CHECK(std::fabs(t - 2.306) < 1e-3);
    CHECK(oracle::rel_diff(t, oracle::t_quantile_quadrature(0.975, 8)) < 1e-9);
}

TEST_CASE("t quantile agrees with the quadrature oracle across df and levels") {
    for (int df : {1, 2, 3, 5, 8, 9, 20, 120}) {
        for (double prob : {0.6, 0.75, 0.9, 0.95, 0.975, 0.995}) {
            INFO("df=" << df << " prob=" << prob);
            CHECK(oracle::rel_diff(t_quantile(prob, df),
                                   oracle::t_quantile_quadrature(prob, df)) < 1e-8);
        }
    }
}

TEST_CASE("t quantile is symmetric and zero at the median") {
    CHECK(t_quantile(0.5, 7) == 0.0);
    CHECK(t_quantile(0.025, 8) == -t_quantile(0.975, 8));
}

TEST_CASE("t quantile grows as the level grows") {
    CHECK(t_quantile(0.75, 8) < t_quantile(0.975, 8));
    CHECK(std::fabs(t_quantile(0.75, 8) - 0.7063866126) < 1e-6);
}

TEST_CASE("regularized incomplete beta hits its boundary values") {
    CHECK(regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0);
}

TEST_CASE("incomplete beta satisfies the reflection identity") {
    for (double a : {0.5, 1.0, 4.0, 10.0}) {
        for (double b : {0.5, 2.5, 7.0}) {
            for (double x : {0.01, 0.2, 0.5, 0.83, 0.99}) {
                const double lhs = regularized_incomplete_beta(a, b, x);
                const double rhs = 1.0 - regularized_incomplete_beta(b, a, 1.0 - x);
                INFO("a=" << a << " b=" << b << " x=" << x);
                CHECK(std::fabs(lhs - rhs) < 1e-12);
            }
        }
    }
}

TEST_CASE("inverse incomplete beta inverts the forward function") {
    for (double a : {0.5, 2.0, 4.0}) {
        for (double q : {0.001, 0.05, 0.37, 0.72, 0.999}) {
            const double x = inverse_incomplete_beta(a, 0.5, q);
            CHECK(std::fabs(regularized_incomplete_beta(a, 0.5, x) - q) < 1e-10);
        }
    }
}

TEST_CASE("invalid stats arguments are rejected") {
    CHECK_THROWS_AS(t_quantile(0.0, 8), error);
    CHECK_THROWS_AS(t_quantile(1.0, 8), error);
    CHECK_THROWS_AS(t_quantile(0.975, 0), error);
    CHECK_THROWS_AS(regularized_incomplete_beta(-1.0, 1.0, 0.5), error);
    CHECK_THROWS_AS(regularized_incomplete_beta(1.0, 1.0, 1.5), error);
}
