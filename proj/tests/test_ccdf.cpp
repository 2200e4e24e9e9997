#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "decfit/ccdf.hpp"

using namespace decfit;

namespace {

DecileRecord record_with(const std::array<double, 10>& means) {
    return {"A", 2000, Variable::income, "unit", means};
}

}  // namespace

TEST_CASE("builds the 11-point set from the decile means") {
    const CcdfSeries s = build_ccdf(record_with({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
    REQUIRE(s.points.size() == 11);
    CHECK(s.space == FitSpace::linear);
    CHECK(s.points.front().x == 0.0);
    CHECK(s.points.front().p == 100.0);
    for (int k = 1; k <= 10; ++k) {
        CHECK(s.points[k].x == double(k));
        CHECK(s.points[k].p == 100.0 - 10.0 * k);
    }
    CHECK(s.points.back().p == 0.0);
}

TEST_CASE("ordinates are exactly 100, 90, ..., 0 and abscissae recover the means") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> jump(1e-6, 1e4);
    for (int trial = 0; trial < 50; ++trial) {
        std::array<double, 10> means{};
        double acc = jump(rng);
        for (auto& m : means) {
            m = acc;
            acc += jump(rng);
        }
        const auto rec = record_with(means);
        const CcdfSeries s = build_ccdf(rec);
        REQUIRE(s.points.size() == 11);
        CHECK(s.points[0].p == 100.0);
        for (int k = 1; k <= 10; ++k) {
            CHECK(s.points[k].p == 100.0 - 10.0 * k);
            CHECK(s.points[k].x == rec.means[k - 1]);
        }
    }
}

TEST_CASE("tied decile means are a degenerate abscissa") {
    std::array<double, 10> means{1, 2, 3, 3, 5, 6, 7, 8, 9, 10};  // m3 == m4
    try {
        build_ccdf(record_with(means));
        FAIL("expected degenerate abscissa");
    } catch (const error& e) {
        CHECK(e.code() == errc::degenerate_abscissa);
    }
}

TEST_CASE("a zero first mean collides with the anchor point") {
    std::array<double, 10> means{0, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    try {
        build_ccdf(record_with(means));
        FAIL("expected degenerate abscissa");
    } catch (const error& e) {
        CHECK(e.code() == errc::degenerate_abscissa);
    }
}

TEST_CASE("invalid records are rejected up front") {
    std::array<double, 10> means{5, 4, 3, 4, 5, 6, 7, 8, 9, 10};
    try {
        build_ccdf(record_with(means));
        FAIL("expected precondition");
    } catch (const error& e) {
        CHECK(e.code() == errc::precondition);
    }
}

TEST_CASE("log transform keeps 9 of the 11 canonical points") {
    const CcdfSeries s = build_ccdf(record_with({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
    const CcdfSeries ll = log_transform(s);
    REQUIRE(ll.points.size() == 9);
    CHECK(ll.space == FitSpace::loglog);
    const auto near = [](double v) { return Catch::Matchers::WithinRel(v, 1e-15); };
    CHECK(ll.points[0].x == 0.0);
    CHECK_THAT(ll.points[0].p, near(std::log10(90.0)));
    CHECK_THAT(ll.points[1].x, near(std::log10(2.0)));
    CHECK_THAT(ll.points[1].p, near(std::log10(80.0)));
    CHECK_THAT(ll.points.back().p, near(std::log10(10.0)));
}

TEST_CASE("log transform preserves the strict x ordering") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> jump(1e-3, 1e5);
    for (int trial = 0; trial < 50; ++trial) {
        std::array<double, 10> means{};
        double acc = jump(rng);
        for (auto& m : means) {
            m = acc;
            acc += jump(rng);
        }
        const CcdfSeries ll = log_transform(build_ccdf(record_with(means)));
        for (std::size_t i = 1; i < ll.points.size(); ++i) {
            CHECK(ll.points[i].x > ll.points[i - 1].x);
            CHECK(ll.points[i].p < ll.points[i - 1].p);
        }
    }
}

TEST_CASE("log transform needs three surviving points") {
    CcdfSeries sparse;
    sparse.space = FitSpace::linear;
    sparse.points = {{0.0, 100.0}, {5.0, 50.0}, {9.0, 0.0}};  // one survivor
    try {
        log_transform(sparse);
        FAIL("expected insufficient data");
    } catch (const error& e) {
        CHECK(e.code() == errc::insufficient_data);
    }
}

TEST_CASE("log transform refuses a series already in log-log space") {
    const CcdfSeries s = build_ccdf(record_with({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
    const CcdfSeries ll = log_transform(s);
    try {
        log_transform(ll);
        FAIL("expected precondition");
    } catch (const error& e) {
        CHECK(e.code() == errc::precondition);
    }
}
