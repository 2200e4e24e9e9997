#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "decfit/ingest.hpp"

using namespace decfit;

namespace {

const std::string kHeader{kDatasetHeader};

std::string row(const std::string& prefix, const std::string& means) {
    return prefix + "," + means;
}

}  // namespace

TEST_CASE("parses a schema-conforming row") {
    const std::string csv =
        kHeader + "\n" +
        row("Philippine,1997,income,peso", "10,20,30,40,50,60,70,80,90,100") + "\n";
    const Dataset ds = parse_dataset(csv);
    REQUIRE(ds.records.size() == 1);
    const DecileRecord& r = ds.records[0];
    CHECK(r.country == "Philippine");
    CHECK(r.year == 1997);
    CHECK(r.variable == Variable::income);
    CHECK(r.currency == "peso");
    CHECK(r.means[0] == 10.0);
    CHECK(r.means[9] == 100.0);
}

TEST_CASE("accepts scientific notation and CRLF line endings") {
    const std::string csv =
        kHeader + "\r\n" +
        row("Uganda,2006,expenditure,shilling",
            "1e1,2e1,3e1,4e1,5e1,6e1,7e1,8e1,9e1,1.0e2") + "\r\n";
    const Dataset ds = parse_dataset(csv);
    REQUIRE(ds.records.size() == 1);
    CHECK(ds.records[0].means[9] == 100.0);
}

TEST_CASE("reports wrong column count with the row number") {
    const std::string csv =
        kHeader + "\n" + row("Uganda,2006,expenditure,shilling", "1,2,3,4,5,6,7,8,9") + "\n";
    try {
        parse_dataset(csv);
        FAIL("expected parse error");
    } catch (const error& e) {
        CHECK(e.code() == errc::parse);
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
        CHECK(std::string(e.what()).find("column count") != std::string::npos);
    }
}

TEST_CASE("rejects duplicate (country, year, variable) triples") {
    const std::string means = "1,2,3,4,5,6,7,8,9,10";
    const std::string csv = kHeader + "\n" +
                            row("Uganda,2006,expenditure,shilling", means) + "\n" +
                            row("Uganda,2006,expenditure,old shilling", means) + "\n";
    try {
        parse_dataset(csv);
        FAIL("expected duplicate error");
    } catch (const error& e) {
        CHECK(e.code() == errc::parse);
        CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
}

TEST_CASE("rejects malformed headers") {
    CHECK_THROWS_AS(parse_dataset("country,year\nX,1\n"), error);
    CHECK_THROWS_AS(parse_dataset(""), error);
}

TEST_CASE("rejects non-numeric and non-finite decile cells") {
    const std::string good = "1,2,3,4,5,6,7,8,9,10";
    for (const std::string bad :
         {"abc,2,3,4,5,6,7,8,9,10", "1,2,3,4,5,6,7,8,9,nan", "1,2,3,4,5,6,7,8,9,inf",
          "1,2,3,4,5,6,7,8,9, 10"}) {
        const std::string csv = kHeader + "\n" + row("A,2000,income,unit", bad) + "\n";
        INFO(bad);
        CHECK_THROWS_AS(parse_dataset(csv), error);
    }
    const std::string ok = kHeader + "\n" + row("A,2000,income,unit", good) + "\n";
    CHECK_NOTHROW(parse_dataset(ok));
}

TEST_CASE("rejects unknown variable names") {
    const std::string csv =
        kHeader + "\n" + row("A,2000,wealth,unit", "1,2,3,4,5,6,7,8,9,10") + "\n";
    CHECK_THROWS_AS(parse_dataset(csv), error);
}

TEST_CASE("rows violating record invariants are rejected with codes") {
    const std::string csv =
        kHeader + "\n" + row("A,2000,income,unit", "5,4,3,4,5,6,7,8,9,10") + "\n";
    try {
        parse_dataset(csv);
        FAIL("expected parse error");
    } catch (const error& e) {
        CHECK(std::string(e.what()).find("non_monotone") != std::string::npos);
    }
}

TEST_CASE("validate_record flags each violated invariant") {
    DecileRecord r{"A", 2000, Variable::income, "unit", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}};
    CHECK(validate_record(r).empty());

    DecileRecord dec = r;
    dec.means = {5, 4, 3, 2, 1, 1, 1, 1, 1, 1};
    const auto v1 = validate_record(dec);
    CHECK(std::find(v1.begin(), v1.end(), violation::non_monotone) != v1.end());

    DecileRecord neg = r;
    neg.means[0] = -1.0;
    const auto v2 = validate_record(neg);
    CHECK(std::find(v2.begin(), v2.end(), violation::negative_mean) != v2.end());

    DecileRecord zeros = r;
    zeros.means.fill(0.0);
    const auto v3 = validate_record(zeros);
    CHECK(std::find(v3.begin(), v3.end(), violation::zero_top_decile) != v3.end());
}

TEST_CASE("equal adjacent means are valid (nondecreasing, not strict)") {
    DecileRecord r{"A", 2000, Variable::income, "unit", {1, 1, 2, 2, 3, 3, 4, 4, 5, 5}};
    CHECK(validate_record(r).empty());
}

TEST_CASE("a missing trailing newline is fine") {
    const std::string csv =
        kHeader + "\n" + row("A,2000,income,unit", "1,2,3,4,5,6,7,8,9,10");
    CHECK(parse_dataset(csv).records.size() == 1);
}

TEST_CASE("parse-serialize-parse round-trips to an identical dataset") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> jump(0.0, 1e5);
    Dataset ds;
    for (int k = 0; k < 25; ++k) {
        DecileRecord r;
        r.country = "Country" + std::to_string(k % 7);
        r.year = 1960 + k;
        r.variable = k % 2 ? Variable::income : Variable::expenditure;
        r.currency = k % 3 ? "unit" : "new unit";
        double acc = jump(rng) + 1e-3;
        for (auto& m : r.means) {
            m = acc;
            acc += jump(rng);
        }
        ds.records.push_back(std::move(r));
    }
    const std::string text = serialize_dataset(ds);
    const Dataset back = parse_dataset(text);
    CHECK(back == ds);
    CHECK(serialize_dataset(back) == text);
}
