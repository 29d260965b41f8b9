#include "volcp/error.hpp"
#include "volcp/ingest.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace volcp;

namespace {

LoadedPrices prices(const std::string& text, MissingPolicy policy = MissingPolicy::error, bool long_format = false) {
    std::istringstream is(text);
    return parse_prices(is, policy, long_format);
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("two prices give one log return") {
    const auto p = prices("date,ABC\n2020-01-02,100\n2020-01-03,105\n");
    CHECK(p.table.dates.size() == 2);
    const auto r = log_returns(p.table);
    REQUIRE(r.dates.size() == 1);
    CHECK(r.dates[0] == "2020-01-03");
    CHECK(r.returns(0, 0) == doctest::Approx(0.0487902).epsilon(1e-6));
    CHECK(r.returns(0, 0) == doctest::Approx(std::log(1.05)).epsilon(1e-14));
}

TEST_CASE("constant prices give zero returns") {
    const auto r = log_returns(prices("date,A,B\n2020-01-01,7,3\n2020-01-02,7,3\n2020-01-03,7,3\n").table);
    CHECK(r.returns.isZero());
}

TEST_CASE("non-positive and missing prices") {
    try {
        prices("date,ABC\n2020-01-02,100\n2020-01-03,0\n");
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("non-positive price at (2020-01-03, ABC)") != std::string::npos);
    }
    CHECK_THROWS_AS(prices("date,A,B\n2020-01-02,1,2\n2020-01-03,,2\n"), InputError);

    const auto dropped = prices("date,A,B\n2020-01-02,1,2\n2020-01-03,,2\n2020-01-06,1.5,2.5\n", MissingPolicy::drop_rows);
    CHECK(dropped.table.dates == std::vector<std::string>{"2020-01-02", "2020-01-06"});
    CHECK(dropped.report.dropped_dates == std::vector<std::string>{"2020-01-03"});
    CHECK(dropped.report.to_text().find("2020-01-03") != std::string::npos);
}

TEST_CASE("malformed input") {
    CHECK_THROWS_AS(prices(""), InputError);
    CHECK_THROWS_AS(prices("day,A\n2020-01-01,1\n"), InputError);
    CHECK_THROWS_AS(prices("date,A\n2020-01-01,abc\n"), InputError);
    CHECK_THROWS_AS(prices("date,A\n2020-01-01,1,2\n"), InputError);
    CHECK_THROWS_AS(prices("date,A\n2020-01-01,1\n2020-01-01,2\n"), InputError);
    CHECK_THROWS_AS(prices("date,A\n2020-02-30,1\n"), InputError);
    CHECK_THROWS_AS(prices("date,A,A\n2020-01-01,1,1\n"), InputError);
    CHECK_THROWS_AS(log_returns(prices("date,A\n2020-01-01,1\n").table), InputError);
}

TEST_CASE("dates are sorted and columns do not matter") {
    const auto a = prices("date,X,Y\n2020-01-03,2,20\n2020-01-02,1,10\n2020-01-06,4,40\n");
    const auto b = prices("date,Y,X\n2020-01-02,10,1\n2020-01-06,40,4\n2020-01-03,20,2\n");
    CHECK(a.table.dates == std::vector<std::string>{"2020-01-02", "2020-01-03", "2020-01-06"});
    CHECK(a.table.tickers == b.table.tickers);
    CHECK(a.table.prices == b.table.prices);
}

TEST_CASE("long format") {
    const auto wide = prices("date,X,Y\n2020-01-02,1,10\n2020-01-03,2,20\n");
    const auto lng = prices("date,ticker,close\n2020-01-03,Y,20\n2020-01-02,X,1\n2020-01-03,X,2\n2020-01-02,Y,10\n",
                            MissingPolicy::error, true);
    CHECK(lng.table.tickers == wide.table.tickers);
    CHECK(lng.table.dates == wide.table.dates);
    CHECK(lng.table.prices == wide.table.prices);
    // A ticker absent on one date counts as a missing cell.
    CHECK_THROWS_AS(prices("date,ticker,close\n2020-01-02,X,1\n2020-01-03,X,2\n2020-01-02,Y,10\n", MissingPolicy::error,
                           true),
                    InputError);
}

TEST_CASE("returns reconstruct prices") {
    std::ostringstream text;
    text << "date,P\n";
    double price = 37.25;
    std::vector<double> want;
    for (int d = 1; d <= 28; ++d) {
        want.push_back(price);
        text << "2021-02-" << (d < 10 ? "0" : "") << d << "," << price << "\n";
        price *= 1.0 + 0.03 * std::sin(d * 1.7);
    }
    const auto p = prices(text.str());
    const auto r = log_returns(p.table);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < r.returns.rows(); ++i) {
        acc += r.returns(i, 0);
        const double rebuilt = p.table.prices(0, 0) * std::exp(acc);
        CHECK(std::abs(rebuilt - p.table.prices(i + 1, 0)) <= 1e-12 * p.table.prices(i + 1, 0));
    }
}

TEST_CASE("returns csv round-trip") {
    const auto r = log_returns(prices("date,X,Y\n2020-01-02,1,10\n2020-01-03,2,20\n2020-01-06,3.3,19\n").table);
    std::stringstream ss;
    write_returns_csv(ss, r);
    const auto back = parse_returns(ss);
    CHECK(back.table.dates == r.dates);
    CHECK(back.table.tickers == r.tickers);
    CHECK(back.table.returns == r.returns);
}

TEST_CASE("missing policy names") {
    CHECK(parse_missing_policy("error") == MissingPolicy::error);
    CHECK(parse_missing_policy("drop_rows") == MissingPolicy::drop_rows);
    CHECK(to_string(MissingPolicy::drop_rows) == "drop_rows");
    CHECK_THROWS_AS(parse_missing_policy("fill"), InputError);
}

}  // TEST_SUITE
