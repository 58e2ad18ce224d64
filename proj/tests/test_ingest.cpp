#include "memkit/csv.hpp"

#include "memkit/errors.hpp"
#include "memkit/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

using namespace memkit;

namespace {

struct TempCsv {
    std::string path;
    explicit TempCsv(const std::string& content) {
        path = std::string(std::tmpnam(nullptr)) + ".csv";
        std::ofstream out(path);
        out << content;
    }
    ~TempCsv() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("load_csv basics") {
    SUBCASE("well-formed three-row file") {
        TempCsv file("date,vol,ret\n2020-01-02,10.5,0.01\n2020-01-03,11.0,-0.02\n2020-01-06,9.8,0.00\n");
        CsvLayout layout;
        layout.path = file.path;
        layout.value_column = "vol";
        layout.return_column = "ret";
        const RawSeries s = load_csv(layout);
        REQUIRE(s.values.size() == 3);
        CHECK(s.values[1] == 11.0);
        CHECK(s.returns[1] == -0.02);
        CHECK(s.dates[0] == parse_date("2020-01-02"));
    }

    SUBCASE("rows are sorted by date") {
        TempCsv file("date,vol\n2020-01-06,9.8\n2020-01-02,10.5\n2020-01-03,11.0\n");
        CsvLayout layout;
        layout.path = file.path;
        layout.value_column = "vol";
        const RawSeries s = load_csv(layout);
        CHECK(s.values[0] == 10.5);
        CHECK(s.values[2] == 9.8);
    }

    SUBCASE("duplicate date") {
        TempCsv file("date,vol\n2020-01-02,10.5\n2020-01-02,11.0\n");
        CsvLayout layout;
        layout.path = file.path;
        layout.value_column = "vol";
        CHECK_THROWS_AS(load_csv(layout), DuplicateDate);
    }

    SUBCASE("non-numeric cell carries the row index") {
        TempCsv file("date,vol\n2020-01-02,10.5\n2020-01-03,oops\n");
        CsvLayout layout;
        layout.path = file.path;
        layout.value_column = "vol";
        try {
            load_csv(layout);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.row == 2);
            CHECK(e.column == "vol");
        }
    }

    SUBCASE("alternate delimiter and date format") {
        TempCsv file("date;vol\n02/01/2020;10.5\n03/01/2020;11.0\n");
        CsvLayout layout;
        layout.path = file.path;
        layout.value_column = "vol";
        layout.delimiter = ';';
        layout.date_format = "%d/%m/%Y";
        CHECK(load_csv(layout).values.size() == 2);
    }

    SUBCASE("missing column") {
        TempCsv file("date,vol\n2020-01-02,10.5\n");
        CsvLayout layout;
        layout.path = file.path;
        layout.value_column = "nope";
        CHECK_THROWS_AS(load_csv(layout), InvalidArgument);
    }
}

TEST_CASE("absolute returns to volatility units") {
    RawSeries raw;
    raw.dates = {0, 1, 2};
    raw.values = {0.0, -0.01, 0.02};
    raw.returns = raw.values;
    raw.label = "r";
    const ObservationSeries s = absolute_returns_to_vol(raw, 252);

    CHECK(s.values[0] == 0.0);
    // |r| sqrt(pi/2) * 100 * sqrt(252), value computed by direct arithmetic
    CHECK(s.values[1] == doctest::Approx(19.895745131869624).epsilon(1e-12));
    CHECK(s.values[2] == doctest::Approx(2.0 * 19.895745131869624).epsilon(1e-12));
    CHECK(s.returns[1] == -0.01);

    SUBCASE("monotone in |r| and exact inverse") {
        Rng rng(3);
        for (int i = 0; i < 50; ++i) {
            const double r = (rng.uniform01() - 0.5) * 0.1;
            RawSeries one;
            one.dates = {0};
            one.values = {r};
            one.returns = {r};
            const double vol = absolute_returns_to_vol(one, 252).values[0];
            CHECK(vol_to_absolute_return(vol, 252) == doctest::Approx(std::fabs(r)).epsilon(1e-12));
        }
    }
}

TEST_CASE("realized kernel variance to volatility units") {
    RawSeries raw;
    raw.dates = {0, 1};
    raw.values = {0.0, 1e-4};
    raw.returns = {0.0, 0.0};
    const ObservationSeries s = realized_kernel_to_vol(raw, 252);
    CHECK(s.values[0] == 0.0);
    CHECK(s.values[1] == doctest::Approx(15.874507866387544).epsilon(1e-12));

    RawSeries bad = raw;
    bad.values = {1e-4, -1e-5};
    CHECK_THROWS_AS(realized_kernel_to_vol(bad, 252), NegativeValue);

    SUBCASE("inverse round trip") {
        Rng rng(4);
        for (int i = 0; i < 50; ++i) {
            const double rk = rng.uniform01() * 5e-4;
            RawSeries one;
            one.dates = {0};
            one.values = {rk};
            one.returns = {0.0};
            const double vol = realized_kernel_to_vol(one, 252).values[0];
            CHECK(vol_to_realized_kernel(vol, 252) == doctest::Approx(rk).epsilon(1e-12));
        }
    }
}
