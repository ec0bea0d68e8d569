#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "nws/experiment_spec.hpp"
#include "nws/field.hpp"
#include "nws/format.hpp"
#include "nws/report_io.hpp"

#include "oracles.hpp"

using namespace nws;

TEST_CASE("format_double round-trips exactly") {
    oracle::Rng rng(606);
    for (int trial = 0; trial < 500; ++trial) {
        double v = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-300.0, 300.0));
        if (trial % 7 == 0) {
            v = -v;
        }
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.25) == "0.25");
    CHECK(parse_double(format_double(0.1)) == 0.1);
}

TEST_CASE("csv_number uses 17 significant digits") {
    CHECK(io::csv_number(0.1) == "0.10000000000000001");
    CHECK(io::csv_number(1.0) == "1");
    // every double survives the trip back
    oracle::Rng rng(707);
    for (int trial = 0; trial < 200; ++trial) {
        const double v = rng.uniform(-1e6, 1e6);
        CHECK(parse_double(io::csv_number(v)) == v);
    }
}

TEST_CASE("parse_double rejects junk") {
    CHECK_THROWS_AS(parse_double(""), DomainError);
    CHECK_THROWS_AS(parse_double("1.0x"), DomainError);
    CHECK_THROWS_AS(parse_double("abc"), DomainError);
    CHECK(parse_double("-1.5e-3") == -1.5e-3);
}

TEST_CASE("ExperimentSpec round-trips byte-identically") {
    ExperimentSpec s;
    s.name = "demo";
    s.nu = 0.7;
    s.beta = 1.25;
    s.n = 2.5;
    s.candidate = "separable:linear:1,0";
    s.dim = 1;
    s.lo = -6.0;
    s.hi = 6.0;
    s.points = 481;
    s.snapshots = {0.25, 0.5, 1.0};

    const std::string text = s.serialize();
    const ExperimentSpec back = ExperimentSpec::parse(text);
    CHECK(back == s);
    CHECK(back.serialize() == text);

    // defaults too
    const ExperimentSpec d;
    CHECK(ExperimentSpec::parse(d.serialize()) == d);
    CHECK(ExperimentSpec::parse(d.serialize()).serialize() == d.serialize());
}

TEST_CASE("ExperimentSpec parsing tolerates comments, rejects unknown keys") {
    CHECK_NOTHROW(ExperimentSpec::parse("# comment\nnu=2\n"));
    CHECK(ExperimentSpec::parse("nu=2\n").nu == 2.0);
    CHECK_THROWS_AS(ExperimentSpec::parse("wibble=3\n"), DomainError);
    CHECK_THROWS_AS(ExperimentSpec::parse("just a line\n"), DomainError);
    CHECK(ExperimentSpec::parse("snapshots=\n").snapshots.empty());
    const auto multi = ExperimentSpec::parse("snapshots=0.5,1,2\n");
    REQUIRE(multi.snapshots.size() == 3);
    CHECK(multi.snapshots[1] == 1.0);
}

TEST_CASE("field_csv has a header naming every column") {
    const GridSpec g1 = GridSpec::uniform(1, 0.0, 1.0, 3);
    const Field f1(g1, 0.0, {1.0, 2.0, 3.0});
    const std::string csv = io::field_csv(f1, "u");
    CHECK(csv.rfind("x,u\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    const GridSpec g2 = GridSpec::uniform(2, 0.0, 1.0, 2);
    const Field f2(g2, 0.0, {1.0, 2.0, 3.0, 4.0});
    CHECK(io::field_csv(f2, "res").rfind("x,y,res\n", 0) == 0);
}

TEST_CASE("write_file/read_file round-trip bytes") {
    const std::string payload = "a,b\n1,2\n";
    const auto path = std::filesystem::temp_directory_path() / "nws_format_test.csv";
    io::write_file(path, payload);
    CHECK(io::read_file(path) == payload);
    std::filesystem::remove(path);
}
