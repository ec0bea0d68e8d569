#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "nws/field.hpp"
#include "nws/grid.hpp"
#include "nws/norms.hpp"
#include "nws/params.hpp"

#include "oracles.hpp"

using namespace nws;

TEST_CASE("PdeParams validates its ranges") {
    CHECK_NOTHROW(PdeParams(1.0, 1.0, 1.0)); // n = 1 is the linear case
    CHECK_NOTHROW(PdeParams(0.5, 2.0, 2.5));
    CHECK_THROWS_AS(PdeParams(0.0, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(PdeParams(-1.0, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(PdeParams(1.0, 0.0, 2.0), DomainError);
    CHECK_THROWS_AS(PdeParams(1.0, 1.0, 0.99), DomainError);
    CHECK_THROWS_AS(PdeParams(1.0, 1.0, std::nan("")), DomainError);
}

TEST_CASE("pow_real handles integer and fractional powers") {
    CHECK(pow_real(-2.0, 3.0) == -8.0);
    CHECK(pow_real(-2.0, 2.0) == 4.0);
    CHECK(pow_real(0.0, 5.0) == 0.0);
    CHECK(pow_real(2.0, 2.5) == doctest::Approx(std::pow(2.0, 2.5)).epsilon(1e-15));
    CHECK_THROWS_AS(pow_real(-1.0, 2.5), DomainError);
}

TEST_CASE("GridSpec validation") {
    CHECK_THROWS_AS(GridSpec::uniform(0, 0.0, 1.0, 8), DomainError);
    CHECK_THROWS_AS(GridSpec::uniform(4, 0.0, 1.0, 8), DomainError);
    CHECK_THROWS_AS(GridSpec::uniform(1, 1.0, 0.0, 8), DomainError);
    CHECK_THROWS_AS(GridSpec::uniform(1, 0.0, 1.0, 1), DomainError);
    CHECK_THROWS_AS(GridSpec(1, Coord{0, 0, 0}, Coord{1, 0, 0}, 8, 1.0, 0.5), DomainError);
    // total point cap
    CHECK_THROWS_AS(GridSpec(3, Coord{0, 0, 0}, Coord{1, 1, 1}, 300, 0.0, 1.0, 1, 1 << 20),
                    DomainError);
    CHECK_NOTHROW(GridSpec::uniform(3, 0.0, 1.0, 256)); // 2^24 exactly
}

TEST_CASE("grid_points matches the documented orderings") {
    SUBCASE("1D three points") {
        const auto pts = grid_points(GridSpec::uniform(1, 0.0, 1.0, 3));
        REQUIRE(pts.size() == 3);
        CHECK(pts[0][0] == 0.0);
        CHECK(pts[1][0] == 0.5);
        CHECK(pts[2][0] == 1.0);
    }
    SUBCASE("2D corner enumeration") {
        const auto pts = grid_points(GridSpec::uniform(2, 0.0, 1.0, 2));
        REQUIRE(pts.size() == 4);
        CHECK((pts[0][0] == 0.0 && pts[0][1] == 0.0));
        CHECK((pts[1][0] == 0.0 && pts[1][1] == 1.0));
        CHECK((pts[2][0] == 1.0 && pts[2][1] == 0.0));
        CHECK((pts[3][0] == 1.0 && pts[3][1] == 1.0));
    }
    SUBCASE("3D corner enumeration") {
        const auto pts = grid_points(GridSpec::uniform(3, 0.0, 1.0, 2));
        REQUIRE(pts.size() == 8);
        CHECK((pts[0][0] == 0.0 && pts[0][1] == 0.0 && pts[0][2] == 0.0));
        CHECK((pts[7][0] == 1.0 && pts[7][1] == 1.0 && pts[7][2] == 1.0));
    }
}

TEST_CASE("grid endpoints land exactly on the bounds") {
    const GridSpec g = GridSpec::uniform(1, -7.3, 11.9, 641);
    CHECK(g.coord(0, 0) == -7.3);
    CHECK(g.coord(0, 640) == 11.9);
}

TEST_CASE("index/multi_index round-trips exactly") {
    oracle::Rng rng(20240817);
    for (int dim = 1; dim <= 3; ++dim) {
        const GridSpec g = GridSpec::uniform(dim, -1.0, 1.0, 9);
        for (std::int64_t i = 0; i < g.total_points(); ++i) {
            CHECK(g.index(g.multi_index(i)) == i);
        }
    }
}

TEST_CASE("Field validates size and finiteness") {
    const GridSpec g = GridSpec::uniform(1, 0.0, 1.0, 5);
    CHECK_THROWS_AS(Field(g, 0.0, std::vector<double>(4, 0.0)), DomainError);
    std::vector<double> bad(5, 1.0);
    bad[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(Field(g, 0.0, bad), DomainError);
    bad[3] = std::nan("");
    CHECK_THROWS_AS(Field(g, 0.0, bad), DomainError);
    CHECK_NOTHROW(Field::zeros(g, 0.0));
}

TEST_CASE("norms on the documented examples") {
    const GridSpec g = GridSpec::uniform(1, 0.0, 1.0, 11);

    SUBCASE("zero field") {
        const Norms nn = norms(Field::zeros(g, 0.0), 0);
        CHECK(nn.l2 == 0.0);
        CHECK(nn.linf == 0.0);
    }
    SUBCASE("unit field") {
        const Field ones(g, 0.0, std::vector<double>(11, 1.0));
        const Norms nn = norms(ones, 0);
        CHECK(nn.linf == 1.0);
        // sqrt(11 * 0.1), worked by hand
        CHECK(nn.l2 == doctest::Approx(1.0488088481701515).epsilon(1e-14));
    }
    SUBCASE("margin rejects when fewer than 2 points remain") {
        const Field ones(g, 0.0, std::vector<double>(11, 1.0));
        CHECK_NOTHROW(norms(ones, 4));
        CHECK_THROWS_AS(norms(ones, 5), DomainError);
        CHECK_THROWS_AS(norms(ones, -1), DomainError);
    }
    SUBCASE("margin drops boundary layers") {
        std::vector<double> v(11, 0.0);
        v[0] = 100.0;
        v[10] = 100.0;
        v[5] = 2.0;
        const Norms nn = norms(Field(g, 0.0, v), 1);
        CHECK(nn.linf == 2.0);
    }
}

TEST_CASE("norm homogeneity under scaling") {
    oracle::Rng rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        const int dim = rng.uniform_int(1, 3);
        const int npts = rng.uniform_int(4, 9);
        const GridSpec g = GridSpec::uniform(dim, -2.0, 3.0, npts);
        std::vector<double> v(static_cast<std::size_t>(g.total_points()));
        for (double& x : v) {
            x = rng.uniform(-5.0, 5.0);
        }
        const double c = rng.uniform(-10.0, 10.0);
        std::vector<double> scaled = v;
        for (double& x : scaled) {
            x *= c;
        }
        const Norms a = norms(Field(g, 0.0, v), 1);
        const Norms b = norms(Field(g, 0.0, scaled), 1);
        CHECK(b.l2 == doctest::Approx(std::abs(c) * a.l2).epsilon(1e-12));
        CHECK(b.linf == doctest::Approx(std::abs(c) * a.linf).epsilon(1e-12));
    }
}
