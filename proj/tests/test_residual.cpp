#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nws/quadrature.hpp"
#include "nws/residual.hpp"

#include "oracles.hpp"

using namespace nws;

namespace {

const StencilSpec kOrder2{2, 0.0, std::nullopt};

} // namespace

TEST_CASE("trivial candidate has an exactly zero residual") {
    const PdeParams params(1.0, 1.0, 2.0);
    for (int dim = 1; dim <= 3; ++dim) {
        const GridSpec grid = GridSpec::uniform(dim, -2.0, 2.0, 17);
        const ResidualReport rep =
            apply_operator(Candidate{Trivial{}}, grid, 1.0, params, kOrder2);
        CHECK(rep.l2 == 0.0);
        CHECK(rep.linf == 0.0);
    }
}

TEST_CASE("separable constant profile sits at the rounding floor") {
    const PdeParams params(1.0, 1.0, 2.0);
    const GridSpec grid = GridSpec::uniform(1, -5.0, 5.0, 401);
    const ResidualReport rep =
        apply_operator(Candidate{Separable{ConstantProfile{1.0}}}, grid, 1.0, params, kOrder2);
    CHECK(rep.linf <= 1e-10);
}

TEST_CASE("separable linear profile reproduces the analytic residual") {
    // residual of u = x/(beta x t + 1) for n = 2 is 2 nu beta t/(beta x t + 1)^3
    const PdeParams params(1.0, 1.0, 2.0);
    const GridSpec grid = GridSpec::uniform(1, 0.5, 1.5, 41);
    const ResidualReport rep = apply_operator(
        Candidate{Separable{LinearProfile{{1.0, 0, 0}, 0.0}}}, grid, 1.0, params, kOrder2);
    const double h = grid.spacing(0);
    for (std::int64_t i = rep.interior_margin; i < 41 - rep.interior_margin; ++i) {
        const double x = grid.coord(0, static_cast<int>(i));
        const double exact = 2.0 / std::pow(x + 1.0, 3);
        const double fd = rep.residual.values[static_cast<std::size_t>(i)];
        // order-2 truncation: |u_xxxx| <= 24/(x+1)^5 on this window
        CHECK(std::abs(fd - exact) <= 2.0 * h * h * 24.0 / std::pow(x + 1.0, 5));
    }
    // x = 1 lands on node 20
    CHECK(rep.residual.values[20] == doctest::Approx(0.25).epsilon(2e-4));
}

TEST_CASE("linear-heat candidate: FD error shrinks at order >= 1.9") {
    const PdeParams params(1.0, 1.0, 1.0);
    const Candidate c = LinearHeat{0.5};
    const GridSpec coarse = GridSpec::uniform(1, -8.0, 8.0, 201);
    const GridSpec fine = GridSpec::uniform(1, -8.0, 8.0, 401);
    const double e1 = apply_operator(c, coarse, 1.0, params, kOrder2).linf;
    const double e2 = apply_operator(c, fine, 1.0, params, kOrder2).linf;
    CHECK(std::log2(e1 / e2) >= 1.9);
    // pin the measured constant: e = C h^2 with C ~ nu |u_xxxx|/12 = O(0.1)
    const double h = coarse.spacing(0);
    CHECK(e1 <= 0.5 * h * h);
}

TEST_CASE("order-4 stencil beats order-2 on a smooth candidate") {
    const PdeParams params(1.0, 1.0, 1.0);
    const Candidate c = LinearHeat{0.5};
    const GridSpec grid = GridSpec::uniform(1, -8.0, 8.0, 201);
    const StencilSpec order4{4, 0.0, std::nullopt};
    const double e2 = apply_operator(c, grid, 1.0, params, kOrder2).linf;
    const double e4 = apply_operator(c, grid, 1.0, params, order4).linf;
    CHECK(e4 < 0.01 * e2);
}

TEST_CASE("norms are recomputable from the residual field") {
    const PdeParams params(1.0, 1.0, 2.0);
    const GridSpec grid = GridSpec::uniform(2, -1.0, 1.0, 25);
    const ResidualReport rep = apply_operator(
        Candidate{Separable{GaussianProfile{1.0, 1.0}}}, grid, 0.7, params, kOrder2);
    const Norms again = norms(rep.residual, rep.interior_margin);
    CHECK(again.l2 == doctest::Approx(rep.l2).epsilon(1e-12));
    CHECK(again.linf == doctest::Approx(rep.linf).epsilon(1e-12));
}

TEST_CASE("linear-heat residual checks demand n = 1") {
    const GridSpec grid = GridSpec::uniform(1, -8.0, 8.0, 201);
    CHECK_THROWS_AS(apply_operator(Candidate{LinearHeat{0.5}}, grid, 1.0,
                                   PdeParams(1.0, 1.0, 2.0), kOrder2),
                    DomainError);
    CHECK_NOTHROW(apply_operator(Candidate{LinearHeat{0.5}}, grid, 1.0,
                                 PdeParams(1.0, 1.0, 1.0), kOrder2));
}

TEST_CASE("margin and dt_fd preconditions") {
    const PdeParams params(1.0, 1.0, 2.0);
    const GridSpec tiny = GridSpec::uniform(1, 0.0, 1.0, 7); // margin 3 leaves 1 point
    CHECK_THROWS_AS(apply_operator(Candidate{Trivial{}}, tiny, 1.0, params, kOrder2),
                    DomainError);
    const GridSpec grid = GridSpec::uniform(1, -6.0, 6.0, 61);
    const StencilSpec bad_dt{2, 0.6, std::nullopt}; // dt_fd >= t/2 at t = 1
    CHECK_THROWS_AS(
        apply_operator(Candidate{GreenAnsatz{1.0, 1.0}}, grid, 1.0, params, bad_dt),
        DomainError);
}

TEST_CASE("pole inside the grid propagates with coordinates") {
    const PdeParams params(1.0, 1.0, 2.0);
    const GridSpec grid = GridSpec::uniform(1, -5.0, 5.0, 401);
    CHECK_THROWS_AS(apply_operator(Candidate{Separable{LinearProfile{{1.0, 0, 0}, 0.0}}},
                                   grid, 1.0, params, kOrder2),
                    DomainError);
}

TEST_CASE("bracket factor kinks at the origin: FD curvature grows like 1/h") {
    // d/dx of the time integral jumps by -1/nu across x = 0 for n = 2, so the
    // second difference at the origin scales like -1/(nu h). This is the
    // analytically known singular point the residue-identity check excludes.
    const PdeParams params(1.0, 1.0, 2.0);
    const auto bracket_integral = [&](double x) {
        return quad::integrate_G_power(Coord{x, 0, 0}, 1, 1.0, params,
                                       quad::Tolerance{1e-13, 1e-16, 60})
            .value;
    };
    for (const double h : {1e-2, 1e-3}) {
        const double fd2 =
            (bracket_integral(-h) - 2.0 * bracket_integral(0.0) + bracket_integral(h)) /
            (h * h);
        CHECK(fd2 * h == doctest::Approx(-1.0).epsilon(0.05));
    }
}

TEST_CASE("residue identity: direct route equals factored route") {
    const PdeParams params(1.0, 1.0, 2.0);
    const GridSpec grid = GridSpec::uniform(1, -6.0, 6.0, 481);
    const ResidueIdentity id = green_ansatz_residue(grid, 1.0, params, 1.0, kOrder2);

    CHECK(id.linf_gap <= 1e-4);
    CHECK(id.direct.l2 > 1e-3); // the ansatz is not a solution
    CHECK(id.factored.l2 > 1e-3);
    CHECK(id.direct.l2 == doctest::Approx(id.factored.l2).epsilon(1e-2));

    // the gap is quadrature-and-FD noise, far below the residual itself
    CHECK(id.linf_gap < 1e-3 * id.direct.linf);
}

TEST_CASE("residue identity gap shrinks ~h^2 under refinement") {
    const PdeParams params(1.0, 1.0, 2.0);
    const GridSpec coarse = GridSpec::uniform(1, -6.0, 6.0, 481);
    const GridSpec fine = GridSpec::uniform(1, -6.0, 6.0, 961);
    const double g1 = green_ansatz_residue(coarse, 1.0, params, 1.0, kOrder2).linf_gap;
    const double g2 = green_ansatz_residue(fine, 1.0, params, 1.0, kOrder2).linf_gap;
    CHECK(g1 / g2 >= 3.5);
}

TEST_CASE("residue identity also holds under the order-4 stencil") {
    const PdeParams params(1.0, 1.0, 2.0);
    const GridSpec grid = GridSpec::uniform(1, -6.0, 6.0, 241);
    const StencilSpec order4{4, 0.0, std::nullopt};
    const ResidueIdentity id2 = green_ansatz_residue(grid, 1.0, params, 1.0, kOrder2);
    const ResidueIdentity id4 = green_ansatz_residue(grid, 1.0, params, 1.0, order4);
    // away from the origin everything is smooth, so the higher order wins
    CHECK(id4.linf_gap < 0.1 * id2.linf_gap);
    CHECK(id4.direct.l2 == doctest::Approx(id2.direct.l2).epsilon(0.02));
}

TEST_CASE("residue norms shrink by > 10x from n = 2 to n = 1.01") {
    const PdeParams n2(1.0, 1.0, 2.0);
    const PdeParams n101(1.0, 1.0, 1.01);
    const GridSpec grid = GridSpec::uniform(1, -6.0, 6.0, 241);
    const ResidueIdentity a = green_ansatz_residue(grid, 1.0, n2, 1.0, kOrder2);
    const ResidueIdentity b = green_ansatz_residue(grid, 1.0, n101, 1.0, kOrder2);
    CHECK(b.direct.l2 < a.direct.l2 / 10.0);
    CHECK(b.factored.l2 < a.factored.l2 / 10.0);
    CHECK(b.direct.linf < a.direct.linf / 10.0);
}

TEST_CASE("scaling sweep decreases strictly toward n = 1") {
    const PdeParams base(1.0, 1.0, 2.0);
    const double ns[] = {2.0, 1.5, 1.1, 1.01, 1.001};
    const GridSpec grid = GridSpec::uniform(1, -6.0, 6.0, 241);
    const auto sweep = residue_scaling_sweep(base, ns, grid, 1.0, 1.0, kOrder2);
    REQUIRE(sweep.size() == 5);
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        CHECK(sweep[i].l2 < sweep[i - 1].l2);
    }
    CHECK(sweep.back().l2 <= sweep.front().l2 / 100.0);

    const double bad_order[] = {1.5, 2.0};
    CHECK_THROWS_AS(residue_scaling_sweep(base, bad_order, grid, 1.0, 1.0, kOrder2),
                    DomainError);
    const double bad_n[] = {2.0, 1.0};
    CHECK_THROWS_AS(residue_scaling_sweep(base, bad_n, grid, 1.0, 1.0, kOrder2),
                    DomainError);
}

TEST_CASE("classification separates constant from curved profiles (1D and 2D)") {
    SUBCASE("1D, n = 2, positive window") {
        const PdeParams params(1.0, 1.0, 2.0);
        const GridSpec grid = GridSpec::uniform(1, 0.5, 1.5, 41);
        const std::vector<SpatialProfile> profiles = {ConstantProfile{1.0},
                                                      LinearProfile{{1.0, 0, 0}, 0.0},
                                                      GaussianProfile{1.0, 1.0},
                                                      ConstantProfile{0.0}};
        const auto rows = separable_classification(profiles, params, grid, 1.0, kOrder2);
        REQUIRE(rows.size() == 4);
        CHECK(rows[0].exact);
        CHECK_FALSE(rows[1].exact);
        // linf of 2t/(xt+1)^3 over the interior peaks at its left edge
        const double x_left = grid.coord(0, 3);
        CHECK(rows[1].linf ==
              doctest::Approx(2.0 / std::pow(1.0 + x_left, 3)).epsilon(1e-3));
        CHECK_FALSE(rows[2].exact);
        CHECK(rows[3].exact); // trivial member
    }
    SUBCASE("2D, n = 3, plane profile") {
        const PdeParams params(1.0, 1.0, 3.0);
        const GridSpec grid = GridSpec::uniform(2, -1.0, 1.0, 25);
        const std::vector<SpatialProfile> profiles = {
            ConstantProfile{0.7}, LinearProfile{{1.0, 0.5, 0}, 3.0},
            GaussianProfile{1.0, 1.0}};
        const auto rows = separable_classification(profiles, params, grid, 1.0, kOrder2);
        CHECK(rows[0].exact);
        CHECK_FALSE(rows[1].exact);
        CHECK_FALSE(rows[2].exact);
    }
    SUBCASE("3D trivial profile stays exact") {
        const PdeParams params(1.0, 1.0, 2.0);
        const GridSpec grid = GridSpec::uniform(3, -1.0, 1.0, 13);
        const std::vector<SpatialProfile> profiles = {ConstantProfile{0.0}};
        const auto rows = separable_classification(profiles, params, grid, 0.5, kOrder2);
        CHECK(rows[0].exact);
        CHECK(rows[0].linf == 0.0);
    }
    SUBCASE("t = 0 is refused: everything is exact there") {
        const PdeParams params(1.0, 1.0, 2.0);
        const GridSpec grid = GridSpec::uniform(1, 0.5, 1.5, 41);
        const std::vector<SpatialProfile> profiles = {ConstantProfile{1.0}};
        CHECK_THROWS_AS(separable_classification(profiles, params, grid, 0.0, kOrder2),
                        DomainError);
    }
}

TEST_CASE("non-exact separable norms are refinement-stable") {
    // a profile whose residual decays at the window edges, so the margin
    // shift under refinement cannot move the norm
    const PdeParams params(1.0, 1.0, 2.0);
    const GridSpec coarse = GridSpec::uniform(1, -5.0, 5.0, 101);
    const GridSpec fine = GridSpec::uniform(1, -5.0, 5.0, 201);
    const Candidate gauss = Separable{GaussianProfile{1.0, 1.0}};
    const double a = apply_operator(gauss, coarse, 1.0, params, kOrder2).l2;
    const double b = apply_operator(gauss, fine, 1.0, params, kOrder2).l2;
    CHECK(std::abs(a - b) / a < 0.05);
}

TEST_CASE("h_override computes derivatives off-grid at the requested step") {
    const PdeParams params(1.0, 1.0, 2.0);
    const GridSpec grid = GridSpec::uniform(1, 0.5, 1.5, 41);
    StencilSpec fine_step{2, 0.0, Coord{1e-3, 0, 0}};
    const Candidate lin = Separable{LinearProfile{{1.0, 0, 0}, 0.0}};
    const ResidualReport rep = apply_operator(lin, grid, 1.0, params, fine_step);
    // truncation now scales with the override step, not the grid spacing
    CHECK(rep.residual.values[20] == doctest::Approx(0.25).epsilon(1e-5));
    StencilSpec bad{2, 0.0, Coord{-1.0, 0, 0}};
    CHECK_THROWS_AS(apply_operator(lin, grid, 1.0, params, bad), DomainError);
}
