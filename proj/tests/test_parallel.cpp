#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "nws/candidates.hpp"
#include "nws/kernels.hpp"
#include "nws/norms.hpp"
#include "nws/solver.hpp"

#include "oracles.hpp"

using namespace nws;

namespace {

std::vector<double> random_field(const GridSpec& grid, oracle::Rng& rng) {
    std::vector<double> v(static_cast<std::size_t>(grid.total_points()));
    for (double& x : v) {
        x = rng.uniform(-2.0, 2.0);
    }
    return v;
}

} // namespace

TEST_CASE("laplacian: OpenMP path, serial path and reference agree bitwise") {
    oracle::Rng rng(1001);
    for (const int dim : {1, 2, 3}) {
        for (const Bc bc : {Bc::periodic, Bc::dirichlet, Bc::neumann}) {
            for (const int order : {2, 4}) {
                const int npts = dim == 3 ? 13 : 41;
                const GridSpec grid = GridSpec::uniform(dim, -1.5, 2.0, npts);
                const auto u = random_field(grid, rng);
                std::vector<double> a(u.size()), b(u.size()), c(u.size());
                kernels::laplacian(grid, bc, u, order, a, Exec::parallel);
                kernels::laplacian(grid, bc, u, order, b, Exec::serial);
                kernels::laplacian_reference(grid, bc, u, order, c);
                for (std::size_t i = 0; i < u.size(); ++i) {
                    CHECK(a[i] == b[i]);
                    CHECK(a[i] == c[i]);
                }
            }
        }
    }
}

TEST_CASE("laplacian of smooth data matches the analytic value") {
    // u = x^2 + 2 y^2 has laplacian 6 everywhere; order-2 stencils are exact
    // on quadratics up to rounding.
    const GridSpec grid = GridSpec::uniform(2, -1.0, 1.0, 33);
    std::vector<double> u(static_cast<std::size_t>(grid.total_points()));
    for (std::int64_t i = 0; i < grid.total_points(); ++i) {
        const Coord p = grid.point(i);
        u[static_cast<std::size_t>(i)] = p[0] * p[0] + 2.0 * p[1] * p[1];
    }
    std::vector<double> out(u.size());
    kernels::laplacian(grid, Bc::dirichlet, u, 2, out, Exec::parallel);
    for (std::int64_t i = 0; i < grid.total_points(); ++i) {
        const auto m = grid.multi_index(i);
        if (m[0] > 0 && m[0] < 32 && m[1] > 0 && m[1] < 32) {
            CHECK(out[static_cast<std::size_t>(i)] == doctest::Approx(6.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("periodic wrap uses the duplicated-endpoint convention") {
    // on a periodic grid the stored endpoints coincide; the left neighbor of
    // node 0 must be node N-2, not node N-1
    const GridSpec grid = GridSpec::uniform(1, 0.0, 1.0, 9);
    std::vector<double> u(9);
    for (int i = 0; i < 9; ++i) {
        u[static_cast<std::size_t>(i)] =
            std::sin(2.0 * 3.14159265358979323846 * grid.coord(0, i));
    }
    std::vector<double> out(9);
    kernels::laplacian(grid, Bc::periodic, u, 2, out, Exec::serial);
    // endpoints represent the same physical point: identical results
    CHECK(out[0] == doctest::Approx(out[8]).epsilon(1e-12));
    // and the value approximates -(2 pi)^2 sin(0) = 0
    CHECK(out[0] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("axpy modes agree bitwise") {
    oracle::Rng rng(2002);
    const GridSpec grid = GridSpec::uniform(1, 0.0, 1.0, 10001);
    const auto a = random_field(grid, rng);
    const auto b = random_field(grid, rng);
    std::vector<double> s(a.size()), p(a.size());
    kernels::axpy(0.37, a, b, s, Exec::serial);
    kernels::axpy(0.37, a, b, p, Exec::parallel);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(s[i] == p[i]);
    }
}

TEST_CASE("candidate sampling agrees bitwise across execution modes") {
    const PdeParams params(1.0, 1.0, 2.0);
    const GridSpec grid = GridSpec::uniform(1, -6.0, 6.0, 201);
    const Candidate cand = GreenAnsatz{1.0, 1.0};
    const Field serial = sample(cand, grid, 1.0, params, {}, Exec::serial);
    const Field parallel = sample(cand, grid, 1.0, params, {}, Exec::parallel);
    for (std::size_t i = 0; i < serial.values.size(); ++i) {
        CHECK(serial.values[i] == parallel.values[i]);
    }
}

TEST_CASE("solver trajectories agree bitwise across execution modes") {
    const GridSpec grid = GridSpec::uniform(2, -2.0, 2.0, 96); // above the grain
    const PdeParams params(1.0, 1.0, 2.0);
    std::vector<double> v(static_cast<std::size_t>(grid.total_points()));
    for (std::int64_t i = 0; i < grid.total_points(); ++i) {
        const Coord p = grid.point(i);
        v[static_cast<std::size_t>(i)] = std::exp(-(p[0] * p[0] + p[1] * p[1]));
    }
    const double snaps[] = {0.02};
    SolverConfig cs{grid, Bc::dirichlet, 0.0, 0.4, Exec::serial};
    SolverConfig cp{grid, Bc::dirichlet, 0.0, 0.4, Exec::parallel};
    const Trajectory ts = solve(Field(grid, 0.0, v), params, cs, snaps);
    const Trajectory tp = solve(Field(grid, 0.0, v), params, cp, snaps);
    const auto& fs = ts.snapshots.back().second.values;
    const auto& fp = tp.snapshots.back().second.values;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        CHECK(fs[i] == fp[i]);
    }
}

TEST_CASE("norms are a serial reduction: repeated calls are identical") {
    oracle::Rng rng(3003);
    const GridSpec grid = GridSpec::uniform(2, -1.0, 1.0, 65);
    const Field f(grid, 0.0, random_field(grid, rng));
    const Norms first = norms(f, 1);
    for (int rep = 0; rep < 5; ++rep) {
        const Norms again = norms(f, 1);
        CHECK(again.l2 == first.l2);
        CHECK(again.linf == first.linf);
    }
}

TEST_CASE("worker cap is at least one") {
    CHECK(max_threads() >= 1);
}
