// nws-bench: compares the OpenMP kernels against the serial reference and
// reports speedups. Results must be bit-identical between the two paths.

#include <chrono>
#include <cstdio>
#include <vector>

#include "nws/candidates.hpp"
#include "nws/kernels.hpp"
#include "nws/parallel.hpp"
#include "nws/solver.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <class F>
double time_best_of(int reps, const F& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        f();
        best = std::min(best, ms_since(t0));
    }
    return best;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) {
            return false;
        }
    }
    return true;
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-28s %10.2f ms %10.2f ms   %5.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main() {
    nws::apply_thread_cap();
    std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "openmp", "speedup");

    // Laplacian, 2D 1025^2, order 2.
    {
        const nws::GridSpec grid = nws::GridSpec::uniform(2, -1.0, 1.0, 1025);
        const auto total = static_cast<std::size_t>(grid.total_points());
        std::vector<double> u(total);
        for (std::size_t i = 0; i < total; ++i) {
            const nws::Coord p = grid.point(static_cast<std::int64_t>(i));
            u[i] = p[0] * p[0] - 0.5 * p[1];
        }
        std::vector<double> out_s(total), out_p(total), out_r(total);
        const double t_s = time_best_of(3, [&] {
            nws::kernels::laplacian(grid, nws::Bc::dirichlet, u, 2, out_s, nws::Exec::serial);
        });
        const double t_p = time_best_of(3, [&] {
            nws::kernels::laplacian(grid, nws::Bc::dirichlet, u, 2, out_p, nws::Exec::parallel);
        });
        nws::kernels::laplacian_reference(grid, nws::Bc::dirichlet, u, 2, out_r);
        report("laplacian 2d 1025^2", t_s, t_p,
               bitwise_equal(out_s, out_p) && bitwise_equal(out_s, out_r));
    }

    // Candidate sampling (separable gaussian), 2D 513^2.
    {
        const nws::GridSpec grid = nws::GridSpec::uniform(2, -3.0, 3.0, 513);
        const nws::PdeParams params(1.0, 1.0, 2.0);
        const nws::Candidate cand = nws::Separable{nws::GaussianProfile{1.0, 1.0}};
        nws::Field f_s = nws::Field::zeros(grid, 0.0);
        nws::Field f_p = nws::Field::zeros(grid, 0.0);
        const double t_s = time_best_of(3, [&] {
            f_s = nws::sample(cand, grid, 1.0, params, {}, nws::Exec::serial);
        });
        const double t_p = time_best_of(3, [&] {
            f_p = nws::sample(cand, grid, 1.0, params, {}, nws::Exec::parallel);
        });
        report("sample separable 513^2", t_s, t_p, bitwise_equal(f_s.values, f_p.values));
    }

    // Full RK4 solve, 1D heat decay, 2001 points.
    {
        const nws::GridSpec grid = nws::GridSpec::uniform(1, -10.0, 10.0, 2001);
        const nws::PdeParams params(1.0, 1.0, 1.0);
        const nws::Candidate cand = nws::LinearHeat{0.5};
        const nws::Field u0 = nws::sample(cand, grid, 0.0, params);
        const double snaps[] = {0.05};
        nws::SolverConfig cfg_s{grid, nws::Bc::dirichlet, 0.0, 0.4, nws::Exec::serial};
        nws::SolverConfig cfg_p{grid, nws::Bc::dirichlet, 0.0, 0.4, nws::Exec::parallel};
        nws::Trajectory traj_s(params, cfg_s.bc);
        nws::Trajectory traj_p(params, cfg_p.bc);
        const double t_s =
            time_best_of(2, [&] { traj_s = nws::solve(u0, params, cfg_s, snaps); });
        const double t_p =
            time_best_of(2, [&] { traj_p = nws::solve(u0, params, cfg_p, snaps); });
        report("rk4 solve 1d 2001pts", t_s, t_p,
               bitwise_equal(traj_s.snapshots.back().second.values,
                             traj_p.snapshots.back().second.values));
    }

    return 0;
}
