#include "nws/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "nws/format.hpp"

namespace nws {

namespace {

bool on_boundary(const GridSpec& grid, std::int64_t i) {
    const std::array<int, 3> mi = grid.multi_index(i);
    for (int a = 0; a < grid.dim; ++a) {
        if (mi[a] == 0 || mi[a] == grid.points_per_axis - 1) {
            return true;
        }
    }
    return false;
}

struct Stepper {
    const GridSpec& grid;
    const PdeParams& params;
    Bc bc;
    Exec exec;
    bool fractional;
    std::int64_t total;
    std::vector<double> lap, k1, k2, k3, k4, stage;
    std::vector<char> boundary_mask;
    std::atomic<bool> negative_seen{false};

    Stepper(const GridSpec& g, const PdeParams& p, Bc b, Exec e)
        : grid(g), params(p), bc(b), exec(e), fractional(!p.integer_power()),
          total(g.total_points()) {
        const auto n = static_cast<std::size_t>(total);
        lap.resize(n);
        k1.resize(n);
        k2.resize(n);
        k3.resize(n);
        k4.resize(n);
        stage.resize(n);
        boundary_mask.resize(n, 0);
        if (bc == Bc::dirichlet) {
            for (std::int64_t i = 0; i < total; ++i) {
                boundary_mask[static_cast<std::size_t>(i)] = on_boundary(grid, i) ? 1 : 0;
            }
        }
    }

    // out = nu * lap(v) - beta * v^n; homogeneous Dirichlet pins boundary
    // nodes by zeroing their rate. Fractional powers flag negative states
    // instead of clamping them.
    void rhs(std::span<const double> v, std::span<double> out) {
        kernels::laplacian(grid, bc, v, 2, lap, exec);
        const double nu = params.nu;
        const double beta = params.beta;
        const double n = params.n;
        const bool frac = fractional;
        parallel_for(total, exec, [&](std::int64_t i) {
            const auto k = static_cast<std::size_t>(i);
            if (boundary_mask[k]) {
                out[k] = 0.0;
                return;
            }
            const double vi = v[k];
            double reaction;
            if (frac) {
                if (vi < 0.0) {
                    negative_seen.store(true, std::memory_order_relaxed);
                    reaction = 0.0;
                } else {
                    reaction = std::pow(vi, n);
                }
            } else {
                reaction = pow_real(vi, n);
            }
            out[k] = nu * lap[k] - beta * reaction;
        });
    }

    // Classic RK4; returns false when the step produced a non-finite value or
    // a negative state under a fractional power.
    bool step(std::vector<double>& u, double dt) {
        rhs(u, k1);
        kernels::axpy(0.5 * dt, u, k1, stage, exec);
        rhs(stage, k2);
        kernels::axpy(0.5 * dt, u, k2, stage, exec);
        rhs(stage, k3);
        kernels::axpy(dt, u, k3, stage, exec);
        rhs(stage, k4);
        const double w = dt / 6.0;
        parallel_for(total, exec, [&](std::int64_t i) {
            const auto k = static_cast<std::size_t>(i);
            u[k] += w * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        });
        if (negative_seen.load(std::memory_order_relaxed)) {
            return false;
        }
        for (std::int64_t i = 0; i < total; ++i) {
            const double v = u[static_cast<std::size_t>(i)];
            if (!std::isfinite(v) || (fractional && v < 0.0)) {
                return false;
            }
        }
        return true;
    }
};

} // namespace

double cfl_limit(const GridSpec& grid, double nu) {
    double min_h2 = std::numeric_limits<double>::infinity();
    for (int a = 0; a < grid.dim; ++a) {
        const double h = grid.spacing(a);
        min_h2 = std::min(min_h2, h * h);
    }
    return min_h2 / (2.0 * static_cast<double>(grid.dim) * nu);
}

Trajectory solve(const Field& u0, const PdeParams& params, const SolverConfig& config,
                 std::span<const double> snapshot_times) {
    if (!(u0.grid == config.grid)) {
        throw DomainError("solve: initial field grid does not match the solver grid");
    }
    if (!(config.safety > 0.0) || config.safety > 1.0) {
        throw DomainError("solve: stability safety factor must lie in (0, 1]");
    }
    const double limit = cfl_limit(config.grid, params.nu);
    double dt_base;
    if (config.dt > 0.0) {
        if (config.dt > limit) {
            throw DomainError("solve: explicit dt " + format_double(config.dt) +
                              " violates the diffusive CFL bound h^2/(2*dim*nu) = " +
                              format_double(limit));
        }
        dt_base = config.dt;
    } else {
        dt_base = config.safety * limit;
    }
    if (!params.integer_power()) {
        for (const double v : u0.values) {
            if (v < 0.0) {
                throw DomainError("solve: fractional n requires a non-negative initial "
                                  "state; clamping is not applied");
            }
        }
    }
    for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
        if (snapshot_times[i] < u0.t) {
            throw DomainError("solve: snapshot times must not precede the initial time");
        }
        if (i > 0 && !(snapshot_times[i] > snapshot_times[i - 1])) {
            throw DomainError("solve: snapshot times must be strictly increasing");
        }
    }

    Trajectory traj(params, config.bc);
    std::vector<double> state = u0.values;
    if (config.bc == Bc::dirichlet) {
        const std::int64_t total = config.grid.total_points();
        for (std::int64_t i = 0; i < total; ++i) {
            if (on_boundary(config.grid, i)) {
                state[static_cast<std::size_t>(i)] = 0.0;
            }
        }
    }
    traj.snapshots.emplace_back(u0.t, Field(config.grid, u0.t, state));

    Stepper stepper(config.grid, params, config.bc, config.exec);
    double t_now = u0.t;
    for (const double target : snapshot_times) {
        const double seg = target - t_now;
        if (seg <= 0.0) {
            if (target > traj.snapshots.back().first) {
                traj.snapshots.emplace_back(target, Field(config.grid, target, state));
            }
            continue;
        }
        const auto steps = static_cast<std::int64_t>(std::ceil(seg / dt_base - 1e-12));
        const double dt = seg / static_cast<double>(std::max<std::int64_t>(steps, 1));
        for (std::int64_t s = 0; s < std::max<std::int64_t>(steps, 1); ++s) {
            const double t_before = t_now;
            if (!stepper.step(state, dt)) {
                traj.status = RunStatus::blow_up;
                traj.blow_up_time = t_before;
                return traj;
            }
            ++traj.steps_taken;
            t_now = t_before + dt;
            double max_abs = 0.0;
            double min_v = std::numeric_limits<double>::infinity();
            for (const double v : state) {
                max_abs = std::max(max_abs, std::abs(v));
                min_v = std::min(min_v, v);
            }
            traj.diagnostics.push_back(StepDiagnostics{t_now, max_abs, min_v});
        }
        t_now = target; // kill accumulated roundoff at the landing point
        traj.snapshots.emplace_back(target, Field(config.grid, target, state));
    }
    return traj;
}

std::vector<GapSample> track_candidate(const Candidate& c, const PdeParams& params,
                                       const SolverConfig& config, double t_start,
                                       double t_end,
                                       std::span<const double> snapshot_times,
                                       const quad::Tolerance& tol) {
    if (!(t_start < t_end)) {
        throw DomainError("track_candidate: requires t_start < t_end");
    }
    for (const double t : snapshot_times) {
        if (t < t_start || t > t_end) {
            throw DomainError("track_candidate: snapshot times must lie in "
                              "[t_start, t_end]");
        }
    }
    const Field u0 = sample(c, config.grid, t_start, params, tol, config.exec);
    const Trajectory traj = solve(u0, params, config, snapshot_times);
    if (traj.status != RunStatus::ok) {
        throw DomainError("track_candidate: solver blew up at t = " +
                          format_double(traj.blow_up_time.value_or(t_start)));
    }
    std::vector<GapSample> out;
    out.reserve(traj.snapshots.size());
    for (const auto& [t, field] : traj.snapshots) {
        const Field exact = sample(c, config.grid, t, params, tol, config.exec);
        double gap = 0.0;
        for (std::size_t i = 0; i < field.values.size(); ++i) {
            gap = std::max(gap, std::abs(field.values[i] - exact.values[i]));
        }
        out.push_back(GapSample{t, gap});
    }
    return out;
}

std::vector<ConvergenceRow> convergence_study(const ConvergenceProblem& problem,
                                              std::span<const int> points_levels,
                                              Exec exec) {
    if (points_levels.size() < 3) {
        throw DomainError("convergence_study: needs at least 3 resolutions");
    }
    std::vector<ConvergenceRow> rows;
    rows.reserve(points_levels.size());
    double ref_scale = 1.0;
    for (std::size_t lvl = 0; lvl < points_levels.size(); ++lvl) {
        const GridSpec grid = GridSpec::uniform(1, problem.lo, problem.hi,
                                                points_levels[lvl], 0.0,
                                                problem.t_end, 1);
        if (lvl > 0) {
            const double ratio =
                rows[lvl - 1].h / grid.spacing(0);
            if (std::abs(ratio - 2.0) > 0.01) {
                throw DomainError("convergence_study: each level must halve h (got ratio " +
                                  format_double(ratio) + ")");
            }
        }
        SolverConfig config{grid, problem.bc, 0.0, 0.4, exec};
        const std::array<double, 1> snap{problem.t_end};
        const std::vector<GapSample> gaps = track_candidate(
            problem.reference, problem.params, config, problem.t_start, problem.t_end, snap);
        const double error = gaps.back().linf_gap;
        if (lvl == 0) {
            const Field ref = sample(problem.reference, grid, problem.t_end, problem.params);
            for (const double v : ref.values) {
                ref_scale = std::max(ref_scale, std::abs(v));
            }
        }
        ConvergenceRow row;
        row.h = grid.spacing(0);
        row.error = error;
        row.dt_limited = error < 1e-12 * ref_scale;
        if (lvl == 0) {
            row.observed_order = std::numeric_limits<double>::quiet_NaN();
            row.non_monotone = false;
        } else {
            const double prev = rows[lvl - 1].error;
            row.observed_order = std::log2(prev / error);
            row.non_monotone = error >= prev && !row.dt_limited && !rows[lvl - 1].dt_limited;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace nws
