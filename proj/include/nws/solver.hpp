#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nws/candidates.hpp"
#include "nws/kernels.hpp"

namespace nws {

/// Method-of-lines configuration: order-2 central Laplacian in space,
/// classic RK4 in time, explicit diffusive CFL control.
struct SolverConfig {
    GridSpec grid;
    Bc bc = Bc::dirichlet;
    /// Explicit step; 0 selects safety * h^2 / (2 * dim * nu). A step above
    /// h^2 / (2 * dim * nu) is refused.
    double dt = 0.0;
    double safety = 0.4;
    Exec exec = Exec::parallel;
};

struct StepDiagnostics {
    double t;
    double max_abs;
    double min_value;
};

enum class RunStatus { ok, blow_up };

struct Trajectory {
    PdeParams params;
    Bc bc;
    std::vector<std::pair<double, Field>> snapshots;
    std::vector<StepDiagnostics> diagnostics;
    RunStatus status = RunStatus::ok;
    /// Last time with finite state when status == blow_up.
    std::optional<double> blow_up_time;
    std::int64_t steps_taken = 0;

    Trajectory(PdeParams p, Bc b) : params(p), bc(b) {}
};

/// Diffusive CFL bound h^2 / (2 * dim * nu) for a grid.
double cfl_limit(const GridSpec& grid, double nu);

/// Advances u0 from u0.t and records a snapshot at each requested time
/// (strictly increasing, first >= u0.t). Steps land on snapshot times
/// exactly by rounding the local step count up. A non-finite value (or a
/// negative one under fractional n) aborts with a partial trajectory.
Trajectory solve(const Field& u0, const PdeParams& params, const SolverConfig& config,
                 std::span<const double> snapshot_times);

struct GapSample {
    double t;
    double linf_gap;
};

/// Starts the solver from the candidate at t_start and reports the linf gap
/// between solver truth and the closed form at each snapshot. Exact
/// candidates stay at the discretization floor; non-solutions drift away.
std::vector<GapSample> track_candidate(const Candidate& c, const PdeParams& params,
                                       const SolverConfig& config, double t_start,
                                       double t_end,
                                       std::span<const double> snapshot_times,
                                       const quad::Tolerance& tol = {});

struct ConvergenceRow {
    double h;
    double error;
    /// log2(e_h / e_{h/2}); NaN on the first row.
    double observed_order;
    /// Errors at the time-step/rounding floor; order not meaningful.
    bool dt_limited;
    /// Error grew under refinement while above the floor.
    bool non_monotone;
};

/// A 1D problem with an exact reference solution for Richardson studies.
struct ConvergenceProblem {
    Candidate reference;
    PdeParams params;
    double lo;
    double hi;
    Bc bc = Bc::dirichlet;
    double t_start;
    double t_end;
};

/// Solves the problem at each resolution (at least 3, each halving h) and
/// measures the observed order of the final-time linf error.
std::vector<ConvergenceRow> convergence_study(const ConvergenceProblem& problem,
                                              std::span<const int> points_levels,
                                              Exec exec = Exec::parallel);

} // namespace nws
