// nws-lab: command-line front end for the NWS verification laboratory.
//
// Subcommands: residual | claims | solve | track | converge | limits.
// Exit codes: 0 success, 1 claims failure, 2 domain error, 3 non-convergence,
// 4 solver blow-up, 64 usage error.

#include <algorithm>
#include <clocale>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nws/claims.hpp"
#include "nws/experiment_spec.hpp"
#include "nws/format.hpp"
#include "nws/heat_kernel.hpp"
#include "nws/report_io.hpp"
#include "nws/residual.hpp"
#include "nws/solver.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct CommonArgs {
    std::string spec_path;
    std::string out_dir = "out";
    std::string grid_arg;
    nws::ExperimentSpec s;
};

void parse_grid_arg(const std::string& text, nws::ExperimentSpec& s) {
    // form: <dim>d:<lo>:<hi>:<points>, e.g. 1d:-5:5:401
    const auto parts = [&] {
        std::vector<std::string> out;
        std::string item;
        std::istringstream in(text);
        while (std::getline(in, item, ':')) {
            out.push_back(item);
        }
        return out;
    }();
    if (parts.size() != 4 || parts[0].size() != 2 || parts[0][1] != 'd') {
        throw nws::DomainError("grid argument must look like 1d:-5:5:401, got '" + text +
                               "'");
    }
    s.dim = parts[0][0] - '0';
    s.lo = nws::parse_double(parts[1]);
    s.hi = nws::parse_double(parts[2]);
    s.points = static_cast<int>(nws::parse_double(parts[3]));
}

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--spec", a.spec_path, "experiment spec file (flat key=value)");
    cmd->add_option("--out", a.out_dir, "output directory");
    cmd->add_option("--name", a.s.name, "experiment name");
    cmd->add_option("--nu", a.s.nu, "diffusion coefficient");
    cmd->add_option("--beta", a.s.beta, "medium-response coefficient");
    cmd->add_option("--n", a.s.n, "nonlinearity power");
    cmd->add_option("--candidate", a.s.candidate,
                    "candidate descriptor (trivial | separable:constant:<c> | "
                    "separable:linear:<c...>,<offset> | separable:gaussian:<a>,<w> | "
                    "green-ansatz:B=<v>,C=<v> | linear-heat:t0=<v>)");
    cmd->add_option("--grid", a.grid_arg, "spatial grid, <dim>d:<lo>:<hi>:<points>");
    cmd->add_option("--t", a.s.t, "evaluation time");
    cmd->add_option("--t0", a.s.t0, "window start time");
    cmd->add_option("--t1", a.s.t1, "window end time");
    cmd->add_option("--bc", a.s.bc, "boundary condition: periodic|dirichlet|neumann");
    cmd->add_option("--dt", a.s.dt, "explicit solver step (0 = CFL auto)");
    cmd->add_option("--safety", a.s.safety, "CFL safety factor");
    cmd->add_option("--order", a.s.order, "spatial FD order (2 or 4)");
    cmd->add_option("--dt-fd", a.s.dt_fd, "temporal FD step (0 = auto)");
    cmd->add_option("--quad-rel", a.s.quad_rel, "quadrature relative tolerance");
    cmd->add_option("--quad-abs", a.s.quad_abs, "quadrature absolute tolerance");
    cmd->add_option("--max-subdiv", a.s.max_subdivisions, "quadrature subdivision cap");
}

// --spec supplies the base; explicitly passed flags override it.
void finalize(CLI::App* cmd, CommonArgs& a) {
    if (!a.spec_path.empty()) {
        nws::ExperimentSpec from_file =
            nws::ExperimentSpec::parse(nws::io::read_file(a.spec_path));
        const nws::ExperimentSpec flags = a.s;
        a.s = from_file;
        const auto take = [&](const char* opt, auto member) {
            const CLI::Option* o = cmd->get_option_no_throw(opt);
            if (o != nullptr && o->count() > 0) {
                a.s.*member = flags.*member;
            }
        };
        take("--name", &nws::ExperimentSpec::name);
        take("--nu", &nws::ExperimentSpec::nu);
        take("--beta", &nws::ExperimentSpec::beta);
        take("--n", &nws::ExperimentSpec::n);
        take("--candidate", &nws::ExperimentSpec::candidate);
        take("--t", &nws::ExperimentSpec::t);
        take("--t0", &nws::ExperimentSpec::t0);
        take("--t1", &nws::ExperimentSpec::t1);
        take("--bc", &nws::ExperimentSpec::bc);
        take("--dt", &nws::ExperimentSpec::dt);
        take("--safety", &nws::ExperimentSpec::safety);
        take("--order", &nws::ExperimentSpec::order);
        take("--dt-fd", &nws::ExperimentSpec::dt_fd);
        take("--quad-rel", &nws::ExperimentSpec::quad_rel);
        take("--quad-abs", &nws::ExperimentSpec::quad_abs);
        take("--rel-tol", &nws::ExperimentSpec::quad_rel);
        take("--abs-tol", &nws::ExperimentSpec::quad_abs);
        take("--max-subdiv", &nws::ExperimentSpec::max_subdivisions);
    }
    if (!a.grid_arg.empty()) {
        parse_grid_arg(a.grid_arg, a.s);
    }
}

void apply_snapshots(CommonArgs& a, const CLI::App* cmd, const std::string& snaps_arg) {
    const CLI::Option* o = cmd->get_option_no_throw("--snapshots");
    if (o != nullptr && o->count() > 0) {
        a.s.snapshots.clear();
        std::istringstream in(snaps_arg);
        std::string item;
        while (std::getline(in, item, ',')) {
            a.s.snapshots.push_back(nws::parse_double(item));
        }
    }
}

nws::Bc parse_bc(const std::string& text) {
    if (text == "periodic") {
        return nws::Bc::periodic;
    }
    if (text == "dirichlet") {
        return nws::Bc::dirichlet;
    }
    if (text == "neumann") {
        return nws::Bc::neumann;
    }
    throw nws::DomainError("unknown boundary condition '" + text + "'");
}

nws::GridSpec grid_of(const nws::ExperimentSpec& s) {
    return nws::GridSpec::uniform(s.dim, s.lo, s.hi, s.points, s.t0,
                                  s.t1 > s.t0 ? s.t1 : s.t0 + 1.0, 1);
}

nws::quad::Tolerance quad_tol_of(const nws::ExperimentSpec& s) {
    return nws::quad::Tolerance{s.quad_rel, s.quad_abs, s.max_subdivisions};
}

json spec_json(const nws::ExperimentSpec& s) {
    json j;
    j["name"] = s.name;
    j["params"] = {{"nu", s.nu}, {"beta", s.beta}, {"n", s.n}};
    j["candidate"] = s.candidate;
    j["grid"] = {{"dim", s.dim}, {"lo", s.lo}, {"hi", s.hi}, {"points", s.points}};
    j["bc"] = s.bc;
    j["tolerances"] = {{"quad_rel", s.quad_rel},
                       {"quad_abs", s.quad_abs},
                       {"max_subdivisions", s.max_subdivisions}};
    return j;
}

void write_outputs(const CommonArgs& a, const std::string& basename, const json& j,
                   const std::string& csv_name, const std::string& csv) {
    fs::create_directories(a.out_dir);
    nws::io::write_file(fs::path(a.out_dir) / (basename + ".json"), j.dump(2) + "\n");
    if (!csv.empty()) {
        nws::io::write_file(fs::path(a.out_dir) / csv_name, csv);
    }
    nws::io::write_file(fs::path(a.out_dir) / (basename + "_spec.txt"), a.s.serialize());
}

int cmd_residual(CommonArgs& a, bool x0_check) {
    const nws::GridSpec grid = grid_of(a.s);
    const nws::PdeParams params(a.s.nu, a.s.beta, a.s.n);
    const nws::Candidate cand = nws::parse_candidate(a.s.candidate, a.s.dim);
    if (x0_check) {
        // Probe the origin integral up front; for n >= 1 + 2/dim it raises
        // the documented divergence error before any field work starts.
        nws::quad::integrate_G_power(nws::Coord{0, 0, 0}, a.s.dim, a.s.t, params,
                                     quad_tol_of(a.s));
    }
    const nws::StencilSpec stencil{a.s.order, a.s.dt_fd, std::nullopt};
    const nws::ResidualReport rep =
        nws::apply_operator(cand, grid, a.s.t, params, stencil, quad_tol_of(a.s));

    json j = spec_json(a.s);
    j["schema_version"] = 1;
    j["command"] = "residual";
    j["t"] = a.s.t;
    j["stencil"] = {{"spatial_order", stencil.spatial_order}, {"dt_fd", a.s.dt_fd}};
    j["interior_margin"] = rep.interior_margin;
    j["l2"] = rep.l2;
    j["linf"] = rep.linf;
    write_outputs(a, "residual", j, "residual.csv", nws::io::field_csv(rep.residual, "residual"));
    std::cout << "residual: l2=" << nws::format_double(rep.l2)
              << " linf=" << nws::format_double(rep.linf) << "\n";
    return 0;
}

int cmd_claims(CommonArgs& a, const std::string& dims_arg, bool serial) {
    nws::claims::Options opt;
    opt.quad_rel = a.s.quad_rel;
    opt.quad_abs = a.s.quad_abs;
    if (serial) {
        opt.exec = nws::Exec::serial;
    }
    if (!dims_arg.empty()) {
        opt.dims.clear();
        std::istringstream in(dims_arg);
        std::string item;
        while (std::getline(in, item, ',')) {
            opt.dims.push_back(static_cast<int>(nws::parse_double(item)));
        }
    }
    const std::vector<nws::claims::Row> rows = nws::claims::run_all(opt);
    const std::string csv = nws::claims::to_csv(rows);
    fs::create_directories(a.out_dir);
    nws::io::write_file(fs::path(a.out_dir) / "claims.csv", csv);
    std::cout << csv;
    if (!nws::claims::all_pass(rows)) {
        std::cerr << "failing claims:\n";
        for (const auto& r : rows) {
            if (!r.pass) {
                std::cerr << "  " << r.id << ": measured " << nws::format_double(r.measured)
                          << " vs tolerance " << nws::format_double(r.tolerance) << " ("
                          << r.detail << ")\n";
            }
        }
        return 1;
    }
    return 0;
}

int cmd_solve(CommonArgs& a, const std::string& u0_arg) {
    const nws::GridSpec grid = grid_of(a.s);
    const nws::PdeParams params(a.s.nu, a.s.beta, a.s.n);
    nws::SolverConfig config{grid, parse_bc(a.s.bc), a.s.dt, a.s.safety, nws::Exec::parallel};
    const nws::Field u0 =
        u0_arg == "zero"
            ? nws::Field::zeros(grid, a.s.t0)
            : nws::sample(nws::parse_candidate(u0_arg, a.s.dim), grid, a.s.t0, params,
                          quad_tol_of(a.s));
    const nws::Trajectory traj = nws::solve(u0, params, config, a.s.snapshots);

    json j = spec_json(a.s);
    j["schema_version"] = 1;
    j["command"] = "solve";
    j["u0"] = u0_arg;
    j["dt"] = a.s.dt;
    j["safety"] = a.s.safety;
    j["steps_taken"] = traj.steps_taken;
    j["status"] = traj.status == nws::RunStatus::ok ? "ok" : "blow_up";
    if (!traj.diagnostics.empty()) {
        double max_abs = 0.0;
        double min_value = traj.diagnostics.front().min_value;
        for (const auto& d : traj.diagnostics) {
            max_abs = std::max(max_abs, d.max_abs);
            min_value = std::min(min_value, d.min_value);
        }
        j["diagnostics"] = {{"steps", traj.diagnostics.size()},
                            {"max_abs", max_abs},
                            {"min_value", min_value}};
    }
    json snaps = json::array();
    fs::create_directories(a.out_dir);
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        char name[64];
        std::snprintf(name, sizeof(name), "snapshot_%03zu.csv", k);
        nws::io::write_file(fs::path(a.out_dir) / name,
                            nws::io::field_csv(traj.snapshots[k].second, "u"));
        snaps.push_back({{"file", name}, {"t", traj.snapshots[k].first}});
    }
    j["snapshots"] = snaps;
    if (traj.status == nws::RunStatus::blow_up) {
        j["blow_up_time"] = traj.blow_up_time.value();
    }
    write_outputs(a, "trajectory", j, "", "");
    if (traj.status == nws::RunStatus::blow_up) {
        std::cerr << "solver blow-up: last good time t = "
                  << nws::format_double(traj.blow_up_time.value()) << "\n";
        return 4;
    }
    std::cout << "solve: " << traj.steps_taken << " steps, " << traj.snapshots.size()
              << " snapshots\n";
    return 0;
}

int cmd_track(CommonArgs& a) {
    const nws::GridSpec grid = grid_of(a.s);
    const nws::PdeParams params(a.s.nu, a.s.beta, a.s.n);
    nws::SolverConfig config{grid, parse_bc(a.s.bc), a.s.dt, a.s.safety, nws::Exec::parallel};
    const nws::Candidate cand = nws::parse_candidate(a.s.candidate, a.s.dim);
    const auto gaps = nws::track_candidate(cand, params, config, a.s.t0, a.s.t1,
                                           a.s.snapshots, quad_tol_of(a.s));
    std::string csv = "t,linf_gap\n";
    double max_gap = 0.0;
    for (const auto& g : gaps) {
        csv += nws::io::csv_number(g.t) + "," + nws::io::csv_number(g.linf_gap) + "\n";
        max_gap = std::max(max_gap, g.linf_gap);
    }
    json j = spec_json(a.s);
    j["schema_version"] = 1;
    j["command"] = "track";
    j["max_gap"] = max_gap;
    write_outputs(a, "track", j, "track.csv", csv);
    std::cout << "track: max linf gap " << nws::format_double(max_gap) << "\n";
    return 0;
}

int cmd_converge(CommonArgs& a, const std::string& points_arg) {
    const nws::PdeParams params(a.s.nu, a.s.beta, a.s.n);
    std::vector<int> levels;
    std::istringstream in(points_arg);
    std::string item;
    while (std::getline(in, item, ',')) {
        levels.push_back(static_cast<int>(nws::parse_double(item)));
    }
    nws::ConvergenceProblem problem{nws::parse_candidate(a.s.candidate, 1), params,
                                    a.s.lo,  a.s.hi, parse_bc(a.s.bc),
                                    a.s.t0,  a.s.t1};
    const auto rows = nws::convergence_study(problem, levels);
    std::string csv = "h,error,observed_order,dt_limited,non_monotone\n";
    for (const auto& r : rows) {
        csv += nws::io::csv_number(r.h) + "," + nws::io::csv_number(r.error) + "," +
               nws::io::csv_number(r.observed_order) + "," + (r.dt_limited ? "1" : "0") +
               "," + (r.non_monotone ? "1" : "0") + "\n";
    }
    json j = spec_json(a.s);
    j["schema_version"] = 1;
    j["command"] = "converge";
    write_outputs(a, "converge", j, "converge.csv", csv);
    std::cout << csv;
    return 0;
}

int cmd_limits(CommonArgs& a, const std::string& eps_arg, const std::string& sigma_arg,
               double x_arg) {
    const auto parse_list = [](const std::string& text) {
        std::vector<double> out;
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            out.push_back(nws::parse_double(item));
        }
        return out;
    };
    fs::create_directories(a.out_dir);
    const std::vector<double> epsilons = parse_list(eps_arg);
    const std::vector<double> sigmas = parse_list(sigma_arg);

    const auto limit = nws::linear_limit_check(a.s.t, a.s.beta, epsilons);
    std::string csv = "epsilon,value,deviation,bound\n";
    for (const auto& s : limit) {
        const double bound =
            2.0 * a.s.beta * a.s.t * a.s.t * s.epsilon * std::exp(-a.s.beta * a.s.t);
        csv += nws::io::csv_number(s.epsilon) + "," + nws::io::csv_number(s.value) + "," +
               nws::io::csv_number(s.deviation) + "," + nws::io::csv_number(bound) + "\n";
    }
    nws::io::write_file(fs::path(a.out_dir) / "limits_linear.csv", csv);

    const nws::PdeParams params(a.s.nu, a.s.beta, a.s.n);
    const auto nulls = nws::quad::null_interval_check(nws::Coord{x_arg, 0.0, 0.0}, 1,
                                                      params, sigmas, quad_tol_of(a.s));
    std::string null_csv = "sigma,value,abs_error_estimate,converged\n";
    for (const auto& [sigma, result] : nulls) {
        null_csv += nws::io::csv_number(sigma) + "," + nws::io::csv_number(result.value) +
                    "," + nws::io::csv_number(result.abs_error_estimate) + "," +
                    (result.converged ? "1" : "0") + "\n";
    }
    nws::io::write_file(fs::path(a.out_dir) / "limits_null.csv", null_csv);

    json j = spec_json(a.s);
    j["schema_version"] = 1;
    j["command"] = "limits";
    j["x"] = x_arg;
    write_outputs(a, "limits", j, "", "");
    std::cout << "limits: wrote limits_linear.csv and limits_null.csv\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    nws::apply_thread_cap();

    CLI::App app{"nws-lab: verification laboratory for the generalized "
                 "Newell-Whitehead-Segel equation u_t - nu*lap(u) + beta*u^n = 0"};
    app.require_subcommand(1);

    CommonArgs a;
    a.s.snapshots = {1.0};

    CLI::App* residual = app.add_subcommand("residual", "apply the operator to a candidate");
    add_common(residual, a);
    bool x0_check = false;
    residual->add_flag("--x0-check", x0_check,
                       "probe the x=0 time integral first (divergent for n >= 1 + 2/dim)");

    CLI::App* claims = app.add_subcommand("claims", "run the full claims-verification table");
    add_common(claims, a);
    std::string dims_arg;
    bool serial = false;
    claims->add_option("--dims", dims_arg, "restrict to these dimensions, e.g. 1 or 1,2");
    claims->add_flag("--serial", serial, "run the serial reference kernels");
    claims->add_option("--rel-tol", a.s.quad_rel, "quadrature relative tolerance");
    claims->add_option("--abs-tol", a.s.quad_abs, "quadrature absolute tolerance");

    CLI::App* solve = app.add_subcommand("solve", "advance an initial state with the "
                                                  "reference solver");
    add_common(solve, a);
    std::string u0_arg = "zero";
    std::string snaps_arg;
    solve->add_option("--u0", u0_arg, "initial state: zero or a candidate descriptor");
    solve->add_option("--snapshots", snaps_arg, "comma list of snapshot times");

    CLI::App* track = app.add_subcommand("track", "compare solver truth against a "
                                                  "closed-form candidate");
    add_common(track, a);
    track->add_option("--snapshots", snaps_arg, "comma list of snapshot times");

    CLI::App* converge = app.add_subcommand("converge", "Richardson study against an "
                                                        "exact reference");
    add_common(converge, a);
    std::string points_arg = "401,801,1601";
    converge->add_option("--points", points_arg, "comma list of per-level point counts");

    CLI::App* limits = app.add_subcommand("limits", "bracket limit and null-interval sweeps");
    add_common(limits, a);
    std::string eps_arg = "1e-2,1e-3,1e-4,1e-6";
    std::string sigma_arg = "1,0.01,0.0001";
    double x_arg = 1.0;
    limits->add_option("--epsilons", eps_arg, "epsilon sweep for the bracket limit");
    limits->add_option("--sigmas", sigma_arg, "sigma sweep for the null interval");
    limits->add_option("--x", x_arg, "spatial point for the null-interval integral");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (residual->parsed()) {
            finalize(residual, a);
            return cmd_residual(a, x0_check);
        }
        if (claims->parsed()) {
            finalize(claims, a);
            return cmd_claims(a, dims_arg, serial);
        }
        if (solve->parsed()) {
            finalize(solve, a);
            apply_snapshots(a, solve, snaps_arg);
            return cmd_solve(a, u0_arg);
        }
        if (track->parsed()) {
            finalize(track, a);
            apply_snapshots(a, track, snaps_arg);
            return cmd_track(a);
        }
        if (converge->parsed()) {
            finalize(converge, a);
            return cmd_converge(a, points_arg);
        }
        if (limits->parsed()) {
            finalize(limits, a);
            return cmd_limits(a, eps_arg, sigma_arg, x_arg);
        }
    } catch (const nws::NonConvergedError& e) {
        std::cerr << "error (non-convergence): " << e.what() << "\n";
        return 3;
    } catch (const nws::DomainError& e) {
        std::cerr << "error (domain): " << e.what() << "\n";
        return 2;
    }
    return 0;
}
