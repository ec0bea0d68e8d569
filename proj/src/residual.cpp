#include "nws/residual.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "nws/heat_kernel.hpp"

namespace nws {

namespace {

bool is_interior(const GridSpec& grid, std::int64_t i, int margin) {
    const std::array<int, 3> mi = grid.multi_index(i);
    for (int a = 0; a < grid.dim; ++a) {
        if (mi[a] < margin || mi[a] >= grid.points_per_axis - margin) {
            return false;
        }
    }
    return true;
}

// Index of the grid node sitting on x = 0, if any. The one-sided time
// integral in the ansatz bracket has an |x|-type kink there, so the ansatz
// residue is distributional at that single point.
std::int64_t origin_node(const GridSpec& grid) {
    if (grid.dim != 1) {
        return -1;
    }
    const double h = grid.spacing(0);
    const std::int64_t total = grid.total_points();
    for (std::int64_t i = 0; i < total; ++i) {
        if (std::abs(grid.coord(0, static_cast<int>(i))) < 0.5 * h) {
            return i;
        }
    }
    return -1;
}

void check_margin(const GridSpec& grid, int margin) {
    if (grid.points_per_axis - 2 * margin < 2) {
        throw DomainError("residual: grid too small for stencil margin " +
                          std::to_string(margin));
    }
}

// Laplacian by direct candidate evaluation at x +- j*h per axis.
double laplacian_direct(const Candidate& c, const Coord& x, int dim, double t,
                        const PdeParams& params, const quad::Tolerance& tol, int order,
                        const Coord& h) {
    double acc = 0.0;
    for (int a = 0; a < dim; ++a) {
        const double ha = h[a];
        const auto at = [&](double offset) {
            Coord p = x;
            p[a] += offset;
            return eval(c, p, dim, t, params, tol);
        };
        const double uc = eval(c, x, dim, t, params, tol);
        if (order == 2) {
            acc += (at(-ha) - 2.0 * uc + at(ha)) / (ha * ha);
        } else {
            acc += (-at(-2.0 * ha) + 16.0 * at(-ha) - 30.0 * uc + 16.0 * at(ha) -
                    at(2.0 * ha)) /
                   (12.0 * ha * ha);
        }
    }
    return acc;
}

ResidualReport make_report(const Candidate& c, const GridSpec& grid, double t,
                           const PdeParams& params, std::vector<double> residual_values,
                           int margin) {
    Field residual(grid, t, std::move(residual_values));
    const Norms nn = norms(residual, margin);
    return ResidualReport{params,  describe(c, grid.dim), std::move(residual),
                          nn.l2,   nn.linf,               margin};
}

} // namespace

double StencilSpec::resolve_dt(double t) const {
    const double dt = dt_fd > 0.0 ? dt_fd : std::min(1e-5, t / 100.0);
    if (!(dt < 0.5 * t)) {
        throw DomainError("StencilSpec: dt_fd must stay below t/2 so the centered "
                          "difference remains inside t > 0");
    }
    return dt;
}

namespace {

ResidualReport apply_operator_impl(const Candidate& c, const GridSpec& grid, double t,
                                   const PdeParams& params, const StencilSpec& stencil,
                                   const quad::Tolerance& tol, Exec exec,
                                   std::int64_t exclude_center, int exclude_radius) {
    if (stencil.spatial_order != 2 && stencil.spatial_order != 4) {
        throw DomainError("apply_operator: spatial order must be 2 or 4");
    }
    if (std::holds_alternative<LinearHeat>(c) && !params.linear()) {
        throw DomainError("apply_operator: the linear-heat candidate is the n = 1 "
                          "solution; residual checks require n = 1, got n = " +
                          std::to_string(params.n));
    }
    const int margin = stencil.margin();
    check_margin(grid, margin);

    const std::int64_t total = grid.total_points();
    const Field u_now = sample(c, grid, t, params, tol, exec);

    // du/dt: closed form where available, otherwise centered FD in time.
    std::vector<double> u_t(static_cast<std::size_t>(total));
    if (has_analytic_time_derivative(c)) {
        parallel_for(total, exec, [&](std::int64_t i) {
            u_t[static_cast<std::size_t>(i)] =
                time_derivative(c, grid.point(i), grid.dim, t, params);
        });
    } else {
        const double dt = stencil.resolve_dt(t);
        const Field u_prev = sample(c, grid, t - dt, params, tol, exec);
        const Field u_next = sample(c, grid, t + dt, params, tol, exec);
        parallel_for(total, exec, [&](std::int64_t i) {
            const auto k = static_cast<std::size_t>(i);
            u_t[k] = (u_next.values[k] - u_prev.values[k]) / (2.0 * dt);
        });
    }

    // Laplacian: grid-sample stencil, or direct evaluation when an explicit
    // FD step overrides the grid spacing.
    std::vector<double> lap(static_cast<std::size_t>(total), 0.0);
    if (stencil.h_override) {
        const Coord h = *stencil.h_override;
        for (int a = 0; a < grid.dim; ++a) {
            if (!(h[a] > 0.0)) {
                throw DomainError("apply_operator: h_override must be positive per axis");
            }
        }
        parallel_for(
            total, exec,
            [&](std::int64_t i) {
                if (is_interior(grid, i, margin)) {
                    lap[static_cast<std::size_t>(i)] = laplacian_direct(
                        c, grid.point(i), grid.dim, t, params, tol, stencil.spatial_order, h);
                }
            },
            1);
    } else {
        kernels::laplacian(grid, Bc::dirichlet, u_now.values, stencil.spatial_order, lap,
                           exec);
    }

    std::vector<double> residual(static_cast<std::size_t>(total), 0.0);
    std::atomic<std::int64_t> first_failure{-1};
    parallel_for(total, exec, [&](std::int64_t i) {
        if (!is_interior(grid, i, margin) ||
            (exclude_center >= 0 && std::abs(i - exclude_center) <= exclude_radius)) {
            return;
        }
        const auto k = static_cast<std::size_t>(i);
        try {
            residual[k] =
                u_t[k] - params.nu * lap[k] + params.beta * pow_real(u_now.values[k], params.n);
        } catch (const DomainError&) {
            std::int64_t expected = first_failure.load();
            while ((expected == -1 || i < expected) &&
                   !first_failure.compare_exchange_weak(expected, i)) {
            }
        }
    });
    const std::int64_t failed = first_failure.load();
    if (failed >= 0) {
        const Coord p = grid.point(failed);
        throw DomainError("apply_operator: medium response undefined at x = (" +
                          std::to_string(p[0]) + ", " + std::to_string(p[1]) + ", " +
                          std::to_string(p[2]) + "): fractional power of negative value");
    }

    return make_report(c, grid, t, params, std::move(residual), margin);
}

} // namespace

ResidualReport apply_operator(const Candidate& c, const GridSpec& grid, double t,
                              const PdeParams& params, const StencilSpec& stencil,
                              const quad::Tolerance& tol, Exec exec) {
    return apply_operator_impl(c, grid, t, params, stencil, tol, exec, -1, 0);
}

ResidueIdentity green_ansatz_residue(const GridSpec& grid, double t,
                                     const PdeParams& params, double c0,
                                     const StencilSpec& stencil,
                                     const quad::Tolerance& tol, Exec exec) {
    if (grid.dim != 1) {
        throw DomainError("green_ansatz_residue: the factored residue is 1D");
    }
    if (!(params.n > 1.0)) {
        throw DomainError("green_ansatz_residue: requires n > 1");
    }
    const int margin = stencil.margin();
    check_margin(grid, margin);

    // The pointwise comparison is meaningful only where the residue is a
    // function: nodes whose stencils straddle x = 0 (where the bracket kinks)
    // are excluded from both routes. That is the origin node itself for the
    // order-2 stencil and its immediate neighbors as well for order 4.
    const std::int64_t skip_center = origin_node(grid);
    const int skip_radius = stencil.half_width() - 1;
    const auto skipped = [&](std::int64_t i) {
        return skip_center >= 0 && std::abs(i - skip_center) <= skip_radius;
    };

    const Candidate cand = GreenAnsatz{1.0, c0};
    ResidualReport direct =
        apply_operator_impl(cand, grid, t, params, stencil, tol, exec, skip_center, skip_radius);

    // Factored route: sample the bracket factor f, differentiate it alone,
    // and combine with the analytic kernel and kernel gradient.
    const std::int64_t total = grid.total_points();
    std::vector<double> f(static_cast<std::size_t>(total));
    parallel_for(
        total, exec,
        [&](std::int64_t i) {
            f[static_cast<std::size_t>(i)] = alpha_factor(grid.point(i), 1, t, params, c0, tol);
        },
        1);

    const double h = grid.spacing(0);
    std::vector<double> factored(static_cast<std::size_t>(total), 0.0);
    parallel_for(total, exec, [&](std::int64_t i) {
        if (!is_interior(grid, i, margin) || skipped(i)) {
            return;
        }
        const auto k = static_cast<std::size_t>(i);
        double fx;
        double fxx;
        if (stencil.spatial_order == 2) {
            fx = (f[k + 1] - f[k - 1]) / (2.0 * h);
            fxx = (f[k - 1] - 2.0 * f[k] + f[k + 1]) / (h * h);
        } else {
            fx = (f[k - 2] - 8.0 * f[k - 1] + 8.0 * f[k + 1] - f[k + 2]) / (12.0 * h);
            fxx = (-f[k - 2] + 16.0 * f[k - 1] - 30.0 * f[k] + 16.0 * f[k + 1] -
                   f[k + 2]) /
                  (12.0 * h * h);
        }
        const heat::KernelPoint p{grid.point(i), 1, t, params.nu};
        const double g = heat::value(p);
        const double gx = heat::gradient(p)[0];
        factored[k] = -2.0 * params.nu * gx * fx - params.nu * g * fxx;
    });

    ResidualReport factored_report =
        make_report(cand, grid, t, params, std::move(factored), margin);

    double gap = 0.0;
    for (std::int64_t i = 0; i < total; ++i) {
        if (is_interior(grid, i, margin) && !skipped(i)) {
            const auto k = static_cast<std::size_t>(i);
            gap = std::max(gap,
                           std::abs(direct.residual.values[k] - factored_report.residual.values[k]));
        }
    }
    return ResidueIdentity{std::move(direct), std::move(factored_report), gap};
}

std::vector<ScalingSample> residue_scaling_sweep(const PdeParams& base,
                                                 std::span<const double> ns,
                                                 const GridSpec& grid, double t, double c0,
                                                 const StencilSpec& stencil,
                                                 const quad::Tolerance& tol, Exec exec) {
    if (ns.empty()) {
        throw DomainError("residue_scaling_sweep: n list must not be empty");
    }
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (!(ns[i] > 1.0)) {
            throw DomainError("residue_scaling_sweep: every n must exceed 1");
        }
        if (i > 0 && !(ns[i] < ns[i - 1])) {
            throw DomainError("residue_scaling_sweep: ns must decrease toward 1");
        }
    }
    std::vector<ScalingSample> out;
    out.reserve(ns.size());
    for (const double n : ns) {
        const PdeParams params(base.nu, base.beta, n);
        const ResidualReport rep =
            apply_operator(GreenAnsatz{1.0, c0}, grid, t, params, stencil, tol, exec);
        out.push_back(ScalingSample{n, rep.l2, rep.linf});
    }
    return out;
}

std::vector<ClassificationRow> separable_classification(
    std::span<const SpatialProfile> profiles, const PdeParams& params, const GridSpec& grid,
    double t, const StencilSpec& stencil, Exec exec) {
    if (!(t > 0.0)) {
        throw DomainError("separable_classification: requires t > 0 (every profile is "
                          "exact at t = 0 by construction)");
    }
    // FD floor calibration on the constant profile: its residual is pure
    // rounding noise, so 100x that separates discretization noise from a
    // continuum residual. The epsilon term keeps the threshold positive when
    // the floor is exactly zero.
    const ResidualReport floor_rep = apply_operator(
        Candidate{Separable{ConstantProfile{1.0}}}, grid, t, params, stencil,
        residual_quad_tolerance(), exec);
    const double threshold =
        std::max(100.0 * floor_rep.linf, 1e3 * std::numeric_limits<double>::epsilon());

    std::vector<ClassificationRow> out;
    out.reserve(profiles.size());
    for (const SpatialProfile& k : profiles) {
        const ResidualReport rep = apply_operator(Candidate{Separable{k}}, grid, t, params,
                                                  stencil, residual_quad_tolerance(), exec);
        out.push_back(ClassificationRow{describe(k, grid.dim), rep.linf <= threshold,
                                        rep.l2, rep.linf, threshold});
    }
    return out;
}

} // namespace nws
