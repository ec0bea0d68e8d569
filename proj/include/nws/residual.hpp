#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nws/candidates.hpp"
#include "nws/kernels.hpp"
#include "nws/norms.hpp"

namespace nws {

/// Finite-difference configuration for the operator application.
struct StencilSpec {
    int spatial_order = 2; // 2 or 4
    /// Temporal step for candidates without a closed-form du/dt;
    /// 0 selects min(1e-5, t/100). Must stay below t/2.
    double dt_fd = 0.0;
    /// When set, spatial derivatives are taken by direct candidate
    /// evaluation at x +- j*h_override instead of grid-sample stencils.
    std::optional<Coord> h_override;

    int half_width() const { return spatial_order / 2; }
    /// Boundary layers excluded from residual norms.
    int margin() const { return half_width() + 2; }
    double resolve_dt(double t) const;
};

struct ResidualReport {
    PdeParams params;
    std::string candidate;
    Field residual; // interior points carry L[u]; the excluded ring is zero
    double l2;
    double linf;
    int interior_margin;
};

/// Default quadrature tolerance for residual work: 100x below the
/// finite-difference error floor so nested differentiation through the time
/// integral stays trustworthy.
inline quad::Tolerance residual_quad_tolerance() {
    return quad::Tolerance{1e-12, 1e-16, 60};
}

/// L[u] = u_t - nu*lap(u) + beta*u^n applied to a candidate on a grid slice.
/// du/dt is closed-form where the candidate has one (separable, linear-heat,
/// trivial) and centered FD otherwise; the Laplacian is FD.
ResidualReport apply_operator(const Candidate& c, const GridSpec& grid, double t,
                              const PdeParams& params, const StencilSpec& stencil,
                              const quad::Tolerance& tol = residual_quad_tolerance(),
                              Exec exec = Exec::parallel);

struct ResidueIdentity {
    ResidualReport direct;   // L[u] assembled from samples of u itself
    ResidualReport factored; // -2*nu*G_x*f_x - nu*G*f_xx from the bracket factor f
    double linf_gap;         // max |direct - factored| over the shared interior
};

/// Two independent evaluations of the ansatz residue (1D): the full operator
/// applied directly, and the factored remainder that survives after the
/// kernel and the time derivative cancel. They agree within combined
/// FD + quadrature tolerance; neither is zero, because the ansatz is not a
/// solution for n > 1.
///
/// The time integral in the bracket has an |x|-type kink at the origin (for
/// n = 2 its x-derivative jumps by 1/nu there), so the residue carries a
/// point mass at x = 0 where finite differences grow like 1/h. Both routes
/// therefore exclude the nodes whose stencils straddle the origin (the
/// origin node for order 2, plus its neighbors for order 4);
/// residue_scaling_sweep, by contrast, keeps them, measuring the whole
/// remainder at grid resolution.
ResidueIdentity green_ansatz_residue(const GridSpec& grid, double t,
                                     const PdeParams& params, double c0,
                                     const StencilSpec& stencil,
                                     const quad::Tolerance& tol = residual_quad_tolerance(),
                                     Exec exec = Exec::parallel);

struct ScalingSample {
    double n;
    double l2;
    double linf;
};

/// Residual norms of the ansatz for a decreasing list of powers n -> 1+;
/// the norms decay to zero as the equation approaches its linear limit.
std::vector<ScalingSample> residue_scaling_sweep(const PdeParams& base,
                                                 std::span<const double> ns,
                                                 const GridSpec& grid, double t, double c0,
                                                 const StencilSpec& stencil,
                                                 const quad::Tolerance& tol =
                                                     residual_quad_tolerance(),
                                                 Exec exec = Exec::parallel);

struct ClassificationRow {
    std::string profile;
    bool exact;
    double l2;
    double linf;
    double threshold;
};

/// Verdict per spatial profile of the separable family: exact iff the
/// residual linf stays within 100x the FD floor calibrated on the constant
/// profile. For t > 0 exactly the spatially constant members are exact.
std::vector<ClassificationRow> separable_classification(
    std::span<const SpatialProfile> profiles, const PdeParams& params, const GridSpec& grid,
    double t, const StencilSpec& stencil, Exec exec = Exec::parallel);

} // namespace nws
