#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nws/field.hpp"
#include "nws/parallel.hpp"
#include "nws/params.hpp"
#include "nws/quadrature.hpp"

namespace nws {

// Spatial profiles for the separable family: the analytic shapes the
// classification reasons about, plus one curved profile to falsify exactness.
struct ConstantProfile {
    double c;
};
struct LinearProfile {
    Coord coeffs{};
    double offset = 0.0;
};
struct GaussianProfile {
    double amplitude;
    double width;
};
using SpatialProfile = std::variant<ConstantProfile, LinearProfile, GaussianProfile>;

double profile_value(const SpatialProfile& k, const Coord& x, int dim);
std::string describe(const SpatialProfile& k, int dim);

/// u = B * G(x,t) / (beta*(n-1)*I(x,t;n) + C)^(1/(n-1)), 1D, n > 1.
struct GreenAnsatz {
    double amplitude = 1.0;            // B
    double integration_constant = 1.0; // C, must keep the bracket positive
};

/// u = k(x) / (beta*(n-1)*k(x)^(n-1)*t + 1)^(1/(n-1)), any dim, n > 1.
/// At t = 0 it returns k(x) exactly.
struct Separable {
    SpatialProfile profile;
};

/// u = G(x, t + t_offset) * exp(-beta*t), the exact n = 1 solution.
struct LinearHeat {
    double t_offset;
};

/// u = 0.
struct Trivial {};

using Candidate = std::variant<GreenAnsatz, Separable, LinearHeat, Trivial>;

/// The bracket factor (beta*(n-1)*I(x,t;n) + C)^(-1/(n-1)); tends to
/// C^(-1/(n-1)) as t -> 0+ because the integral runs over a shrinking
/// interval. Throws if the base is not positive (complex branch refused).
double alpha_factor(const Coord& x, int dim, double t, const PdeParams& params, double c0,
                    const quad::Tolerance& tol = {});

/// Pointwise closed-form value of a candidate.
double eval(const Candidate& c, const Coord& x, int dim, double t, const PdeParams& params,
            const quad::Tolerance& tol = {});

/// Candidate sampled over a grid slice; parallel over points.
Field sample(const Candidate& c, const GridSpec& grid, double t, const PdeParams& params,
             const quad::Tolerance& tol = {}, Exec exec = Exec::parallel);

/// True for candidates whose du/dt has a closed form used by the residual
/// engine (Separable, LinearHeat, Trivial).
bool has_analytic_time_derivative(const Candidate& c);
double time_derivative(const Candidate& c, const Coord& x, int dim, double t,
                       const PdeParams& params);

struct LimitSample {
    double epsilon;
    double value;     // (1 + beta*eps*t)^(-1/eps)
    double deviation; // |value - exp(-beta*t)|
};

/// Scalar limit check of the bracket as n -> 1+ with the integral replaced by
/// its limit t; deviations shrink like O(eps).
std::vector<LimitSample> linear_limit_check(double t, double beta,
                                            std::span<const double> epsilons);

struct MassSample {
    double t;
    double mass;
    /// Set when the grid spacing exceeds sqrt(2*nu*t)/4 and cannot resolve the
    /// kernel at this t.
    bool under_resolved;
};

/// Trapezoid mass of the ansatz at a list of decreasing positive times; the
/// mass tends to B / C^(1/(n-1)) as t -> 0+.
std::vector<MassSample> initial_mass_check(const GreenAnsatz& c, const PdeParams& params,
                                           std::span<const double> times,
                                           const GridSpec& quad_grid,
                                           const quad::Tolerance& tol = {});

/// Stable text descriptor, e.g. "separable:linear:1,0" or "green-ansatz:B=1,C=1";
/// used for report provenance and by the CLI. parse_candidate inverts it.
std::string describe(const Candidate& c, int dim);
Candidate parse_candidate(const std::string& text, int dim);

} // namespace nws
