#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nws/grid.hpp"
#include "nws/params.hpp"

namespace nws::quad {

struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-14;
    int max_subdivisions = 60;
};

struct QuadResult {
    double value;
    double abs_error_estimate;
    bool converged;
    int subdivisions;
};

/// I(x,t;n) = integral over (0,t] of G(x,tau)^(n-1) dtau, the time integral
/// inside the ansatz denominator.
///
/// The tau -> 0 endpoint is handled by splitting at t/2 and substituting
/// tau = exp(-s) on the singular half, which maps it to an exponentially
/// decaying tail truncated under an explicit remainder bound.
///
/// Requirements: t > 0 and n > 1. At x = 0 the integrand behaves like
/// tau^(-(n-1)*dim/2); the integral diverges for n >= 1 + 2/dim and that case
/// throws a DomainError naming the exponent.
QuadResult integrate_G_power(const Coord& x, int dim, double t, const PdeParams& params,
                             const Tolerance& tol = {});

/// I(x,sigma) for a positive, decreasing list of sigmas. The values decrease
/// monotonically to 0 as sigma -> 0+ (shrinking interval, positive integrand).
std::vector<std::pair<double, QuadResult>> null_interval_check(
    const Coord& x, int dim, const PdeParams& params, std::span<const double> sigmas,
    const Tolerance& tol = {});

} // namespace nws::quad
