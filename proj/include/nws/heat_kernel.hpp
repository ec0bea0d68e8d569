#pragma once

#include "nws/grid.hpp"

namespace nws::heat {

/// Evaluation point of the d-dimensional heat kernel. t must be strictly
/// positive: t = 0 is the distributional delta limit, not a value.
struct KernelPoint {
    Coord x{};
    int dim = 1;
    double t = 1.0;
    double nu = 1.0;
};

/// log G, the underflow-safe form: -|x|^2/(4 nu t) - (dim/2) log(4 pi nu t).
double log_value(const KernelPoint& p);

/// G(x,t) = exp(-|x|^2/(4 nu t)) / (4 pi nu t)^(dim/2). Strictly positive,
/// even in x; underflows gracefully to 0 for large |x|^2/t.
double value(const KernelPoint& p);

/// dG/dx_i = -x_i/(2 nu t) * G. Zero vector at the origin.
Coord gradient(const KernelPoint& p);

/// lap G = (|x|^2/(4 nu^2 t^2) - dim/(2 nu t)) * G.
double laplacian(const KernelPoint& p);

/// dG/dt = (|x|^2/(4 nu t^2) - dim/(2 t)) * G; equals nu * lap G identically.
double time_derivative(const KernelPoint& p);

struct MassResult {
    double value;
    /// Set when the grid does not reach 8*sqrt(2 nu t) from the origin on
    /// every axis; the integral is still returned, never silently truncated.
    bool narrow_grid;
};

/// Tensor trapezoid integral of G over the grid's box.
MassResult mass(double nu, double t, const GridSpec& quad_grid);

} // namespace nws::heat
