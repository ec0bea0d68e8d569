#include "nws/heat_kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nws/errors.hpp"

namespace nws::heat {

namespace {

void check(const KernelPoint& p) {
    if (p.dim < 1 || p.dim > 3) {
        throw DomainError("heat kernel: dim must be 1, 2 or 3, got " + std::to_string(p.dim));
    }
    if (!(p.nu > 0.0)) {
        throw DomainError("heat kernel: nu must be positive, got " + std::to_string(p.nu));
    }
    if (!(p.t > 0.0)) {
        throw DomainError("heat kernel: t must be strictly positive (t = 0 is the "
                          "distributional delta limit), got " + std::to_string(p.t));
    }
}

double radius_sq(const KernelPoint& p) {
    double r2 = 0.0;
    for (int a = 0; a < p.dim; ++a) {
        r2 += p.x[a] * p.x[a];
    }
    return r2;
}

} // namespace

double log_value(const KernelPoint& p) {
    check(p);
    const double four_nu_t = 4.0 * p.nu * p.t;
    return -radius_sq(p) / four_nu_t -
           0.5 * static_cast<double>(p.dim) * std::log(std::numbers::pi * four_nu_t);
}

double value(const KernelPoint& p) {
    return std::exp(log_value(p));
}

Coord gradient(const KernelPoint& p) {
    const double g = value(p);
    const double scale = -1.0 / (2.0 * p.nu * p.t);
    Coord out{0.0, 0.0, 0.0};
    for (int a = 0; a < p.dim; ++a) {
        out[a] = scale * p.x[a] * g;
    }
    return out;
}

double laplacian(const KernelPoint& p) {
    const double g = value(p);
    const double nut = p.nu * p.t;
    return (radius_sq(p) / (4.0 * nut * nut) - static_cast<double>(p.dim) / (2.0 * nut)) * g;
}

double time_derivative(const KernelPoint& p) {
    const double g = value(p);
    return (radius_sq(p) / (4.0 * p.nu * p.t * p.t) -
            static_cast<double>(p.dim) / (2.0 * p.t)) * g;
}

MassResult mass(double nu, double t, const GridSpec& quad_grid) {
    if (!(nu > 0.0) || !(t > 0.0)) {
        throw DomainError("heat kernel mass: nu and t must be positive");
    }
    const double reach = 8.0 * std::sqrt(2.0 * nu * t);
    bool narrow = false;
    for (int a = 0; a < quad_grid.dim; ++a) {
        if (-quad_grid.lo[a] < reach || quad_grid.hi[a] < reach) {
            narrow = true;
        }
    }

    // The kernel is a product of 1D factors, so the tensor trapezoid sum
    // factorizes into a product of per-axis trapezoid sums.
    double total = 1.0;
    for (int a = 0; a < quad_grid.dim; ++a) {
        const int npts = quad_grid.points_per_axis;
        const double h = quad_grid.spacing(a);
        double axis_sum = 0.0;
        for (int i = 0; i < npts; ++i) {
            const double xi = quad_grid.coord(a, i);
            const KernelPoint p{Coord{xi, 0.0, 0.0}, 1, t, nu};
            const double w = (i == 0 || i == npts - 1) ? 0.5 : 1.0;
            axis_sum += w * value(p);
        }
        total *= axis_sum * h;
    }
    return MassResult{total, narrow};
}

} // namespace nws::heat
