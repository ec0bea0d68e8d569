#include "nws/kernels.hpp"

#include <string>

#include "nws/errors.hpp"

namespace nws::kernels {

namespace {

void check_shapes(const GridSpec& grid, std::span<const double> u, int order,
                  std::span<double> out) {
    if (order != 2 && order != 4) {
        throw DomainError("laplacian: spatial order must be 2 or 4, got " +
                          std::to_string(order));
    }
    const std::int64_t total = grid.total_points();
    if (static_cast<std::int64_t>(u.size()) != total ||
        static_cast<std::int64_t>(out.size()) != total) {
        throw DomainError("laplacian: span sizes do not match grid");
    }
    if (grid.points_per_axis < 2 * (order / 2) + 1) {
        throw DomainError("laplacian: grid too small for the stencil width");
    }
}

// Canonical index for an out-of-range node. Periodic grids store both
// endpoints, so the unique period is points - 1 nodes.
inline int wrap_index(Bc bc, int j, int npts) {
    switch (bc) {
    case Bc::periodic: {
        const int period = npts - 1;
        return ((j % period) + period) % period;
    }
    case Bc::neumann:
        return j < 0 ? -j : 2 * (npts - 1) - j;
    case Bc::dirichlet:
    default:
        return -1; // signals a zero ghost value
    }
}

} // namespace

void laplacian(const GridSpec& grid, Bc bc, std::span<const double> u, int order,
               std::span<double> out, Exec exec) {
    check_shapes(grid, u, order, out);
    const int npts = grid.points_per_axis;
    const int dim = grid.dim;

    std::int64_t stride[3] = {0, 0, 0};
    stride[dim - 1] = 1;
    for (int a = dim - 2; a >= 0; --a) {
        stride[a] = stride[a + 1] * npts;
    }
    double inv_h2[3] = {0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) {
        const double h = grid.spacing(a);
        inv_h2[a] = 1.0 / (h * h);
    }

    parallel_for(grid.total_points(), exec, [&](std::int64_t i) {
        std::int64_t rem = i;
        int mi[3] = {0, 0, 0};
        for (int a = dim - 1; a >= 0; --a) {
            mi[a] = static_cast<int>(rem % npts);
            rem /= npts;
        }
        const double uc = u[static_cast<std::size_t>(i)];
        const auto fetch = [&](int a, int off) -> double {
            const int j = mi[a] + off;
            if (j >= 0 && j < npts) {
                return u[static_cast<std::size_t>(i + off * stride[a])];
            }
            const int jc = wrap_index(bc, j, npts);
            if (jc < 0) {
                return 0.0;
            }
            return u[static_cast<std::size_t>(i + (jc - mi[a]) * stride[a])];
        };
        double acc = 0.0;
        if (order == 2) {
            for (int a = 0; a < dim; ++a) {
                acc += (fetch(a, -1) - 2.0 * uc + fetch(a, 1)) * inv_h2[a];
            }
        } else {
            for (int a = 0; a < dim; ++a) {
                acc += (-fetch(a, -2) + 16.0 * fetch(a, -1) - 30.0 * uc +
                        16.0 * fetch(a, 1) - fetch(a, 2)) *
                       (inv_h2[a] / 12.0);
            }
        }
        out[static_cast<std::size_t>(i)] = acc;
    });
}

void laplacian_reference(const GridSpec& grid, Bc bc, std::span<const double> u, int order,
                         std::span<double> out) {
    check_shapes(grid, u, order, out);
    const int npts = grid.points_per_axis;
    const std::int64_t total = grid.total_points();
    for (std::int64_t i = 0; i < total; ++i) {
        const std::array<int, 3> mi = grid.multi_index(i);
        const double uc = u[static_cast<std::size_t>(i)];
        const auto fetch = [&](int a, int off) -> double {
            std::array<int, 3> mj = mi;
            const int j = mi[a] + off;
            if (j < 0 || j >= npts) {
                const int jc = wrap_index(bc, j, npts);
                if (jc < 0) {
                    return 0.0;
                }
                mj[a] = jc;
            } else {
                mj[a] = j;
            }
            return u[static_cast<std::size_t>(grid.index(mj))];
        };
        double acc = 0.0;
        if (order == 2) {
            for (int a = 0; a < grid.dim; ++a) {
                const double h = grid.spacing(a);
                acc += (fetch(a, -1) - 2.0 * uc + fetch(a, 1)) * (1.0 / (h * h));
            }
        } else {
            for (int a = 0; a < grid.dim; ++a) {
                const double h = grid.spacing(a);
                acc += (-fetch(a, -2) + 16.0 * fetch(a, -1) - 30.0 * uc +
                        16.0 * fetch(a, 1) - fetch(a, 2)) *
                       ((1.0 / (h * h)) / 12.0);
            }
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
}

void axpy(double s, std::span<const double> a, std::span<const double> b,
          std::span<double> out, Exec exec) {
    parallel_for(static_cast<std::int64_t>(a.size()), exec,
                 [&](std::int64_t i) { out[i] = a[i] + s * b[i]; });
}

} // namespace nws::kernels
