#pragma once

#include <span>

#include "nws/grid.hpp"
#include "nws/parallel.hpp"

namespace nws {

/// Homogeneous boundary handling for sampled-field stencils.
enum class Bc { periodic, dirichlet, neumann };

namespace kernels {

/// Central-difference Laplacian of a sampled field, order 2 or 4, summed over
/// axes. Points closer than the stencil half-width to a face use the boundary
/// rule; out must not alias u.
void laplacian(const GridSpec& grid, Bc bc, std::span<const double> u, int order,
               std::span<double> out, Exec exec);

/// Independent plain-loop reference for the kernel above (serial, per-point
/// neighbor gather through multi-indices). Kept for the test suite and the
/// benchmark; results are bit-identical to laplacian().
void laplacian_reference(const GridSpec& grid, Bc bc, std::span<const double> u, int order,
                         std::span<double> out);

/// out[i] = a[i] + s * b[i]
void axpy(double s, std::span<const double> a, std::span<const double> b,
          std::span<double> out, Exec exec);

} // namespace kernels

} // namespace nws
