#include "nws/norms.hpp"

#include <cmath>
#include <string>

namespace nws {

Norms norms_interior(const GridSpec& grid, std::span<const double> values,
                     int interior_margin) {
    if (interior_margin < 0) {
        throw DomainError("norms: interior_margin must be non-negative");
    }
    if (grid.points_per_axis - 2 * interior_margin < 2) {
        throw DomainError("norms: margin " + std::to_string(interior_margin) +
                          " leaves fewer than 2 interior points per axis on a " +
                          std::to_string(grid.points_per_axis) + "-point axis");
    }
    if (static_cast<std::int64_t>(values.size()) != grid.total_points()) {
        throw DomainError("norms: value count does not match grid");
    }

    const int m = interior_margin;
    const int npts = grid.points_per_axis;
    double sum_sq = 0.0;
    double max_abs = 0.0;
    const std::int64_t total = grid.total_points();
    // Serial reduction keeps the result independent of the thread count.
    for (std::int64_t i = 0; i < total; ++i) {
        const std::array<int, 3> mi = grid.multi_index(i);
        bool interior = true;
        for (int a = 0; a < grid.dim; ++a) {
            if (mi[a] < m || mi[a] >= npts - m) {
                interior = false;
                break;
            }
        }
        if (!interior) {
            continue;
        }
        const double v = values[static_cast<std::size_t>(i)];
        sum_sq += v * v;
        max_abs = std::max(max_abs, std::abs(v));
    }
    return Norms{std::sqrt(sum_sq * grid.cell_volume()), max_abs};
}

Norms norms(const Field& field, int interior_margin) {
    return norms_interior(field.grid, field.values, interior_margin);
}

} // namespace nws
