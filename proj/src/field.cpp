#include "nws/field.hpp"

#include <cmath>
#include <string>

namespace nws {

Field::Field(GridSpec grid_, double t_, std::vector<double> values_)
    : grid(std::move(grid_)), t(t_), values(std::move(values_)) {
    const std::int64_t expected = grid.total_points();
    if (static_cast<std::int64_t>(values.size()) != expected) {
        throw DomainError("Field: value count " + std::to_string(values.size()) +
                          " does not match grid point count " + std::to_string(expected));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            const Coord p = grid.point(static_cast<std::int64_t>(i));
            throw DomainError("Field: non-finite value at index " + std::to_string(i) +
                              " (x = " + std::to_string(p[0]) + ", " + std::to_string(p[1]) +
                              ", " + std::to_string(p[2]) + ")");
        }
    }
}

Field Field::zeros(const GridSpec& grid, double t) {
    return Field(grid, t, std::vector<double>(static_cast<std::size_t>(grid.total_points()), 0.0));
}

} // namespace nws
