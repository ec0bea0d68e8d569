#include "nws/grid.hpp"

#include <string>

namespace nws {

GridSpec::GridSpec(int dim_, Coord lo_, Coord hi_, int points_per_axis_, double t0_,
                   double t1_, int time_steps_, std::int64_t max_points)
    : dim(dim_),
      lo(lo_),
      hi(hi_),
      points_per_axis(points_per_axis_),
      t0(t0_),
      t1(t1_),
      time_steps(time_steps_) {
    if (dim < 1 || dim > 3) {
        throw DomainError("GridSpec: dim must be 1, 2 or 3, got " + std::to_string(dim));
    }
    if (points_per_axis < 2) {
        throw DomainError("GridSpec: points_per_axis must be at least 2, got " +
                          std::to_string(points_per_axis));
    }
    for (int a = 0; a < dim; ++a) {
        if (!(lo[a] < hi[a])) {
            throw DomainError("GridSpec: lo < hi violated on axis " + std::to_string(a));
        }
    }
    for (int a = dim; a < 3; ++a) {
        lo[a] = 0.0;
        hi[a] = 0.0;
    }
    if (!(t0 >= 0.0) || !(t0 < t1)) {
        throw DomainError("GridSpec: time bounds must satisfy 0 <= t0 < t1");
    }
    if (time_steps < 1) {
        throw DomainError("GridSpec: time_steps must be at least 1");
    }
    std::int64_t total = 1;
    for (int a = 0; a < dim; ++a) {
        total *= points_per_axis;
    }
    if (total > max_points) {
        throw DomainError("GridSpec: total point count " + std::to_string(total) +
                          " exceeds the configured cap " + std::to_string(max_points));
    }
}

GridSpec GridSpec::uniform(int dim, double lo, double hi, int points_per_axis, double t0,
                           double t1, int time_steps) {
    return GridSpec(dim, Coord{lo, lo, lo}, Coord{hi, hi, hi}, points_per_axis, t0, t1,
                    time_steps);
}

double GridSpec::spacing(int axis) const {
    return (hi[axis] - lo[axis]) / static_cast<double>(points_per_axis - 1);
}

double GridSpec::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) {
        v *= spacing(a);
    }
    return v;
}

std::int64_t GridSpec::total_points() const {
    std::int64_t total = 1;
    for (int a = 0; a < dim; ++a) {
        total *= points_per_axis;
    }
    return total;
}

double GridSpec::coord(int axis, int i) const {
    // Corners are exact by construction; interior nodes agree with
    // lo + i*h to 1 ulp.
    if (i == 0) {
        return lo[axis];
    }
    if (i == points_per_axis - 1) {
        return hi[axis];
    }
    const double s = static_cast<double>(i) / static_cast<double>(points_per_axis - 1);
    return lo[axis] + (hi[axis] - lo[axis]) * s;
}

Coord GridSpec::point(std::int64_t index) const {
    const std::array<int, 3> m = multi_index(index);
    Coord p{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) {
        p[a] = coord(a, m[a]);
    }
    return p;
}

std::int64_t GridSpec::index(const std::array<int, 3>& multi) const {
    std::int64_t idx = 0;
    for (int a = 0; a < dim; ++a) {
        idx = idx * points_per_axis + multi[a];
    }
    return idx;
}

std::array<int, 3> GridSpec::multi_index(std::int64_t index) const {
    std::array<int, 3> m{0, 0, 0};
    for (int a = dim - 1; a >= 0; --a) {
        m[a] = static_cast<int>(index % points_per_axis);
        index /= points_per_axis;
    }
    return m;
}

std::vector<Coord> grid_points(const GridSpec& grid) {
    const std::int64_t total = grid.total_points();
    std::vector<Coord> pts;
    pts.reserve(static_cast<std::size_t>(total));
    for (std::int64_t i = 0; i < total; ++i) {
        pts.push_back(grid.point(i));
    }
    return pts;
}

} // namespace nws
