#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nws/errors.hpp"

namespace nws {

using Coord = std::array<double, 3>;

inline constexpr std::int64_t kDefaultMaxGridPoints = std::int64_t{1} << 24;

/// Uniform tensor grid over a 1-3D box plus a time interval.
///
/// Point ordering is row-major with the last axis fastest; index 0 is the lo
/// corner and the last index is the hi corner. Every file output of the lab
/// uses this ordering.
struct GridSpec {
    int dim;
    Coord lo{};
    Coord hi{};
    int points_per_axis;
    double t0;
    double t1;
    int time_steps;

    GridSpec(int dim, Coord lo, Coord hi, int points_per_axis, double t0 = 0.0,
             double t1 = 1.0, int time_steps = 1,
             std::int64_t max_points = kDefaultMaxGridPoints);

    /// Symmetric same-bounds-per-axis grid, the common case.
    static GridSpec uniform(int dim, double lo, double hi, int points_per_axis,
                            double t0 = 0.0, double t1 = 1.0, int time_steps = 1);

    double spacing(int axis) const;
    /// Product of per-axis spacings, the volume element for grid sums.
    double cell_volume() const;
    std::int64_t total_points() const;

    /// Coordinate of node i along an axis; endpoints land exactly on lo/hi.
    double coord(int axis, int i) const;
    Coord point(std::int64_t index) const;

    std::int64_t index(const std::array<int, 3>& multi) const;
    std::array<int, 3> multi_index(std::int64_t index) const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Lexicographic row-major enumeration of all grid nodes.
std::vector<Coord> grid_points(const GridSpec& grid);

} // namespace nws
