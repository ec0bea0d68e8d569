#pragma once

#include <vector>

#include "nws/grid.hpp"

namespace nws {

/// Sampled scalar values on a GridSpec at one time slice, row-major.
/// Construction rejects size mismatches and non-finite entries.
struct Field {
    GridSpec grid;
    double t;
    std::vector<double> values;

    Field(GridSpec grid, double t, std::vector<double> values);

    static Field zeros(const GridSpec& grid, double t);
};

} // namespace nws
