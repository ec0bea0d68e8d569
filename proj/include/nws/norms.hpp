#pragma once

#include <span>

#include "nws/field.hpp"

namespace nws {

struct Norms {
    double l2;
    double linf;
};

/// Grid-weighted norms over interior points: l2 = sqrt(sum v_i^2 * h^dim),
/// linf = max |v_i|. A margin of m drops m layers from each side of every
/// axis; at least 2 points per axis must remain.
Norms norms(const Field& field, int interior_margin);

/// Same computation on a raw value span laid out per `grid`.
Norms norms_interior(const GridSpec& grid, std::span<const double> values,
                     int interior_margin);

} // namespace nws
