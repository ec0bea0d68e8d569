#pragma once

#include <cmath>

#include "nws/errors.hpp"

namespace nws {

/// Coefficients of the equation u_t - nu * lap(u) + beta * u^n = 0.
/// All quantities are dimensionless. n = 1 is the linear heat/transport case.
struct PdeParams {
    double nu;
    double beta;
    double n;

    PdeParams(double nu_, double beta_, double n_);

    bool integer_power() const { return n == std::floor(n); }
    bool linear() const { return n == 1.0; }
};

/// u^n with real-valued semantics: repeated multiplication for integer n
/// (valid for u < 0), std::pow otherwise with the domain restricted to u >= 0.
double pow_real(double u, double n);

} // namespace nws
