#include "nws/params.hpp"

#include <string>

namespace nws {

PdeParams::PdeParams(double nu_, double beta_, double n_) : nu(nu_), beta(beta_), n(n_) {
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw DomainError("PdeParams: diffusion coefficient nu must be positive, got " +
                          std::to_string(nu));
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError("PdeParams: medium-response coefficient beta must be positive, got " +
                          std::to_string(beta));
    }
    if (!(n >= 1.0) || !std::isfinite(n)) {
        throw DomainError("PdeParams: nonlinearity power n must satisfy n >= 1, got " +
                          std::to_string(n));
    }
}

double pow_real(double u, double n) {
    if (n == std::floor(n) && n >= 0.0 && n < 64.0) {
        double acc = 1.0;
        for (int k = 0; k < static_cast<int>(n); ++k) {
            acc *= u;
        }
        return acc;
    }
    if (u < 0.0) {
        throw DomainError("pow_real: fractional power " + std::to_string(n) +
                          " of negative value " + std::to_string(u) +
                          " is not real-valued");
    }
    return std::pow(u, n);
}

} // namespace nws
