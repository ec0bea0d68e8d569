#include "nws/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nws/errors.hpp"

namespace nws::quad {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
};

template <class F>
Segment gk15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    double resabs = kWgk[7] * std::abs(fc);
    double fv[15];
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) {
            resg += kWg[j / 2] * (f1 + f2);
        }
    }
    const double mean = 0.5 * resk;
    double resasc = 0.0;
    for (int j = 0; j < 15; ++j) {
        const int w = (j < 8) ? j : 14 - j;
        resasc += kWgk[w] * std::abs(fv[j] - mean);
    }
    resabs *= std::abs(half);
    resasc *= std::abs(half);

    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * resabs);
    }
    return Segment{a, b, resk * half, err};
}

struct PieceResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
    bool hit_cap = false;
};

// Adaptive bisection over [a, b] against an absolute error budget for the
// piece, spread proportionally to segment length. Deterministic LIFO order.
template <class F>
PieceResult adapt(const F& f, double a, double b, double budget, int max_subdivisions,
                  int& used_subdivisions) {
    PieceResult out;
    std::vector<Segment> work{gk15(f, a, b)};
    const double span = b - a;
    while (!work.empty()) {
        const Segment seg = work.back();
        work.pop_back();
        const double share = budget * ((seg.b - seg.a) / span);
        if (seg.error <= share || used_subdivisions >= max_subdivisions) {
            if (seg.error > share) {
                out.hit_cap = true;
            }
            out.value += seg.value;
            out.error += seg.error;
            continue;
        }
        ++used_subdivisions;
        ++out.subdivisions;
        const double mid = 0.5 * (seg.a + seg.b);
        work.push_back(gk15(f, mid, seg.b));
        work.push_back(gk15(f, seg.a, mid));
    }
    return out;
}

} // namespace

QuadResult integrate_G_power(const Coord& x, int dim, double t, const PdeParams& params,
                             const Tolerance& tol) {
    if (dim < 1 || dim > 3) {
        throw DomainError("integrate_G_power: dim must be 1, 2 or 3");
    }
    if (!(t > 0.0)) {
        throw DomainError("integrate_G_power: t must be positive, got " + std::to_string(t));
    }
    if (!(params.n > 1.0)) {
        throw DomainError("integrate_G_power: requires n > 1 (at n = 1 the integrand is "
                          "identically 1), got n = " + std::to_string(params.n));
    }

    const double m = params.n - 1.0;
    const double q = 0.5 * m * static_cast<double>(dim);
    double r2 = 0.0;
    for (int a = 0; a < dim; ++a) {
        r2 += x[a] * x[a];
    }
    if (r2 == 0.0 && q >= 1.0) {
        throw DomainError(
            "integrate_G_power: divergent at x = 0 for n >= 1 + 2/dim: the integrand grows "
            "like tau^(-p) with p = (n-1)*dim/2 = " + std::to_string(q) + " >= 1");
    }

    const double scale = r2 / (4.0 * params.nu);
    const double log_norm = std::log(4.0 * std::numbers::pi * params.nu);
    // G(x,tau)^(n-1), evaluated through log G so tails underflow to 0.
    const auto f_tau = [&](double tau) {
        return std::exp(m * (-scale / tau) - q * (log_norm + std::log(tau)));
    };
    // The same integrand after tau = exp(-s), including the Jacobian exp(-s).
    const auto g_s = [&](double s) {
        return std::exp(-m * scale * std::exp(s) + (q - 1.0) * s - q * log_norm);
    };
    // rate(s) = -d/ds log g; positive and nondecreasing wherever the tail decays.
    const auto decay_rate = [&](double s) {
        return m * scale * std::exp(s) + 1.0 - q;
    };

    int used = 0;
    const double split = 0.5 * t;

    // Rough whole-integral scale for the relative-tolerance budget.
    const double s0 = -std::log(split);
    const double rough =
        std::abs(gk15(f_tau, split, t).value) + std::abs(gk15(g_s, s0, s0 + 10.0).value);
    const double total_budget = std::max(tol.abs, tol.rel * rough);

    PieceResult regular =
        adapt(f_tau, split, t, 0.5 * total_budget, tol.max_subdivisions, used);
    double value = regular.value;
    double total_err = regular.error;
    int subdivisions = regular.subdivisions;
    bool hit_cap = regular.hit_cap;

    // Singular half (0, t/2]: geometrically growing blocks in s until the
    // remainder bound is negligible or the integrand has underflowed.
    double s_lo = s0;
    double block = 10.0;
    bool tail_certified = false;
    for (int k = 0; k < 64; ++k) {
        const double tail_target = std::max(tol.abs, tol.rel * std::abs(value));
        const double s_hi = s_lo + block;
        if (g_s(s_lo) > 0.0 || g_s(0.5 * (s_lo + s_hi)) > 0.0) {
            PieceResult piece =
                adapt(g_s, s_lo, s_hi, 0.25 * tail_target, tol.max_subdivisions, used);
            value += piece.value;
            total_err += piece.error;
            subdivisions += piece.subdivisions;
            hit_cap = hit_cap || piece.hit_cap;
        }
        const double g_end = g_s(s_hi);
        if (g_end == 0.0) {
            tail_certified = true;
            break;
        }
        const double rate = decay_rate(s_hi);
        if (rate > 0.0) {
            const double tail_bound = g_end / rate;
            if (tail_bound <= 0.05 * tail_target) {
                total_err += tail_bound;
                tail_certified = true;
                break;
            }
        }
        s_lo = s_hi;
        block *= 2.0;
    }
    hit_cap = hit_cap || !tail_certified;

    QuadResult result;
    result.value = value;
    result.abs_error_estimate = total_err;
    result.subdivisions = subdivisions;
    result.converged = !hit_cap && total_err <= std::max(tol.abs, tol.rel * std::abs(value));
    return result;
}

std::vector<std::pair<double, QuadResult>> null_interval_check(
    const Coord& x, int dim, const PdeParams& params, std::span<const double> sigmas,
    const Tolerance& tol) {
    if (sigmas.empty()) {
        throw DomainError("null_interval_check: sigma list must not be empty");
    }
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        if (!(sigmas[i] > 0.0)) {
            throw DomainError("null_interval_check: sigmas must be positive");
        }
        if (i > 0 && !(sigmas[i] < sigmas[i - 1])) {
            throw DomainError("null_interval_check: sigmas must be strictly decreasing");
        }
    }
    std::vector<std::pair<double, QuadResult>> out;
    out.reserve(sigmas.size());
    for (const double sigma : sigmas) {
        out.emplace_back(sigma, integrate_G_power(x, dim, sigma, params, tol));
    }
    return out;
}

} // namespace nws::quad
