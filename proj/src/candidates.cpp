#include "nws/candidates.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

#include "nws/format.hpp"
#include "nws/heat_kernel.hpp"

namespace nws {

namespace {

std::string point_text(const Coord& x, int dim) {
    std::string s = "(";
    for (int a = 0; a < dim; ++a) {
        if (a > 0) {
            s += ", ";
        }
        s += format_double(x[a]);
    }
    return s + ")";
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        parts.push_back(item);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

} // namespace

double profile_value(const SpatialProfile& k, const Coord& x, int dim) {
    return std::visit(
        [&](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ConstantProfile>) {
                return p.c;
            } else if constexpr (std::is_same_v<P, LinearProfile>) {
                double v = p.offset;
                for (int a = 0; a < dim; ++a) {
                    v += p.coeffs[a] * x[a];
                }
                return v;
            } else {
                if (!(p.width > 0.0)) {
                    throw DomainError("gaussian profile: width must be positive");
                }
                double r2 = 0.0;
                for (int a = 0; a < dim; ++a) {
                    r2 += x[a] * x[a];
                }
                return p.amplitude * std::exp(-r2 / (2.0 * p.width * p.width));
            }
        },
        k);
}

double alpha_factor(const Coord& x, int dim, double t, const PdeParams& params, double c0,
                    const quad::Tolerance& tol) {
    if (!(params.n > 1.0)) {
        throw DomainError("alpha_factor: requires n > 1, got n = " + format_double(params.n));
    }
    const quad::QuadResult integral = quad::integrate_G_power(x, dim, t, params, tol);
    if (!integral.converged) {
        throw NonConvergedError("alpha_factor: time-integral quadrature did not converge "
                                "at x = " + point_text(x, dim) + " (error estimate " +
                                format_double(integral.abs_error_estimate) + " after " +
                                std::to_string(integral.subdivisions) + " subdivisions)");
    }
    // base = beta*(n-1)*I + C, computed as 1 + (base-1) so log1p keeps full
    // precision when n is close to 1 and C to unity.
    const double base_m1 = params.beta * (params.n - 1.0) * integral.value + (c0 - 1.0);
    if (!(base_m1 > -1.0)) {
        throw DomainError("alpha_factor: bracket base " + format_double(1.0 + base_m1) +
                          " is not positive at x = " + point_text(x, dim) +
                          "; the real branch is undefined");
    }
    return std::exp(-std::log1p(base_m1) / (params.n - 1.0));
}

namespace {

double eval_separable(const Separable& c, const Coord& x, int dim, double t,
                      const PdeParams& params) {
    if (!(params.n > 1.0)) {
        throw DomainError("separable candidate: requires n > 1, got n = " +
                          format_double(params.n));
    }
    if (!(t >= 0.0)) {
        throw DomainError("separable candidate: t must be non-negative");
    }
    const double k = profile_value(c.profile, x, dim);
    const double denom_m1 = params.beta * (params.n - 1.0) * pow_real(k, params.n - 1.0) * t;
    if (!(denom_m1 > -1.0)) {
        throw DomainError("separable candidate: denominator base " +
                          format_double(1.0 + denom_m1) + " is not positive at x = " +
                          point_text(x, dim) + ", t = " + format_double(t));
    }
    return k * std::exp(-std::log1p(denom_m1) / (params.n - 1.0));
}

} // namespace

double eval(const Candidate& c, const Coord& x, int dim, double t, const PdeParams& params,
            const quad::Tolerance& tol) {
    return std::visit(
        [&](const auto& cand) -> double {
            using C = std::decay_t<decltype(cand)>;
            if constexpr (std::is_same_v<C, GreenAnsatz>) {
                if (dim != 1) {
                    throw DomainError("green-ansatz candidate is 1D only");
                }
                if (!(cand.integration_constant >= 0.0)) {
                    throw DomainError("green-ansatz candidate: the integration constant "
                                      "must be non-negative");
                }
                if (!(t > 0.0)) {
                    throw DomainError("green-ansatz candidate: t must be positive (it "
                                      "contains the heat kernel)");
                }
                const double g = heat::value({x, dim, t, params.nu});
                return cand.amplitude * g *
                       alpha_factor(x, dim, t, params, cand.integration_constant, tol);
            } else if constexpr (std::is_same_v<C, Separable>) {
                return eval_separable(cand, x, dim, t, params);
            } else if constexpr (std::is_same_v<C, LinearHeat>) {
                if (!(cand.t_offset > 0.0)) {
                    throw DomainError("linear-heat candidate: t_offset must be positive");
                }
                if (!(t >= 0.0)) {
                    throw DomainError("linear-heat candidate: t must be non-negative");
                }
                const double g = heat::value({x, dim, t + cand.t_offset, params.nu});
                return g * std::exp(-params.beta * t);
            } else {
                return 0.0;
            }
        },
        c);
}

Field sample(const Candidate& c, const GridSpec& grid, double t, const PdeParams& params,
             const quad::Tolerance& tol, Exec exec) {
    const std::int64_t total = grid.total_points();
    std::vector<double> values(static_cast<std::size_t>(total), 0.0);
    std::atomic<std::int64_t> first_failure{-1};
    // min_parallel = 1: one point can cost an adaptive quadrature, so even
    // small grids are worth the fork.
    parallel_for(
        total, exec,
        [&](std::int64_t i) {
            try {
                values[static_cast<std::size_t>(i)] =
                    eval(c, grid.point(i), grid.dim, t, params, tol);
            } catch (...) {
                // Exceptions cannot cross the parallel region; remember the
                // lowest failing index and rethrow deterministically below.
                std::int64_t expected = first_failure.load();
                while ((expected == -1 || i < expected) &&
                       !first_failure.compare_exchange_weak(expected, i)) {
                }
            }
        },
        1);
    const std::int64_t failed = first_failure.load();
    if (failed >= 0) {
        eval(c, grid.point(failed), grid.dim, t, params, tol);
        throw DomainError("sample: evaluation failed at index " + std::to_string(failed) +
                          " but succeeded on retry");
    }
    return Field(grid, t, std::move(values));
}

bool has_analytic_time_derivative(const Candidate& c) {
    return !std::holds_alternative<GreenAnsatz>(c);
}

double time_derivative(const Candidate& c, const Coord& x, int dim, double t,
                       const PdeParams& params) {
    return std::visit(
        [&](const auto& cand) -> double {
            using C = std::decay_t<decltype(cand)>;
            if constexpr (std::is_same_v<C, Separable>) {
                // du/dt = -beta * k^n * D^(-n/(n-1)): the exact cancellation
                // against the medium response beta*u^n.
                const double k = profile_value(cand.profile, x, dim);
                const double denom_m1 =
                    params.beta * (params.n - 1.0) * pow_real(k, params.n - 1.0) * t;
                if (!(denom_m1 > -1.0)) {
                    throw DomainError("separable candidate: denominator base is not "
                                      "positive at x = " + point_text(x, dim));
                }
                const double decay =
                    std::exp(-params.n / (params.n - 1.0) * std::log1p(denom_m1));
                return -params.beta * pow_real(k, params.n) * decay;
            } else if constexpr (std::is_same_v<C, LinearHeat>) {
                const heat::KernelPoint p{x, dim, t + cand.t_offset, params.nu};
                const double decay = std::exp(-params.beta * t);
                return (heat::time_derivative(p) - params.beta * heat::value(p)) * decay;
            } else if constexpr (std::is_same_v<C, Trivial>) {
                return 0.0;
            } else {
                throw DomainError("green-ansatz candidate has no closed-form time "
                                  "derivative; use the finite-difference path");
            }
        },
        c);
}

std::vector<LimitSample> linear_limit_check(double t, double beta,
                                            std::span<const double> epsilons) {
    if (!(t >= 0.0) || !(beta > 0.0)) {
        throw DomainError("linear_limit_check: requires t >= 0 and beta > 0");
    }
    std::vector<LimitSample> out;
    out.reserve(epsilons.size());
    const double exact = std::exp(-beta * t);
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        const double eps = epsilons[i];
        if (!(eps > 0.0)) {
            throw DomainError("linear_limit_check: epsilons must be positive");
        }
        if (i > 0 && !(eps < epsilons[i - 1])) {
            throw DomainError("linear_limit_check: epsilons must be strictly decreasing");
        }
        const double value = std::exp(-std::log1p(beta * eps * t) / eps);
        out.push_back(LimitSample{eps, value, std::abs(value - exact)});
    }
    return out;
}

std::vector<MassSample> initial_mass_check(const GreenAnsatz& c, const PdeParams& params,
                                           std::span<const double> times,
                                           const GridSpec& quad_grid,
                                           const quad::Tolerance& tol) {
    if (quad_grid.dim != 1) {
        throw DomainError("initial_mass_check: green-ansatz candidate is 1D only");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0)) {
            throw DomainError("initial_mass_check: times must be positive");
        }
        if (i > 0 && !(times[i] < times[i - 1])) {
            throw DomainError("initial_mass_check: times must be strictly decreasing");
        }
    }
    std::vector<MassSample> out;
    out.reserve(times.size());
    const Candidate cand = c;
    for (const double t : times) {
        const Field u = sample(cand, quad_grid, t, params, tol);
        const double h = quad_grid.spacing(0);
        double acc = 0.0;
        const std::size_t npts = u.values.size();
        for (std::size_t i = 0; i < npts; ++i) {
            const double w = (i == 0 || i + 1 == npts) ? 0.5 : 1.0;
            acc += w * u.values[i];
        }
        const bool under_resolved = h > std::sqrt(2.0 * params.nu * t) / 4.0;
        out.push_back(MassSample{t, acc * h, under_resolved});
    }
    return out;
}

std::string describe(const SpatialProfile& k, int dim) {
    return std::visit(
        [&](const auto& p) -> std::string {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ConstantProfile>) {
                return "constant:" + format_double(p.c);
            } else if constexpr (std::is_same_v<P, LinearProfile>) {
                std::string s = "linear:";
                for (int a = 0; a < dim; ++a) {
                    s += format_double(p.coeffs[a]) + ",";
                }
                s += format_double(p.offset);
                return s;
            } else {
                return "gaussian:" + format_double(p.amplitude) + "," +
                       format_double(p.width);
            }
        },
        k);
}

std::string describe(const Candidate& c, int dim) {
    return std::visit(
        [&](const auto& cand) -> std::string {
            using C = std::decay_t<decltype(cand)>;
            if constexpr (std::is_same_v<C, GreenAnsatz>) {
                return "green-ansatz:B=" + format_double(cand.amplitude) +
                       ",C=" + format_double(cand.integration_constant);
            } else if constexpr (std::is_same_v<C, Separable>) {
                return "separable:" + describe(cand.profile, dim);
            } else if constexpr (std::is_same_v<C, LinearHeat>) {
                return "linear-heat:t0=" + format_double(cand.t_offset);
            } else {
                return "trivial";
            }
        },
        c);
}

Candidate parse_candidate(const std::string& text, int dim) {
    const auto bad = [&](const std::string& why) {
        return DomainError("parse_candidate: " + why + " in '" + text + "'");
    };
    if (text == "trivial") {
        return Trivial{};
    }
    if (text.starts_with("separable:")) {
        const std::string rest = text.substr(10);
        if (rest.starts_with("constant:")) {
            return Separable{ConstantProfile{parse_double(rest.substr(9))}};
        }
        if (rest.starts_with("linear:")) {
            const auto parts = split(rest.substr(7), ',');
            if (parts.size() != static_cast<std::size_t>(dim) + 1) {
                throw bad("linear profile needs " + std::to_string(dim) +
                          " coefficients plus an offset");
            }
            LinearProfile p;
            for (int a = 0; a < dim; ++a) {
                p.coeffs[a] = parse_double(parts[static_cast<std::size_t>(a)]);
            }
            p.offset = parse_double(parts.back());
            return Separable{p};
        }
        if (rest.starts_with("gaussian:")) {
            const auto parts = split(rest.substr(9), ',');
            if (parts.size() != 2) {
                throw bad("gaussian profile needs amplitude,width");
            }
            return Separable{GaussianProfile{parse_double(parts[0]), parse_double(parts[1])}};
        }
        throw bad("unknown separable profile");
    }
    if (text.starts_with("green-ansatz:")) {
        GreenAnsatz g;
        for (const std::string& kv : split(text.substr(13), ',')) {
            if (kv.starts_with("B=")) {
                g.amplitude = parse_double(kv.substr(2));
            } else if (kv.starts_with("C=")) {
                g.integration_constant = parse_double(kv.substr(2));
            } else {
                throw bad("unknown green-ansatz field '" + kv + "'");
            }
        }
        return g;
    }
    if (text.starts_with("linear-heat:")) {
        const std::string kv = text.substr(12);
        if (!kv.starts_with("t0=")) {
            throw bad("linear-heat needs t0=<value>");
        }
        return LinearHeat{parse_double(kv.substr(3))};
    }
    throw bad("unknown candidate family");
}

} // namespace nws
