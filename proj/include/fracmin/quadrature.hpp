#pragma once

// One-dimensional quadrature for integrands with integrable algebraic
// endpoint singularities.
//
// The default engine is tanh-sinh (double exponential). Nodes are generated
// as offsets from the nearer endpoint, so points within 1e-300 of a singular
// endpoint are still resolved when that endpoint is 0, or when the integrand
// accepts the offset as a second argument:
//
//     f(x)               plain integrand
//     f(x, xc)           xc = x - a on the left half, x - b on the right half
//
// An integrand that is singular at an endpoint other than 0 should use the
// two-argument form.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fracmin/error.hpp"

namespace fracmin {

enum class QuadratureScheme { double_exponential, midpoint_refined };

struct QuadratureSpec {
    QuadratureScheme scheme = QuadratureScheme::double_exponential;
    int level_or_nodes = 12; // maximum refinement level
    double abs_tol = 1e-10;

    void validate() const {
        if (!(abs_tol > 0.0)) detail::domain_fail("QuadratureSpec", "abs_tol must be positive");
        if (level_or_nodes < 1) detail::domain_fail("QuadratureSpec", "level_or_nodes must be >= 1");
    }
};

namespace detail {

template <class F>
concept takes_offset = std::invocable<F&, double, double>;

template <class F>
double call_integrand(F& f, double x, double xc) {
    if constexpr (takes_offset<F>)
        return f(x, xc);
    else
        return f(x);
}

// Tanh-sinh nodes on [a,b] for the step h = 2^-level. Level 0 visits every
// integer multiple of h; higher levels visit odd multiples only, so the
// running sum can be refined in place.
class TanhSinh {
public:
    static constexpr double t_max = 6.5;

    template <class F>
    static double level_sum(F& f, double a, double b, int level) {
        const double h = std::ldexp(1.0, -level);
        const std::int64_t kmax = static_cast<std::int64_t>(std::ceil(t_max / h));
        const std::int64_t stride = (level == 0) ? 1 : 2;
        const std::int64_t kstart = (level == 0) ? 0 : 1;
        const double width = b - a;
        double sum = 0.0;
        for (std::int64_t k = kstart; k <= kmax; k += stride) {
            const double t = static_cast<double>(k) * h;
            const double u = 0.5 * std::numbers::pi * std::sinh(t);
            const double e = std::exp(-2.0 * u);
            const double offset = width * e / (1.0 + e);
            if (offset == 0.0) continue;
            const double w = 0.5 * width * 0.5 * std::numbers::pi * std::cosh(t) * 4.0 * e /
                             ((1.0 + e) * (1.0 + e));
            if (w == 0.0) continue;
            // t >= 0: node near b; t <= 0 mirrors it near a. A node whose
            // abscissa rounds onto an endpoint is only usable when the
            // callback takes the exact offset.
            const double xr = b - offset;
            if (xr > a && xr < b)
                sum += w * checked(f, xr, -offset);
            else if constexpr (takes_offset<F>)
                sum += w * checked(f, std::nextafter(b, a), -offset);
            if (k != 0) {
                const double xl = a + offset;
                if (xl > a && xl < b)
                    sum += w * checked(f, xl, offset);
                else if constexpr (takes_offset<F>)
                    sum += w * checked(f, std::nextafter(a, b), offset);
            }
        }
        return sum;
    }

private:
    template <class F>
    static double checked(F& f, double x, double xc) {
        const double v = call_integrand(f, x, xc);
        if (!std::isfinite(v))
            throw DomainError("integrate_singular: integrand not finite at x = " + std::to_string(x));
        return v;
    }
};

inline double convergence_floor(double magnitude) {
    return 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
}

} // namespace detail

/// Tanh-sinh estimate at a fixed refinement level (step 2^-level), without
/// any convergence test.
template <class F>
double tanh_sinh_at_level(F&& f, double a, double b, int level) {
    double sum = 0.0;
    for (int l = 0; l <= level; ++l) sum += detail::TanhSinh::level_sum(f, a, b, l);
    return sum * std::ldexp(1.0, -level);
}

/// Integral of f over (a, b) to spec.abs_tol. Throws ConvergenceError if the
/// difference between successive levels stays above tolerance up to
/// spec.level_or_nodes.
template <class F>
double integrate_singular(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(std::isfinite(a) && std::isfinite(b)))
        detail::domain_fail("integrate_singular", "interval bounds must be finite");
    if (a == b) return 0.0;
    if (a > b) return -integrate_singular(f, b, a, spec);

    if (spec.scheme == QuadratureScheme::double_exponential) {
        double sum = detail::TanhSinh::level_sum(f, a, b, 0);
        double previous = sum;
        for (int level = 1; level <= spec.level_or_nodes; ++level) {
            sum += detail::TanhSinh::level_sum(f, a, b, level);
            const double estimate = sum * std::ldexp(1.0, -level);
            const double diff = std::abs(estimate - previous);
            if (level >= 3 && diff <= std::max(spec.abs_tol, detail::convergence_floor(std::abs(estimate))))
                return estimate;
            previous = estimate;
        }
        throw ConvergenceError("integrate_singular: tanh-sinh did not reach abs_tol " +
                               std::to_string(spec.abs_tol) + " by level " +
                               std::to_string(spec.level_or_nodes));
    }

    // Composite midpoint rule, tripling the node count per level so earlier
    // nodes are reused, with Richardson extrapolation in h^2.
    const double width = b - a;
    std::vector<double> prev_row;
    double midpoint_sum = 0.0;
    std::int64_t cells = 1;
    {
        const double x = a + 0.5 * width;
        midpoint_sum = detail::call_integrand(f, x, 0.5 * width);
        prev_row.push_back(midpoint_sum * width);
    }
    for (int level = 1; level <= spec.level_or_nodes; ++level) {
        const std::int64_t new_cells = cells * 3;
        const double hw = width / static_cast<double>(new_cells);
        // New midpoints sit at offsets 1/6 and 5/6 of each old cell.
        for (std::int64_t c = 0; c < cells; ++c) {
            for (std::int64_t j : {3 * c, 3 * c + 2}) {
                const double off = (static_cast<double>(j) + 0.5) * hw;
                const double x = a + off;
                const double xc = (off <= 0.5 * width) ? off : x - b;
                midpoint_sum += detail::call_integrand(f, x, xc);
            }
        }
        cells = new_cells;
        std::vector<double> row{midpoint_sum * hw};
        double factor = 9.0;
        for (std::size_t k = 1; k <= prev_row.size(); ++k) {
            row.push_back(row[k - 1] + (row[k - 1] - prev_row[k - 1]) / (factor - 1.0));
            factor *= 9.0;
        }
        const double diff = std::abs(row.back() - prev_row.back());
        if (level >= 2 && diff <= std::max(spec.abs_tol, detail::convergence_floor(std::abs(row.back()))))
            return row.back();
        prev_row = std::move(row);
    }
    throw ConvergenceError("integrate_singular: midpoint rule did not reach abs_tol " +
                           std::to_string(spec.abs_tol) + " by level " +
                           std::to_string(spec.level_or_nodes));
}

/// Integral of sin(x)^(p-2) over (0, pi) for 1 < p <= 2.
///
/// Evaluated as twice the integral over (0, pi/2) after substituting
/// y = x^(p-1), which turns the integrand into
///     (sin(x) / x)^(p-2) / (p-1),   x = y^(1/(p-1)),
/// a bounded smooth function. Without it, for p close to 1 a visible part
/// of the mass sits below the smallest representable node offset.
inline double integral_sin_power(double p, const QuadratureSpec& spec = {}) {
    if (!(p > 1.0 && p <= 2.0))
        detail::domain_fail("integral_sin_power", "p must lie in (1, 2], got " + std::to_string(p));
    const double q = p - 1.0;
    const double exponent = p - 2.0;
    auto f = [q, exponent](double y) {
        const double x = std::pow(y, 1.0 / q);
        const double sinc = x < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
        return std::pow(sinc, exponent) / q;
    };
    QuadratureSpec half = spec;
    half.abs_tol = 0.5 * spec.abs_tol;
    return 2.0 * integrate_singular(f, 0.0, std::pow(0.5 * std::numbers::pi, q), half);
}

} // namespace fracmin
