#pragma once

// The critical exponent p' below which the degree-splitting argument stops
// certifying a degree-one minimizer. It solves
//
//   5 * 4 pi^2 / 2^{2-p} = E_{1/p,p}(Id)   <=>   B((p-1)/2, 1/2) = 5 pi.
//
// The Beta closed form drives the root finder; the quadrature value of
// int_0^pi sin^{p-2} is only used to validate the root.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "fracmin/gagliardo_energy.hpp"
#include "fracmin/quadrature.hpp"
#include "fracmin/special_functions.hpp"

namespace fracmin {

/// Smallest |d1| + |d2| with d1, d2 outside {-1, 0, 1}.
inline constexpr int min_split_degree_sum = 5;
inline constexpr double critical_bracket_lo = 1.0001;
inline constexpr double critical_bracket_hi = 2.0;

struct CriticalReport {
    double p_prime = 0.0;
    double residual_beta = 0.0;
    double residual_quadrature = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
    int iterations = 0;
};

/// g(p) = B((p-1)/2, 1/2) - 5 pi, strictly decreasing on (1, 2].
inline double critical_residual(double p) {
    return beta(0.5 * (p - 1.0), 0.5) - min_split_degree_sum * std::numbers::pi;
}

struct BrentResult {
    double root = 0.0;
    double f_root = 0.0;
    double lo = 0.0, hi = 0.0;
    int iterations = 0;
};

/// Brent's method (inverse quadratic interpolation, secant and bisection).
/// Stops once |f| <= ftol or the bracket has shrunk to a few ulps.
template <class F>
BrentResult brent_root(F&& f, double a, double b, double ftol, int max_iter = 200) {
    double fa = f(a);
    double fb = f(b);
    if (!(fa * fb <= 0.0)) throw ConvergenceError("brent_root: interval does not bracket a root");
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa;
    double d = b - a, e = d;
    int it = 0;
    for (; it < max_iter; ++it) {
        if (fb * fc > 0.0) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        if (std::abs(fb) <= ftol) break;
        const double xtol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b);
        const double half = 0.5 * (c - b);
        if (std::abs(half) <= xtol || fb == 0.0) break;
        if (std::abs(e) >= xtol && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double pq, q;
            if (a == c) {
                pq = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                pq = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (pq > 0.0) q = -q;
            pq = std::abs(pq);
            if (2.0 * pq < std::min(3.0 * half * q - std::abs(xtol * q), std::abs(e * q))) {
                e = d;
                d = pq / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > xtol) ? d : (half > 0.0 ? xtol : -xtol);
        fb = f(b);
    }
    return {b, fb, std::min(b, c), std::max(b, c), it};
}

inline QuadratureSpec critical_quadrature() {
    return {QuadratureScheme::double_exponential, 12, 1e-12};
}

inline CriticalReport critical_p(double tol = 1e-10) {
    if (!(tol >= 1e-14 && tol <= 1e-4))
        detail::domain_fail("critical_p", "tol must lie in [1e-14, 1e-4], got " + std::to_string(tol));
    const double g_lo = critical_residual(critical_bracket_lo);
    const double g_hi = critical_residual(critical_bracket_hi);
    if (!(g_lo > 0.0 && g_hi < 0.0))
        throw ConvergenceError("critical_p: residual does not change sign on the bracket");
    const auto r = brent_root(critical_residual, critical_bracket_lo, critical_bracket_hi, tol);
    CriticalReport out;
    out.p_prime = r.root;
    out.residual_beta = r.f_root;
    out.residual_quadrature =
        integral_sin_power(r.root, critical_quadrature()) - min_split_degree_sum * std::numbers::pi;
    out.bracket = {r.lo, r.hi};
    out.iterations = r.iterations;
    return out;
}

/// The lower-bound side of the critical identity, 5 * 4 pi^2 / 2^{2-p}.
inline double split_energy_bound(double p) {
    return min_split_degree_sum * degree_lower_bound(p, 1);
}

/// sum_{n>=0} 1/((2n+p-1)(2n+p)) with its truncation bound.
inline SeriesTail sign_condition_series(double p) {
    if (!(p > 1.0 && p <= 2.0))
        detail::domain_fail("derivative_sign_condition", "p must lie in (1, 2], got " + std::to_string(p));
    return reciprocal_pair_series(p - 1.0);
}

/// ln 2 - sum_{n>=0} 1/((2n+p-1)(2n+p)); negative exactly where the identity
/// energy decreases in p, zero at p = 2.
inline double derivative_sign_condition(double p) {
    return std::numbers::ln2 - sign_condition_series(p).value();
}

struct MonotonicityRow {
    double p = 0.0;
    double derivative = 0.0;
    double digamma_bracket = 0.0; // 2 ln 2 + psi((p-1)/2) - psi(p/2)
    double series_bracket = 0.0;  // 2 ln 2 - 2 sum 1/((2n+p-1)(2n+p))
};

inline constexpr double bracket_identity_tolerance = 1e-9;

/// identity_energy_derivative on a uniform grid of [1.01, 1.99] with both
/// evaluations of the digamma bracket.
inline std::vector<MonotonicityRow> monotonicity_scan(std::size_t grid_size) {
    if (grid_size < 10) detail::domain_fail("monotonicity_scan", "grid_size must be >= 10");
    constexpr double lo = 1.01, hi = 1.99;
    std::vector<MonotonicityRow> rows;
    rows.reserve(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double p = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_size - 1);
        MonotonicityRow row;
        row.p = p;
        row.derivative = identity_energy_derivative(p);
        row.digamma_bracket = 2.0 * std::numbers::ln2 + digamma(0.5 * (p - 1.0)) - digamma(0.5 * p);
        row.series_bracket = 2.0 * std::numbers::ln2 - 2.0 * sign_condition_series(p).value();
        rows.push_back(row);
    }
    return rows;
}

} // namespace fracmin
