#pragma once

// Real log-gamma, Beta and digamma in binary64, plus the slowly converging
// series representations that serve as independent cross-checks.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "fracmin/error.hpp"
#include "fracmin/summation.hpp"

namespace fracmin {

inline constexpr double euler_gamma = std::numbers::egamma;

/// Truncated series: `partial_sum` is the explicitly summed part,
/// `tail_estimate` an optional asymptotic correction (zero for raw partial
/// sums) and `tail_bound` a bound on |exact - value()|.
struct SeriesTail {
    double partial_sum = 0.0;
    std::uint64_t terms_used = 0;
    double tail_bound = 0.0;
    double tail_estimate = 0.0;

    double value() const { return partial_sum + tail_estimate; }
    bool brackets(double exact) const { return std::abs(exact - value()) <= tail_bound; }
};

namespace detail {

inline void require_positive(const char* where, double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        domain_fail(where, "argument must be positive and finite, got " + std::to_string(x));
}

// Stirling series for x >= 15; the first omitted term is below 1e-21.
inline double log_gamma_stirling(double x) {
    constexpr double c[] = {1.0 / 12.0,       -1.0 / 360.0,        1.0 / 1260.0,
                            -1.0 / 1680.0,    1.0 / 1188.0,        -691.0 / 360360.0,
                            1.0 / 156.0,      -3617.0 / 122400.0};
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    for (int k = 7; k >= 0; --k) series = series * inv2 + c[k];
    series *= inv;
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

// Asymptotic digamma for z >= 8; truncation error below 1e-15.
inline double digamma_asymptotic(double z) {
    constexpr double c[] = {1.0 / 12.0,  -1.0 / 120.0,      1.0 / 252.0, -1.0 / 240.0,
                            1.0 / 132.0, -691.0 / 32760.0,  1.0 / 12.0};
    const double inv2 = 1.0 / (z * z);
    double series = 0.0;
    for (int k = 6; k >= 0; --k) series = series * inv2 + c[k];
    series *= inv2;
    return std::log(z) - 0.5 / z - series;
}

} // namespace detail

/// ln Gamma(x) for x > 0. Arguments below 15 are shifted up with the
/// recurrence Gamma(x+1) = x Gamma(x) before the Stirling series is applied.
inline double log_gamma(double x) {
    detail::require_positive("log_gamma", x);
    constexpr double shift_to = 15.0;
    if (x >= shift_to) return detail::log_gamma_stirling(x);
    double product = 1.0;
    double y = x;
    while (y < shift_to) {
        product *= y;
        y += 1.0;
    }
    return detail::log_gamma_stirling(y) - std::log(product);
}

/// Euler Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
inline double beta(double a, double b) {
    detail::require_positive("beta", a);
    detail::require_positive("beta", b);
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

/// Digamma psi(z) = Gamma'(z)/Gamma(z) for z > 0: upward recurrence to
/// z >= 8 followed by the asymptotic expansion.
inline double digamma(double z) {
    detail::require_positive("digamma", z);
    CompensatedSum shift;
    while (z < 8.0) {
        shift.add(-1.0 / z);
        z += 1.0;
    }
    shift.add(detail::digamma_asymptotic(z));
    return shift.value();
}

/// psi(z) = -gamma + sum_{n>=0} (z-1)/((n+1)(n+z)) truncated after n_terms.
/// Each omitted term is at most |z-1|/(n(n+1)), so |z-1|/n_terms bounds the tail.
inline SeriesTail digamma_series(double z, std::uint64_t n_terms) {
    detail::require_positive("digamma_series", z);
    if (n_terms < 1) detail::domain_fail("digamma_series", "n_terms must be at least 1");
    const double num = z - 1.0;
    CompensatedSum acc;
    acc.add(-euler_gamma);
    if (num != 0.0) {
        for (std::uint64_t n = 0; n < n_terms; ++n) {
            const double nd = static_cast<double>(n);
            acc.add(num / ((nd + 1.0) * (nd + z)));
        }
    }
    return {acc.value(), n_terms, std::abs(num) / static_cast<double>(n_terms), 0.0};
}

/// Partial sums of sum_{n>=0} 1/((2n+1)(2n+2)) = ln 2. The tail after N terms
/// is below sum_{n>=N} 1/(4n(n+1)) = 1/(4N).
inline SeriesTail log2_series(std::uint64_t n_terms) {
    if (n_terms < 1) detail::domain_fail("log2_series", "n_terms must be at least 1");
    CompensatedSum acc;
    for (std::uint64_t n = 0; n < n_terms; ++n) {
        const double nd = static_cast<double>(n);
        acc.add(1.0 / ((2.0 * nd + 1.0) * (2.0 * nd + 2.0)));
    }
    return {acc.value(), n_terms, 0.25 / static_cast<double>(n_terms), 0.0};
}

/// S(c) = sum_{n>=0} 1/((2n+c)(2n+c+1)) for c > 0.
///
/// The first `direct_terms` terms are summed explicitly; the rest is replaced
/// by its Euler-Maclaurin expansion through f^(5). The summand
/// f(x) = 1/(2x+c) - 1/(2x+c+1) is completely monotone, so the remainder is
/// bounded by the first omitted correction |f^(7)(N)|/1209600.
inline SeriesTail reciprocal_pair_series(double c, std::uint64_t direct_terms = 1000) {
    detail::require_positive("reciprocal_pair_series", c);
    if (direct_terms < 1) detail::domain_fail("reciprocal_pair_series", "direct_terms must be at least 1");
    CompensatedSum acc;
    for (std::uint64_t n = 0; n < direct_terms; ++n) {
        const double u = 2.0 * static_cast<double>(n) + c;
        acc.add(1.0 / (u * (u + 1.0)));
    }
    const double u = 2.0 * static_cast<double>(direct_terms) + c;
    // k-th derivative of f at N: (-1)^k k! 2^k (u^{-k-1} - (u+1)^{-k-1}).
    auto deriv = [u](int k) {
        double fact = 1.0;
        for (int i = 2; i <= k; ++i) fact *= i;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        return sign * fact * std::ldexp(1.0, k) * (std::pow(u, -k - 1) - std::pow(u + 1.0, -k - 1));
    };
    CompensatedSum tail;
    tail.add(0.5 * std::log1p(1.0 / u));
    tail.add(0.5 * deriv(0));
    tail.add(-deriv(1) / 12.0);
    tail.add(deriv(3) / 720.0);
    tail.add(-deriv(5) / 30240.0);
    const double total = acc.value() + tail.value();
    const double bound = std::abs(deriv(7)) / 1209600.0 +
                         8.0 * std::numeric_limits<double>::epsilon() * std::abs(total);
    return {acc.value(), direct_terms, bound, tail.value()};
}

} // namespace fracmin
