#pragma once

// Randomized verification of the elementary inequalities behind the
// existence argument:
//
//   <J_p(b) - J_p(a), b - a> >= (p-1)|b-a|^2 int_0^1 |a + t(b-a)|^{p-2} dt,
//   A^p <= A^2 B^{p-2} + B^p,
//   E_{1/p,p}(u) >= (4 pi^2 / 2^{2-p}) |deg u|,
//
// where J_p(v) = |v|^{p-2} v and 1 < p < 2.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "fracmin/circle_maps.hpp"
#include "fracmin/error.hpp"
#include "fracmin/gagliardo_energy.hpp"
#include "fracmin/quadrature.hpp"

namespace fracmin {

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0; // lhs - rhs
    std::string inputs_digest;
};

inline InequalityCheck make_check(double lhs, double rhs, std::string digest = {}) {
    return {lhs, rhs, lhs - rhs, std::move(digest)};
}

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline void require_open_unit_range(const char* where, double p) {
    if (!(p > 1.0 && p < 2.0)) domain_fail(where, "p must lie in (1, 2), got " + std::to_string(p));
}

} // namespace detail

/// int_0^1 |a + t(b-a)|^{p-2} dt for a != b.
///
/// Writes |a + t d|^2 = rho^2 + (t - t*)^2 |d|^2, with t* the parameter of
/// the point nearest the origin and rho its distance computed from the
/// wedge product, then integrates in s = |t - t*| so that the only possible
/// singularity sits at s = 0.
inline double segment_weight_integral(std::span<const double> a, std::span<const double> b, double p,
                                      const QuadratureSpec& spec) {
    const std::size_t m = a.size();
    std::vector<double> d(m);
    for (std::size_t i = 0; i < m; ++i) d[i] = b[i] - a[i];
    const double dd = detail::dot(d, d);
    if (!(dd > 0.0)) detail::domain_fail("segment_weight_integral", "a and b coincide");
    double wedge2 = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const double w = a[i] * d[j] - a[j] * d[i];
            wedge2 += w * w;
        }
    const double rho = std::sqrt(wedge2 / dd);
    const double len = std::sqrt(dd);
    const double t_star = -detail::dot(a, d) / dd;
    auto f = [rho, len, p](double s) { return std::pow(std::hypot(rho, s * len), p - 2.0); };
    if (t_star > 0.0 && t_star < 1.0)
        return integrate_singular(f, 0.0, t_star, spec) + integrate_singular(f, 0.0, 1.0 - t_star, spec);
    if (t_star <= 0.0) return integrate_singular(f, -t_star, 1.0 - t_star, spec);
    return integrate_singular(f, t_star - 1.0, t_star, spec);
}

inline QuadratureSpec inequality_quadrature() {
    return {QuadratureScheme::double_exponential, 12, 1e-14};
}

inline InequalityCheck jp_monotonicity_check(std::span<const double> a, std::span<const double> b, double p,
                                             std::string digest = {},
                                             const QuadratureSpec& spec = inequality_quadrature()) {
    detail::require_open_unit_range("jp_monotonicity_check", p);
    if (a.size() != b.size() || a.empty())
        detail::domain_fail("jp_monotonicity_check", "a and b must have the same positive dimension");
    const double na = std::sqrt(detail::dot(a, a));
    const double nb = std::sqrt(detail::dot(b, b));
    bool same = true;
    for (std::size_t i = 0; i < a.size(); ++i) same = same && a[i] == b[i];
    if (same) {
        if (na == 0.0) detail::domain_fail("jp_monotonicity_check", "degenerate input a = b = 0");
        return make_check(0.0, 0.0, std::move(digest));
    }
    const double ja = na > 0.0 ? std::pow(na, p - 2.0) : 0.0;
    const double jb = nb > 0.0 ? std::pow(nb, p - 2.0) : 0.0;
    double lhs = 0.0;
    double dd = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double di = b[i] - a[i];
        lhs += (jb * b[i] - ja * a[i]) * di;
        dd += di * di;
    }
    const double rhs = (p - 1.0) * dd * segment_weight_integral(a, b, p, spec);
    return make_check(lhs, rhs, std::move(digest));
}

inline InequalityCheck young_variant_check(double A, double B, double p, std::string digest = {}) {
    detail::require_open_unit_range("young_variant_check", p);
    if (!(A >= 0.0) || !std::isfinite(A)) detail::domain_fail("young_variant_check", "A must be >= 0");
    if (!(B > 0.0) || !std::isfinite(B)) detail::domain_fail("young_variant_check", "B must be > 0");
    const double lhs = A * A * std::pow(B, p - 2.0) + std::pow(B, p);
    return make_check(lhs, std::pow(A, p), std::move(digest));
}

/// lhs = E(u), rhs = degree_lower_bound(p, deg u). Discretization slack is
/// the caller's business.
inline InequalityCheck bbm_degree_check(const GridMap& u, double p, std::string digest = {}) {
    const int d = degree(u);
    return make_check(energy(u, EnergyParams::make(p)), degree_lower_bound(p, d), std::move(digest));
}

struct SuiteSummary {
    std::size_t samples = 0;
    std::size_t failures = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    std::string worst_digest;

    void record(const InequalityCheck& c, double tolerance) {
        ++samples;
        if (c.margin < -tolerance) ++failures;
        if (c.margin < min_margin) {
            min_margin = c.margin;
            worst_digest = c.inputs_digest;
        }
    }
    bool passed() const { return samples > 0 && failures == 0; }
};

inline constexpr double jp_margin_tolerance = 1e-10;
inline constexpr double young_margin_tolerance = 1e-12;
inline constexpr double antipodal_tolerance = 1e-9;

namespace detail {
inline std::string digest_of(const char* kind, std::uint64_t seed, std::size_t index) {
    std::ostringstream os;
    os << kind << ":seed=" << seed << ":sample=" << index;
    return os.str();
}
} // namespace detail

/// Components uniform in [-10, 10], dimension uniform in {1, 2, 3},
/// p uniform in (1.05, 1.95).
inline SuiteSummary jp_random_suite(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> comp(-10.0, 10.0);
    std::uniform_real_distribution<double> expo(1.05, 1.95);
    std::uniform_int_distribution<int> dim(1, 3);
    SuiteSummary out;
    for (std::size_t k = 0; k < samples; ++k) {
        const int m = dim(rng);
        std::vector<double> a(m), b(m);
        for (auto& v : a) v = comp(rng);
        for (auto& v : b) v = comp(rng);
        const double p = expo(rng);
        out.record(jp_monotonicity_check(a, b, p, detail::digest_of("jp", seed, k)), jp_margin_tolerance);
    }
    return out;
}

/// Antipodal unit pairs a = -v, b = v, for which both sides equal 4.
/// Includes v = e_1 followed by random unit vectors in R^3.
inline SuiteSummary jp_antipodal_suite(std::span<const double> p_values, std::size_t random_dirs,
                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    SuiteSummary out;
    std::size_t index = 0;
    for (double p : p_values) {
        for (std::size_t k = 0; k <= random_dirs; ++k, ++index) {
            std::vector<double> v{1.0, 0.0, 0.0};
            if (k > 0) {
                double norm = 0.0;
                while (norm < 1e-3) {
                    for (auto& c : v) c = normal(rng);
                    norm = std::sqrt(detail::dot(v, v));
                }
                for (auto& c : v) c /= norm;
            }
            std::vector<double> a{-v[0], -v[1], -v[2]};
            auto check = jp_monotonicity_check(a, v, p, detail::digest_of("jp-antipodal", seed, index));
            // Equality case: the margin has to vanish in both directions.
            check.margin = -std::abs(check.margin);
            out.record(check, antipodal_tolerance);
        }
    }
    return out;
}

/// A, B uniform in (0, 100], p uniform in (1.05, 1.95).
inline SuiteSummary young_random_suite(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.0, 100.0);
    std::uniform_real_distribution<double> expo(1.05, 1.95);
    SuiteSummary out;
    for (std::size_t k = 0; k < samples; ++k) {
        const double A = 100.0 - mag(rng); // (0, 100]
        const double B = 100.0 - mag(rng);
        const double p = expo(rng);
        out.record(young_variant_check(A, B, p, detail::digest_of("young", seed, k)), young_margin_tolerance);
    }
    return out;
}

} // namespace fracmin
