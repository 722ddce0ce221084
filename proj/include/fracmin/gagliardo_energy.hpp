#pragma once

// Discrete W^{1/p,p} Gagliardo energy of circle maps.
//
//   E(u) = h^2 * sum_{i != j} |u_i - u_j|^p / c_ij^2,  c_ij = 2|sin((theta_i - theta_j)/2)|
//
// with h = 2*pi/n and the diagonal excluded. The kernel depends only on
// |i - j|, so it is tabulated once per call. Row sums and the final
// reduction are pairwise, which fixes the association order independently
// of the worker count.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fracmin/circle_maps.hpp"
#include "fracmin/error.hpp"
#include "fracmin/quadrature.hpp"
#include "fracmin/special_functions.hpp"
#include "fracmin/summation.hpp"

namespace fracmin {

/// Exponent p with s = 1/p, so that s*p = 1. Values in (2, 4) are accepted
/// for exploratory runs and flagged.
struct EnergyParams {
    double p = 2.0;
    double s = 0.5;
    bool beyond_validated_range = false;

    static EnergyParams make(double p) {
        if (!std::isfinite(p) || !(p > 1.0) || !(p < 4.0))
            detail::domain_fail("EnergyParams", "p must lie in (1, 4), got " + std::to_string(p));
        return {p, 1.0 / p, p > 2.0};
    }
};

namespace detail {

struct PairKernel {
    std::vector<double> x, y;        // unit vectors u_i
    std::vector<double> inv_chord2;  // 1 / c^2 indexed by |i - j|, slot 0 unused

    explicit PairKernel(const GridMap& u) : x(u.size()), y(u.size()), inv_chord2(u.size(), 0.0) {
        const std::size_t n = u.size();
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = std::cos(u.phase(i));
            y[i] = std::sin(u.phase(i));
        }
        for (std::size_t m = 1; m < n; ++m) {
            const double c = 2.0 * std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
            if (!(c * c > 0.0)) throw DomainError("energy: chord length underflow");
            inv_chord2[m] = 1.0 / (c * c);
        }
    }
};

inline void require_admissible(const GridMap& u, const char* where) {
    if (!u.admissible())
        throw AdmissibilityError(std::string(where) + ": map is not degree-admissible");
}

} // namespace detail

inline double energy(const GridMap& u, const EnergyParams& params) {
    detail::require_admissible(u, "energy");
    const std::size_t n = u.size();
    const detail::PairKernel k(u);
    const double half_p = 0.5 * params.p;
    const bool quadratic = params.p == 2.0;
    std::vector<double> rows(n, 0.0);
    parallel_rows(n, [&](std::size_t i) {
        std::vector<double> terms;
        terms.reserve(n - i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = k.x[i] - k.x[j];
            const double dy = k.y[i] - k.y[j];
            const double d2 = dx * dx + dy * dy;
            const double num = quadratic ? d2 : std::pow(d2, half_p);
            terms.push_back(num * k.inv_chord2[j - i]);
        }
        rows[i] = pairwise_sum(terms);
    });
    const double h = u.step();
    return 2.0 * h * h * pairwise_sum(rows);
}

/// dE/dphi_k = 2 h^2 p sum_{j != k} |u_k - u_j|^{p-2} sin(phi_k - phi_j) / c_kj^2.
/// Coincident points contribute zero, which is the limit for p > 1.
///
/// The pair terms are antisymmetric, so only the upper triangle is
/// evaluated (n^2 doubles of scratch); each row is then reduced pairwise in
/// column order.
inline std::vector<double> energy_gradient(const GridMap& u, const EnergyParams& params) {
    detail::require_admissible(u, "energy_gradient");
    const std::size_t n = u.size();
    const detail::PairKernel k(u);
    const double expo = 0.5 * (params.p - 2.0);
    const bool quadratic = params.p == 2.0;
    const double h = u.step();
    const double scale = 2.0 * h * h * params.p;
    std::vector<double> upper(n * n, 0.0);
    parallel_rows(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = k.x[i] - k.x[j];
            const double dy = k.y[i] - k.y[j];
            const double d2 = dx * dx + dy * dy;
            if (d2 == 0.0) continue;
            const double sin_diff = k.y[i] * k.x[j] - k.x[i] * k.y[j];
            const double weight = quadratic ? 1.0 : std::pow(d2, expo);
            upper[i * n + j] = weight * sin_diff * k.inv_chord2[j - i];
        }
    });
    std::vector<double> grad(n, 0.0);
    parallel_rows(n, [&](std::size_t i) {
        std::vector<double> terms;
        terms.reserve(n - 1);
        for (std::size_t j = 0; j < i; ++j) terms.push_back(-upper[j * n + i]);
        for (std::size_t j = i + 1; j < n; ++j) terms.push_back(upper[i * n + j]);
        grad[i] = scale * pairwise_sum(terms);
    });
    return grad;
}

namespace detail {
inline void require_validated_range(const char* where, double p) {
    if (!(p > 1.0 && p <= 2.0)) domain_fail(where, "p must lie in (1, 2], got " + std::to_string(p));
}
} // namespace detail

/// Continuum energy of the identity map: 2^p * pi * B((p-1)/2, 1/2).
inline double identity_energy_closed_form(double p) {
    detail::require_validated_range("identity_energy_closed_form", p);
    return std::exp2(p) * std::numbers::pi * beta(0.5 * (p - 1.0), 0.5);
}

/// Same quantity as 2^{p+1} pi * int_0^{pi/2} sin^{p-2}, by quadrature.
inline double identity_energy_integral_form(double p, const QuadratureSpec& spec = {}) {
    detail::require_validated_range("identity_energy_integral_form", p);
    return std::exp2(p) * std::numbers::pi * integral_sin_power(p, spec);
}

/// d/dp of the identity energy:
/// 2^{p-1} pi B((p-1)/2, 1/2) (2 ln 2 + psi((p-1)/2) - psi(p/2)).
inline double identity_energy_derivative(double p) {
    if (!(p > 1.0 && p < 2.0))
        detail::domain_fail("identity_energy_derivative", "p must lie in (1, 2), got " + std::to_string(p));
    const double a = 0.5 * (p - 1.0);
    const double bracket = 2.0 * std::numbers::ln2 + digamma(a) - digamma(0.5 * p);
    return std::exp2(p - 1.0) * std::numbers::pi * beta(a, 0.5) * bracket;
}

/// (4 pi^2 / 2^{2-p}) |d|: combines the sharp p = 2 degree estimate with
/// |u(x) - u(y)|^{2-p} <= 2^{2-p}.
inline double degree_lower_bound(double p, int d) {
    detail::require_validated_range("degree_lower_bound", p);
    return 4.0 * std::numbers::pi * std::numbers::pi / std::exp2(2.0 - p) * std::abs(d);
}

} // namespace fracmin
