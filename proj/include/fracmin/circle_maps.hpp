#pragma once

// Circle-valued maps u: S^1 -> S^1 sampled on the uniform grid
// theta_i = 2*pi*i/n and stored as lifted phases, u(theta_i) = exp(i*phi_i).

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracmin/error.hpp"

namespace fracmin {

inline constexpr std::size_t min_grid_size = 8;

/// Principal value in (-pi, pi]; an exact tie at -pi maps to +pi.
inline double wrap_angle(double x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(x, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

class GridMap {
public:
    /// Throws SizeError below 8 nodes and DomainError on non-finite phases.
    explicit GridMap(std::vector<double> phases) : phases_(std::move(phases)) {
        if (phases_.size() < min_grid_size)
            throw SizeError("GridMap: need at least 8 nodes, got " + std::to_string(phases_.size()));
        for (double v : phases_)
            if (!std::isfinite(v)) throw DomainError("GridMap: non-finite phase");
    }

    std::size_t size() const { return phases_.size(); }
    std::span<const double> phases() const { return phases_; }
    double phase(std::size_t i) const { return phases_[i]; }

    double theta(std::size_t i) const {
        return 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(size());
    }
    double step() const { return 2.0 * std::numbers::pi / static_cast<double>(size()); }

    /// Principal-value gap from node i to node i+1 (cyclically).
    double gap(std::size_t i) const {
        const std::size_t next = (i + 1 == size()) ? 0 : i + 1;
        return wrap_angle(phases_[next] - phases_[i]);
    }

    double max_abs_gap() const {
        double m = 0.0;
        for (std::size_t i = 0; i < size(); ++i) m = std::max(m, std::abs(gap(i)));
        return m;
    }

    /// Every principal gap lies strictly inside (-pi, pi).
    bool admissible() const { return max_abs_gap() < std::numbers::pi; }

    GridMap rotated(double angle) const {
        std::vector<double> out(phases_);
        for (double& v : out) v += angle;
        return GridMap(std::move(out));
    }

    /// Orientation reversal u -> conj(u).
    GridMap reflected() const {
        std::vector<double> out(phases_);
        for (double& v : out) v = -v;
        return GridMap(std::move(out));
    }

    /// Pointwise complex product; phases add.
    friend GridMap operator*(const GridMap& u, const GridMap& v) {
        if (u.size() != v.size()) throw SizeError("GridMap product: grid sizes differ");
        std::vector<double> out(u.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = u.phases_[i] + v.phases_[i];
        return GridMap(std::move(out));
    }

private:
    std::vector<double> phases_;
};

namespace detail {
inline void require_grid(const char* where, std::size_t n) {
    if (n < min_grid_size)
        throw SizeError(std::string(where) + ": need n >= 8, got " + std::to_string(n));
}
} // namespace detail

inline GridMap power_map(std::size_t n, int d) {
    detail::require_grid("power_map", n);
    if (n <= 2 * static_cast<std::size_t>(std::abs(d)))
        throw SizeError("power_map: n must exceed 2|d| for the degree to be resolved");
    std::vector<double> phases(n);
    for (std::size_t i = 0; i < n; ++i)
        phases[i] = static_cast<double>(d) * 2.0 * std::numbers::pi * static_cast<double>(i) /
                    static_cast<double>(n);
    return GridMap(std::move(phases));
}

inline GridMap identity_map(std::size_t n) {
    detail::require_grid("identity_map", n);
    return power_map(n, 1);
}

/// Boundary trace of the disk automorphism z -> (z - a)/(1 - conj(a) z).
///
/// Uses the exact lift theta + arg(1 - a conj(z)) - arg(1 - conj(a) z); both
/// arguments have positive real part, so principal values are continuous.
inline GridMap moebius_map(std::size_t n, std::complex<double> a) {
    detail::require_grid("moebius_map", n);
    if (!(std::abs(a) < 1.0)) throw DomainError("moebius_map: |a| must be < 1");
    std::vector<double> phases(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        const std::complex<double> z = std::polar(1.0, theta);
        phases[i] = theta + std::arg(1.0 - a * std::conj(z)) - std::arg(1.0 - std::conj(a) * z);
    }
    return GridMap(std::move(phases));
}

struct DegreeResult {
    int degree = 0;
    double residual = 0.0; // winding sum / 2pi minus the rounded degree
};

/// Discrete winding number with its rounding residual.
inline DegreeResult degree_with_residual(const GridMap& u) {
    double total = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double g = u.gap(i);
        if (!(std::abs(g) < std::numbers::pi))
            throw AdmissibilityError("degree: gap " + std::to_string(g) + " at node " +
                                     std::to_string(i) + " is not strictly inside (-pi, pi)");
        total += g;
    }
    const double turns = total / (2.0 * std::numbers::pi);
    const double rounded = std::round(turns);
    return {static_cast<int>(rounded), turns - rounded};
}

inline int degree(const GridMap& u) { return degree_with_residual(u).degree; }

/// Adds sum_m alpha_m cos(k_m theta) + beta_m sin(k_m theta) with five
/// modes k_m in [1, 6] and |alpha_m|, |beta_m| <= amplitude. Deterministic
/// for a fixed seed.
inline GridMap perturb(const GridMap& u, double amplitude, std::uint64_t seed) {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
        throw DomainError("perturb: amplitude must be non-negative");
    if (amplitude == 0.0) return u;
    constexpr int modes = 5;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> freq(1, 6);
    std::uniform_real_distribution<double> coef(-amplitude, amplitude);
    int k[modes];
    double alpha[modes];
    double beta[modes];
    for (int m = 0; m < modes; ++m) {
        k[m] = freq(rng);
        alpha[m] = coef(rng);
        beta[m] = coef(rng);
    }
    std::vector<double> out(u.phases().begin(), u.phases().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double theta = u.theta(i);
        for (int m = 0; m < modes; ++m)
            out[i] += alpha[m] * std::cos(k[m] * theta) + beta[m] * std::sin(k[m] * theta);
    }
    return GridMap(std::move(out));
}

} // namespace fracmin
