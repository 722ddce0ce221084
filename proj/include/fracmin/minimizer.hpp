#pragma once

// Gradient descent on the discrete Gagliardo energy over maps of a fixed
// degree. Phases are unconstrained coordinates for S^1-valued maps; the
// homotopy class is enforced by rejecting (and halving) any step whose
// iterate loses admissibility or changes degree.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "fracmin/circle_maps.hpp"
#include "fracmin/error.hpp"
#include "fracmin/gagliardo_energy.hpp"

namespace fracmin {

enum class StepRule { armijo_backtracking, fixed };

struct MinimizeConfig {
    double p = 2.0;
    int degree_target = 1;
    std::size_t n = 256;
    int max_iters = 500;
    double grad_tol = 1e-6;
    int restarts = 3;
    std::uint64_t seed = 0;
    StepRule step_rule = StepRule::armijo_backtracking;

    double initial_step = 1.0;
    double shrink = 0.5;
    double sufficient_decrease = 1e-4;
    int max_halvings = 40;
    double restart_amplitude = 0.1;
    double start_phase_shift = 0.0;

    void validate() const {
        if (!(p > 1.0 && p <= 2.0)) detail::domain_fail("MinimizeConfig", "p must lie in (1, 2]");
        if (n < min_grid_size) throw SizeError("MinimizeConfig: n must be >= 8");
        if (n <= 2 * static_cast<std::size_t>(std::abs(degree_target)))
            throw SizeError("MinimizeConfig: n must exceed 2|degree_target|");
        if (max_iters < 1) detail::domain_fail("MinimizeConfig", "max_iters must be positive");
        if (!(grad_tol > 0.0)) detail::domain_fail("MinimizeConfig", "grad_tol must be positive");
        if (restarts < 0) detail::domain_fail("MinimizeConfig", "restarts must be non-negative");
        if (!(initial_step > 0.0) || !(shrink > 0.0 && shrink < 1.0))
            detail::domain_fail("MinimizeConfig", "invalid step parameters");
        if (!(restart_amplitude >= 0.0)) detail::domain_fail("MinimizeConfig", "restart_amplitude must be >= 0");
    }
};

struct MinimizeResult {
    GridMap final_map;
    double final_energy = 0.0;
    int final_degree = 0;
    int iterations = 0;
    double grad_norm = 0.0;
    std::vector<double> energy_trace;
    bool converged = false;
    bool aborted = false;  // a step could not be accepted within max_halvings
    int restart_index = 0; // which start produced this result
    int runs = 0;
    double lowest_energy_any_run = 0.0; // including runs that did not converge
};

namespace detail {

inline double l2_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline std::uint64_t restart_seed(std::uint64_t seed, int restart) {
    // splitmix64 finalizer over (seed, restart)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(restart + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline MinimizeResult descend(const GridMap& start, const MinimizeConfig& cfg, int restart_index) {
    const EnergyParams params = EnergyParams::make(cfg.p);
    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<double> phi(start.phases().begin(), start.phases().end());
    GridMap current = start;
    double e = energy(current, params);
    MinimizeResult out{current, e, cfg.degree_target, 0, 0.0, {e}, false, false, restart_index};

    std::vector<double> grad = energy_gradient(current, params);
    double gnorm = l2_norm(grad);
    for (int it = 0; it < cfg.max_iters && gnorm > cfg.grad_tol; ++it) {
        double step = cfg.initial_step;
        bool accepted = false;
        std::vector<double> trial(phi.size());
        double e_trial = 0.0;
        for (int halving = 0; halving <= cfg.max_halvings; ++halving, step *= cfg.shrink) {
            for (std::size_t i = 0; i < phi.size(); ++i) trial[i] = phi[i] - step * grad[i];
            GridMap candidate(trial);
            if (!candidate.admissible() || degree(candidate) != cfg.degree_target) continue;
            e_trial = energy(candidate, params);
            if (cfg.step_rule == StepRule::armijo_backtracking) {
                const double decrease = cfg.sufficient_decrease * step * gnorm * gnorm;
                // Below rounding level the sufficient-decrease test degenerates
                // to plain non-increase.
                const bool ok = (e_trial <= e - decrease) ||
                                (decrease <= 16.0 * eps * std::abs(e) && e_trial <= e);
                if (!ok) continue;
            }
            current = std::move(candidate);
            accepted = true;
            break;
        }
        if (!accepted) {
            out.aborted = true;
            break;
        }
        phi = trial;
        e = e_trial;
        out.energy_trace.push_back(e);
        ++out.iterations;
        grad = energy_gradient(current, params);
        gnorm = l2_norm(grad);
    }
    out.final_map = current;
    out.final_energy = e;
    out.final_degree = degree(current);
    out.grad_norm = gnorm;
    out.converged = !out.aborted && gnorm <= cfg.grad_tol;
    return out;
}

} // namespace detail

/// Starting points: power_map(n, d) and `restarts` perturbations of it.
/// The lowest-energy converged run is returned (ties go to the earlier
/// start); if no run converged, the lowest-energy run overall.
inline MinimizeResult minimize(const MinimizeConfig& cfg) {
    cfg.validate();
    const GridMap base = power_map(cfg.n, cfg.degree_target).rotated(cfg.start_phase_shift);
    std::vector<MinimizeResult> runs;
    runs.reserve(static_cast<std::size_t>(cfg.restarts) + 1);
    for (int r = 0; r <= cfg.restarts; ++r) {
        GridMap start = base;
        if (r > 0) {
            start = perturb(base, cfg.restart_amplitude, detail::restart_seed(cfg.seed, r));
            if (!start.admissible() || degree(start) != cfg.degree_target) continue;
        }
        runs.push_back(detail::descend(start, cfg, r));
    }
    auto better = [](const MinimizeResult& a, const MinimizeResult& b) {
        if (a.converged != b.converged) return a.converged;
        return a.final_energy < b.final_energy;
    };
    std::size_t best = 0;
    double lowest = runs[0].final_energy;
    for (std::size_t i = 1; i < runs.size(); ++i) {
        if (better(runs[i], runs[best])) best = i;
        lowest = std::min(lowest, runs[i].final_energy);
    }
    MinimizeResult out = std::move(runs[best]);
    out.runs = static_cast<int>(runs.size());
    out.lowest_energy_any_run = lowest;
    return out;
}

struct ScanRow {
    double p = 0.0;
    double min_energy = 0.0;
    double identity_energy = 0.0;      // discrete energy of power_map(n, d)
    double identity_closed_form = 0.0; // continuum value, d = 1
    double lower_bound = 0.0;
    bool converged = false;
    int final_degree = 0;
    int iterations = 0;
};

inline constexpr double lower_bound_slack = 0.98;
inline constexpr double competitor_slack = 1e-9;

inline bool sandwich_holds(const ScanRow& r) {
    return r.lower_bound * lower_bound_slack <= r.min_energy &&
           r.min_energy <= r.identity_energy + competitor_slack;
}

inline std::vector<ScanRow> minimize_scan(const std::vector<double>& p_values, const MinimizeConfig& base) {
    std::vector<ScanRow> rows;
    rows.reserve(p_values.size());
    for (double p : p_values) {
        MinimizeConfig cfg = base;
        cfg.p = p;
        const MinimizeResult res = minimize(cfg);
        ScanRow row;
        row.p = p;
        row.min_energy = res.final_energy;
        row.identity_energy = energy(power_map(cfg.n, cfg.degree_target), EnergyParams::make(p));
        row.identity_closed_form = identity_energy_closed_form(p);
        row.lower_bound = degree_lower_bound(p, cfg.degree_target);
        row.converged = res.converged;
        row.final_degree = res.final_degree;
        row.iterations = res.iterations;
        rows.push_back(row);
    }
    return rows;
}

} // namespace fracmin
