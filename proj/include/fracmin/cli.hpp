#pragma once

// Command-line driver. Every subcommand fills a Report and prints it as one
// JSON document (or CSV with --format csv).
//
// Exit status: 0 all checks pass, 1 some check failed, 2 usage error,
// 3 domain error, 4 non-convergence.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fracmin/circle_maps.hpp"
#include "fracmin/critical_exponent.hpp"
#include "fracmin/error.hpp"
#include "fracmin/gagliardo_energy.hpp"
#include "fracmin/inequality_lab.hpp"
#include "fracmin/map_io.hpp"
#include "fracmin/minimizer.hpp"
#include "fracmin/report.hpp"

namespace fracmin::cli {

enum ExitStatus : int { ok = 0, check_failed = 1, usage = 2, domain = 3, no_convergence = 4 };

inline constexpr double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
inline constexpr double reference_p_prime = 1.13924;
inline constexpr double reference_p_prime_tol = 5e-5;
inline constexpr double finite_difference_step = 1e-6;    // in p
inline constexpr double gradient_difference_step = 1e-5; // in a phase

struct Options {
    std::string format = "json";
    std::string out;

    double p = 2.0;
    double tol = 1e-10;
    std::size_t n = 256;
    int degree = 1;
    std::uint64_t seed = 0;
    std::string map_path;
    double a_re = 0.0;
    double a_im = 0.0;
    std::string dump_map;
    std::string trace_path;

    std::size_t grid_size = 100;
    double amplitude = 0.3;
    std::size_t samples = 1000;
    double slack = 0.02;

    int max_iters = MinimizeConfig{}.max_iters;
    double grad_tol = MinimizeConfig{}.grad_tol;
    int restarts = MinimizeConfig{}.restarts;
    std::string step_rule = "armijo";
    std::string p_values = "1.2,1.4,pprime,1.8";
};

namespace detail {

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Accepts plain numbers and the token "pprime" for the critical exponent.
inline std::vector<double> parse_p_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) continue;
        if (item == "pprime" || item == "p'") {
            out.push_back(critical_p(1e-12).p_prime);
            continue;
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::logic_error&) {
            throw CLI::ValidationError("--p-values", "cannot parse '" + item + "'");
        }
        if (used != item.size()) throw CLI::ValidationError("--p-values", "cannot parse '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError("--p-values", "empty list");
    return out;
}

inline GridMap load_or_default_map(const Options& o) {
    if (!o.map_path.empty()) return read_map_csv(o.map_path);
    if (o.a_re != 0.0 || o.a_im != 0.0) return moebius_map(o.n, {o.a_re, o.a_im});
    return identity_map(o.n);
}

inline void write_trace_csv(const std::string& path, const std::vector<double>& trace) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path + " for writing");
    os << "iter,energy\n";
    for (std::size_t i = 0; i < trace.size(); ++i) os << i << ',' << format_g17(trace[i]) << '\n';
}

inline MinimizeConfig minimize_config(const Options& o) {
    MinimizeConfig cfg;
    cfg.p = o.p;
    cfg.degree_target = o.degree;
    cfg.n = o.n;
    cfg.max_iters = o.max_iters;
    cfg.grad_tol = o.grad_tol;
    cfg.restarts = o.restarts;
    cfg.seed = o.seed;
    if (o.step_rule == "armijo")
        cfg.step_rule = StepRule::armijo_backtracking;
    else if (o.step_rule == "fixed")
        cfg.step_rule = StepRule::fixed;
    else
        throw CLI::ValidationError("--step-rule", "expected armijo or fixed");
    return cfg;
}

inline void add_minimize_params(Report& r, const Options& o) {
    r.param("p", o.p);
    r.param("degree", static_cast<std::int64_t>(o.degree));
    r.param("n", static_cast<std::int64_t>(o.n));
    r.param("max_iters", static_cast<std::int64_t>(o.max_iters));
    r.param("grad_tol", o.grad_tol);
    r.param("restarts", static_cast<std::int64_t>(o.restarts));
    r.param("step_rule", o.step_rule);
    r.seed(o.seed);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Subcommands. Each returns the exit status implied by its outcome beyond the
// checks (e.g. non-convergence); the caller folds in check failures.

inline int cmd_id_energy(const Options& o, Report& r, bool discrete) {
    r.param("p", o.p);
    const double closed = identity_energy_closed_form(o.p);
    const double integral = identity_energy_integral_form(o.p);
    r.result("energy", closed);
    r.result("energy_integral_form", integral);
    const double agree = detail::rel_diff(integral, closed);
    r.check("closed_form_matches_quadrature", agree <= 1e-9, 1e-9 - agree);
    if (o.p == 2.0) {
        const double d = detail::rel_diff(closed, four_pi2);
        r.check("equals_4pi2", d <= 1e-9, 1e-9 - d);
    }
    if (discrete) {
        r.param("n", static_cast<std::int64_t>(o.n));
        const double e = energy(identity_map(o.n), EnergyParams::make(o.p));
        r.result("discrete_energy", e);
        r.result("discretization_error", e - closed);
    }
    return ok;
}

inline int cmd_id_energy_derivative(const Options& o, Report& r) {
    r.param("p", o.p);
    const double d = identity_energy_derivative(o.p);
    const double h = finite_difference_step;
    const double fd = (identity_energy_closed_form(o.p + h) - identity_energy_closed_form(o.p - h)) / (2.0 * h);
    const double rel = detail::rel_diff(d, fd);
    r.result("derivative", d);
    r.result("finite_difference", fd);
    r.result("relative_error", rel);
    r.result("sign_condition", derivative_sign_condition(o.p));
    r.check("derivative_negative", d < 0.0, -d);
    r.check("finite_difference_agreement", rel <= 1e-6, 1e-6 - rel);
    return ok;
}

inline int cmd_critical_p(const Options& o, Report& r) {
    r.param("tol", o.tol);
    const CriticalReport c = critical_p(o.tol);
    const double split = split_energy_bound(c.p_prime);
    const double id = identity_energy_closed_form(c.p_prime);
    const double consistency = detail::rel_diff(split, id);
    const double disagreement = std::abs(c.residual_beta - c.residual_quadrature);
    r.result("p_prime", c.p_prime);
    r.result("residual_beta", c.residual_beta);
    r.result("residual_quadrature", c.residual_quadrature);
    r.result("path_disagreement", disagreement);
    r.result("bracket_lo", c.bracket.first);
    r.result("bracket_hi", c.bracket.second);
    r.result("iterations", c.iterations);
    r.result("split_energy_bound", split);
    r.result("identity_energy", id);
    r.result("consistency_relative_error", consistency);
    r.check("residual_within_tol", std::abs(c.residual_beta) <= o.tol, o.tol - std::abs(c.residual_beta));
    r.check("two_path_agreement", disagreement <= 1e-8, 1e-8 - disagreement);
    const double off = std::abs(c.p_prime - reference_p_prime);
    r.check("p_prime_near_1.13924", off <= reference_p_prime_tol, reference_p_prime_tol - off);
    r.check("split_bound_equals_identity_energy", consistency <= 1e-8, 1e-8 - consistency);
    return ok;
}

inline int cmd_monotonicity_scan(const Options& o, Report& r) {
    r.param("grid_size", static_cast<std::int64_t>(o.grid_size));
    const auto rows = monotonicity_scan(o.grid_size);
    Table t{{"p", "derivative", "digamma_bracket", "series_bracket"}, {}};
    double max_derivative = -std::numeric_limits<double>::infinity();
    double max_gap = 0.0;
    for (const auto& row : rows) {
        t.rows.push_back({row.p, row.derivative, row.digamma_bracket, row.series_bracket});
        max_derivative = std::max(max_derivative, row.derivative);
        max_gap = std::max(max_gap, std::abs(row.digamma_bracket - row.series_bracket));
    }
    r.result("points", static_cast<int>(rows.size()));
    r.result("max_derivative", max_derivative);
    r.result("max_bracket_disagreement", max_gap);
    r.check("all_derivatives_negative", max_derivative < 0.0, -max_derivative);
    r.check("bracket_identity", max_gap <= bracket_identity_tolerance, bracket_identity_tolerance - max_gap);
    r.table("scan", std::move(t));
    return ok;
}

inline int cmd_energy(const Options& o, Report& r) {
    r.param("map", o.map_path);
    r.param("p", o.p);
    r.param("slack", o.slack);
    const GridMap u = read_map_csv(o.map_path);
    const auto params = EnergyParams::make(o.p);
    const double e = energy(u, params);
    const int d = degree(u);
    r.result("n", static_cast<int>(u.size()));
    r.result("energy", e);
    r.result("degree", d);
    r.result("beyond_validated_range", params.beyond_validated_range);
    if (!params.beyond_validated_range) {
        const double lb = degree_lower_bound(o.p, d);
        r.result("degree_lower_bound", lb);
        r.check("degree_lower_bound", e >= lb * (1.0 - o.slack), e - lb * (1.0 - o.slack));
    } else {
        r.check("energy_finite", std::isfinite(e), 0.0);
    }
    return ok;
}

/// Central difference of the energy in phase k, accumulated from the pair
/// terms that involve node k only (the rest of the sum cancels exactly and
/// would just add rounding noise). Pair distances use the half-angle chord
/// 2|sin((phi_k - phi_j)/2)|. The step is capped at 1% of the distance to
/// the nearest other node, and steps h, h/2 are Richardson-combined.
inline double local_central_difference(const GridMap& u, double p, std::size_t k, double max_step) {
    const std::size_t n = u.size();
    const double hg = u.step();
    double sep = 2.0;
    for (std::size_t j = 0; j < n; ++j)
        if (j != k) sep = std::min(sep, 2.0 * std::abs(std::sin(0.5 * (u.phase(k) - u.phase(j)))));
    double h = std::min(max_step, 0.01 * sep);
    if (h == 0.0) h = max_step;
    auto central = [&](double step) {
        std::vector<double> terms;
        terms.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k) continue;
            const double m = static_cast<double>(k > j ? k - j : j - k);
            const double c = 2.0 * std::sin(std::numbers::pi * m / static_cast<double>(n));
            const double dp = 2.0 * std::abs(std::sin(0.5 * (u.phase(k) + step - u.phase(j))));
            const double dm = 2.0 * std::abs(std::sin(0.5 * (u.phase(k) - step - u.phase(j))));
            terms.push_back((std::pow(dp, p) - std::pow(dm, p)) / (c * c));
        }
        return 2.0 * hg * hg * pairwise_sum(terms) / (2.0 * step);
    };
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

/// Worst componentwise relative error between the analytic gradient and
/// central differences. Components below 1e-3 of the largest are compared
/// against that floor instead of their own size.
inline double gradient_relative_error(const GridMap& u, const EnergyParams& params, double step) {
    const auto g = energy_gradient(u, params);
    std::vector<double> fd(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) fd[k] = local_central_difference(u, params.p, k, step);
    double scale = 0.0;
    for (double v : fd) scale = std::max(scale, std::abs(v));
    const double floor = std::max(1e-3 * scale, 1e-12);
    double worst = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k)
        worst = std::max(worst, std::abs(g[k] - fd[k]) / std::max(std::abs(fd[k]), floor));
    return worst;
}

inline int cmd_gradient_check(const Options& o, Report& r) {
    r.param("n", static_cast<std::int64_t>(o.n));
    r.param("p", o.p);
    r.param("degree", static_cast<std::int64_t>(o.degree));
    r.param("amplitude", o.amplitude);
    r.param("samples", static_cast<std::int64_t>(o.samples));
    r.seed(o.seed);
    const auto params = EnergyParams::make(o.p);
    double worst = 0.0;
    for (std::size_t s = 0; s < o.samples; ++s) {
        const GridMap u = perturb(power_map(o.n, o.degree), o.amplitude, o.seed + s);
        worst = std::max(worst, gradient_relative_error(u, params, gradient_difference_step));
    }
    r.result("max_relative_error", worst);
    r.check("gradient_matches_finite_differences", worst <= 1e-5, 1e-5 - worst);
    return ok;
}

inline int cmd_degree(const Options& o, Report& r) {
    r.param("map", o.map_path);
    const GridMap u = read_map_csv(o.map_path);
    const auto d = degree_with_residual(u);
    r.result("n", static_cast<int>(u.size()));
    r.result("degree", d.degree);
    r.result("residual", d.residual);
    r.result("max_gap", u.max_abs_gap());
    r.check("integral_winding", std::abs(d.residual) < 1e-9, 1e-9 - std::abs(d.residual));
    return ok;
}

inline int cmd_moebius(const Options& o, Report& r) {
    r.param("a_re", o.a_re);
    r.param("a_im", o.a_im);
    r.param("n", static_cast<std::int64_t>(o.n));
    r.param("p", o.p);
    const GridMap u = moebius_map(o.n, {o.a_re, o.a_im});
    const int d = degree(u);
    const auto params = EnergyParams::make(o.p);
    const double e = energy(u, params);
    r.result("degree", d);
    r.result("energy", e);
    r.result("max_gap", u.max_abs_gap());
    r.check("degree_one", d == 1, d == 1 ? 0.0 : -1.0);
    if (o.p == 2.0) {
        const double rel = detail::rel_diff(e, four_pi2);
        r.result("relative_deviation_from_4pi2", rel);
        r.check("energy_within_1pct_of_4pi2", rel <= 0.01, 0.01 - rel);
    }
    if (!o.dump_map.empty()) write_map_csv(o.dump_map, u);
    return ok;
}

inline int cmd_minimize(const Options& o, Report& r) {
    detail::add_minimize_params(r, o);
    const MinimizeConfig cfg = detail::minimize_config(o);
    const auto res = minimize(cfg);
    const auto params = EnergyParams::make(o.p);
    const double start = energy(power_map(o.n, o.degree), params);
    const double lb = degree_lower_bound(o.p, o.degree);
    r.result("final_energy", res.final_energy);
    r.result("final_degree", res.final_degree);
    r.result("iterations", res.iterations);
    r.result("grad_norm", res.grad_norm);
    r.result("converged", res.converged);
    r.result("restart_index", res.restart_index);
    r.result("runs", res.runs);
    r.result("lowest_energy_any_run", res.lowest_energy_any_run);
    r.result("start_energy", start);
    r.result("degree_lower_bound", lb);
    r.check("degree_certificate", res.final_degree == o.degree, res.final_degree == o.degree ? 0.0 : -1.0);
    r.check("not_above_start", res.final_energy <= start + competitor_slack,
            start + competitor_slack - res.final_energy);
    r.check("above_degree_lower_bound", res.final_energy >= lb * lower_bound_slack,
            res.final_energy - lb * lower_bound_slack);
    if (o.p == 2.0 && o.degree != 0) {
        const double target = four_pi2 * std::abs(o.degree);
        const double rel = detail::rel_diff(res.final_energy, target);
        r.check("within_5pct_of_4pi2_degree", rel <= 0.05, 0.05 - rel);
    }
    if (!o.dump_map.empty()) write_map_csv(o.dump_map, res.final_map);
    if (!o.trace_path.empty()) detail::write_trace_csv(o.trace_path, res.energy_trace);
    return res.converged ? ok : no_convergence;
}

inline int cmd_scan(const Options& o, Report& r) {
    detail::add_minimize_params(r, o);
    r.param("p_values", o.p_values);
    const auto ps = detail::parse_p_list(o.p_values);
    const auto rows = minimize_scan(ps, detail::minimize_config(o));
    Table t{{"p", "min_energy", "identity_energy", "identity_closed_form", "lower_bound", "converged"}, {}};
    bool all_converged = true;
    for (const auto& row : rows) {
        t.rows.push_back({row.p, row.min_energy, row.identity_energy, row.identity_closed_form, row.lower_bound,
                          row.converged ? 1.0 : 0.0});
        std::ostringstream name;
        name << "sandwich_p=" << format_g17(row.p);
        const double m = std::min(row.min_energy - row.lower_bound * lower_bound_slack,
                                  row.identity_energy + competitor_slack - row.min_energy);
        r.check(name.str(), sandwich_holds(row), m);
        all_converged = all_converged && row.converged;
    }
    r.result("rows", static_cast<int>(rows.size()));
    r.result("all_converged", all_converged);
    r.table("scan", std::move(t));
    return all_converged ? ok : no_convergence;
}

inline int cmd_inequality_suite(const Options& o, Report& r) {
    r.param("samples", static_cast<std::int64_t>(o.samples));
    r.seed(o.seed);
    const auto jp = jp_random_suite(o.samples, o.seed);
    const double ps[] = {1.1, 1.3, 1.5, 1.7, 1.9};
    const auto anti = jp_antipodal_suite(ps, 10, o.seed + 1);
    const auto young = young_random_suite(o.samples, o.seed + 2);
    r.result("jp_min_margin", jp.min_margin);
    r.result("jp_failures", static_cast<int>(jp.failures));
    r.result("antipodal_max_deviation", -anti.min_margin);
    r.result("young_min_margin", young.min_margin);
    r.result("young_failures", static_cast<int>(young.failures));
    r.check("jp_monotonicity", jp.passed(), jp.min_margin + jp_margin_tolerance);
    r.check("jp_antipodal_equality", anti.passed(), anti.min_margin + antipodal_tolerance);
    r.check("young_variant", young.passed(), young.min_margin + young_margin_tolerance);
    return ok;
}

inline int cmd_bbm_check(const Options& o, Report& r) {
    r.param("p", o.p);
    r.param("slack", o.slack);
    if (!o.map_path.empty())
        r.param("map", o.map_path);
    else {
        r.param("n", static_cast<std::int64_t>(o.n));
        r.param("a_re", o.a_re);
        r.param("a_im", o.a_im);
    }
    const GridMap u = detail::load_or_default_map(o);
    const auto c = bbm_degree_check(u, o.p);
    r.result("lhs", c.lhs);
    r.result("rhs", c.rhs);
    r.result("margin", c.margin);
    r.result("degree", degree(u));
    if (c.rhs > 0.0) r.result("relative_margin", c.margin / c.rhs);
    const double allowed = -o.slack * c.rhs;
    r.check("energy_above_degree_bound", c.margin >= allowed, c.margin - allowed);
    return ok;
}

// ---------------------------------------------------------------------------

/// Parses argv (without the program name), runs the subcommand and writes
/// the report to `out` (or to --out). Diagnostics go to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractional Gagliardo energies of circle maps", "fracmin"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", o.out, "Write the report to this path instead of stdout");
    };
    auto add_p = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--p", o.p, "Exponent p");
        if (required) opt->required();
    };

    std::string chosen;
    auto sub = [&](const char* name, const char* help) {
        CLI::App* s = app.add_subcommand(name, help);
        common(s);
        s->callback([&chosen, name] { chosen = name; });
        return s;
    };

    CLI::App* id = sub("id-energy", "Closed-form energy of the identity map");
    add_p(id, true);
    CLI::Option* id_n = id->add_option("--n", o.n, "Also evaluate the discrete energy on n nodes");

    CLI::App* idd = sub("id-energy-derivative", "p-derivative of the identity energy");
    add_p(idd, true);

    CLI::App* crit = sub("critical-p", "Solve B((p-1)/2, 1/2) = 5 pi");
    crit->add_option("--tol", o.tol, "Residual tolerance");

    CLI::App* mono = sub("monotonicity-scan", "Sign of the identity-energy derivative on a grid");
    mono->add_option("--grid-size", o.grid_size, "Number of grid points");

    CLI::App* en = sub("energy", "Energy of a map read from CSV");
    en->add_option("--map", o.map_path, "CSV map file")->required();
    add_p(en, true);
    en->add_option("--slack", o.slack, "Relative slack on the degree bound");

    CLI::App* gc = sub("gradient-check", "Analytic gradient vs central finite differences");
    add_p(gc, true);
    gc->add_option("--n", o.n, "Grid size");
    gc->add_option("--degree", o.degree, "Degree of the base map");
    gc->add_option("--amplitude", o.amplitude, "Perturbation amplitude");
    gc->add_option("--samples", o.samples, "Number of random maps");
    gc->add_option("--seed", o.seed, "Random seed");

    CLI::App* dg = sub("degree", "Winding number of a map read from CSV");
    dg->add_option("--map", o.map_path, "CSV map file")->required();

    CLI::App* mb = sub("moebius", "Energy and degree of a Moebius boundary map");
    mb->add_option("--a-re", o.a_re, "Real part of a");
    mb->add_option("--a-im", o.a_im, "Imaginary part of a");
    mb->add_option("--n", o.n, "Grid size");
    add_p(mb, false);
    mb->add_option("--dump-map", o.dump_map, "Write the map as CSV");

    auto minimize_opts = [&](CLI::App* s) {
        s->add_option("--degree", o.degree, "Target degree");
        s->add_option("--n", o.n, "Grid size");
        s->add_option("--max-iters", o.max_iters, "Iteration cap per run");
        s->add_option("--grad-tol", o.grad_tol, "Gradient norm tolerance");
        s->add_option("--restarts", o.restarts, "Perturbed restarts");
        s->add_option("--seed", o.seed, "Random seed");
        s->add_option("--step-rule", o.step_rule, "armijo or fixed");
    };
    CLI::App* mn = sub("minimize", "Minimize the energy in a degree class");
    add_p(mn, true);
    minimize_opts(mn);
    mn->add_option("--dump-map", o.dump_map, "Write the final map as CSV");
    mn->add_option("--trace", o.trace_path, "Write the energy trace as CSV");

    CLI::App* sc = sub("scan", "Minimize across several p and compare with the bounds");
    minimize_opts(sc);
    sc->add_option("--p-values", o.p_values, "Comma separated p list; 'pprime' for the critical exponent");

    CLI::App* iq = sub("inequality-suite", "Randomized elementary inequality checks");
    iq->add_option("--samples", o.samples, "Samples per suite");
    iq->add_option("--seed", o.seed, "Random seed");

    CLI::App* bb = sub("bbm-check", "Energy against the degree lower bound");
    add_p(bb, false);
    bb->add_option("--map", o.map_path, "CSV map file (default: identity or Moebius map)");
    bb->add_option("--n", o.n, "Grid size for generated maps");
    bb->add_option("--a-re", o.a_re, "Moebius parameter, real part");
    bb->add_option("--a-im", o.a_im, "Moebius parameter, imaginary part");
    bb->add_option("--slack", o.slack, "Relative slack on the degree bound");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "fracmin: " << e.what() << '\n';
        return e.get_exit_code() == 0 ? ok : usage;
    }
    if (chosen.empty()) {
        err << "fracmin: no subcommand\n";
        return usage;
    }
    // Grid size defaults: 512 for moebius and bbm-check, 64 for
    // gradient-check, 256 elsewhere.
    const bool n_given = [&] {
        for (const auto& a : args)
            if (a == "--n" || a.rfind("--n=", 0) == 0) return true;
        return false;
    }();
    if (!n_given) {
        if (chosen == "moebius" || chosen == "bbm-check") o.n = 512;
        if (chosen == "gradient-check") o.n = 64;
    }
    if (chosen == "gradient-check") {
        bool samples_given = false;
        for (const auto& a : args) samples_given = samples_given || a == "--samples" || a.rfind("--samples=", 0) == 0;
        if (!samples_given) o.samples = 1;
    }

    Report report(chosen);
    int status = ok;
    try {
        if (chosen == "id-energy") status = cmd_id_energy(o, report, id_n->count() > 0);
        else if (chosen == "id-energy-derivative") status = cmd_id_energy_derivative(o, report);
        else if (chosen == "critical-p") status = cmd_critical_p(o, report);
        else if (chosen == "monotonicity-scan") status = cmd_monotonicity_scan(o, report);
        else if (chosen == "energy") status = cmd_energy(o, report);
        else if (chosen == "gradient-check") status = cmd_gradient_check(o, report);
        else if (chosen == "degree") status = cmd_degree(o, report);
        else if (chosen == "moebius") status = cmd_moebius(o, report);
        else if (chosen == "minimize") status = cmd_minimize(o, report);
        else if (chosen == "scan") status = cmd_scan(o, report);
        else if (chosen == "inequality-suite") status = cmd_inequality_suite(o, report);
        else if (chosen == "bbm-check") status = cmd_bbm_check(o, report);
    } catch (const CLI::ValidationError& e) {
        err << "fracmin: " << e.what() << '\n';
        return usage;
    } catch (const ConvergenceError& e) {
        err << "fracmin: " << e.what() << '\n';
        return no_convergence;
    } catch (const DomainError& e) {
        err << "fracmin: " << e.what() << '\n';
        return domain;
    } catch (const Error& e) {
        err << "fracmin: " << e.what() << '\n';
        return domain;
    }

    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) {
            err << "fracmin: cannot open " << o.out << '\n';
            return usage;
        }
    }
    std::ostream& sink = o.out.empty() ? out : file;
    if (o.format == "csv")
        report.write_csv(sink);
    else
        report.write_json(sink);

    if (status != ok) return status;
    return report.all_checks_pass() ? ok : check_failed;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, out, err);
}

} // namespace fracmin::cli
