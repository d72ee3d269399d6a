#include "codiag/wos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "codiag/errors.hpp"
#include "codiag/parallel.hpp"
#include "codiag/quadrature.hpp"

namespace codiag {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

WalkResult brownian_exit(const PlanarDomain& domain, Complex start, double tol,
                         SplitMix64& rng, std::size_t step_cap) {
    if (!(tol >= 1e-6 && tol <= 1e-3))
        throw ConfigError("walk: absorption tolerance must be in [1e-6, 1e-3]");
    if (!domain.inside(start))
        throw ConfigError("walk: start point is not inside the domain");
    Complex z = start;
    for (std::size_t step = 0; step < step_cap; ++step) {
        if (z.imag() >= domain.far_cap()) {
            WalkExit e = domain.classify_exit(z);
            return {e.point, e.label, step, true};
        }
        const double d = domain.clearance(z);
        if (d < tol) {
            WalkExit e = domain.classify_exit(z);
            return {e.point, e.label, step, true};
        }
        z += std::polar(d, rng.uniform(0.0, kTwoPi));
    }
    return {z, "nonterminating", step_cap, false};
}

std::map<std::string, MeasureResult> exit_distribution(const PlanarDomain& domain,
                                                       Complex a, std::size_t paths,
                                                       std::uint64_t seed, double tol) {
    std::vector<std::string> labels(paths);
    parallel_for(paths, [&](std::size_t i) {
        SplitMix64 rng = path_rng(seed, i);
        labels[i] = brownian_exit(domain, a, tol, rng).label;
    });
    std::map<std::string, std::size_t> counts;
    for (const auto& l : labels) ++counts[l];
    std::map<std::string, MeasureResult> out;
    const auto nonterm = counts.count("nonterminating") ? counts["nonterminating"] : 0;
    for (const auto& [label, hits] : counts) {
        MeasureResult m;
        m.paths = paths;
        m.hits = hits;
        m.estimate = static_cast<double>(hits) / static_cast<double>(paths);
        m.std_err = std::sqrt(m.estimate * (1.0 - m.estimate) /
                              static_cast<double>(paths));
        m.nonterminating = nonterm;
        m.absorb_tol = tol;
        out[label] = m;
    }
    return out;
}

MeasureResult harmonic_measure(const PlanarDomain& domain, Complex a,
                               std::string_view label, std::size_t paths,
                               std::uint64_t seed, double tol) {
    auto dist = exit_distribution(domain, a, paths, seed, tol);
    std::size_t nonterm = 0;
    if (auto it = dist.find("nonterminating"); it != dist.end())
        nonterm = it->second.hits;
    if (static_cast<double>(nonterm) > 0.001 * static_cast<double>(paths))
        throw NumericalError("harmonic measure: >0.1% of walks hit the step cap");
    auto it = dist.find(std::string(label));
    if (it != dist.end()) return it->second;
    MeasureResult zero;
    zero.paths = paths;
    zero.nonterminating = nonterm;
    zero.absorb_tol = tol;
    return zero;
}

double poisson_arc_measure(Complex a, double lo, double hi) {
    const double r2 = std::norm(a);
    auto kernel = [&](double t) {
        const Complex xi = std::polar(1.0, t);
        return (1.0 - r2) / std::norm(xi - a) / kTwoPi;
    };
    return integrate(kernel, lo, hi, 1e-12);
}

HoleCheckResult hole_principle_check(const PlanarDomain& g0, const PlanarDomain& g1,
                                     const std::function<bool(Complex)>& in_hole,
                                     const std::function<bool(Complex)>& in_removed,
                                     Complex a, std::size_t paths, std::uint64_t seed,
                                     double tol, bool coupled) {
    // sampled containment: G0 subset of G1
    {
        SplitMix64 rng(seed ^ 0x5bd1e995u);
        const auto [lo, hi] = g0.sample_box();
        std::size_t checked = 0;
        for (int it = 0; it < 200000 && checked < 10000; ++it) {
            const Complex z(rng.uniform(lo.real(), hi.real()),
                            rng.uniform(lo.imag(), hi.imag()));
            if (!g0.inside(z)) continue;
            ++checked;
            if (!g1.inside(z))
                throw ConfigError("hole principle: G0 is not contained in G1");
        }
    }
    if (!g0.inside(a)) throw ConfigError("hole principle: start not inside G0");

    HoleCheckResult out;
    out.coupled = coupled;
    if (coupled) {
        // Shared-path construction: run in G0 first; a walk continues into G1
        // only when its first G0 exit lies in the hole. E ⊆ F by the same
        // continuity argument the inequality's second proof uses.
        std::vector<std::uint8_t> e_flag(paths, 0), f_flag(paths, 0);
        parallel_for(paths, [&](std::size_t i) {
            SplitMix64 rng = path_rng(seed, i);
            Complex z = a;
            bool f = false, e = false;
            for (std::size_t step = 0; step < 1000000; ++step) {
                const double d = g0.clearance(z);
                if (z.imag() >= g0.far_cap() || d < tol) {
                    const WalkExit q = g0.classify_exit(z);
                    f = in_hole(q.point);
                    if (!f) e = in_removed(q.point);
                    break;
                }
                z += std::polar(d, rng.uniform(0.0, kTwoPi));
            }
            if (f) {
                // continue the same walk in G1 from the current interior point
                for (std::size_t step = 0; step < 1000000; ++step) {
                    const double d = g1.clearance(z);
                    if (z.imag() >= g1.far_cap() || d < tol) {
                        e = in_removed(g1.classify_exit(z).point);
                        break;
                    }
                    z += std::polar(d, rng.uniform(0.0, kTwoPi));
                }
            }
            e_flag[i] = e ? 1 : 0;
            f_flag[i] = f ? 1 : 0;
        });
        std::size_t e_hits = 0, f_hits = 0, violations = 0;
        for (std::size_t i = 0; i < paths; ++i) {
            e_hits += e_flag[i];
            f_hits += f_flag[i];
            violations += (e_flag[i] && !f_flag[i]) ? 1 : 0;
        }
        auto mk = [&](std::size_t hits) {
            MeasureResult m;
            m.paths = paths;
            m.hits = hits;
            m.estimate = static_cast<double>(hits) / static_cast<double>(paths);
            m.std_err = std::sqrt(m.estimate * (1.0 - m.estimate) /
                                  static_cast<double>(paths));
            m.absorb_tol = tol;
            return m;
        };
        out.lhs = mk(e_hits);
        out.rhs = mk(f_hits);
        out.pathwise_violations = violations;
        out.pathwise_pass = violations == 0;
    } else {
        std::vector<std::uint8_t> e_flag(paths, 0), f_flag(paths, 0);
        parallel_for(paths, [&](std::size_t i) {
            SplitMix64 r1 = path_rng(seed ^ 0x9e3779b9u, i);
            e_flag[i] = in_removed(brownian_exit(g1, a, tol, r1).exit) ? 1 : 0;
            SplitMix64 r0 = path_rng(seed ^ 0x85ebca6bu, i);
            f_flag[i] = in_hole(brownian_exit(g0, a, tol, r0).exit) ? 1 : 0;
        });
        std::size_t e_hits = 0, f_hits = 0;
        for (std::size_t i = 0; i < paths; ++i) {
            e_hits += e_flag[i];
            f_hits += f_flag[i];
        }
        auto mk = [&](std::size_t hits) {
            MeasureResult m;
            m.paths = paths;
            m.hits = hits;
            m.estimate = static_cast<double>(hits) / static_cast<double>(paths);
            m.std_err = std::sqrt(m.estimate * (1.0 - m.estimate) /
                                  static_cast<double>(paths));
            m.absorb_tol = tol;
            return m;
        };
        out.lhs = mk(e_hits);
        out.rhs = mk(f_hits);
    }
    out.pass = out.lhs.estimate <=
               out.rhs.estimate +
                   3.0 * std::hypot(out.lhs.std_err, out.rhs.std_err) + 1e-12;
    return out;
}

namespace {

double omega_n_hole_mass(int n, std::span<const double> prior, double delta,
                         Complex a, std::size_t paths, std::uint64_t seed,
                         double tol, double* std_err) {
    std::vector<double> deltas(prior.begin(), prior.end());
    deltas.resize(static_cast<std::size_t>(n), delta);
    deltas[static_cast<std::size_t>(n - 1)] = delta;
    BarrierDomain dom(BarrierDomain::Kind::OmegaN, n, deltas);
    const MeasureResult m = harmonic_measure(dom, a, "hole", paths, seed, tol);
    if (std_err) *std_err = m.std_err;
    return m.estimate;
}

} // namespace

Calibration calibrate_hole(int n, std::span<const double> prior_deltas, Complex a,
                           double eps, std::size_t paths, std::uint64_t seed,
                           double tol) {
    if (static_cast<int>(prior_deltas.size()) < n - 1)
        throw ConfigError("calibrate: missing prior barrier widths");
    if (!(eps > 10.0 / static_cast<double>(paths)))
        throw StatFloorError("calibrate: eps is below the statistical floor 10/paths = " +
                             format17(10.0 / static_cast<double>(paths)));
    const double margin_left = barrier_mid(n) - barrier_b(n);
    const double margin_right =
        n == 1 ? margin_left : barrier_b(n - 1) - barrier_mid(n);
    Calibration cal;
    cal.n = n;
    cal.requested_eps = eps;
    double delta = 0.45 * std::min(margin_left, margin_right);

    const std::size_t coarse = std::max<std::size_t>(paths / 8, 2000);
    double se = 0.0;
    int shrinks = 0;
    for (;; ++shrinks) {
        if (shrinks > 60)
            throw NumericalError("calibrate: hole did not shrink to the target");
        const double est = omega_n_hole_mass(n, prior_deltas, delta, a, coarse,
                                             seed + static_cast<std::uint64_t>(shrinks),
                                             tol, &se);
        cal.trace.emplace_back(delta, est);
        if (est + 3.0 * se <= eps) break;
        delta *= 0.5;
    }
    // verify on an independent seed with the full path budget
    for (;; ++shrinks) {
        if (shrinks > 60)
            throw NumericalError("calibrate: hole did not shrink to the target");
        const double est = omega_n_hole_mass(n, prior_deltas, delta, a, paths,
                                             seed ^ 0xda3e39cb94b95bdbull, tol, &se);
        if (est + 3.0 * se <= eps) {
            cal.delta = delta;
            cal.achieved = est;
            cal.std_err = se;
            break;
        }
        cal.trace.emplace_back(delta, est);
        delta *= 0.5;
    }
    // estimates along the trace should not decrease as the hole widens
    std::vector<std::pair<double, double>> sorted = cal.trace;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].second + 6.0 * se + 1e-12 < sorted[i - 1].second)
            cal.monotone_trace = false;
    return cal;
}

RhoBoundReport rho_bound_report(const std::vector<Calibration>& calibrations,
                                std::span<const double> h_list,
                                const OrliczFunction* psi) {
    std::map<int, const Calibration*> by_n;
    for (const auto& c : calibrations) by_n[c.n] = &c;
    RhoBoundReport rep;
    for (double h : h_list) {
        if (!(h > 0.0) || 2.0 * h > barrier_b(1))
            throw ConfigError("rho bound: h out of bracketing range (need 2h <= b_1)");
        int n = static_cast<int>(std::floor(1.0 / (8.0 * std::numbers::pi * h)));
        // settle fp boundaries exactly against b_n
        while (n >= 1 && 2.0 * h > barrier_b(n)) --n;
        while (2.0 * h <= barrier_b(n + 1)) ++n;
        auto it = by_n.find(n);
        if (it == by_n.end())
            throw ConfigError("rho bound: no calibrated barrier for index " +
                              std::to_string(n));
        RhoBoundRow row;
        row.h = h;
        row.n = n;
        row.b_n = barrier_b(n);
        row.b_next = barrier_b(n + 1);
        row.bound = it->second->requested_eps;
        row.achieved = it->second->achieved;
        if (psi)
            row.psi_delta_bound = psi->inverse(2.0 / row.b_next) /
                                  psi->inverse(1.0 / row.bound);
        rep.rows.push_back(row);
    }
    // least squares of log(bound) against 1/h
    const std::size_t m = rep.rows.size();
    if (m >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
        for (const auto& r : rep.rows) {
            const double x = 1.0 / r.h, y = std::log(r.bound);
            sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
        }
        const double dm = static_cast<double>(m);
        const double denom = dm * sxx - sx * sx;
        if (std::abs(denom) > 0.0) {
            const double slope = (dm * sxy - sx * sy) / denom;
            rep.fitted_c = -slope;
            const double ss_tot = syy - sy * sy / dm;
            double ss_res = 0.0;
            const double intercept = (sy - slope * sx) / dm;
            for (const auto& r : rep.rows) {
                const double pred = intercept + slope / r.h;
                const double res = std::log(r.bound) - pred;
                ss_res += res * res;
            }
            rep.fit_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
        }
    }
    return rep;
}

double eps_scheme_exp(int n) { return std::exp(-static_cast<double>(n)); }

double eps_scheme_psi(int n, const OrliczFunction& psi) {
    const double target = psi.inverse(2.0 / barrier_b(n + 1));
    return 1.0 / psi(static_cast<double>(n) * target);
}

} // namespace codiag
