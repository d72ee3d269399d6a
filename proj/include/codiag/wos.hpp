#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "codiag/domains.hpp"
#include "codiag/orlicz.hpp"
#include "codiag/rng.hpp"

namespace codiag {

struct WalkResult {
    Complex exit;
    std::string label;
    std::size_t steps = 0;
    bool terminated = true;
};

/// Walk-on-spheres: jump to a uniform point of the largest certified inscribed
/// circle, absorb when the clearance drops below `tol` (bias is O(tol) times
/// the local Lipschitz bound of the harmonic measure and is reported, not
/// hidden). Step cap 1e6 marks the walk "nonterminating".
WalkResult brownian_exit(const PlanarDomain& domain, Complex start, double tol,
                         SplitMix64& rng, std::size_t step_cap = 1000000);

struct MeasureResult {
    double estimate = 0.0;
    double std_err = 0.0;
    std::size_t paths = 0;
    std::size_t hits = 0;
    std::size_t nonterminating = 0;
    double absorb_tol = 1e-4;
};

/// Exit-label distribution over `paths` independent walks; per-path seeding,
/// so worker count cannot change the counts. Label "nonterminating" collects
/// capped walks; the per-label fractions always sum to 1 exactly.
std::map<std::string, MeasureResult> exit_distribution(
    const PlanarDomain& domain, Complex a, std::size_t paths, std::uint64_t seed,
    double tol = 1e-4);

/// Fraction of walks exiting with `label`; errors when more than 0.1% of the
/// paths fail to terminate.
MeasureResult harmonic_measure(const PlanarDomain& domain, Complex a,
                               std::string_view label, std::size_t paths,
                               std::uint64_t seed, double tol = 1e-4);

/// Poisson-kernel quadrature of the arc [lo, hi] seen from a; the disk oracle
/// the Monte Carlo sampler is checked against.
double poisson_arc_measure(Complex a, double lo, double hi);

struct HoleCheckResult {
    MeasureResult lhs;  // omega_{G1}(a, boundary of G1 minus boundary of G0)
    MeasureResult rhs;  // omega_{G0}(a, H)
    bool pass = false;
    bool coupled = false;
    std::size_t pathwise_violations = 0;  // coupled runs: events with E and not F
    bool pathwise_pass = true;
};

/// Hole-principle check on nested domains. `in_hole` classifies G0 exits as H;
/// `in_removed` classifies G1 exits as boundary-of-G1-minus-boundary-of-G0.
/// Coupled mode follows the inclusion argument on shared paths: the walk runs
/// in G0 until first exit, and continues into G1 only through the hole, so
/// E ⊆ F must hold path by path. Containment G0 ⊆ G1 is spot-checked on 1e4
/// box samples first.
HoleCheckResult hole_principle_check(const PlanarDomain& g0, const PlanarDomain& g1,
                                     const std::function<bool(Complex)>& in_hole,
                                     const std::function<bool(Complex)>& in_removed,
                                     Complex a, std::size_t paths, std::uint64_t seed,
                                     double tol = 1e-4, bool coupled = true);

struct Calibration {
    int n = 1;
    double requested_eps = 0.0;
    double delta = 0.0;     // calibrated hole half-width
    double achieved = 0.0;  // verification estimate at `delta`
    double std_err = 0.0;
    std::vector<std::pair<double, double>> trace;  // (delta, estimate) visited
    bool monotone_trace = true;
};

/// Shrinks the hole of Omega_n until estimate + 3*stderr <= eps, then verifies
/// on an independent seed. Requires eps > 10/paths (resolvability floor).
/// `prior_deltas` are the calibrated widths of barriers 1..n-1.
Calibration calibrate_hole(int n, std::span<const double> prior_deltas, Complex a,
                           double eps, std::size_t paths, std::uint64_t seed,
                           double tol = 1e-4);

struct RhoBoundRow {
    double h = 0.0;
    int n = 0;              // bracketing index: b_{n+1} < 2h <= b_n
    double b_n = 0.0, b_next = 0.0;
    double bound = 0.0;     // epsilon_n
    double achieved = 0.0;
    double psi_delta_bound = 0.0;  // Psi^{-1}(2/b_{n+1}) / Psi^{-1}(1/eps_n)
};

struct RhoBoundReport {
    std::vector<RhoBoundRow> rows;
    double fitted_c = 0.0;  // slope of -log(bound) against 1/h
    double fit_r2 = 0.0;
};

/// Turns a calibrated barrier run into per-h bounds rho_phi(h) <= eps_n via
/// the bracketing b_{n+1} < 2h <= b_n, fits the e^{-c/h} shape, and evaluates
/// the Orlicz ratio bound when psi is supplied.
RhoBoundReport rho_bound_report(const std::vector<Calibration>& calibrations,
                                std::span<const double> h_list,
                                const OrliczFunction* psi = nullptr);

/// eps_n schemes for the calibration driver: "exp" gives e^{-n}; "psi" gives
/// 1/Psi(n * Psi^{-1}(2/b_{n+1})), which makes the Delta(h) bound exactly 1/n.
double eps_scheme_exp(int n);
double eps_scheme_psi(int n, const OrliczFunction& psi);

} // namespace codiag
