#include "codiag/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "codiag/compactness.hpp"
#include "codiag/parallel.hpp"

namespace codiag {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTwoE = 2.0 * std::numbers::e;

Complex random_disk_point(SplitMix64& rng, double max_mod = 1.0) {
    for (;;) {
        const Complex z(rng.uniform(-max_mod, max_mod), rng.uniform(-max_mod, max_mod));
        if (std::abs(z) < max_mod) return z;
    }
}

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(6);
    out << x;
    return out.str();
}

// ---- 1: factor modulus bounds of the two-part estimate ---------------------

Criterion criterion_factor_bounds(std::uint64_t seed) {
    Criterion c{1, "factor modulus bounds (two-part estimate + equality case)", true, ""};
    SplitMix64 rng(seed ^ 0x101);
    double worst_a = -1e300, worst_eq = 0.0, worst_b = -1e300;
    for (int trial = 0; trial < 500; ++trial) {
        const auto p = static_cast<std::int64_t>(1 + rng.next() % 20);
        const double r = rng.uniform(0.05, 0.95);
        const EquidistributedFactor f{p, r};
        const double rp = std::pow(r, static_cast<double>(p));
        const double bound_a = 2.0 * rp / (1.0 + rp * rp);

        const Complex z = std::polar(r, rng.uniform(0.0, kTwoPi));
        worst_a = std::max(worst_a, std::abs(eval_factor(f, z)) - bound_a);

        // equality where z^p = -r^p
        const Complex zeq = std::polar(r, kPi / static_cast<double>(p));
        worst_eq = std::max(worst_eq,
                            std::abs(std::abs(eval_factor(f, zeq)) - bound_a));

        const double ph = static_cast<double>(p) * (1.0 - r);
        if (ph <= 0.5) {
            const double bound_b = 1.0 - ph * ph / kTwoE;
            worst_b = std::max(worst_b, std::abs(eval_factor(f, z)) - bound_b);
        }
    }
    c.pass = worst_a <= 1e-12 && worst_eq <= 1e-10 && worst_b <= 1e-12;
    c.detail = "max excess (a)=" + fmt(worst_a) + ", equality dev=" + fmt(worst_eq) +
               ", (b)=" + fmt(worst_b);
    return c;
}

// ---- 2: closed form vs explicit factor product ------------------------------

Criterion criterion_closed_form(std::uint64_t seed) {
    Criterion c{2, "closed form equals the product of Moebius factors", true, ""};
    SplitMix64 rng(seed ^ 0x202);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = static_cast<std::int64_t>(1 + rng.next() % 50);
        const double r = rng.uniform(0.05, 0.95);
        const Complex z = random_disk_point(rng, 1.0);
        Complex prod = 1.0;
        for (std::int64_t k = 1; k <= p; ++k) {
            const double th = kTwoPi * static_cast<double>(k) / static_cast<double>(p);
            const Complex e = std::polar(1.0, -th);
            prod *= (r - e * z) / (1.0 - r * e * z);
        }
        worst = std::max(worst, std::abs(prod - eval_factor({p, r}, z)));
    }
    c.pass = worst <= 1e-9;
    c.detail = "max deviation " + fmt(worst) + " over 200 factors, p <= 50";
    return c;
}

// ---- 3: slow product construction + lower-gap certificate -------------------

Criterion criterion_slow_certificate(std::uint64_t seed) {
    Criterion c{3, "slow product: invariants and 1-|B| >= delta(1-|z|) certificate",
                true, ""};
    const OrliczFunction psi = OrliczFunction::power(2.0);
    const DecayFunction delta = delta_from_psi(psi);
    const SlowBlaschkeSpec spec = build_slow_blaschke(delta, 24);

    bool ok = minimal_zero_count(std::ldexp(1.0, -14), 7) == 3377;
    std::string why = ok ? "" : "p_7(2^-14) != 3377; ";

    double prev_h = 1.0;
    for (int n = 6; n <= 24; ++n) {
        const double h = spec.h(n);
        if (!(chi(delta, h) <= std::ldexp(1.0, -n)) || !(h <= std::ldexp(1.0, -2 * n)) ||
            !(h < prev_h)) {
            ok = false;
            why += "h_" + std::to_string(n) + " invariant; ";
        }
        prev_h = h;
        if (n < 7) continue;
        const double target = std::ldexp(1.0, -n);
        const auto p = static_cast<double>(spec.p(n));
        const bool minimal = (p * h) * (p * h) / kTwoE > target &&
                             !(((p - 1) * h) * ((p - 1) * h) / kTwoE > target);
        if (!minimal || !(p * h <= 0.5)) {
            ok = false;
            why += "p_" + std::to_string(n) + " minimality; ";
        }
    }
    const double r6 = spec.r(6);
    if (!(std::pow(r6, static_cast<double>(spec.monomial_power)) < 0.5)) {
        ok = false;
        why += "r_6^N >= 1/2; ";
    }
    double sum_ph = 0.0, sum_bound = 0.0;
    for (int n = 7; n <= 24; ++n) {
        sum_ph += static_cast<double>(spec.p(n)) * spec.h(n);
        sum_bound += std::sqrt(4.0 * kTwoE * std::ldexp(1.0, -n));
    }
    if (!(sum_ph <= sum_bound)) {
        ok = false;
        why += "partial-sum bound; ";
    }

    SplitMix64 rng(seed ^ 0x303);
    double worst = 1e300;
    int violations = 0;
    const double log_lo = std::log(std::ldexp(1.0, -23));
    for (int i = 0; i < 10000; ++i) {
        const double t = std::exp(rng.uniform(log_lo, 0.0));  // 1-|z| in [2^-23, 1)
        const Complex z = std::polar(1.0 - t, rng.uniform(0.0, kTwoPi));
        const double gap = 1.0 - std::abs(eval_slow_blaschke(spec, z));
        worst = std::min(worst, gap - delta(t));
        if (gap < delta(t) - 1e-12) ++violations;
    }
    if (violations > 0) {
        ok = false;
        why += std::to_string(violations) + " certificate violations; ";
    }
    c.pass = ok;
    c.detail = why + "min slack " + fmt(worst) + ", N=" +
               std::to_string(spec.monomial_power);
    return c;
}

// ---- 4: strong triangle inequality ------------------------------------------

Criterion criterion_triangle(std::uint64_t seed) {
    Criterion c{4, "strong triangle inequality for the pseudo-hyperbolic metric",
                true, ""};
    SplitMix64 rng(seed ^ 0x404);
    double worst = -1e300;
    for (int i = 0; i < 10000; ++i) {
        const Complex a = random_disk_point(rng);
        const Complex b = random_disk_point(rng);
        const Complex m = random_disk_point(rng);
        const double dab = pseudo_hyperbolic(a, b);
        const double dac = pseudo_hyperbolic(a, m);
        const double dcb = pseudo_hyperbolic(m, b);
        worst = std::max(worst, dab - (dac + dcb) / (1.0 + dac * dcb));
    }
    c.pass = worst <= 1e-12;
    c.detail = "max excess " + fmt(worst) + " over 1e4 triples";
    return c;
}

// ---- 5: pull-back exactness for the identity --------------------------------

Criterion criterion_rho_identity(std::uint64_t) {
    Criterion c{5, "rho(h) of the identity matches h/pi", true, ""};
    const PullbackSample sample =
        PullbackSample::build(SymbolMap::identity(), 1 << 14);
    std::string detail;
    for (double h : {0.2, 0.1, 0.05}) {
        const double expected = h / kPi;
        const double se =
            std::sqrt(expected * (1.0 - expected) / static_cast<double>(sample.size()));
        const double got = sample.rho(h);
        detail += "h=" + fmt(h) + ": " + fmt(got) + " vs " + fmt(expected) + "; ";
        if (std::abs(got - expected) > 3.0 * se) c.pass = false;
    }
    c.detail = detail;
    return c;
}

// ---- 6: counting-function identity for monomials ----------------------------

Criterion criterion_counting_identity(std::uint64_t seed) {
    Criterion c{6, "N_{z^k}(w) = log(1/|w|) for k = 1, 2, 3", true, ""};
    SplitMix64 rng(seed ^ 0x606);
    double worst = 0.0;
    for (int k = 1; k <= 3; ++k) {
        const SymbolMap phi = k == 1 ? SymbolMap::identity() : SymbolMap::monomial(k);
        for (int i = 0; i < 100; ++i) {
            Complex w = random_disk_point(rng);
            if (std::abs(w) < 1e-3) w += 0.25;
            const double expect = std::log(1.0 / std::abs(w));
            worst = std::max(worst,
                             std::abs(counting_function(phi, w).value - expect));
        }
    }
    c.pass = worst <= 1e-10;
    c.detail = "max deviation " + fmt(worst) + " over 300 targets";
    return c;
}

// ---- 7: closed-range window floor -------------------------------------------

Criterion criterion_closed_range(std::uint64_t) {
    Criterion c{7, "closed-range floor: identity and z^2 pass, scaling fails", true, ""};
    const std::vector<double> h_list{0.25, 0.2, 0.1, 0.05};
    std::string detail;
    for (const SymbolMap& phi :
         {SymbolMap::identity(), SymbolMap::monomial(2)}) {
        const auto r = PullbackSample::build(phi, 1 << 14).closed_range(h_list);
        detail += phi.id() + ": c=" + fmt(r.c_est) + "; ";
        if (!(r.c_est >= 0.9 / kPi && r.c_est <= 1.1 / kPi && r.consistent))
            c.pass = false;
    }
    const auto r =
        PullbackSample::build(SymbolMap::scaling(0.5), 1 << 14).closed_range(h_list);
    detail += "scaling: c=" + fmt(r.c_est);
    if (!(r.c_est == 0.0 && !r.consistent)) c.pass = false;
    c.detail = detail;
    return c;
}

// ---- 8: test-function norms --------------------------------------------------

Criterion criterion_wallis(std::uint64_t) {
    Criterion c{8, "test-function norms: quadrature vs binomial; floor 3.5/sqrt(N)",
                true, ""};
    double worst = 0.0;
    for (std::int64_t N = 1; N <= 30; ++N)
        worst = std::max(worst, std::abs(test_function_norm(N, 2.0) - wallis_norm(N)));
    bool quad_ok = worst <= 1e-8;

    // floor check as stated, N = 1..1000 at threshold 3.5
    int floor_failures = 0;
    std::int64_t first_bad = 0, last_bad = 0;
    double min_val = 1e300;
    for (std::int64_t N = 1; N <= 1000; ++N) {
        const double v = test_function_norm(N, 2.0) *
                         std::sqrt(static_cast<double>(N));
        min_val = std::min(min_val, v);
        if (v < 3.5) {
            if (floor_failures == 0) first_bad = N;
            last_bad = N;
            ++floor_failures;
        }
    }
    c.pass = quad_ok && floor_failures == 0;
    c.detail = "quadrature max dev " + fmt(worst);
    if (floor_failures > 0)
        c.detail += "; floor 3.5 fails for N in [" + std::to_string(first_bad) + "," +
                    std::to_string(last_bad) + "] (min value*sqrt(N) = " + fmt(min_val) +
                    " at N=1; the sequence increases from pi to 2*sqrt(pi))";
    return c;
}

// ---- 9: sum/integral verdict agreement --------------------------------------

Criterion criterion_verdict_agreement(std::uint64_t) {
    Criterion c{9, "Luecking sums and integrals agree: stabilize vs diverge", true, ""};
    const std::vector<SymbolMap> zoo{SymbolMap::scaling(0.5), SymbolMap::identity(),
                                     SymbolMap::monomial(2)};
    const std::vector<bool> expect_diverge{false, true, true};
    std::string detail;
    for (std::size_t s = 0; s < zoo.size(); ++s) {
        const PullbackSample sample = PullbackSample::build(zoo[s], 1 << 14);
        for (double p : {1.0, 2.0, 4.0}) {
            const bool sum_div = sample.luecking_sums(p, 8).diverging;
            const bool int_div =
                luecking_integral(zoo[s], p, 8, LueckingForm::RatioLambda).diverging;
            if (sum_div != int_div || sum_div != expect_diverge[s]) {
                c.pass = false;
                detail += zoo[s].id() + "@p=" + fmt(p) + " disagree; ";
            }
        }
    }
    c.detail = detail.empty() ? "9/9 cases agree" : detail;
    return c;
}

// ---- 10: harmonic measure on the disk ----------------------------------------

Criterion criterion_disk_measure(std::uint64_t seed) {
    Criterion c{10, "disk harmonic measure: arcs from 0 and Poisson from 0.5", true, ""};
    SplitMix64 rng(seed ^ 0xA0A);
    std::vector<double> cuts{0.0};
    for (int i = 0; i < 9; ++i) cuts.push_back(rng.uniform(0.0, kTwoPi));
    std::sort(cuts.begin(), cuts.end());
    std::vector<DiskArc> arcs;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const double hi = i + 1 < cuts.size() ? cuts[i + 1] : kTwoPi;
        arcs.push_back({cuts[i], hi, "arc" + std::to_string(i)});
    }
    DiskDomain disk(arcs);
    double worst_sigma = 0.0;
    for (Complex a : {Complex(0.0, 0.0), Complex(0.5, 0.0)}) {
        const auto dist = exit_distribution(disk, a, 100000, seed ^ 0xB0B);
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            const double hi = i + 1 < cuts.size() ? cuts[i + 1] : kTwoPi;
            const double expected = a == Complex(0.0, 0.0)
                                        ? (hi - cuts[i]) / kTwoPi
                                        : poisson_arc_measure(a, cuts[i], hi);
            auto it = dist.find(arcs[i].label);
            const double est = it == dist.end() ? 0.0 : it->second.estimate;
            const double se = it == dist.end()
                                  ? std::sqrt(expected / 100000.0)
                                  : it->second.std_err;
            const double sig = std::abs(est - expected) / std::max(se, 1e-12);
            worst_sigma = std::max(worst_sigma, sig);
            if (sig > 3.0) c.pass = false;
        }
    }
    c.detail = "worst deviation " + fmt(worst_sigma) + " sigma over 2x10 arcs";
    return c;
}

// ---- 11: hole principle, coupled ---------------------------------------------

Criterion criterion_hole_principle(std::uint64_t seed) {
    Criterion c{11, "hole principle: coupled pathwise check on 3 nested pairs",
                true, ""};
    const double tol = 1e-4;
    std::string detail;

    {   // slit disk inside the disk; removed boundary set is empty
        SlitDiskDomain g0(0.5, 1.0);
        DiskDomain g1;
        const auto hc = hole_principle_check(
            g0, g1,
            [](Complex p) {
                return std::abs(p.imag()) < 1e-9 && p.real() >= 0.5 && p.real() <= 1.0;
            },
            [](Complex) { return false; }, Complex(-0.3, 0.0), 20000, seed ^ 0x111);
        if (!hc.pass || !hc.pathwise_pass) c.pass = false;
        detail += "slit " + fmt(hc.lhs.estimate) + "<=" + fmt(hc.rhs.estimate) + "; ";
    }
    {   // G0 = G1, empty hole
        DiskDomain g0, g1;
        const auto hc = hole_principle_check(
            g0, g1, [](Complex) { return false; }, [](Complex) { return false; },
            Complex(0.2, 0.1), 20000, seed ^ 0x222);
        if (!hc.pass || !hc.pathwise_pass || hc.lhs.estimate != 0.0 ||
            hc.rhs.estimate != 0.0)
            c.pass = false;
        detail += "trivial " + fmt(hc.lhs.estimate) + "<=" + fmt(hc.rhs.estimate) + "; ";
    }
    {   // Omega_3 inside Omega through the third hole
        const std::vector<double> deltas{0.02, 0.005, 0.002};
        BarrierDomain g0(BarrierDomain::Kind::OmegaN, 3, deltas);
        BarrierDomain g1(BarrierDomain::Kind::Omega, 0, deltas);
        const double top = 12.0 * kPi;
        const double mid = barrier_mid(3), del = deltas[2];
        const auto hc = hole_principle_check(
            g0, g1,
            [=](Complex p) {
                return std::abs(p.imag() - top) <= 10 * tol &&
                       std::abs(p.real() - mid) <= del + 10 * tol;
            },
            [=](Complex p) { return p.imag() > top + 10 * tol; }, Complex(0.5, 3.0),
            20000, seed ^ 0x333, tol);
        if (!hc.pass || !hc.pathwise_pass) c.pass = false;
        detail += "omega_3 " + fmt(hc.lhs.estimate) + "<=" + fmt(hc.rhs.estimate) +
                  ", violations " + std::to_string(hc.pathwise_violations);
    }
    c.detail = detail;
    return c;
}

// ---- 12: calibration and the decay chain -------------------------------------

Criterion criterion_decay_chain(std::uint64_t seed) {
    Criterion c{12, "calibrated barriers: e^{-c/h} fit and Orlicz bound 1/n", true, ""};
    const Complex a(0.5, 3.0);
    std::string detail;

    // exponential scheme, n = 1..6
    std::vector<Calibration> exp_cals;
    std::vector<double> priors;
    for (int n = 1; n <= 6; ++n) {
        const Calibration cal = calibrate_hole(
            n, priors, a, eps_scheme_exp(n), 40000,
            seed + static_cast<std::uint64_t>(1000 * n));
        priors.push_back(cal.delta);
        if (!(cal.achieved + 3.0 * cal.std_err <= cal.requested_eps)) c.pass = false;
        exp_cals.push_back(cal);
    }
    std::vector<double> h_list;
    for (int n = 1; n <= 6; ++n)
        h_list.push_back(1.0 / (8.0 * kPi * (static_cast<double>(n) + 0.5)));
    const RhoBoundReport rep = rho_bound_report(exp_cals, h_list);
    const double lo = 0.8 / (8.0 * kPi), hi = 1.2 / (4.0 * kPi);
    if (!(rep.fitted_c >= lo && rep.fitted_c <= hi)) c.pass = false;
    detail += "fit c=" + fmt(rep.fitted_c) + " in [" + fmt(lo) + "," + fmt(hi) + "]";

    // Orlicz-driven scheme, n = 1..4: Delta(h) bound <= 1/n at every bracket
    const OrliczFunction psi = OrliczFunction::power(2.0);
    std::vector<Calibration> psi_cals;
    priors.clear();
    for (int n = 1; n <= 4; ++n) {
        const Calibration cal = calibrate_hole(
            n, priors, a, eps_scheme_psi(n, psi), 100000,
            seed + static_cast<std::uint64_t>(2000 * n));
        priors.push_back(cal.delta);
        if (!(cal.achieved + 3.0 * cal.std_err <= cal.requested_eps)) c.pass = false;
        psi_cals.push_back(cal);
    }
    std::vector<double> h_psi;
    for (int n = 1; n <= 4; ++n)
        h_psi.push_back(1.0 / (8.0 * kPi * (static_cast<double>(n) + 0.5)));
    const RhoBoundReport rep_psi = rho_bound_report(psi_cals, h_psi, &psi);
    for (const auto& row : rep_psi.rows) {
        if (!(row.psi_delta_bound <= 1.0 / static_cast<double>(row.n) + 1e-9)) {
            c.pass = false;
            detail += "; Delta bound at n=" + std::to_string(row.n) + " = " +
                      fmt(row.psi_delta_bound);
        }
    }
    detail += "; Delta bounds <= 1/n at all " + std::to_string(rep_psi.rows.size()) +
              " brackets";
    c.detail = detail;
    return c;
}

// ---- 13: headline separation --------------------------------------------------

Criterion criterion_separation(std::uint64_t) {
    Criterion c{13, "slow product: Orlicz ratio to zero while Delta stays bounded away",
                true, ""};
    const OrliczFunction psi = OrliczFunction::power(2.0);
    const SlowBlaschkeSpec spec = build_slow_blaschke(delta_from_psi(psi), 24);
    const SymbolMap phi = SymbolMap::slow_blaschke(spec);

    std::vector<double> radii;
    for (int k = 3; k <= 20; ++k) radii.push_back(1.0 - std::ldexp(1.0, -k));
    const auto rows = pointwise_ratios(phi, psi, radii);
    std::vector<double> orlicz, angular;
    for (const auto& r : rows) {
        orlicz.push_back(r.orlicz);
        angular.push_back(r.angular);
    }
    const Trend orlicz_trend = classify_trend(orlicz);

    const PullbackSample sample = PullbackSample::build(phi, 1 << 14);
    std::vector<double> h_list, rho_values;
    for (int k = 0; k < 9; ++k) {
        h_list.push_back(0.25 * std::ldexp(1.0, -k));
        rho_values.push_back(sample.rho(h_list.back()));
    }
    const auto table = delta_ratio(psi, h_list, rho_values);
    const Trend dtrend = delta_trend(table);

    c.pass = orlicz_trend == Trend::ToZero && dtrend == Trend::BoundedAway;
    c.detail = "orlicz trend " + trend_name(orlicz_trend) + " (first " +
               fmt(orlicz.front()) + ", last " + fmt(orlicz.back()) +
               "); delta trend " + trend_name(dtrend) + " (first " +
               fmt(table.front().delta) + ", last " + fmt(table.back().delta) + ")";
    return c;
}

// ---- 14: byte determinism ------------------------------------------------------

std::string representative_artifacts(std::uint64_t seed, int workers) {
    set_worker_count(workers);
    std::string blob;
    const OrliczFunction psi = OrliczFunction::power(2.0);
    const SlowBlaschkeSpec spec = build_slow_blaschke(delta_from_psi(psi), 16);
    blob += dump_json17(spec.to_json());

    const PullbackSample sample = PullbackSample::build(SymbolMap::identity(), 1 << 12);
    CsvTable t;
    t.header = {"h", "rho"};
    for (double h : {0.2, 0.1, 0.05})
        t.add_row({format17(h), format17(sample.rho(h))});
    blob += t.dump();

    DiskDomain disk({{0.0, kPi / 2.0, "q1"}});
    const auto dist = exit_distribution(disk, Complex(0.3, 0.2), 20000, seed);
    Json j;
    for (const auto& [label, m] : dist)
        j[label] = {{"estimate", m.estimate}, {"hits", m.hits}};
    blob += dump_json17(j);

    ReportOptions opt;
    opt.samples = 1 << 12;
    opt.h_list = {0.25, 0.125, 0.0625};
    blob += dump_json17(run_diagnostic(SymbolMap::scaling(0.5), psi, opt).to_json());
    set_worker_count(0);
    return blob;
}

Criterion criterion_determinism(std::uint64_t seed) {
    Criterion c{14, "byte-identical artifacts across repeats and worker counts",
                true, ""};
    const std::string one = representative_artifacts(seed, 1);
    const std::string two = representative_artifacts(seed, 1);
    const std::string four = representative_artifacts(seed, 4);
    c.pass = one == two && one == four;
    c.detail = "blob " + std::to_string(one.size()) + " bytes, repeat " +
               (one == two ? "equal" : "DIFFERS") + ", workers-4 " +
               (one == four ? "equal" : "DIFFERS");
    return c;
}

} // namespace

std::vector<Criterion> run_acceptance(std::uint64_t seed) {
    std::vector<Criterion> out;
    out.push_back(criterion_factor_bounds(seed));
    out.push_back(criterion_closed_form(seed));
    out.push_back(criterion_slow_certificate(seed));
    out.push_back(criterion_triangle(seed));
    out.push_back(criterion_rho_identity(seed));
    out.push_back(criterion_counting_identity(seed));
    out.push_back(criterion_closed_range(seed));
    out.push_back(criterion_wallis(seed));
    out.push_back(criterion_verdict_agreement(seed));
    out.push_back(criterion_disk_measure(seed));
    out.push_back(criterion_hole_principle(seed));
    out.push_back(criterion_decay_chain(seed));
    out.push_back(criterion_separation(seed));
    out.push_back(criterion_determinism(seed));
    return out;
}

} // namespace codiag
