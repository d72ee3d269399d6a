#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "codiag/errors.hpp"
#include "codiag/wos.hpp"

using namespace codiag;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

TEST_CASE("disk exits from the center are uniform") {
    DiskDomain disk;
    const std::size_t paths = 10000;
    std::vector<double> angles;
    for (std::size_t i = 0; i < paths; ++i) {
        SplitMix64 rng = path_rng(7, i);
        const auto w = brownian_exit(disk, {0.0, 0.0}, 1e-4, rng);
        CHECK(w.terminated);
        double a = std::arg(w.exit);
        if (a < 0) a += kTwoPi;
        angles.push_back(a / kTwoPi);
    }
    std::sort(angles.begin(), angles.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i)
        ks = std::max(ks, std::abs(angles[i] - (static_cast<double>(i) + 0.5) /
                                                   static_cast<double>(angles.size())));
    CHECK(ks <= 2.0 / std::sqrt(static_cast<double>(paths)));
}

TEST_CASE("disk exits from 0.99 concentrate near arg 0") {
    DiskDomain disk;
    double mean_re = 0.0;
    for (std::size_t i = 0; i < 10000; ++i) {
        SplitMix64 rng = path_rng(8, i);
        mean_re += brownian_exit(disk, {0.99, 0.0}, 1e-4, rng).exit.real();
    }
    CHECK(mean_re / 10000.0 > 0.9);
}

TEST_CASE("exit label fractions partition unity") {
    std::vector<DiskArc> arcs;
    double lo = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double hi = kTwoPi * (i + 1) / 5.0;
        arcs.push_back({lo, hi, "a" + std::to_string(i)});
        lo = hi;
    }
    DiskDomain disk(arcs);
    const auto dist = exit_distribution(disk, {0.3, -0.2}, 20000, 5);
    double total = 0.0;
    for (const auto& [label, m] : dist) total += m.estimate;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));

    BarrierDomain strip(BarrierDomain::Kind::RegionR, 0, {});
    const auto sdist = exit_distribution(strip, {2.0, 1.0}, 5000, 5);
    double stotal = 0.0;
    for (const auto& [label, m] : sdist) stotal += m.estimate;
    CHECK(stotal == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("poisson kernel oracle at off-center starts") {
    std::vector<DiskArc> arcs{{5.5, 1.0, "probe"}};  // wrapping arc
    DiskDomain disk(arcs);
    for (Complex a : {Complex(0.3, 0.0), Complex(0.0, 0.5), Complex(-0.7, 0.0)}) {
        const auto m = harmonic_measure(disk, a, "probe", 100000, 9);
        const double oracle = poisson_arc_measure(a, 5.5, kTwoPi + 1.0);
        CHECK(std::abs(m.estimate - oracle) <= 3.0 * m.std_err);
    }
}

TEST_CASE("conformal invariance smoke test on the right half-plane") {
    // tau(z) = (1-z)/(1+z) maps the disk onto Re > 0 with tau(0) = 1;
    // omega(1, iy-interval) = |atan(y2) - atan(y1)| / pi
    std::vector<ImagInterval> ivs{{0.0, 1.0, "seg1"}, {-2.0, -0.5, "seg2"},
                                  {1.0, 3.0, "seg3"}};
    HalfPlaneDomain rhp(ivs);
    const auto dist = exit_distribution(rhp, {1.0, 0.0}, 100000, 10);
    auto pulled = [](double y1, double y2) {
        return std::abs(std::atan(y2) - std::atan(y1)) / kPi;
    };
    const double expect[3] = {pulled(0, 1), pulled(-2, -0.5), pulled(1, 3)};
    const char* names[3] = {"seg1", "seg2", "seg3"};
    for (int i = 0; i < 3; ++i) {
        const auto& m = dist.at(names[i]);
        CHECK(std::abs(m.estimate - expect[i]) <= 3.0 * m.std_err);
    }
}

TEST_CASE("hole principle: half-disk inside the disk is nontrivial") {
    HalfDiskDomain g0;
    DiskDomain g1;
    const double tol = 1e-4;
    const Complex a(0.0, 0.4);
    const auto coupled = hole_principle_check(
        g0, g1, [tol](Complex p) { return std::abs(p.imag()) <= 10 * tol; },
        [tol](Complex p) { return p.imag() < -10 * tol; }, a, 20000, 7, tol, true);
    CHECK(coupled.pass);
    CHECK(coupled.pathwise_pass);
    CHECK(coupled.rhs.estimate > 0.3);  // diameter carries real mass
    // uncoupled, and the removed-boundary mass matches the Poisson oracle
    const auto un = hole_principle_check(
        g0, g1, [tol](Complex p) { return std::abs(p.imag()) <= 10 * tol; },
        [tol](Complex p) { return p.imag() < -10 * tol; }, a, 50000, 7, tol, false);
    CHECK(un.pass);
    const double oracle = poisson_arc_measure(a, kPi, kTwoPi);
    CHECK(std::abs(un.lhs.estimate - oracle) <= 3.0 * un.lhs.std_err + 1e-3);
}

TEST_CASE("hole principle rejects non-nested pairs") {
    DiskDomain g1;
    HalfDiskDomain g0;
    // reversed roles: the disk is not inside the half-disk
    CHECK_THROWS_AS(hole_principle_check(
                        g1, g0, [](Complex) { return false; },
                        [](Complex) { return false; }, Complex(0.0, 0.4), 100, 7),
                    ConfigError);
}

TEST_CASE("barrier geometry invariants") {
    for (int n = 1; n <= 8; ++n) {
        const double margin_left = barrier_mid(n) - barrier_b(n);
        const double margin_right =
            n == 1 ? margin_left : barrier_b(n - 1) - barrier_mid(n);
        const double delta = 0.4 * std::min(margin_left, margin_right);
        const BarrierShape s = make_barrier(n, delta);
        const double next = 4.0 * kPi * (n + 1);
        CHECK(next - s.c_plus.imag() > kTwoPi);
        CHECK(next - s.c_minus.imag() > kTwoPi);
        // tips live on their hyperbolas
        CHECK(s.c_plus.imag() == doctest::Approx(1.0 / s.c_plus.real()).epsilon(1e-9));
        CHECK(s.c_minus.imag() ==
              doctest::Approx(1.0 / s.c_minus.real() + 4.0 * kPi).epsilon(1e-9));
        // feet flank the hole, hole interior stays open
        CHECK(s.in_plus({s.foot_plus - 1e-9, s.altitude + 1e-12}));
        CHECK(s.in_minus({s.foot_minus + 1e-9, s.altitude + 1e-12}));
        CHECK(!s.in_plus({s.mid, s.altitude}));
        CHECK(!s.in_minus({s.mid, s.altitude}));
    }
    CHECK_THROWS_AS(make_barrier(1, 1.0), ConfigError);  // hole wider than the slice
}

TEST_CASE("omega_n domains: inside test, clearance, labeling") {
    const std::vector<double> deltas{0.02, 0.005};
    BarrierDomain om2(BarrierDomain::Kind::OmegaN, 2, deltas);
    // region membership
    CHECK(om2.inside({0.5, 3.0}));
    CHECK(!om2.inside({0.5, 1.0}));           // below the lower hyperbola
    CHECK(!om2.inside({0.5, 4.0 * kPi * 2})); // above the truncation
    // points inside the carved barrier are excluded
    const BarrierShape s = make_barrier(1, deltas[0]);
    const Complex inside_sword(s.foot_plus - 1e-6, s.altitude + 1e-7);
    CHECK(!om2.inside(inside_sword));
    // clearance never exceeds the true boundary distance near the top
    const Complex near_top(barrier_mid(2), 8.0 * kPi - 1e-3);
    CHECK(om2.clearance(near_top) <= 1e-3 + 1e-12);
    CHECK(om2.clearance(near_top) > 0.0);
    // boundary Re floor: every exit has Re >= b_n (within tolerance)
    const auto dist = exit_distribution(om2, {0.5, 3.0}, 4000, 12);
    CHECK(dist.count("nonterminating") == 0);
    for (std::size_t i = 0; i < 4000; ++i) {
        SplitMix64 rng = path_rng(12, i);
        const auto w = brownian_exit(om2, {0.5, 3.0}, 1e-4, rng);
        CHECK(w.exit.real() >= barrier_b(2) - 1e-9);
    }
}

TEST_CASE("calibration: trivial target, verification, floor, shrink trace") {
    // a generous epsilon passes immediately
    const auto easy = calibrate_hole(1, {}, {0.5, 3.0}, 0.5, 5000, 7);
    CHECK(easy.achieved + 3.0 * easy.std_err <= 0.5);
    CHECK(easy.trace.size() == 1);

    // the worked example: eps = 0.01 at 1e5 paths, re-checked independently
    const auto cal = calibrate_hole(1, {}, {0.5, 3.0}, 0.01, 100000, 7);
    std::vector<double> deltas{cal.delta};
    BarrierDomain om1(BarrierDomain::Kind::OmegaN, 1, deltas);
    const auto recheck = harmonic_measure(om1, {0.5, 3.0}, "hole", 100000, 999);
    CHECK(recheck.estimate <= 0.01 + 3.0 * recheck.std_err);

    CHECK_THROWS_AS(calibrate_hole(1, {}, {0.5, 3.0}, 1e-9, 100000, 7),
                    StatFloorError);

    // a start near the top altitude gives the hole real mass, so the
    // shrink loop engages and its trace decreases with delta
    const auto tight = calibrate_hole(1, {}, {1.0, 12.0}, 0.002, 20000, 7);
    CHECK(tight.trace.size() >= 2);
    CHECK(tight.monotone_trace);
    CHECK(tight.achieved + 3.0 * tight.std_err <= 0.002);
}

TEST_CASE("rho-bound bracketing and fits") {
    std::vector<Calibration> cals;
    for (int n = 1; n <= 6; ++n) {
        Calibration c;
        c.n = n;
        c.requested_eps = eps_scheme_exp(n);
        c.achieved = c.requested_eps * 0.5;
        cals.push_back(c);
    }
    // spec'd bracketing example: h = 0.01 lands at n = 3
    std::vector<double> hs{0.01};
    const auto rep = rho_bound_report(cals, hs);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].n == 3);
    CHECK(rep.rows[0].bound == doctest::Approx(std::exp(-3.0)));
    // bracket endpoint h = b_1/2 lands at n = 1
    std::vector<double> h1{barrier_b(1) / 2.0};
    CHECK(rho_bound_report(cals, h1).rows[0].n == 1);
    // out of range
    std::vector<double> bad{0.2};
    CHECK_THROWS_AS(rho_bound_report(cals, bad), ConfigError);
    std::vector<double> uncal{1.0 / (8.0 * kPi * 7.5)};
    CHECK_THROWS_AS(rho_bound_report(cals, uncal), ConfigError);

    // the e^{-n} scheme fits c = 1/(8 pi) on mid-bracket h values
    std::vector<double> sweep;
    for (int n = 1; n <= 6; ++n) sweep.push_back(1.0 / (8.0 * kPi * (n + 0.5)));
    const auto fit = rho_bound_report(cals, sweep);
    CHECK(fit.fitted_c == doctest::Approx(1.0 / (8.0 * kPi)).epsilon(1e-9));
    CHECK(fit.fit_r2 > 0.999);

    // psi scheme: Delta bound equals 1/n exactly
    const OrliczFunction psi = OrliczFunction::power(2.0);
    std::vector<Calibration> pcals;
    for (int n = 1; n <= 4; ++n) {
        Calibration c;
        c.n = n;
        c.requested_eps = eps_scheme_psi(n, psi);
        pcals.push_back(c);
    }
    std::vector<double> psweep;
    for (int n = 1; n <= 4; ++n) psweep.push_back(1.0 / (8.0 * kPi * (n + 0.5)));
    const auto prep = rho_bound_report(pcals, psweep, &psi);
    for (const auto& row : prep.rows)
        CHECK(row.psi_delta_bound ==
              doctest::Approx(1.0 / row.n).epsilon(1e-9));
}

TEST_CASE("walk rejects bad tolerances and outside starts") {
    DiskDomain disk;
    SplitMix64 rng(1);
    CHECK_THROWS_AS(brownian_exit(disk, {0.0, 0.0}, 1e-2, rng), ConfigError);
    CHECK_THROWS_AS(brownian_exit(disk, {2.0, 0.0}, 1e-4, rng), ConfigError);
}
