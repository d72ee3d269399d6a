#include <doctest.h>

#include <cmath>

#include "codiag/errors.hpp"
#include "codiag/orlicz.hpp"
#include "codiag/rng.hpp"

using namespace codiag;

TEST_CASE("orlicz families evaluate their gauges") {
    auto p2 = make_orlicz("power", 2.0);
    CHECK(p2(3.0) == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(p2(0.0) == 0.0);
    auto e1 = make_orlicz("exp", 1.0);
    CHECK(e1(1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("orlicz rejects parameters below 1") {
    CHECK_THROWS_AS(make_orlicz("power", 0.5), ConfigError);
    CHECK_THROWS_AS(make_orlicz("exp", 0.99), ConfigError);
}

TEST_CASE("psi inverse matches closed forms") {
    auto p2 = OrliczFunction::power(2.0);
    CHECK(p2.inverse(16.0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(p2.inverse(0.0) == 0.0);
    auto e1 = OrliczFunction::exp_type(1.0);  // e^x - 1
    CHECK(e1.inverse(1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(std::isinf(p2.inverse(std::numeric_limits<double>::infinity())));
}

TEST_CASE("psi inverse round trip over all families") {
    std::vector<OrliczFunction> fams{
        OrliczFunction::power(1.0), OrliczFunction::power(2.0),
        OrliczFunction::power(3.5), OrliczFunction::exp_type(1.0),
        OrliczFunction::exp_type(2.0),
        OrliczFunction::table({{0.5, 0.25}, {1.0, 1.0}, {2.0, 4.0}, {8.0, 64.0}})};
    SplitMix64 rng(41);
    for (const auto& psi : fams) {
        for (int i = 0; i < 1000; ++i) {
            const double y = std::exp(rng.uniform(-6.0, 6.0));
            const double back = psi(psi.inverse(y));
            CHECK(std::abs(back - y) <= 1e-9 * std::max(1.0, y));
        }
    }
}

TEST_CASE("orlicz type invariants hold on samples") {
    for (const auto& psi : {OrliczFunction::power(2.0), OrliczFunction::exp_type(1.5)}) {
        CHECK(psi(0.0) == 0.0);
        SplitMix64 rng(7);
        for (int i = 0; i < 300; ++i) {
            double x = std::exp(rng.uniform(-4.0, 3.0));
            double y = x * rng.uniform(1.0, 3.0);
            CHECK(psi(x) <= psi(y) * (1.0 + 1e-15));
            const double mid = psi(0.5 * (x + y));
            const double avg = 0.5 * (psi(x) + psi(y));
            CHECK(mid <= avg * (1.0 + 1e-12));
        }
        // Psi(X) > 1e12 for some finite probe
        double X = 1.0;
        while (psi(X) <= 1e12 && X < 1e200) X *= 2.0;
        CHECK(psi(X) > 1e12);
    }
}

TEST_CASE("delta from psi: x^2 gives min(1/2, sqrt t) exactly") {
    auto psi = OrliczFunction::power(2.0);
    auto delta = delta_from_psi(psi);
    CHECK(delta(1.0 / 16.0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(delta(0.9) == 0.5);  // clamp
    CHECK(delta(1e-8) == doctest::Approx(1e-4).epsilon(1e-12));
    for (int k = 2; k <= 40; ++k) {
        const double t = std::ldexp(1.0, -k);
        CHECK(std::abs(delta(t) - std::min(0.5, std::sqrt(t))) <= 1e-12);
    }
}

TEST_CASE("delta decays to zero and is monotone on probes") {
    for (const auto& psi : {OrliczFunction::power(2.0), OrliczFunction::exp_type(1.0)}) {
        auto delta = delta_from_psi(psi);
        double prev = 1.0;
        for (int k = 2; k <= 60; ++k) {
            const double cur = delta(std::ldexp(1.0, -k));
            CHECK(cur <= prev + 1e-15);
            CHECK(cur > 0.0);
            CHECK(cur <= 0.5);
            prev = cur;
        }
        CHECK(prev < 1e-2);
        // the corollary's ratio Psi^{-1}(1/delta)/Psi^{-1}(1/t) = 1/sqrt(Psi^{-1}(1/t))
        for (int k = 6; k <= 24; k += 6) {
            const double t = std::ldexp(1.0, -k);
            const double lhs = psi.inverse(1.0 / delta.unclamped(t)) / psi.inverse(1.0 / t);
            const double rhs = 1.0 / std::sqrt(psi.inverse(1.0 / t));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
        }
    }
}

TEST_CASE("user tables: log-log interpolation, flats and concavity rejected") {
    auto t = OrliczFunction::table({{1.0, 1.0}, {2.0, 4.0}, {4.0, 16.0}});
    CHECK(t(2.0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(t(3.0) == doctest::Approx(9.0).epsilon(1e-9));  // power segment
    CHECK(t(0.5) == doctest::Approx(0.25).epsilon(1e-9)); // extrapolation
    CHECK_THROWS_AS(OrliczFunction::table({{1.0, 1.0}, {2.0, 1.0}}), ConfigError);
    CHECK_THROWS_AS(OrliczFunction::table({{1.0, 1.0}, {2.0, 4.0}, {4.0, 5.0}}),
                    ConfigError);
    CHECK_THROWS_AS(OrliczFunction::table({{1.0, 1.0}}), ConfigError);
}

TEST_CASE("orlicz json round trip is strict") {
    auto psi = OrliczFunction::exp_type(1.5);
    auto back = OrliczFunction::from_json(psi.to_json());
    CHECK(back(1.3) == doctest::Approx(psi(1.3)).epsilon(1e-15));
    Json bad{{"family", "power"}, {"p", 2.0}, {"typo", 1}};
    CHECK_THROWS_AS(OrliczFunction::from_json(bad), ConfigError);
}
