#include <doctest.h>

#include <cmath>
#include <numbers>

#include "codiag/blaschke.hpp"
#include "codiag/errors.hpp"
#include "codiag/rng.hpp"

using namespace codiag;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTwoE = 2.0 * std::numbers::e;

Complex factor_product(std::int64_t p, double r, Complex z) {
    Complex prod = 1.0;
    for (std::int64_t k = 1; k <= p; ++k) {
        const Complex e = std::polar(1.0, -kTwoPi * static_cast<double>(k) /
                                              static_cast<double>(p));
        prod *= (r - e * z) / (1.0 - r * e * z);
    }
    return prod;
}
} // namespace

TEST_CASE("factor closed form hits the worked examples") {
    CHECK(std::abs(eval_factor({1, 0.5}, {0.5, 0.0})) <= 1e-12);  // zero of the factor
    CHECK(std::abs(eval_factor({1, 0.5}, {-0.5, 0.0})) ==
          doctest::Approx(0.8).epsilon(1e-12));
    const Complex v = eval_factor({2, 0.5}, {0.0, 0.5});
    CHECK(std::abs(v - factor_product(2, 0.5, {0.0, 0.5})) <= 1e-13);
    CHECK(std::abs(v) == doctest::Approx(8.0 / 17.0).epsilon(1e-12));
}

TEST_CASE("closed form equals the explicit product") {
    SplitMix64 rng(11);
    double worst = 0.0;
    for (int t = 0; t < 60; ++t) {
        const auto p = static_cast<std::int64_t>(1 + rng.next() % 50);
        const double r = rng.uniform(0.05, 0.95);
        Complex z;
        do {
            z = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        } while (std::abs(z) > 1.0);
        worst = std::max(worst,
                         std::abs(factor_product(p, r, z) - eval_factor({p, r}, z)));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("modulus bounds on |z| = r, parts (a) and (b)") {
    SplitMix64 rng(13);
    for (int t = 0; t < 120; ++t) {
        const auto p = static_cast<std::int64_t>(1 + rng.next() % 20);
        const double r = rng.uniform(0.05, 0.95);
        const double rp = std::pow(r, static_cast<double>(p));
        const double bound = 2.0 * rp / (1.0 + rp * rp);
        const Complex z = std::polar(r, rng.uniform(0.0, kTwoPi));
        CHECK(std::abs(eval_factor({p, r}, z)) <= bound + 1e-12);
        const Complex top = std::polar(r, std::numbers::pi / static_cast<double>(p));
        CHECK(std::abs(std::abs(eval_factor({p, r}, top)) - bound) <= 1e-10);
        const double ph = static_cast<double>(p) * (1.0 - r);
        if (ph <= 0.5)
            CHECK(std::abs(eval_factor({p, r}, z)) <= 1.0 - ph * ph / kTwoE + 1e-12);
    }
}

TEST_CASE("maximum-modulus extension to |z| <= r") {
    SplitMix64 rng(17);
    for (int t = 0; t < 15; ++t) {
        const auto p = static_cast<std::int64_t>(1 + rng.next() % 12);
        const double r = rng.uniform(0.2, 0.9);
        double boundary_max = 0.0;
        for (int j = 0; j < (1 << 10); ++j)
            boundary_max = std::max(
                boundary_max,
                std::abs(eval_factor({p, r}, std::polar(r, kTwoPi * j / 1024.0))));
        for (int i = 0; i < 40; ++i) {
            const Complex z = std::polar(rng.uniform(0.0, r), rng.uniform(0.0, kTwoPi));
            CHECK(std::abs(eval_factor({p, r}, z)) <= boundary_max + 1e-9);
        }
    }
}

TEST_CASE("pseudo-hyperbolic distance basics") {
    CHECK(pseudo_hyperbolic({0.3, 0.4}, {0.0, 0.0}) ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pseudo_hyperbolic({0.2, -0.7}, {0.2, -0.7}) == 0.0);
    CHECK(pseudo_hyperbolic({0.5, 0.0}, {-0.5, 0.0}) ==
          doctest::Approx(0.8).epsilon(1e-15));
    SplitMix64 rng(19);
    for (int i = 0; i < 500; ++i) {
        Complex a, b, m;
        auto pt = [&rng]() {
            Complex z;
            do {
                z = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            } while (std::abs(z) >= 1.0);
            return z;
        };
        a = pt(); b = pt(); m = pt();
        const double dab = pseudo_hyperbolic(a, b);
        const double dam = pseudo_hyperbolic(a, m);
        const double dmb = pseudo_hyperbolic(m, b);
        CHECK(dab <= (dam + dmb) / (1.0 + dam * dmb) + 1e-12);
        CHECK(dab == doctest::Approx(pseudo_hyperbolic(b, a)).epsilon(1e-14));
        CHECK(dab < 1.0);
    }
}

TEST_CASE("minimality loops match brute force") {
    // independent brute force from p = 1
    auto brute = [](double h, int n) {
        const double target = std::ldexp(1.0, -n);
        double p = 1.0;
        while (!((p * h) * (p * h) / kTwoE > target)) p += 1.0;
        return static_cast<std::int64_t>(p);
    };
    CHECK(minimal_zero_count(std::ldexp(1.0, -14), 7) == 3377);
    CHECK(brute(std::ldexp(1.0, -14), 7) == 3377);
    const double h7 = std::ldexp(1.0, -14);
    CHECK(!((3376.0 * h7) * (3376.0 * h7) / kTwoE > std::ldexp(1.0, -7)));
    CHECK(((3377.0 * h7) * (3377.0 * h7) / kTwoE > std::ldexp(1.0, -7)));
    for (int n = 7; n <= 12; ++n)
        CHECK(minimal_zero_count(std::ldexp(1.0, -2 * n - 2), n) ==
              brute(std::ldexp(1.0, -2 * n - 2), n));

    // monomial power: iterated multiplication is the oracle
    auto iterate = [](double h) {
        long double r = 1.0L - static_cast<long double>(h), prod = 1.0L;
        std::int64_t n = 0;
        while (prod >= 0.5L) {
            prod *= r;
            ++n;
        }
        return n;
    };
    CHECK(minimal_monomial_power(std::ldexp(1.0, -12)) == 2839);
    CHECK(iterate(std::ldexp(1.0, -12)) == 2839);
    CHECK(minimal_monomial_power(std::ldexp(1.0, -14)) ==
          iterate(std::ldexp(1.0, -14)));
}

TEST_CASE("construction for delta = sqrt(t): dyadic exponents 2n + 2") {
    auto delta = delta_from_psi(OrliczFunction::power(2.0));
    CHECK(chi(delta, 0.01) == doctest::Approx(0.2).epsilon(1e-12));
    const SlowBlaschkeSpec spec = build_slow_blaschke(delta, 12);
    for (int n = 6; n <= 12; ++n) {
        CHECK(spec.h_exponent[static_cast<std::size_t>(n - 6)] == 2 * n + 2);
        CHECK(chi(delta, spec.h(n)) <= std::ldexp(1.0, -n));
        CHECK(spec.h(n) <= std::ldexp(1.0, -2 * n));
    }
    double sum_ph = 0.0, sum_bound = 0.0;
    for (int n = 7; n <= 12; ++n) {
        CHECK(static_cast<double>(spec.p(n)) * spec.h(n) <= 0.5);
        sum_ph += static_cast<double>(spec.p(n)) * spec.h(n);
        sum_bound += std::sqrt(4.0 * kTwoE * std::ldexp(1.0, -n));
    }
    CHECK(sum_ph <= sum_bound);
    CHECK(std::pow(spec.r(6), static_cast<double>(spec.monomial_power)) < 0.5);
}

TEST_CASE("construction failure modes") {
    auto delta = delta_from_psi(OrliczFunction::power(2.0));
    CHECK_THROWS_AS(build_slow_blaschke(delta, 7), ConfigError);
    // a decay stuck at a constant can never satisfy chi <= 2^{-n}
    DecayFunction stuck([](double) { return 0.4; }, DecayProvenance::User, true);
    CHECK_THROWS_AS(build_slow_blaschke(stuck, 8), NumericalError);
    DecayFunction rising([](double t) { return 0.5 - t; }, DecayProvenance::User, true);
    CHECK_THROWS_AS(build_slow_blaschke(rising, 8), ConfigError);
}

TEST_CASE("slowly decaying exp gauge is out of machine-precision reach") {
    // delta(t) = 1/(e^{sqrt(log(1+1/t))}-1) shrinks so slowly that already
    // h_8 would need 2^-57, below one ulp of the factor radius 1 - h; the
    // construction must refuse rather than build unrepresentable factors
    auto delta = delta_from_psi(OrliczFunction::exp_type(1.0));
    CHECK_THROWS_AS(build_slow_blaschke(delta, 8), NumericalError);
    // gauges x^p all induce delta(t) = sqrt(t), which reaches depth 24; the
    // p = 3 inverse rounds through pow(y, 1/3), so the boundary-equality
    // case may land one dyadic step lower
    CHECK(build_slow_blaschke(delta_from_psi(OrliczFunction::power(1.0)), 24)
              .h_exponent.back() == 50);
    const int e3 = build_slow_blaschke(delta_from_psi(OrliczFunction::power(3.0)), 24)
                       .h_exponent.back();
    CHECK(e3 >= 50);
    CHECK(e3 <= 51);
}

TEST_CASE("truncated product: monomial factor and small-radius bound") {
    auto delta = delta_from_psi(OrliczFunction::power(2.0));
    const SlowBlaschkeSpec spec = build_slow_blaschke(delta, 12);
    CHECK(std::abs(eval_slow_blaschke(spec, {0.0, 0.0})) == 0.0);
    SplitMix64 rng(29);
    for (int i = 0; i < 200; ++i) {
        const Complex z =
            std::polar(rng.uniform(0.0, spec.r(6)), rng.uniform(0.0, kTwoPi));
        const double m = std::abs(eval_slow_blaschke(spec, z));
        CHECK(m <= std::pow(spec.r(6), static_cast<double>(spec.monomial_power)) + 1e-12);
        CHECK(m < 0.5);
    }
    // certificate on the truncation-certified annulus 1 - |z| >= 2^{-11}
    for (int i = 0; i < 2000; ++i) {
        const double t = std::exp(rng.uniform(std::log(std::ldexp(1.0, -11)), 0.0));
        const Complex z = std::polar(1.0 - t, rng.uniform(0.0, kTwoPi));
        CHECK(1.0 - std::abs(eval_slow_blaschke(spec, z)) >= delta(t) - 1e-12);
    }
}

TEST_CASE("shell bound: r_{k-1} < |z| <= r_k forces modulus <= 1 - 2^{-k}") {
    auto delta = delta_from_psi(OrliczFunction::power(2.0));
    const SlowBlaschkeSpec spec = build_slow_blaschke(delta, 12);
    SplitMix64 rng(31);
    for (int k = 8; k <= 12; ++k) {
        for (int i = 0; i < 50; ++i) {
            const double mod = rng.uniform(spec.r(k - 1) + 1e-15, spec.r(k));
            const Complex z = std::polar(mod, rng.uniform(0.0, kTwoPi));
            CHECK(std::abs(eval_slow_blaschke(spec, z)) <=
                  1.0 - std::ldexp(1.0, -k) + 1e-11);
        }
    }
}

TEST_CASE("spec serialization is bit-exact and strict") {
    auto delta = delta_from_psi(OrliczFunction::power(2.0));
    const SlowBlaschkeSpec spec = build_slow_blaschke(delta, 14);
    const SlowBlaschkeSpec back = SlowBlaschkeSpec::from_json(spec.to_json());
    CHECK(back.depth == spec.depth);
    CHECK(back.monomial_power == spec.monomial_power);
    CHECK(back.h_exponent == spec.h_exponent);
    CHECK(back.zero_count == spec.zero_count);
    Json j = spec.to_json();
    j["surprise"] = 1;
    CHECK_THROWS_AS(SlowBlaschkeSpec::from_json(j), ConfigError);
}

TEST_CASE("circle evaluation stays on the circle") {
    auto delta = delta_from_psi(OrliczFunction::power(2.0));
    const SlowBlaschkeSpec spec = build_slow_blaschke(delta, 20);
    for (std::int64_t i = 0; i < 256; ++i) {
        const Complex v = eval_slow_blaschke_on_circle(spec, i, 256);
        CHECK(std::abs(std::abs(v) - 1.0) <= 1e-12);
    }
}
