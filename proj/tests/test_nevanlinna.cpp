#include <doctest.h>

#include <cmath>
#include <numbers>

#include "codiag/carleson.hpp"
#include "codiag/errors.hpp"
#include "codiag/nevanlinna.hpp"
#include "codiag/rng.hpp"

using namespace codiag;

namespace {
constexpr double kPi = std::numbers::pi;

// independent Cartesian midpoint quadrature over S(xi, h) ∩ 𝔻 (oracle)
double brute_window_average(const SymbolMap& phi, Complex xi, double h, int n) {
    double sum = 0.0, area = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Complex z(xi.real() - h + 2.0 * h * (i + 0.5) / n,
                            xi.imag() - h + 2.0 * h * (j + 0.5) / n);
            if (std::abs(z - xi) > h || std::abs(z) >= 1.0) continue;
            sum += counting_function(phi, z).value;
            area += 1.0;
        }
    }
    return sum / area;
}
} // namespace

TEST_CASE("counting function identities") {
    CHECK(counting_function(SymbolMap::identity(), {0.5, 0.0}).value ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(counting_function(SymbolMap::monomial(2), {0.25, 0.0}).value ==
          doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(counting_function(SymbolMap::finite_blaschke({{1, 0.5}}), {0.0, 0.0}).value ==
          doctest::Approx(std::log(2.0)).epsilon(1e-10));
    SplitMix64 rng(8);
    for (int k = 1; k <= 3; ++k) {
        const SymbolMap phi = k == 1 ? SymbolMap::identity() : SymbolMap::monomial(k);
        for (int i = 0; i < 100; ++i) {
            Complex w;
            do {
                w = {rng.uniform(-0.95, 0.95), rng.uniform(-0.95, 0.95)};
            } while (std::abs(w) >= 0.95 || std::abs(w) < 1e-3);
            CHECK(std::abs(counting_function(phi, w).value -
                           std::log(1.0 / std::abs(w))) <= 1e-10);
        }
    }
}

TEST_CASE("counting function flags the excluded point and multiplicities") {
    const auto at0 = counting_function(SymbolMap::identity(), {0.0, 0.0});
    CHECK(at0.at_phi_zero);
    CHECK(at0.value == 0.0);  // the infinite term at the origin is excluded
    const auto mult = counting_function(SymbolMap::monomial(3), {0.0, 0.0});
    CHECK(mult.at_phi_zero);
    CHECK(mult.multiplicity_flagged);
    CHECK(counting_function(SymbolMap::scaling(0.5), {0.7, 0.0}).value == 0.0);
}

TEST_CASE("counting function vanishes toward the boundary along rays") {
    for (const auto& phi : {SymbolMap::identity(), SymbolMap::monomial(2),
                            SymbolMap::finite_blaschke({{2, 0.4}})}) {
        double prev = 1e300;
        for (double r : {0.9, 0.99, 0.999, 0.9999}) {
            const double v = counting_function(phi, std::polar(r, 0.7)).value;
            CHECK(v >= 0.0);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
        CHECK(prev <= 1e-3);
    }
}

TEST_CASE("window averages against a brute-force oracle") {
    const auto id = SymbolMap::identity();
    const auto got = window_average(id, {1.0, 0.0}, 0.1);
    CHECK(got.converged);
    const double oracle = brute_window_average(id, {1.0, 0.0}, 0.1, 1200);
    CHECK(got.average == doctest::Approx(oracle).epsilon(5e-3));

    // empty preimage region: scaling support misses the window entirely
    const auto sc = window_average(SymbolMap::scaling(0.5), {1.0, 0.0}, 0.25);
    CHECK(sc.average == 0.0);

    // z^2 shares the identity's counting function, hence its averages
    const auto mono = window_average(SymbolMap::monomial(2), {1.0, 0.0}, 0.1);
    CHECK(mono.average == doctest::Approx(got.average).epsilon(2e-3));
}

TEST_CASE("window average floor vs closed-range verdicts") {
    const std::vector<double> hs{1.0 / 8, 1.0 / 16, 1.0 / 64, 1.0 / 256};
    for (const auto& phi : {SymbolMap::identity(), SymbolMap::monomial(2)}) {
        for (double h : hs) {
            const auto avg = window_average(phi, {1.0, 0.0}, h);
            CHECK(avg.average / h > 0.05);
        }
        const auto sample = PullbackSample::build(phi, 1 << 14);
        CHECK(sample.closed_range(std::vector<double>{0.2, 0.1}).consistent);
    }
    CHECK(window_average(SymbolMap::scaling(0.5), {1.0, 0.0}, 0.25).average == 0.0);
    const auto sc = PullbackSample::build(SymbolMap::scaling(0.5), 1 << 14);
    CHECK(!sc.closed_range(std::vector<double>{0.25, 0.1}).consistent);
}

TEST_CASE("annulus integrals: both printed weights") {
    // scaling: integrand vanishes on |z| >= 1/2
    for (auto form : {LueckingForm::RatioLambda, LueckingForm::ProofWeight}) {
        const auto r = luecking_integral(SymbolMap::scaling(0.5), 2.0, 8, form);
        for (double v : r.partial) CHECK(v == 0.0);
        CHECK(!r.diverging);
    }
    // identity, ratio form, p = 2: closed-form radial oracle
    const auto id = luecking_integral(SymbolMap::identity(), 2.0, 8,
                                      LueckingForm::RatioLambda);
    CHECK(id.diverging);
    for (std::size_t i = 0; i < id.partial.size(); ++i) {
        const int k = static_cast<int>(i) + 2;
        auto F = [](double r) { return 1.0 / (1.0 - r) + std::log(1.0 - r); };
        const double oracle = 2.0 * (F(1.0 - std::ldexp(1.0, -k)) - F(0.5));
        CHECK(id.partial[i] == doctest::Approx(oracle).epsilon(2e-2));
    }
    // proof weight differs by the log(1/r) vs (1-r) factor, between 1 and 2 log 2
    const auto proof = luecking_integral(SymbolMap::identity(), 2.0, 8,
                                         LueckingForm::ProofWeight);
    CHECK(proof.diverging);
    for (std::size_t i = 0; i < proof.partial.size(); ++i) {
        const double ratio = proof.partial[i] / id.partial[i];
        CHECK(ratio >= 1.0 - 2e-2);
        CHECK(ratio <= 2.0 * std::log(2.0) + 2e-2);
    }
    // z^2 matches the identity within quadrature tolerance
    const auto mono = luecking_integral(SymbolMap::monomial(2), 2.0, 8,
                                        LueckingForm::RatioLambda);
    for (std::size_t i = 0; i < mono.partial.size(); ++i)
        CHECK(mono.partial[i] == doctest::Approx(id.partial[i]).epsilon(2e-2));
}

TEST_CASE("sub-mean diagnostic on harmonic log(1/|z|)") {
    const auto id = SymbolMap::identity();
    const auto q1 = submean_check(id, {0.5, 0.0}, 0.2, 1.0);
    CHECK(q1.ratio == doctest::Approx(1.0).epsilon(1e-3));  // mean value property
    const auto q2 = submean_check(id, {0.5, 0.0}, 0.2, 2.0);
    CHECK(q2.ratio <= 1.0 + 1e-9);  // Jensen direction
    const auto mono = submean_check(SymbolMap::monomial(2), {0.5, 0.0}, 0.2, 1.0);
    CHECK(mono.ratio == doctest::Approx(q1.ratio).epsilon(1e-6));

    CHECK_THROWS_AS(submean_check(id, {0.1, 0.0}, 0.2, 1.0), ConfigError);  // holds 0
    CHECK_THROWS_AS(submean_check(id, {0.9, 0.0}, 0.2, 1.0), ConfigError);  // leaves disk
    // disk around phi(0) = 0.5 for this factor is rejected
    CHECK_THROWS_AS(
        submean_check(SymbolMap::finite_blaschke({{1, 0.5}}), {0.5, 0.0}, 0.05, 1.0),
        ConfigError);
    (void)kPi;
}
