#include "codiag/blaschke.hpp"

#include <cmath>
#include <numbers>

#include "codiag/errors.hpp"

namespace codiag {

namespace {

constexpr double kTwoE = 2.0 * std::numbers::e;

// z^p for |z| <= 1 via log-polar form. The phase p*arg(z) is reduced mod 2*pi
// in long double; for p ~ 1e12 that keeps the phase good to ~1e-7 radians.
Complex unit_pow(Complex z, std::int64_t p) {
    if (p == 0) return {1.0, 0.0};
    if (p == 1) return z;
    const double m = std::abs(z);
    if (m == 0.0) return {0.0, 0.0};
    const double mod = std::exp(static_cast<double>(p) * std::log(m));
    const long double phase = static_cast<long double>(p) *
                              static_cast<long double>(std::arg(z));
    constexpr long double two_pi = 6.283185307179586476925286766559L;
    const double red = static_cast<double>(
        phase - two_pi * std::floor(phase / two_pi));
    return std::polar(mod, red);
}

// e^{2*pi*i*(p*num mod den)/den}, the power's phase reduced exactly
Complex unit_root_pow(std::int64_t p, std::int64_t num, std::int64_t den) {
    const std::int64_t pm = ((p % den) + den) % den;
    const std::int64_t nm = ((num % den) + den) % den;
    const std::int64_t k = static_cast<std::int64_t>(
        (static_cast<unsigned __int128>(pm) * static_cast<unsigned __int128>(nm)) %
        static_cast<unsigned __int128>(den));
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(den);
    return std::polar(1.0, theta);
}

double factor_radius_power(const EquidistributedFactor& f) {
    // r^p = exp(p log(1-h)); p h <= O(1) in the construction so this is O(1)
    return std::exp(static_cast<double>(f.p) * std::log1p(-(1.0 - f.r)));
}

} // namespace

Complex eval_factor(const EquidistributedFactor& f, Complex z) {
    if (f.p < 1 || !(f.r > 0.0 && f.r < 1.0))
        throw ConfigError("blaschke: factor needs p >= 1 and r in (0,1)");
    const Complex zp = unit_pow(z, f.p);
    const double rp = factor_radius_power(f);
    return (zp - rp) / (rp * zp - 1.0);
}

Complex eval_factor_on_circle(const EquidistributedFactor& f, std::int64_t num,
                              std::int64_t den) {
    const Complex w = unit_root_pow(f.p, num, den);
    const double rp = factor_radius_power(f);
    return (w - rp) / (rp * w - 1.0);
}

double pseudo_hyperbolic(Complex u, Complex v) {
    return std::abs(u - v) / std::abs(1.0 - std::conj(u) * v);
}

double SlowBlaschkeSpec::h(int n) const {
    return std::ldexp(1.0, -h_exponent.at(static_cast<std::size_t>(n - 6)));
}

std::int64_t SlowBlaschkeSpec::p(int n) const {
    return zero_count.at(static_cast<std::size_t>(n - first_index));
}

double chi(const DecayFunction& delta, double x) {
    if (delta.monotone())
        return std::max(2.0 * delta(x), std::sqrt(x));
    double sup = 0.0;
    const int kGrid = 1 << 12;
    for (int j = 0; j < kGrid; ++j) {
        // log grid on (0, x], spanning 15 decades below x
        const double t = x * std::pow(10.0, -15.0 * j / (kGrid - 1));
        sup = std::max(sup, std::max(2.0 * delta(t), std::sqrt(t)));
    }
    return sup;
}

std::int64_t minimal_zero_count(double h, int n) {
    const long double target = std::ldexp(1.0L, -n);
    const long double hl = h;
    const long double guess = std::sqrt(static_cast<long double>(kTwoE) * target) / hl;
    // long double walks integers exactly up to ~1.8e19; slowly decaying
    // gauges outgrow even the int64 range within a handful of factors
    if (!(guess < 4.0e18))
        throw NumericalError(
            "blaschke: minimal zero count at index " + std::to_string(n) +
            " exceeds the exact integer range; reduce the truncation depth");
    auto passes = [&](long double p) {
        return (p * hl) * (p * hl) / static_cast<long double>(kTwoE) > target;
    };
    long double p = std::max(1.0L, std::floor(guess) - 2.0L);
    while (!passes(p)) p += 1.0L;
    while (p > 1.0L && passes(p - 1.0L)) p -= 1.0L;
    return static_cast<std::int64_t>(p);
}

std::int64_t minimal_monomial_power(double h) {
    // N > log 2 / -log(1-h); settle the integer boundary by direct checks
    const long double l = -std::log1p(static_cast<long double>(-h));
    std::int64_t n = static_cast<std::int64_t>(std::ceil(0.6931471805599453094L / l));
    auto below_half = [&](std::int64_t k) {
        return std::exp(-static_cast<long double>(k) * l) < 0.5L;
    };
    while (!below_half(n)) ++n;
    while (n > 1 && below_half(n - 1)) --n;
    return n;
}

SlowBlaschkeSpec build_slow_blaschke(const DecayFunction& delta, int depth) {
    if (depth < 8) throw ConfigError("blaschke: depth must be >= 8");
    // probe the decay hypothesis: nonincreasing along t -> 0
    double prev = delta(std::ldexp(1.0, -4));
    for (int k = 5; k <= 40; ++k) {
        const double cur = delta(std::ldexp(1.0, -k));
        if (cur > prev + 1e-12)
            throw ConfigError("blaschke: delta is not nonincreasing near 0");
        prev = cur;
    }

    SlowBlaschkeSpec spec;
    spec.first_index = 7;
    spec.depth = depth;
    int m = 0;
    for (int n = 6; n <= depth; ++n) {
        const double target = std::ldexp(1.0, -n);
        ++m;  // keeps (h_n) strictly decreasing on the dyadic grid
        // beyond 2^-52 the radius 1 - h collapses into 1.0 in doubles and the
        // factor data is no longer representable
        while (chi(delta, std::ldexp(1.0, -m)) > target) {
            if (++m > 52)
                throw NumericalError(
                    "blaschke: delta decays too slowly for depth " +
                    std::to_string(depth) + " at machine precision");
        }
        spec.h_exponent.push_back(m);
        const double h = std::ldexp(1.0, -m);
        if (n >= 7) {
            const std::int64_t p = minimal_zero_count(h, n);
            // p_n h_n <= sqrt(8 e 2^{-n}) <= 1/2 for n >= 7
            const double bound = std::sqrt(4.0 * kTwoE * target);
            if (!(static_cast<double>(p) * h <= bound + 1e-12) || bound > 0.5 + 1e-12)
                throw NumericalError("blaschke: p_n h_n bound violated");
            spec.zero_count.push_back(p);
        }
    }
    spec.monomial_power = minimal_monomial_power(spec.h(6));
    return spec;
}

Complex eval_slow_blaschke(const SlowBlaschkeSpec& spec, Complex z) {
    Complex acc = unit_pow(z, spec.monomial_power);
    for (int n = spec.first_index; n <= spec.depth; ++n)
        acc *= eval_factor({spec.p(n), spec.r(n)}, z);
    return acc;
}

Complex eval_slow_blaschke_on_circle(const SlowBlaschkeSpec& spec,
                                     std::int64_t num, std::int64_t den) {
    Complex acc = unit_root_pow(spec.monomial_power, num, den);
    for (int n = spec.first_index; n <= spec.depth; ++n)
        acc *= eval_factor_on_circle({spec.p(n), spec.r(n)}, num, den);
    return acc;
}

Json SlowBlaschkeSpec::to_json() const {
    Json j;
    j["first_index"] = first_index;
    j["depth"] = depth;
    j["h_exponent"] = h_exponent;
    j["zero_count"] = zero_count;
    j["monomial_power"] = monomial_power;
    return j;
}

SlowBlaschkeSpec SlowBlaschkeSpec::from_json(const Json& j) {
    SlowBlaschkeSpec spec;
    for (const auto& [key, _] : j.items()) {
        if (key != "first_index" && key != "depth" && key != "h_exponent" &&
            key != "zero_count" && key != "monomial_power")
            throw ConfigError("blaschke spec: unknown key \"" + key + "\"");
    }
    spec.first_index = j.at("first_index").get<int>();
    spec.depth = j.at("depth").get<int>();
    spec.h_exponent = j.at("h_exponent").get<std::vector<int>>();
    spec.zero_count = j.at("zero_count").get<std::vector<std::int64_t>>();
    spec.monomial_power = j.at("monomial_power").get<std::int64_t>();
    if (spec.h_exponent.size() != static_cast<std::size_t>(spec.depth - 5) ||
        spec.zero_count.size() != static_cast<std::size_t>(spec.depth - spec.first_index + 1))
        throw ConfigError("blaschke spec: inconsistent sequence lengths");
    return spec;
}

} // namespace codiag
