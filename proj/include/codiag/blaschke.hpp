#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "codiag/jsonio.hpp"
#include "codiag/orlicz.hpp"

namespace codiag {

using Complex = std::complex<double>;

/// Finite Blaschke factor with p zeros equidistributed on the circle of
/// radius r: closed form G(z) = (z^p - r^p) / ((rz)^p - 1).
struct EquidistributedFactor {
    std::int64_t p = 1;  // zero count
    double r = 0.5;      // zero radius in (0,1)
};

/// Closed-form evaluation, |z| <= 1. Powers go through a log-polar route with
/// long-double phase reduction, so p up to ~1e12 stays accurate.
Complex eval_factor(const EquidistributedFactor& f, Complex z);

/// Same factor evaluated at z = e^{2*pi*i*num/den}; the power's phase is
/// reduced with exact integer arithmetic, which the pull-back sampler relies
/// on. Modulus is exactly 1 up to roundoff.
Complex eval_factor_on_circle(const EquidistributedFactor& f, std::int64_t num,
                              std::int64_t den);

/// d(u, v) = |u - v| / |1 - conj(u) v| on the open disk.
double pseudo_hyperbolic(Complex u, Complex v);

/// Data of the slow Blaschke product B(z) = z^N * prod_{n>=7} B_n(z):
/// dyadic h_n (stored as exponents, bit-exact), r_n = 1 - h_n, minimal p_n
/// with p_n^2 h_n^2 / (2e) > 2^{-n}, truncated at depth M.
struct SlowBlaschkeSpec {
    int first_index = 7;                  // factors run from here
    int depth = 24;                       // M, last factor index
    std::vector<int> h_exponent;          // h_n = 2^{-h_exponent[n-6]}, n = 6..M
    std::vector<std::int64_t> zero_count; // p_n, n = 7..M
    std::int64_t monomial_power = 1;      // minimal N with (1 - h_6)^N < 1/2

    double h(int n) const;
    double r(int n) const { return 1.0 - h(n); }
    std::int64_t p(int n) const;

    Json to_json() const;
    static SlowBlaschkeSpec from_json(const Json& j);
};

/// chi(x) = sup_{t <= x} max{2 delta(t), sqrt(t)}. Monotone deltas use the
/// closed form; otherwise the sup is taken over a 2^12-point log grid.
double chi(const DecayFunction& delta, double x);

/// Minimality loop for p_n: smallest p with p^2 h^2 / (2e) > 2^{-n}.
std::int64_t minimal_zero_count(double h, int n);

/// Smallest N with (1 - h)^N < 1/2.
std::int64_t minimal_monomial_power(double h);

/// Runs the construction: h_n as the largest dyadic value with
/// chi(h_n) <= 2^{-n} below its predecessor, p_n by the minimality loop,
/// N from h_6. Throws NumericalError when the grid underflows before depth.
SlowBlaschkeSpec build_slow_blaschke(const DecayFunction& delta, int depth);

/// Truncated value z^N * prod_{n=7}^{M} B_n(z). Every omitted factor has
/// modulus <= 1 on the disk, so the truncated modulus bounds |B(z)| from
/// above and 1 - |truncation| >= delta(1 - |z|) certifies the full product.
Complex eval_slow_blaschke(const SlowBlaschkeSpec& spec, Complex z);

/// Boundary value at e^{2*pi*i*num/den} (exact phase arithmetic).
Complex eval_slow_blaschke_on_circle(const SlowBlaschkeSpec& spec,
                                     std::int64_t num, std::int64_t den);

} // namespace codiag
