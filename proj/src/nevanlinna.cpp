#include "codiag/nevanlinna.hpp"

#include <cmath>

#include "codiag/carleson.hpp"  // divergence_trend
#include "codiag/errors.hpp"
#include "codiag/quadrature.hpp"

namespace codiag {

CountingValue counting_function(const SymbolMap& phi, Complex w) {
    CountingValue out;
    const Complex at_zero = phi.eval(Complex(0.0));
    for (const Preimage& pre : phi.preimages(w)) {
        const double m = std::abs(pre.z);
        if (pre.multiplicity > 1) out.multiplicity_flagged = true;
        if (m < 1e-14 && std::abs(w - at_zero) < 1e-12) {
            out.at_phi_zero = true;  // excluded point, term would be infinite
            continue;
        }
        out.value += pre.multiplicity * std::log(1.0 / m);
        out.preimage_count += pre.multiplicity;
    }
    if (std::abs(w - at_zero) < 1e-14) out.at_phi_zero = true;
    return out;
}

WindowAverage window_average(const SymbolMap& phi, Complex xi, double h,
                             double rel_tol) {
    if (!(h >= std::ldexp(1.0, -16)))
        throw ConfigError("window average: h must be >= 2^-16");
    xi /= std::abs(xi);
    auto f = [&](Complex z) { return counting_function(phi, z).value; };
    const DiskQuadResult q = disk_integral(f, xi, h, rel_tol, /*clip_unit=*/true);
    WindowAverage out;
    out.area = q.area;
    out.average = q.area > 0.0 ? q.integral / q.area : 0.0;
    out.converged = q.converged;
    out.level = q.level;
    return out;
}

LueckingIntegralResult luecking_integral(const SymbolMap& phi, double p, int depth,
                                         LueckingForm form) {
    if (!(p > 0.0) || depth < 3)
        throw ConfigError("luecking integral: need p > 0 and depth >= 3");
    auto integrand = [&](Complex z) {
        const double m = std::abs(z);
        const double n = counting_function(phi, z).value;
        if (n <= 0.0) return 0.0;
        if (form == LueckingForm::RatioLambda) {
            const double ratio = n / std::log(1.0 / m);
            return std::pow(ratio, 0.5 * p) / ((1.0 - m) * (1.0 - m));
        }
        return std::pow(n, 0.5 * p) * std::pow(1.0 - m, -0.5 * p - 2.0);
    };
    LueckingIntegralResult out;
    double acc = 0.0;
    // shells between 1 - 2^{-j} and 1 - 2^{-j-1}; I_k accumulates j < k
    for (int j = 1; j < depth; ++j) {
        const double lo = 1.0 - std::ldexp(1.0, -j);
        const double hi = 1.0 - std::ldexp(1.0, -j - 1);
        const DiskQuadResult q = annulus_integral(integrand, lo, hi, 1e-3);
        acc += q.integral;
        out.partial.push_back(acc);  // index k-2 holds I_k, k = j+1
    }
    out.diverging = divergence_trend(out.partial);
    return out;
}

SubmeanResult submean_check(const SymbolMap& phi, Complex a, double r, double q) {
    if (!(q > 0.0)) throw ConfigError("submean: need q > 0");
    if (std::abs(a) + r >= 1.0 - 1e-9 || std::abs(a) <= r)
        throw ConfigError("submean: disk must sit inside the punctured unit disk");
    const Complex phi0 = phi.eval(Complex(0.0));
    if (std::abs(a - phi0) <= r)
        throw ConfigError("submean: disk contains phi(0), where N_phi is excluded");
    auto f = [&](Complex z) {
        const double n = counting_function(phi, z).value;
        return n <= 0.0 ? 0.0 : std::pow(n, q);
    };
    const DiskQuadResult quad = disk_integral(f, a, r, 1e-4, /*clip_unit=*/false);
    SubmeanResult out;
    out.lhs = std::pow(counting_function(phi, a).value, q);
    out.rhs = quad.area > 0.0 ? quad.integral / quad.area : 0.0;
    out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
    return out;
}

} // namespace codiag
