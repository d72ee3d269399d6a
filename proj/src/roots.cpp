#include "codiag/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "codiag/errors.hpp"

namespace codiag {

namespace {

using C = std::complex<double>;

// p(z) and p'(z) by Horner
std::pair<C, C> eval_with_derivative(const std::vector<C>& c, C z) {
    C p = c.back(), dp = 0.0;
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
    return {p, dp};
}

} // namespace

std::vector<C> polynomial_roots(std::vector<C> coeffs) {
    // trim numerically-zero leading coefficients
    double cmax = 0.0;
    for (const C& c : coeffs) cmax = std::max(cmax, std::abs(c));
    if (cmax == 0.0) throw NumericalError("roots: zero polynomial");
    while (coeffs.size() > 1 && std::abs(coeffs.back()) <= 1e-14 * cmax)
        coeffs.pop_back();
    const std::size_t d = coeffs.size() - 1;
    std::vector<C> roots;
    if (d == 0) return roots;

    // roots at the origin come from trailing zeros
    std::size_t lead0 = 0;
    while (lead0 < d && std::abs(coeffs[lead0]) == 0.0) ++lead0;
    for (std::size_t i = 0; i < lead0; ++i) roots.push_back(0.0);
    if (lead0 > 0) coeffs.erase(coeffs.begin(), coeffs.begin() + lead0);
    const std::size_t n = coeffs.size() - 1;
    if (n == 0) return roots;
    if (n == 1) {
        roots.push_back(-coeffs[0] / coeffs[1]);
        return roots;
    }

    // initial guesses on a circle sized by the coefficient ratio
    double r0 = std::pow(std::abs(coeffs[0] / coeffs[n]), 1.0 / n);
    if (!(r0 > 1e-12) || !std::isfinite(r0)) r0 = 0.5;
    std::vector<C> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double th = 2.0 * std::numbers::pi * k / n + 0.40;
        z[k] = std::polar(r0, th);
    }

    bool converged = false;
    for (int it = 0; it < 400 && !converged; ++it) {
        converged = true;
        for (std::size_t i = 0; i < n; ++i) {
            auto [p, dp] = eval_with_derivative(coeffs, z[i]);
            if (std::abs(p) == 0.0) continue;
            C w = (dp == C(0.0)) ? C(1e-12) : p / dp;
            C s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            const C denom = 1.0 - w * s;
            const C delta = (std::abs(denom) < 1e-300) ? w : w / denom;
            z[i] -= delta;
            if (std::abs(delta) > 1e-13 * (1.0 + std::abs(z[i]))) converged = false;
        }
    }
    if (!converged) throw NumericalError("roots: Aberth iteration stalled");

    for (std::size_t i = 0; i < n; ++i) {
        for (int it = 0; it < 8; ++it) {
            auto [p, dp] = eval_with_derivative(coeffs, z[i]);
            if (std::abs(dp) < 1e-300) break;
            const C step = p / dp;
            z[i] -= step;
            if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z[i]))) break;
        }
        roots.push_back(z[i]);
    }
    return roots;
}

} // namespace codiag
