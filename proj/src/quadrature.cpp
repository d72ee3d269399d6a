#include "codiag/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace codiag {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b,
                double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson(a, fa, b, fb, fm);
    return adaptive(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

DiskQuadResult disk_integral(const std::function<double(std::complex<double>)>& f,
                             std::complex<double> center, double radius,
                             double rel_tol, bool clip_unit, int max_level) {
    DiskQuadResult out;
    double prev_i = 0.0, prev_a = 0.0;
    for (int level = 0; level <= max_level; ++level) {
        const int nr = 16 << level;
        const int nt = 32 << level;
        double sum = 0.0, area = 0.0;
        const double dr = radius / nr;
        const double dt = 2.0 * std::numbers::pi / nt;
        for (int i = 0; i < nr; ++i) {
            const double rho = (i + 0.5) * dr;
            const double w = rho * dr * dt / std::numbers::pi;
            for (int j = 0; j < nt; ++j) {
                const double psi = (j + 0.5) * dt;
                const std::complex<double> z =
                    center + std::polar(rho, psi);
                if (clip_unit && std::abs(z) >= 1.0) continue;
                sum += w * f(z);
                area += w;
            }
        }
        out.integral = sum;
        out.area = area;
        out.level = level;
        if (level > 0) {
            const double scale = std::max({std::abs(sum), std::abs(prev_i), 1e-300});
            if (std::abs(sum - prev_i) <= rel_tol * scale &&
                std::abs(area - prev_a) <= rel_tol * std::max(area, 1e-300)) {
                out.converged = true;
                return out;
            }
        }
        prev_i = sum;
        prev_a = area;
    }
    return out;
}

DiskQuadResult annulus_integral(const std::function<double(std::complex<double>)>& f,
                                double r_lo, double r_hi, double rel_tol,
                                int max_level) {
    DiskQuadResult out;
    double prev_i = 0.0;
    for (int level = 0; level <= max_level; ++level) {
        const int nr = 16 << level;
        const int nt = 32 << level;
        double sum = 0.0, area = 0.0;
        const double dr = (r_hi - r_lo) / nr;
        const double dt = 2.0 * std::numbers::pi / nt;
        for (int i = 0; i < nr; ++i) {
            const double rho = r_lo + (i + 0.5) * dr;
            const double w = rho * dr * dt / std::numbers::pi;
            for (int j = 0; j < nt; ++j) {
                const double psi = (j + 0.5) * dt;
                sum += w * f(std::polar(rho, psi));
                area += w;
            }
        }
        out.integral = sum;
        out.area = area;
        out.level = level;
        if (level > 0) {
            const double scale = std::max({std::abs(sum), std::abs(prev_i), 1e-300});
            if (std::abs(sum - prev_i) <= rel_tol * scale) {
                out.converged = true;
                return out;
            }
        }
        prev_i = sum;
    }
    return out;
}

} // namespace codiag
