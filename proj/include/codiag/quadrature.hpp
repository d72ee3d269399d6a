#pragma once

#include <complex>
#include <functional>

namespace codiag {

/// Adaptive Simpson on [a, b] to absolute tolerance `abs_tol`.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth = 60);

struct DiskQuadResult {
    double integral = 0.0;  // against normalized area dA = dx dy / pi
    double area = 0.0;      // A(region), same normalization
    int level = 0;
    bool converged = false;
};

/// Tensor midpoint quadrature of f over D(center, radius) ∩ 𝔻, normalized
/// area measure, refined by level doubling until successive levels agree to
/// `rel_tol` (relative). `clip_unit` ? intersect with the unit disk : use the
/// full disk D(center, radius).
DiskQuadResult disk_integral(const std::function<double(std::complex<double>)>& f,
                             std::complex<double> center, double radius,
                             double rel_tol, bool clip_unit = true,
                             int max_level = 9);

/// Integral of f over the annulus r_lo <= |z| <= r_hi against dA = dx dy / pi,
/// tensor midpoint with level doubling to `rel_tol`.
DiskQuadResult annulus_integral(const std::function<double(std::complex<double>)>& f,
                                double r_lo, double r_hi, double rel_tol,
                                int max_level = 9);

} // namespace codiag
