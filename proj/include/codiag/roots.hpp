#pragma once

#include <complex>
#include <vector>

namespace codiag {

/// All complex roots of c[0] + c[1] z + ... + c[d] z^d, d >= 1, via
/// Aberth-Ehrlich iteration followed by a Newton polish. Deterministic
/// (fixed initial configuration). Throws NumericalError if the iteration
/// stalls.
std::vector<std::complex<double>> polynomial_roots(
    std::vector<std::complex<double>> coeffs);

} // namespace codiag
