#pragma once

#include <complex>
#include <vector>

#include "codiag/symbols.hpp"

namespace codiag {

struct CountingValue {
    double value = 0.0;       // sum of mult * log(1/|z|) over disk preimages
    int preimage_count = 0;   // with multiplicity
    bool at_phi_zero = false; // w = phi(0): the definition excludes this point
    bool multiplicity_flagged = false;
};

/// N_phi(w). When w = phi(0) the preimage at the origin is skipped (its term
/// is infinite and the definition excludes the point) and the flag is set;
/// integrals ignore the single point anyway.
CountingValue counting_function(const SymbolMap& phi, Complex w);

struct WindowAverage {
    double average = 0.0;  // (1/A(S cap D)) * integral of N_phi
    double area = 0.0;
    bool converged = false;
    int level = 0;
};

/// Area average of N_phi over S(xi, h) ∩ 𝔻 against normalized area measure,
/// refined by level doubling to ~1e-3 relative.
WindowAverage window_average(const SymbolMap& phi, Complex xi, double h,
                             double rel_tol = 1e-3);

enum class LueckingForm {
    RatioLambda,  // [N/log(1/|z|)]^{p/2} (1-|z|)^{-2} dA
    ProofWeight,  // N^{p/2} (1-|z|)^{-p/2-2} dA
};

struct LueckingIntegralResult {
    std::vector<double> partial;  // I_k over {1/2 <= |z| <= 1 - 2^{-k}}, k = 2..depth
    bool diverging = false;
};

/// The counting-function annulus integral in both weights, restricted to
/// |z| >= 1/2 where log(1/|z|) and 1-|z| agree up to a factor in [1, 2 log 2].
LueckingIntegralResult luecking_integral(const SymbolMap& phi, double p, int depth,
                                         LueckingForm form);

struct SubmeanResult {
    double lhs = 0.0;   // N_phi(a)^q
    double rhs = 0.0;   // disk average of N_phi^q over D(a, r)
    double ratio = 0.0; // lhs / rhs; the constant C of the inequality is unknown
};

/// Sub-mean diagnostic for u = N_phi on D(a, r) ⊂ 𝔻 \ {0}; rejects disks
/// containing 0 or phi(0).
SubmeanResult submean_check(const SymbolMap& phi, Complex a, double r, double q);

} // namespace codiag
