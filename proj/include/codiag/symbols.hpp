#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "codiag/blaschke.hpp"
#include "codiag/jsonio.hpp"

namespace codiag {

enum class SymbolKind {
    Identity,
    Scaling,          // s*z, 0 < s < 1
    Monomial,         // z^k
    LinearFractional, // (a z + b)/(c z + d), verified self-map
    FiniteBlaschke,   // rotation * product of equidistributed factors
    SlowBlaschke,     // truncated product from a SlowBlaschkeSpec
    Punctured,        // exp(-(1+z)/(1-z)), image is the punctured disk
    ComposedSquare,   // ((w-a)/(1-conj(a)w))^2 after an inner symbol; eval only
};

struct Preimage {
    Complex z;
    int multiplicity = 1;
};

struct BoundaryValue {
    Complex value;
    bool converged = true;
};

/// Analytic self-map of the disk with evaluation, radial boundary values and,
/// for the algebraically solvable kinds, a preimage solver feeding N_phi.
class SymbolMap {
public:
    static SymbolMap identity();
    static SymbolMap scaling(double s);
    static SymbolMap monomial(int k);
    static SymbolMap linear_fractional(Complex a, Complex b, Complex c, Complex d);
    static SymbolMap finite_blaschke(std::vector<EquidistributedFactor> factors,
                                     double rotation = 0.0);
    static SymbolMap slow_blaschke(SlowBlaschkeSpec spec);
    static SymbolMap punctured();
    static SymbolMap composed_square(SymbolMap inner, Complex alpha);

    SymbolKind kind() const { return kind_; }
    Complex eval(Complex z) const;

    /// phi((1-eps) e^{i theta}) with a Cauchy check against eps/2; samples that
    /// move more than 1e-4 are flagged unconverged and keep the last computed
    /// value. The slow kind evaluates its closed form on the circle itself:
    /// at truncation degrees ~1e12 no representable radius resolves the limit.
    BoundaryValue radial_boundary_value(double theta, double eps = 1e-6) const;

    bool has_preimage_solver() const;
    /// All z in the disk with phi(z) = w, with multiplicity; residuals are
    /// polished below 1e-10. Throws NumericalError for kinds with no solver.
    std::vector<Preimage> preimages(Complex w) const;

    /// Closed form available on the unit circle itself (inner truncations).
    bool has_exact_boundary() const { return kind_ == SymbolKind::SlowBlaschke; }
    Complex boundary_grid_value(std::int64_t index, std::int64_t grid) const;

    /// Valence: number of preimages counted with multiplicity; -1 = infinite.
    std::int64_t degree_hint() const;

    std::string id() const;
    Json to_json() const;
    static SymbolMap from_json(const Json& j);

    // kind payload accessors used by reports/tests
    double scaling_factor() const { return s_; }
    int monomial_exponent() const { return k_; }
    const std::vector<EquidistributedFactor>& factors() const { return factors_; }
    const SlowBlaschkeSpec& slow_spec() const { return *slow_; }

private:
    SymbolMap() = default;
    Complex eval_finite_blaschke(Complex z) const;
    std::vector<Preimage> blaschke_preimages(Complex w) const;

    SymbolKind kind_ = SymbolKind::Identity;
    double s_ = 0.5;                       // scaling
    int k_ = 1;                            // monomial
    Complex a_{1, 0}, b_{0, 0}, c_{0, 0}, d_{1, 0};  // LFT
    std::vector<EquidistributedFactor> factors_;     // finite Blaschke
    double rotation_ = 0.0;
    std::shared_ptr<SlowBlaschkeSpec> slow_;
    std::shared_ptr<SymbolMap> inner_;     // composed kind
    Complex alpha_{0.3, 0.0};
};

} // namespace codiag
