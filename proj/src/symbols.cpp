#include "codiag/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "codiag/errors.hpp"
#include "codiag/roots.hpp"

namespace codiag {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInsideTol = 1.0 - 1e-14;  // boundary-grazing root filter
}

SymbolMap SymbolMap::identity() { return SymbolMap(); }

SymbolMap SymbolMap::scaling(double s) {
    if (!(s > 0.0 && s < 1.0)) throw ConfigError("symbol: scaling needs 0 < s < 1");
    SymbolMap m;
    m.kind_ = SymbolKind::Scaling;
    m.s_ = s;
    return m;
}

SymbolMap SymbolMap::monomial(int k) {
    if (k < 1) throw ConfigError("symbol: monomial needs k >= 1");
    SymbolMap m;
    m.kind_ = SymbolKind::Monomial;
    m.k_ = k;
    return m;
}

SymbolMap SymbolMap::linear_fractional(Complex a, Complex b, Complex c, Complex d) {
    SymbolMap m;
    m.kind_ = SymbolKind::LinearFractional;
    m.a_ = a; m.b_ = b; m.c_ = c; m.d_ = d;
    if (std::abs(a * d - b * c) < 1e-14)
        throw ConfigError("symbol: degenerate linear-fractional map");
    if (std::abs(c) > 0.0 && std::abs(d / c) <= 1.0 + 1e-12)
        throw ConfigError("symbol: linear-fractional pole inside the closed disk");
    // self-map validation on a 2^10 boundary grid
    for (int j = 0; j < (1 << 10); ++j) {
        const Complex z = std::polar(1.0, kTwoPi * j / (1 << 10));
        if (std::abs(m.eval(z)) > 1.0 + 1e-9)
            throw ConfigError("symbol: linear-fractional map is not a self-map");
    }
    return m;
}

SymbolMap SymbolMap::finite_blaschke(std::vector<EquidistributedFactor> factors,
                                     double rotation) {
    if (factors.empty()) throw ConfigError("symbol: finite Blaschke needs factors");
    for (const auto& f : factors)
        if (f.p < 1 || !(f.r > 0.0 && f.r < 1.0))
            throw ConfigError("symbol: bad Blaschke factor");
    SymbolMap m;
    m.kind_ = SymbolKind::FiniteBlaschke;
    m.factors_ = std::move(factors);
    m.rotation_ = rotation;
    return m;
}

SymbolMap SymbolMap::slow_blaschke(SlowBlaschkeSpec spec) {
    SymbolMap m;
    m.kind_ = SymbolKind::SlowBlaschke;
    m.slow_ = std::make_shared<SlowBlaschkeSpec>(std::move(spec));
    return m;
}

SymbolMap SymbolMap::punctured() {
    SymbolMap m;
    m.kind_ = SymbolKind::Punctured;
    return m;
}

SymbolMap SymbolMap::composed_square(SymbolMap inner, Complex alpha) {
    if (!(std::abs(alpha) > 0.0 && std::abs(alpha) < 1.0))
        throw ConfigError("symbol: composed kind needs alpha in the punctured disk");
    SymbolMap m;
    m.kind_ = SymbolKind::ComposedSquare;
    m.inner_ = std::make_shared<SymbolMap>(std::move(inner));
    m.alpha_ = alpha;
    return m;
}

Complex SymbolMap::eval_finite_blaschke(Complex z) const {
    Complex acc = std::polar(1.0, rotation_);
    for (const auto& f : factors_) acc *= eval_factor(f, z);
    return acc;
}

Complex SymbolMap::eval(Complex z) const {
    switch (kind_) {
        case SymbolKind::Identity: return z;
        case SymbolKind::Scaling: return s_ * z;
        case SymbolKind::Monomial: {
            Complex acc = 1.0;
            for (int i = 0; i < k_; ++i) acc *= z;
            return acc;
        }
        case SymbolKind::LinearFractional:
            return (a_ * z + b_) / (c_ * z + d_);
        case SymbolKind::FiniteBlaschke:
            return eval_finite_blaschke(z);
        case SymbolKind::SlowBlaschke:
            return eval_slow_blaschke(*slow_, z);
        case SymbolKind::Punctured:
            return std::exp(-(1.0 + z) / (1.0 - z));
        case SymbolKind::ComposedSquare: {
            const Complex w = inner_->eval(z);
            const Complex b = (w - alpha_) / (1.0 - std::conj(alpha_) * w);
            return b * b;
        }
    }
    return z;
}

BoundaryValue SymbolMap::radial_boundary_value(double theta, double eps) const {
    if (!(eps > 0.0 && eps <= 1e-3))
        throw ConfigError("symbol: boundary radius offset must be in (0, 1e-3]");
    if (has_exact_boundary())
        return {eval_slow_blaschke_on_circle(
                    *slow_,
                    static_cast<std::int64_t>(std::llround(theta / kTwoPi * (1ll << 40))),
                    1ll << 40),
                true};
    const Complex v1 = eval(std::polar(1.0 - eps, theta));
    const Complex v2 = eval(std::polar(1.0 - 0.5 * eps, theta));
    const bool converged = std::abs(v1 - v2) <= 1e-4;
    return {converged ? v1 : v2, converged};
}

Complex SymbolMap::boundary_grid_value(std::int64_t index, std::int64_t grid) const {
    if (kind_ != SymbolKind::SlowBlaschke)
        throw NumericalError("symbol: no exact boundary values for this kind");
    return eval_slow_blaschke_on_circle(*slow_, index, grid);
}

bool SymbolMap::has_preimage_solver() const {
    switch (kind_) {
        case SymbolKind::Identity:
        case SymbolKind::Scaling:
        case SymbolKind::Monomial:
        case SymbolKind::LinearFractional:
        case SymbolKind::FiniteBlaschke:
            return true;
        default:
            return false;
    }
}

std::vector<Preimage> SymbolMap::blaschke_preimages(Complex w) const {
    // rotation * prod (z^p - c_i) - w * prod (c_i z^p - 1) = 0, c_i = r_i^p
    std::vector<Complex> num{std::polar(1.0, rotation_)};
    std::vector<Complex> den{1.0};
    auto mul_binomial = [](std::vector<Complex> poly, std::int64_t p, Complex c0,
                           Complex cp) {
        // multiply by (c0 + cp z^p)
        std::vector<Complex> out(poly.size() + static_cast<std::size_t>(p), 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            out[i] += poly[i] * c0;
            out[i + static_cast<std::size_t>(p)] += poly[i] * cp;
        }
        return out;
    };
    for (const auto& f : factors_) {
        const double rp = std::exp(static_cast<double>(f.p) * std::log(f.r));
        num = mul_binomial(std::move(num), f.p, -rp, 1.0);
        den = mul_binomial(std::move(den), f.p, -1.0, rp);
    }
    std::vector<Complex> poly(std::max(num.size(), den.size()), 0.0);
    for (std::size_t i = 0; i < num.size(); ++i) poly[i] += num[i];
    for (std::size_t i = 0; i < den.size(); ++i) poly[i] -= w * den[i];

    std::vector<Preimage> out;
    for (Complex z : polynomial_roots(std::move(poly))) {
        // Newton polish against phi itself
        for (int it = 0; it < 6; ++it) {
            const Complex fz = eval_finite_blaschke(z) - w;
            if (std::abs(fz) <= 1e-13) break;
            const Complex dz = (eval_finite_blaschke(z + 1e-7) -
                                eval_finite_blaschke(z - 1e-7)) / 2e-7;
            if (std::abs(dz) < 1e-300) break;
            z -= fz / dz;
        }
        if (std::abs(z) < kInsideTol) out.push_back({z, 1});
    }
    // merge numerically coincident roots into multiplicities
    std::vector<Preimage> merged;
    for (const auto& pre : out) {
        bool found = false;
        for (auto& m : merged) {
            if (std::abs(m.z - pre.z) < 1e-7) {
                ++m.multiplicity;
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(pre);
    }
    return merged;
}

std::vector<Preimage> SymbolMap::preimages(Complex w) const {
    if (std::abs(w) >= 1.0) throw ConfigError("symbol: preimage target must be in the disk");
    switch (kind_) {
        case SymbolKind::Identity:
            return {{w, 1}};
        case SymbolKind::Scaling: {
            const Complex z = w / s_;
            if (std::abs(z) < kInsideTol) return {{z, 1}};
            return {};
        }
        case SymbolKind::Monomial: {
            if (w == Complex(0.0)) return {{Complex(0.0), k_}};
            const double rho = std::pow(std::abs(w), 1.0 / k_);
            const double base = std::arg(w) / k_;
            std::vector<Preimage> out;
            for (int j = 0; j < k_; ++j) {
                const Complex z = std::polar(rho, base + kTwoPi * j / k_);
                if (std::abs(z) < kInsideTol) out.push_back({z, 1});
            }
            return out;
        }
        case SymbolKind::LinearFractional: {
            const Complex denom = a_ - w * c_;
            if (std::abs(denom) < 1e-300) return {};
            const Complex z = (w * d_ - b_) / denom;
            if (std::abs(z) < kInsideTol) return {{z, 1}};
            return {};
        }
        case SymbolKind::FiniteBlaschke:
            return blaschke_preimages(w);
        default:
            throw NumericalError("symbol: no preimage solver for this kind");
    }
}

std::int64_t SymbolMap::degree_hint() const {
    switch (kind_) {
        case SymbolKind::Identity:
        case SymbolKind::Scaling:
        case SymbolKind::LinearFractional:
            return 1;
        case SymbolKind::Monomial:
            return k_;
        case SymbolKind::FiniteBlaschke: {
            std::int64_t d = 0;
            for (const auto& f : factors_) d += f.p;
            return d;
        }
        case SymbolKind::SlowBlaschke: {
            std::int64_t d = slow_->monomial_power;
            for (int n = slow_->first_index; n <= slow_->depth; ++n) d += slow_->p(n);
            return d;
        }
        case SymbolKind::Punctured:
            return -1;
        case SymbolKind::ComposedSquare: {
            const std::int64_t inner = inner_->degree_hint();
            return inner < 0 ? -1 : 2 * inner;
        }
    }
    return -1;
}

std::string SymbolMap::id() const {
    switch (kind_) {
        case SymbolKind::Identity: return "identity";
        case SymbolKind::Scaling: return "scaling:" + format17(s_);
        case SymbolKind::Monomial: return "monomial:" + std::to_string(k_);
        case SymbolKind::LinearFractional: return "lft";
        case SymbolKind::FiniteBlaschke:
            return "blaschke:d" + std::to_string(degree_hint());
        case SymbolKind::SlowBlaschke:
            return "slow:M" + std::to_string(slow_->depth);
        case SymbolKind::Punctured: return "punctured";
        case SymbolKind::ComposedSquare: return "composed(" + inner_->id() + ")";
    }
    return "?";
}

Json SymbolMap::to_json() const {
    Json j;
    switch (kind_) {
        case SymbolKind::Identity:
            j["kind"] = "identity";
            break;
        case SymbolKind::Scaling:
            j["kind"] = "scaling";
            j["s"] = s_;
            break;
        case SymbolKind::Monomial:
            j["kind"] = "monomial";
            j["k"] = k_;
            break;
        case SymbolKind::LinearFractional:
            j["kind"] = "lft";
            j["a"] = {a_.real(), a_.imag()};
            j["b"] = {b_.real(), b_.imag()};
            j["c"] = {c_.real(), c_.imag()};
            j["d"] = {d_.real(), d_.imag()};
            break;
        case SymbolKind::FiniteBlaschke: {
            j["kind"] = "blaschke";
            Json fs = Json::array();
            for (const auto& f : factors_) fs.push_back({{"p", f.p}, {"r", f.r}});
            j["factors"] = fs;
            j["rotation"] = rotation_;
            break;
        }
        case SymbolKind::SlowBlaschke:
            j["kind"] = "slow";
            j["spec"] = slow_->to_json();
            break;
        case SymbolKind::Punctured:
            j["kind"] = "punctured";
            break;
        case SymbolKind::ComposedSquare:
            j["kind"] = "composed";
            j["alpha"] = {alpha_.real(), alpha_.imag()};
            j["inner"] = inner_->to_json();
            break;
    }
    return j;
}

namespace {
Complex complex_of(const Json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}
} // namespace

SymbolMap SymbolMap::from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("symbol: spec needs a \"kind\" key");
    const std::string kind = j.at("kind").get<std::string>();
    static const std::vector<std::string> known{
        "kind", "s", "k", "a", "b", "c", "d", "factors", "rotation",
        "spec", "alpha", "inner"};
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("symbol: unknown key \"" + key + "\"");
    if (kind == "identity") return identity();
    if (kind == "scaling") return scaling(j.at("s").get<double>());
    if (kind == "monomial") return monomial(j.at("k").get<int>());
    if (kind == "lft")
        return linear_fractional(complex_of(j.at("a")), complex_of(j.at("b")),
                                 complex_of(j.at("c")), complex_of(j.at("d")));
    if (kind == "blaschke") {
        std::vector<EquidistributedFactor> fs;
        for (const auto& f : j.at("factors"))
            fs.push_back({f.at("p").get<std::int64_t>(), f.at("r").get<double>()});
        const double rot = j.contains("rotation") ? j.at("rotation").get<double>() : 0.0;
        return finite_blaschke(std::move(fs), rot);
    }
    if (kind == "slow") return slow_blaschke(SlowBlaschkeSpec::from_json(j.at("spec")));
    if (kind == "punctured") return punctured();
    if (kind == "composed")
        return composed_square(from_json(j.at("inner")), complex_of(j.at("alpha")));
    throw ConfigError("symbol: unknown kind \"" + kind + "\"");
}

} // namespace codiag
