#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "codiag/jsonio.hpp"

namespace codiag {

enum class OrliczFamily { Power, ExpType, Table };

/// Convex nondecreasing gauge Psi with Psi(0) = 0 and Psi(x) -> inf.
/// Families: x^p (p >= 1), exp(x^a) - 1 (a >= 1), and user tables interpolated
/// linearly in log-log space.
class OrliczFunction {
public:
    static OrliczFunction power(double p);
    static OrliczFunction exp_type(double a);
    /// Strictly increasing (x, Psi(x)) pairs, x > 0. Flat or non-convex tables
    /// are rejected rather than interpreted.
    static OrliczFunction table(std::vector<std::pair<double, double>> points);

    double operator()(double x) const;

    /// Left-continuous generalized inverse via monotone bracketing and
    /// bisection: |Psi(x) - y| <= 1e-10 * max(1, y). inverse(0) = 0 and the
    /// +inf sentinel maps to +inf.
    double inverse(double y) const;

    OrliczFamily family() const { return family_; }
    double parameter() const { return param_; }
    std::string id() const;

    Json to_json() const;
    static OrliczFunction from_json(const Json& j);

private:
    OrliczFunction() = default;

    OrliczFamily family_ = OrliczFamily::Power;
    double param_ = 2.0;
    // table family: log-log nodes
    std::vector<double> log_x_, log_y_;
};

OrliczFunction make_orlicz(const std::string& family, double parameter);

enum class DecayProvenance { FromPsi, User };

/// delta: (0,1) -> (0, 1/2], decreasing to 0 at 0. Values above 1/2 are
/// clamped; the small-t behaviour, which is all the construction uses, is
/// untouched by the clamp.
class DecayFunction {
public:
    DecayFunction(std::function<double(double)> raw, DecayProvenance provenance,
                  bool monotone);

    double operator()(double t) const;
    double unclamped(double t) const { return raw_(t); }
    bool monotone() const { return monotone_; }
    DecayProvenance provenance() const { return provenance_; }

private:
    std::function<double(double)> raw_;
    DecayProvenance provenance_;
    bool monotone_;
};

/// delta(t) = min(1/2, 1 / Psi(sqrt(Psi^{-1}(1/t)))). Satisfies
/// Psi^{-1}(1/delta(t)) / Psi^{-1}(1/t) = 1/sqrt(Psi^{-1}(1/t)) -> 0.
DecayFunction delta_from_psi(const OrliczFunction& psi);

} // namespace codiag
