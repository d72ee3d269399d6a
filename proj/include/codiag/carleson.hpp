#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "codiag/symbols.hpp"

namespace codiag {

struct Estimate {
    double value = 0.0;
    double std_err = 0.0;
};

/// Window shapes on the closed disk. The annular window W(xi, h) follows the
/// printed closed conditions; dyadic windows are half-open in angle so that
/// the 2^n windows of level n tile the annulus exactly; Luecking windows
/// R_{n,j} are the disjoint radial refinements.
class CarlesonWindow {
public:
    enum class Form { Annular, Ball, Dyadic, Luecking };

    static CarlesonWindow annular(Complex xi, double h);  // W(xi, h)
    static CarlesonWindow ball(Complex xi, double h);     // S(xi, h)
    static CarlesonWindow dyadic(int n, std::int64_t j);  // W_{n,j}
    static CarlesonWindow luecking(int n, std::int64_t j);// R_{n,j}

    bool contains(Complex z) const;
    Form form() const { return form_; }
    double size() const { return h_; }
    Complex center() const { return xi_; }

private:
    Form form_ = Form::Annular;
    Complex xi_{1.0, 0.0};
    double h_ = 0.1;
    int n_ = 1;
    std::int64_t j_ = 0;
};

struct LueckingSums {
    std::vector<double> partial;  // S_n, n = 1..n_max
    bool diverging = false;
    bool sparse_windows = false;  // some nonempty window held < 10 samples
};

struct ClosedRangeResult {
    double c_est = 0.0;
    double stat_threshold = 0.0;  // 3 * max stderr / h over the sweep
    bool consistent = false;
    std::vector<double> per_h_min;  // min_xi mu(W)/h per h
};

/// Empirical pull-back of the boundary measure: M boundary samples
/// phi*((1-eps) e^{i theta_i}) on the uniform grid, queried by windows.
class PullbackSample {
public:
    /// M must be a power of two >= 2^10. Throws NumericalError when more than
    /// 1% of the samples fail the radial convergence check.
    static PullbackSample build(const SymbolMap& phi, std::size_t samples,
                                double eps = 1e-6);

    std::size_t size() const { return values_.size(); }
    double eps() const { return eps_; }
    double unconverged_fraction() const;
    const std::vector<Complex>& values() const { return values_; }
    const std::vector<std::uint8_t>& unconverged() const { return unconverged_; }

    /// Fraction of samples inside the window, with binomial standard error.
    Estimate measure(const CarlesonWindow& w) const;

    /// rho(h) = max over `centers` uniformly spaced centers (default
    /// ceil(8*pi/h)) of the W(xi, h) mass.
    double rho(double h, std::size_t centers = 0) const;

    /// Partial sums S_n of sum_j [2^n m(W_{n,j})]^{p/2}; requires
    /// n_max <= log2(M) - 4 so the finest level keeps ~16 samples per band.
    LueckingSums luecking_sums(double p, int n_max) const;

    /// c_est = min over h and centers of mu(W(xi,h))/h. Every h must be
    /// >= 10/M (statistical resolution floor).
    ClosedRangeResult closed_range(std::span<const double> h_list,
                                   std::size_t centers = 0) const;

private:
    std::vector<Complex> values_;
    std::vector<double> angle_;    // arg in [0, 2*pi)
    std::vector<double> modulus_;
    std::vector<std::uint8_t> unconverged_;
    std::vector<std::uint32_t> by_angle_;  // indices sorted by angle
    double eps_ = 1e-6;
};

/// Integral of |cos(t/2)|^{pN} over [-pi, pi] (plain dt), absolute error
/// <= 1e-10. For p = 2 it equals 2*pi*binom(2N, N)/4^N.
double test_function_norm(std::int64_t N, double p);

/// Exact p = 2 value via the binomial identity (long double arithmetic).
double wallis_norm(std::int64_t N);

/// Shared heuristic: "consistent with divergence" when the last half of the
/// partial sums grows along a positive linear trend. Never a proof.
bool divergence_trend(std::span<const double> partial);

} // namespace codiag
