#include "codiag/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "codiag/errors.hpp"
#include "codiag/quadrature.hpp"

namespace codiag {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {  // to [0, 2*pi)
    a = std::fmod(a, kTwoPi);
    return a < 0.0 ? a + kTwoPi : a;
}

// half-open dyadic bands [(2j-1), (2j+1)) * pi/2^n: assigning each angle to
// exactly one band keeps the level-n windows a true tiling, roundoff included
std::int64_t dyadic_band(double angle, int n) {
    const double width = std::ldexp(kTwoPi, -n);
    const double shifted = wrap_angle(angle + 0.5 * width);
    auto j = static_cast<std::int64_t>(shifted / width);
    const std::int64_t bands = std::int64_t{1} << n;
    return j >= bands ? bands - 1 : j;
}

} // namespace

CarlesonWindow CarlesonWindow::annular(Complex xi, double h) {
    if (!(h > 0.0 && h < 1.0)) throw ConfigError("window: need h in (0,1)");
    CarlesonWindow w;
    w.form_ = Form::Annular;
    w.xi_ = xi / std::abs(xi);
    w.h_ = h;
    return w;
}

CarlesonWindow CarlesonWindow::ball(Complex xi, double h) {
    if (!(h > 0.0 && h < 1.0)) throw ConfigError("window: need h in (0,1)");
    CarlesonWindow w;
    w.form_ = Form::Ball;
    w.xi_ = xi / std::abs(xi);
    w.h_ = h;
    return w;
}

CarlesonWindow CarlesonWindow::dyadic(int n, std::int64_t j) {
    if (n < 1 || j < 0 || j >= (std::int64_t{1} << n))
        throw ConfigError("window: dyadic indices out of range");
    CarlesonWindow w;
    w.form_ = Form::Dyadic;
    w.n_ = n;
    w.j_ = j;
    w.h_ = std::ldexp(1.0, -n);
    w.xi_ = std::polar(1.0, kTwoPi * static_cast<double>(j) / std::ldexp(1.0, n));
    return w;
}

CarlesonWindow CarlesonWindow::luecking(int n, std::int64_t j) {
    CarlesonWindow w = dyadic(n, j);
    w.form_ = Form::Luecking;
    return w;
}

bool CarlesonWindow::contains(Complex z) const {
    const double m = std::abs(z);
    switch (form_) {
        case Form::Annular:
            return m >= 1.0 - h_ &&
                   std::abs(std::arg(z * std::conj(xi_))) <= h_;
        case Form::Ball:
            return std::abs(z - xi_) <= h_;
        case Form::Dyadic: {
            if (m < 1.0 - h_ || m > 1.0 + 1e-9) return false;
            return dyadic_band(std::arg(z), n_) == j_;
        }
        case Form::Luecking: {
            if (m < 1.0 - h_ || m >= 1.0 - 0.5 * h_) return false;
            return dyadic_band(std::arg(z), n_) == j_;
        }
    }
    return false;
}

PullbackSample PullbackSample::build(const SymbolMap& phi, std::size_t samples,
                                     double eps) {
    if (samples < (1u << 10) || (samples & (samples - 1)) != 0)
        throw ConfigError("pullback: sample count must be a power of two >= 2^10");
    PullbackSample s;
    s.eps_ = eps;
    s.values_.resize(samples);
    s.unconverged_.assign(samples, 0);
    const bool exact = phi.has_exact_boundary();
    for (std::size_t i = 0; i < samples; ++i) {
        if (exact) {
            s.values_[i] = phi.boundary_grid_value(static_cast<std::int64_t>(i),
                                                   static_cast<std::int64_t>(samples));
        } else {
            const double theta = kTwoPi * static_cast<double>(i) / samples;
            const BoundaryValue bv = phi.radial_boundary_value(theta, eps);
            s.values_[i] = bv.value;
            s.unconverged_[i] = bv.converged ? 0 : 1;
        }
    }
    if (s.unconverged_fraction() > 0.01)
        throw NumericalError("pullback: " +
                             std::to_string(100.0 * s.unconverged_fraction()) +
                             "% of boundary samples unconverged");
    s.angle_.resize(samples);
    s.modulus_.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        s.angle_[i] = wrap_angle(std::arg(s.values_[i]));
        s.modulus_[i] = std::abs(s.values_[i]);
    }
    s.by_angle_.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) s.by_angle_[i] = static_cast<std::uint32_t>(i);
    std::sort(s.by_angle_.begin(), s.by_angle_.end(),
              [&](std::uint32_t a, std::uint32_t b) { return s.angle_[a] < s.angle_[b]; });
    return s;
}

double PullbackSample::unconverged_fraction() const {
    std::size_t k = 0;
    for (auto f : unconverged_) k += f;
    return static_cast<double>(k) / static_cast<double>(unconverged_.size());
}

Estimate PullbackSample::measure(const CarlesonWindow& w) const {
    std::size_t count = 0;
    for (const Complex& v : values_)
        if (w.contains(v)) ++count;
    const double p = static_cast<double>(count) / static_cast<double>(size());
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(size()))};
}

double PullbackSample::rho(double h, std::size_t centers) const {
    if (!(h > 0.0 && h < 1.0)) throw ConfigError("rho: need h in (0,1)");
    if (centers == 0)
        centers = static_cast<std::size_t>(std::ceil(8.0 * kPi / h));
    else if (static_cast<double>(centers) < 2.0 * kPi / h)
        throw ConfigError("rho: need at least 2*pi/h centers so windows overlap");
    // angles of samples that clear the radial cut, sorted
    std::vector<double> angs;
    angs.reserve(size());
    for (std::uint32_t idx : by_angle_)
        if (modulus_[idx] >= 1.0 - h) angs.push_back(angle_[idx]);
    if (angs.empty()) return 0.0;
    std::size_t best = 0;
    for (std::size_t g = 0; g < centers; ++g) {
        const double c = kTwoPi * static_cast<double>(g) / static_cast<double>(centers);
        double lo = c - h, hi = c + h;
        std::size_t count = 0;
        auto count_range = [&](double a, double b) {
            const auto first = std::lower_bound(angs.begin(), angs.end(), a);
            const auto last = std::upper_bound(angs.begin(), angs.end(), b);
            count += static_cast<std::size_t>(last - first);
        };
        if (lo < 0.0) {
            count_range(0.0, hi);
            count_range(lo + kTwoPi, kTwoPi);
        } else if (hi >= kTwoPi) {
            count_range(lo, kTwoPi);
            count_range(0.0, hi - kTwoPi);
        } else {
            count_range(lo, hi);
        }
        best = std::max(best, count);
    }
    return static_cast<double>(best) / static_cast<double>(size());
}

LueckingSums PullbackSample::luecking_sums(double p, int n_max) const {
    if (!(p > 0.0)) throw ConfigError("luecking: need p > 0");
    const int n_cap = static_cast<int>(std::log2(static_cast<double>(size()))) - 4;
    if (n_max < 1 || n_max > n_cap)
        throw ConfigError("luecking: n_max must be in [1, log2(M) - 4]");
    LueckingSums out;
    double acc = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const double level_h = std::ldexp(1.0, -n);
        const std::int64_t bands = std::int64_t{1} << n;
        std::vector<std::size_t> counts(static_cast<std::size_t>(bands), 0);
        for (std::size_t i = 0; i < size(); ++i) {
            if (modulus_[i] < 1.0 - level_h) continue;
            ++counts[static_cast<std::size_t>(dyadic_band(angle_[i], n))];
        }
        for (std::size_t j = 0; j < counts.size(); ++j) {
            if (counts[j] == 0) continue;
            if (counts[j] < 10) out.sparse_windows = true;
            const double mass = static_cast<double>(counts[j]) / static_cast<double>(size());
            acc += std::pow(std::ldexp(1.0, n) * mass, 0.5 * p);
        }
        out.partial.push_back(acc);
    }
    out.diverging = divergence_trend(out.partial);
    return out;
}

ClosedRangeResult PullbackSample::closed_range(std::span<const double> h_list,
                                               std::size_t centers) const {
    ClosedRangeResult out;
    out.c_est = std::numeric_limits<double>::infinity();
    for (double h : h_list) {
        if (h < 10.0 / static_cast<double>(size()))
            throw StatFloorError("closed-range: h below the resolution floor 10/M");
        const std::size_t g =
            centers ? centers : static_cast<std::size_t>(std::ceil(8.0 * kPi / h));
        double min_mass = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < g; ++k) {
            const Complex xi = std::polar(1.0, kTwoPi * static_cast<double>(k) /
                                                   static_cast<double>(g));
            min_mass = std::min(min_mass,
                                measure(CarlesonWindow::annular(xi, h)).value);
        }
        const double se = std::sqrt(min_mass * (1.0 - min_mass) /
                                    static_cast<double>(size()));
        out.per_h_min.push_back(min_mass / h);
        out.c_est = std::min(out.c_est, min_mass / h);
        out.stat_threshold = std::max(out.stat_threshold, 3.0 * se / h);
    }
    out.consistent = out.c_est > out.stat_threshold;
    return out;
}

double test_function_norm(std::int64_t N, double p) {
    if (N < 1 || !(p > 0.0)) throw ConfigError("test norm: need N >= 1 and p > 0");
    const double q = p * static_cast<double>(N);
    auto f = [q](double t) {
        const double c = std::cos(0.5 * t);
        if (c <= 0.0) return 0.0;
        return std::exp(q * std::log(c));
    };
    // even integrand
    return 2.0 * integrate(f, 0.0, kPi, 5e-12);
}

double wallis_norm(std::int64_t N) {
    // 2*pi*binom(2N,N)/4^N = 2*pi*prod_{k=1..N} (2k-1)/(2k)
    long double acc = 1.0L;
    for (std::int64_t k = 1; k <= N; ++k)
        acc *= static_cast<long double>(2 * k - 1) / static_cast<long double>(2 * k);
    return static_cast<double>(2.0L * 3.14159265358979323846264338328L * acc);
}

bool divergence_trend(std::span<const double> partial) {
    const std::size_t k = partial.size();
    if (k < 4) return false;
    const std::size_t mid = k / 2;
    const double base = partial[mid - 1];
    const double total = partial[k - 1];
    double beta_min = std::numeric_limits<double>::infinity();
    for (std::size_t n = mid; n < k; ++n) {
        const double beta = (partial[n] - base) / static_cast<double>(n - mid + 1);
        beta_min = std::min(beta_min, beta);
    }
    const double floor = 1e-9 + 0.01 * std::max(total, 0.0) / static_cast<double>(k);
    return beta_min > floor;
}

} // namespace codiag
