#include "codiag/domains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "codiag/errors.hpp"

namespace codiag {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kRightCap = 1e8;  // finite stand-in for the n = 1 open end

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    return a < 0.0 ? a + kTwoPi : a;
}
} // namespace

// ---------------------------------------------------------------- DiskDomain

DiskDomain::DiskDomain(std::vector<DiskArc> arcs) : arcs_(std::move(arcs)) {}

bool DiskDomain::inside(Complex z) const { return std::abs(z) < 1.0; }

double DiskDomain::clearance(Complex z) const { return 1.0 - std::abs(z); }

WalkExit DiskDomain::classify_exit(Complex z) const {
    const Complex p = std::abs(z) == 0.0 ? Complex(1.0, 0.0) : z / std::abs(z);
    const double theta = wrap_angle(std::arg(p));
    for (const auto& arc : arcs_) {
        const bool in = arc.lo <= arc.hi
                            ? (theta >= arc.lo && theta < arc.hi)
                            : (theta >= arc.lo || theta < arc.hi);
        if (in) return {p, arc.label};
    }
    return {p, "other"};
}

std::pair<Complex, Complex> DiskDomain::sample_box() const {
    return {Complex(-1.0, -1.0), Complex(1.0, 1.0)};
}

// ------------------------------------------------------------ SlitDiskDomain

SlitDiskDomain::SlitDiskDomain(double x0, double x1) : slit_{{x0, 0.0}, {x1, 0.0}} {
    if (!(0.0 < x0 && x0 < x1 && x1 <= 1.0))
        throw ConfigError("slit domain: need 0 < x0 < x1 <= 1");
}

bool SlitDiskDomain::inside(Complex z) const {
    if (std::abs(z) >= 1.0) return false;
    return !(z.imag() == 0.0 && z.real() >= slit_.a.real() && z.real() <= slit_.b.real());
}

double SlitDiskDomain::clearance(Complex z) const {
    return std::min(1.0 - std::abs(z), slit_.distance(z));
}

WalkExit SlitDiskDomain::classify_exit(Complex z) const {
    const double d_slit = slit_.distance(z);
    const double d_circ = 1.0 - std::abs(z);
    if (d_slit <= d_circ) return {slit_.closest(z), "slit"};
    return {z / std::abs(z), "circle"};
}

std::pair<Complex, Complex> SlitDiskDomain::sample_box() const {
    return {Complex(-1.0, -1.0), Complex(1.0, 1.0)};
}

// ------------------------------------------------------------ HalfDiskDomain

bool HalfDiskDomain::inside(Complex z) const {
    return std::abs(z) < 1.0 && z.imag() > 0.0;
}

double HalfDiskDomain::clearance(Complex z) const {
    return std::min(1.0 - std::abs(z), z.imag());
}

WalkExit HalfDiskDomain::classify_exit(Complex z) const {
    if (z.imag() <= 1.0 - std::abs(z))
        return {Complex(std::clamp(z.real(), -1.0, 1.0), 0.0), "diameter"};
    return {z / std::abs(z), "arc"};
}

std::pair<Complex, Complex> HalfDiskDomain::sample_box() const {
    return {Complex(-1.0, 0.0), Complex(1.0, 1.0)};
}

// ----------------------------------------------------------- HalfPlaneDomain

HalfPlaneDomain::HalfPlaneDomain(std::vector<ImagInterval> intervals, double y_cap)
    : intervals_(std::move(intervals)), y_cap_(y_cap) {}

bool HalfPlaneDomain::inside(Complex z) const { return z.real() > 0.0; }

double HalfPlaneDomain::clearance(Complex z) const { return z.real(); }

WalkExit HalfPlaneDomain::classify_exit(Complex z) const {
    const Complex p(0.0, z.imag());
    if (std::abs(z.imag()) >= y_cap_) return {p, "far"};
    for (const auto& iv : intervals_)
        if (z.imag() >= iv.lo && z.imag() < iv.hi) return {p, iv.label};
    return {p, "other"};
}

std::pair<Complex, Complex> HalfPlaneDomain::sample_box() const {
    return {Complex(0.0, -10.0), Complex(10.0, 10.0)};
}

// --------------------------------------------------------------- BarrierShape

double barrier_b(int n) { return 1.0 / (kFourPi * n); }
double barrier_mid(int n) { return 1.0 / (kFourPi * n - kTwoPi); }

BarrierShape make_barrier(int n, double delta) {
    if (n < 1) throw ConfigError("barrier: index must be >= 1");
    BarrierShape s;
    s.index = n;
    s.delta = delta;
    s.altitude = kFourPi * n;
    s.mid = barrier_mid(n);
    s.left_end = barrier_b(n);
    s.right_end = n == 1 ? kRightCap : barrier_b(n - 1);
    s.foot_plus = s.mid - delta;
    s.foot_minus = s.mid + delta;
    if (!(s.left_end < s.foot_plus && s.foot_minus < s.right_end))
        throw ConfigError("barrier: hole does not fit inside the altitude slice");

    // slant of slope -2 from the left foot meets y = 1/x
    {
        const double S = s.altitude + 2.0 * s.foot_plus;
        const double x = 2.0 / (S + std::sqrt(S * S - 8.0));
        s.c_plus = Complex(x, 1.0 / x);
    }
    // slant of slope +2 from the right foot meets y = 1/x + 4*pi
    {
        const double S = s.altitude - kFourPi - 2.0 * s.foot_minus;
        const double x = 2.0 / (S + std::sqrt(S * S + 8.0));
        s.c_minus = Complex(x, s.altitude + 2.0 * (x - s.foot_minus));
    }
    // bullet-list constraint: 4(n+1)pi - Im c_n^{+-} > 2 pi
    const double next = kFourPi * (n + 1);
    if (!(next - s.c_plus.imag() > kTwoPi) || !(next - s.c_minus.imag() > kTwoPi))
        throw NumericalError("barrier: slant tip rises above the admissible band");
    if (!(s.c_plus.real() < s.foot_plus) || !(s.c_minus.real() > s.foot_minus))
        throw NumericalError("barrier: degenerate sword shape");
    return s;
}

bool BarrierShape::in_plus(Complex z) const {
    const double x = z.real(), y = z.imag();
    if (y < altitude || y > c_plus.imag()) return false;
    return x >= 1.0 / y && x <= foot_plus - 0.5 * (y - altitude);
}

bool BarrierShape::in_minus(Complex z) const {
    const double x = z.real(), y = z.imag();
    if (y < altitude || y > c_minus.imag()) return false;
    if (x < foot_minus + 0.5 * (y - altitude)) return false;
    const double over = y - kFourPi;
    return over <= 0.0 || x <= 1.0 / over;
}

Segment BarrierShape::bottom_plus() const {
    return {Complex(left_end, altitude), Complex(foot_plus, altitude)};
}
Segment BarrierShape::slant_plus() const {
    return {Complex(foot_plus, altitude), c_plus};
}
Segment BarrierShape::bottom_minus() const {
    return {Complex(foot_minus, altitude), Complex(right_end, altitude)};
}
Segment BarrierShape::slant_minus() const {
    return {Complex(foot_minus, altitude), c_minus};
}

// -------------------------------------------------------------- BarrierDomain

BarrierDomain::BarrierDomain(Kind kind, int n, std::vector<double> deltas,
                             double y_cap)
    : kind_(kind), n_(n), y_cap_(y_cap) {
    switch (kind_) {
        case Kind::RegionR:
            break;
        case Kind::OmegaN: {
            if (n < 1 || deltas.size() < static_cast<std::size_t>(n))
                throw ConfigError("omega_n: need deltas for barriers 1..n");
            for (int j = 1; j < n; ++j)
                shapes_.push_back(make_barrier(j, deltas[static_cast<std::size_t>(j - 1)]));
            top_altitude_ = kFourPi * n;
            hole_mid_ = barrier_mid(n);
            hole_delta_ = deltas[static_cast<std::size_t>(n - 1)];
            y_cap_ = std::max(y_cap_, top_altitude_ + 1.0);
            break;
        }
        case Kind::Omega: {
            for (int j = 1; j <= static_cast<int>(deltas.size()); ++j)
                shapes_.push_back(make_barrier(j, deltas[static_cast<std::size_t>(j - 1)]));
            // region above the last built barrier is not modeled; cap there
            y_cap_ = std::min(y_cap_, kFourPi * (static_cast<double>(deltas.size()) + 1.0));
            break;
        }
    }
}

bool BarrierDomain::inside(Complex z) const {
    const double x = z.real(), y = z.imag();
    if (!(x > 0.0)) return false;
    const double floor_y = 1.0 / x;
    if (!(y > floor_y && y < floor_y + kFourPi)) return false;
    if (kind_ == Kind::OmegaN && !(y < top_altitude_)) return false;
    for (const auto& s : shapes_) {
        if (y < s.altitude || y > std::max(s.c_plus.imag(), s.c_minus.imag()))
            continue;
        if (s.in_plus(z) || s.in_minus(z)) return false;
    }
    return true;
}

double BarrierDomain::clearance(Complex z) const {
    double d = std::min(lower_hyperbola_clearance(z), upper_hyperbola_clearance(z));
    if (kind_ == Kind::OmegaN) d = std::min(d, top_altitude_ - z.imag());
    for (const auto& s : shapes_) {
        // curved sword sides ride on the hyperbolas, already accounted for
        d = std::min(d, s.bottom_plus().distance(z));
        d = std::min(d, s.slant_plus().distance(z));
        d = std::min(d, s.bottom_minus().distance(z));
        d = std::min(d, s.slant_minus().distance(z));
    }
    return std::max(d, 0.0);
}

WalkExit BarrierDomain::classify_exit(Complex z) const {
    if (z.imag() >= y_cap_) return {z, "far"};
    WalkExit best{project_lower_hyperbola(z), "lower"};
    double best_d = std::abs(z - best.point);
    auto consider = [&](Complex p, std::string label) {
        const double d = std::abs(z - p);
        if (d < best_d) {
            best_d = d;
            best = {p, std::move(label)};
        }
    };
    consider(project_upper_hyperbola(z), "upper");
    if (kind_ == Kind::OmegaN) {
        const Segment top{Complex(barrier_b(n_), top_altitude_),
                          Complex(n_ == 1 ? kRightCap : barrier_b(n_ - 1), top_altitude_)};
        const Complex p = top.closest(z);
        consider(p, std::abs(p.real() - hole_mid_) <= hole_delta_ ? "hole" : "top");
    }
    for (const auto& s : shapes_) {
        const std::string tag = std::to_string(s.index);
        consider(s.bottom_plus().closest(z), "barrier" + tag + "+");
        consider(s.slant_plus().closest(z), "barrier" + tag + "+");
        consider(s.bottom_minus().closest(z), "barrier" + tag + "-");
        consider(s.slant_minus().closest(z), "barrier" + tag + "-");
    }
    return best;
}

std::pair<Complex, Complex> BarrierDomain::sample_box() const {
    const double top = kind_ == Kind::OmegaN ? top_altitude_ : y_cap_;
    return {Complex(1e-6, 1e-6), Complex(30.0, top)};
}

std::string BarrierDomain::name() const {
    switch (kind_) {
        case Kind::RegionR: return "regionR";
        case Kind::OmegaN: return "omega_" + std::to_string(n_);
        case Kind::Omega: return "omega";
    }
    return "?";
}

} // namespace codiag
