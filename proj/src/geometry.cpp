#include "codiag/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace codiag {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
}

Complex Segment::closest(Complex z) const {
    const Complex u = b - a;
    const double len2 = std::norm(u);
    if (len2 == 0.0) return a;
    double t = ((z - a) * std::conj(u)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return a + t * u;
}

double Segment::distance(Complex z) const { return std::abs(z - closest(z)); }

double lower_hyperbola_clearance(Complex z) {
    const double x = z.real(), y = z.imag();
    if (x <= 0.0 || y <= 0.0) return 0.0;
    const double dv = y - 1.0 / x;   // vertical gap
    const double dh = x - 1.0 / y;   // horizontal gap; same sign as dv
    if (dv <= 0.0 || dh <= 0.0) return 0.0;
    return dv * dh / std::hypot(dv, dh);
}

double upper_hyperbola_clearance(Complex z) {
    const double x = z.real(), y = z.imag();
    if (x <= 0.0) return 0.0;
    const double dv = (1.0 / x + kFourPi) - y;
    if (dv <= 0.0) return 0.0;
    const double slope = 1.0 / (x * x);  // |g'(x)|
    double best = dv / std::sqrt(1.0 + slope * slope);
    if (y > kFourPi) {
        const double t = 1.0 / (y - kFourPi);  // horizontal foot abscissa
        const double dh = t - x;
        if (dh > 0.0) {
            const double ts = 1.0 / (t * t);
            best = std::max(best, (dh * ts) / std::sqrt(1.0 + ts * ts));
        }
    }
    return best;
}

Complex project_lower_hyperbola(Complex z) {
    const double x = z.real(), y = z.imag();
    const Complex vert(x, 1.0 / x);
    if (y <= 0.0) return vert;
    const Complex horz(1.0 / y, y);
    return std::abs(z - vert) <= std::abs(z - horz) ? vert : horz;
}

Complex project_upper_hyperbola(Complex z) {
    const double x = z.real(), y = z.imag();
    const Complex vert(x, 1.0 / x + kFourPi);
    if (y <= kFourPi) return vert;
    const Complex horz(1.0 / (y - kFourPi), y);
    return std::abs(z - vert) <= std::abs(z - horz) ? vert : horz;
}

} // namespace codiag
