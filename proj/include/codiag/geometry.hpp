#pragma once

#include <complex>

namespace codiag {

using Complex = std::complex<double>;

struct Segment {
    Complex a, b;
    double distance(Complex z) const;
    Complex closest(Complex z) const;
};

/// Conservative (never overestimating) clearance from a point of the strip
/// R = { x > 0, 1/x < y < 1/x + 4*pi } to its two hyperbola boundaries.
///
/// Lower curve y = 1/x, seen from above (convex side): the chord through the
/// vertical and horizontal feet separates the point from the arc, so the
/// right-triangle altitude dv*dh/hypot(dv,dh) is a rigorous lower bound.
double lower_hyperbola_clearance(Complex z);

/// Upper curve y = 1/x + 4*pi, seen from below (concave side): the curve lies
/// above its tangents, so distances to the tangents at the vertical and
/// horizontal feet bound the distance from below; we take the larger.
double upper_hyperbola_clearance(Complex z);

/// Approximate nearest points, used to label absorbed walkers; accurate to
/// O(distance^2) which is all the absorption tolerance needs.
Complex project_lower_hyperbola(Complex z);
Complex project_upper_hyperbola(Complex z);

} // namespace codiag
