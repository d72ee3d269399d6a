#pragma once

#include <complex>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "codiag/geometry.hpp"

namespace codiag {

struct WalkExit {
    Complex point;
    std::string label;
};

/// Hyperbolic planar domain for Brownian-exit sampling: an inside test, a
/// conservative clearance (never above the true boundary distance, so spheres
/// stay inside), and a total labeler for absorbed walkers.
class PlanarDomain {
public:
    virtual ~PlanarDomain() = default;
    virtual bool inside(Complex z) const = 0;
    virtual double clearance(Complex z) const = 0;
    virtual WalkExit classify_exit(Complex z) const = 0;
    /// Walkers with Im z beyond this are assigned the "far" label.
    virtual double far_cap() const { return std::numeric_limits<double>::infinity(); }
    /// Bounding box for sampled containment checks.
    virtual std::pair<Complex, Complex> sample_box() const = 0;
    virtual std::string name() const = 0;
};

struct DiskArc {
    double lo = 0.0, hi = 0.0;  // radians in [0, 2*pi); wraps when hi < lo
    std::string label;
};

/// Unit disk with labeled boundary arcs; points outside every arc get "other".
class DiskDomain : public PlanarDomain {
public:
    explicit DiskDomain(std::vector<DiskArc> arcs = {});
    bool inside(Complex z) const override;
    double clearance(Complex z) const override;
    WalkExit classify_exit(Complex z) const override;
    std::pair<Complex, Complex> sample_box() const override;
    std::string name() const override { return "disk"; }

private:
    std::vector<DiskArc> arcs_;
};

/// Unit disk minus a radial slit [x0, x1] on the positive real axis.
class SlitDiskDomain : public PlanarDomain {
public:
    SlitDiskDomain(double x0, double x1);
    bool inside(Complex z) const override;
    double clearance(Complex z) const override;
    WalkExit classify_exit(Complex z) const override;
    std::pair<Complex, Complex> sample_box() const override;
    std::string name() const override { return "slit-disk"; }

private:
    Segment slit_;
};

/// Upper half of the unit disk; labels "diameter" and "arc".
class HalfDiskDomain : public PlanarDomain {
public:
    bool inside(Complex z) const override;
    double clearance(Complex z) const override;
    WalkExit classify_exit(Complex z) const override;
    std::pair<Complex, Complex> sample_box() const override;
    std::string name() const override { return "half-disk"; }
};

struct ImagInterval {
    double lo = 0.0, hi = 0.0;
    std::string label;
};

/// Right half-plane Re z > 0 with labeled intervals on the imaginary axis;
/// conformal-invariance smoke tests ride on this.
class HalfPlaneDomain : public PlanarDomain {
public:
    explicit HalfPlaneDomain(std::vector<ImagInterval> intervals = {},
                             double y_cap = 1e3);
    bool inside(Complex z) const override;
    double clearance(Complex z) const override;
    WalkExit classify_exit(Complex z) const override;
    double far_cap() const override { return y_cap_; }
    std::pair<Complex, Complex> sample_box() const override;
    std::string name() const override { return "half-plane"; }

private:
    std::vector<ImagInterval> intervals_;
    double y_cap_;
};

/// One "sword point" pair P_n^+/P_n^- at altitude 4*n*pi: horizontal feet on
/// either side of the hole around M_n = 1/(4n*pi - 2*pi) + 4n*pi*i, slant
/// segments of slope -/+2 reaching the respective hyperbolas.
struct BarrierShape {
    int index = 1;
    double delta = 0.0;       // hole half-width
    double altitude = 0.0;    // 4*n*pi
    double mid = 0.0;         // Re M_n
    double foot_plus = 0.0;   // hole's left edge (P^+ side, lower hyperbola)
    double foot_minus = 0.0;  // hole's right edge (P^- side, upper hyperbola)
    Complex c_plus, c_minus;  // slant tips
    double left_end = 0.0;    // b_n, lower-hyperbola corner of the altitude slice
    double right_end = 0.0;   // b_{n-1}; +inf replaced by a large cap for n = 1

    bool in_plus(Complex z) const;
    bool in_minus(Complex z) const;
    Segment bottom_plus() const;
    Segment slant_plus() const;
    Segment bottom_minus() const;
    Segment slant_minus() const;
};

/// Constructs the pair, asserting the bullet-list constraints
/// (hole strictly inside the slice, tips below altitude 4(n+1)*pi - 2*pi).
BarrierShape make_barrier(int n, double delta);

double barrier_b(int n);    // b_n = 1/(4*n*pi)
double barrier_mid(int n);  // Re M_n = 1/(4*n*pi - 2*pi)

/// R = { x > 0, 1/x < y < 1/x + 4*pi } and its barrier modifications:
///   RegionR  - the plain strip;
///   OmegaN   - barriers j < n carved out, truncated below altitude 4*n*pi;
///              the top segment carries labels "hole" / "top";
///   Omega    - every built barrier carved out, far cap above the last one.
class BarrierDomain : public PlanarDomain {
public:
    enum class Kind { RegionR, OmegaN, Omega };

    /// OmegaN: deltas[0..n-2] size the carved barriers and deltas[n-1] the
    /// labeled hole on the top segment. Omega: one barrier per delta.
    BarrierDomain(Kind kind, int n, std::vector<double> deltas, double y_cap = 1e3);

    bool inside(Complex z) const override;
    double clearance(Complex z) const override;
    WalkExit classify_exit(Complex z) const override;
    double far_cap() const override { return y_cap_; }
    std::pair<Complex, Complex> sample_box() const override;
    std::string name() const override;

    const std::vector<BarrierShape>& shapes() const { return shapes_; }

private:
    Kind kind_;
    int n_;
    double y_cap_;
    double top_altitude_ = 0.0;  // OmegaN only
    double hole_mid_ = 0.0, hole_delta_ = 0.0;
    std::vector<BarrierShape> shapes_;  // carved barriers
};

} // namespace codiag
