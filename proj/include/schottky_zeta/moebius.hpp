#pragma once

#include <utility>

#include "schottky_zeta/errors.hpp"
#include "schottky_zeta/sphere.hpp"

namespace szeta {

class MoebiusMap;

/// A circle in the plane together with the side that counts as its disk.
/// Counterclockwise orientation means the disk is the bounded interior;
/// clockwise means the disk is the exterior (the side containing infinity).
struct Circle {
    enum class Orientation { counterclockwise, clockwise };

    Complex center{0.0, 0.0};
    double radius = 1.0;
    Orientation orientation = Orientation::counterclockwise;

    Circle() = default;
    Circle(Complex c, double r, Orientation o = Orientation::counterclockwise);

    bool disk_is_interior() const { return orientation == Orientation::counterclockwise; }

    /// Point on the boundary at angle theta.
    Complex point(double theta) const;

    /// True if z lies strictly inside the disk side.
    bool disk_contains(Complex z) const;
    bool disk_contains(const SpherePoint& p) const;

    /// Signed clearance of z from the boundary (positive inside the disk side).
    double boundary_distance(Complex z) const;

    /// Image of this circle (with its disk side) under a Moebius map.
    /// Requires the image to be a circle, i.e. the pole must not lie on
    /// the boundary.
    Circle image_under(const MoebiusMap& m) const;
};

/// Gap between the closed disks of two circles: positive iff disjoint.
double disk_gap(const Circle& a, const Circle& b);

/// A fractional-linear map of the Riemann sphere, stored as a matrix with
/// determinant normalized to 1. The lift is fixed by choosing the square
/// root of the determinant with nonnegative real part (on a tie,
/// nonnegative imaginary part), which makes the trace and hence the
/// multiplier deterministic.
class MoebiusMap {
public:
    MoebiusMap() : a_(1.0), b_(0.0), c_(0.0), d_(1.0) {}

    /// Throws SingularMatrix when |ad - bc| is numerically zero.
    MoebiusMap(Complex a, Complex b, Complex c, Complex d);

    static MoebiusMap identity() { return MoebiusMap(); }

    /// The map with the given attracting/repelling fixed points and
    /// multiplier q, 0 < |q| < 1. Either fixed point may be infinity.
    /// Throws DegenerateFixedPoints if the points coincide.
    static MoebiusMap from_fixed_points(const SpherePoint& attracting,
                                        const SpherePoint& repelling, Complex q);

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }

    Complex trace() const { return a_ + d_; }
    Complex determinant() const { return a_ * d_ - b_ * c_; }

    MoebiusMap inverse() const;

    SpherePoint operator()(const SpherePoint& p) const;
    Complex apply_finite(Complex z) const;  // caller guarantees cz + d != 0

    /// Derivative at a finite point z (chart where neither z nor m(z) is infinity).
    Complex derivative(Complex z) const;

    bool is_identity(double tol = 1e-12) const;
    bool is_real(double tol = 1e-12) const;

    /// Loxodromic test: the multiplier satisfies |q| < 1 - 1e-9. Maps whose
    /// multiplier is closer to the unit circle (parabolic, elliptic, or
    /// nearly so) are rejected because the downstream products diverge.
    bool is_loxodromic() const;

    /// Multiplier q with 0 < |q| < 1. Throws NotLoxodromic.
    Complex multiplier() const;

    /// (attracting, repelling) fixed points. Throws NotLoxodromic.
    std::pair<SpherePoint, SpherePoint> fixed_points() const;

    /// Isometric circle |cz + d| = 1 of the determinant-1 lift.
    /// Throws FixesInfinity when c = 0.
    Circle isometric_circle() const;

    friend MoebiusMap operator*(const MoebiusMap& m1, const MoebiusMap& m2);

private:
    Complex a_, b_, c_, d_;

    struct raw_tag {};
    MoebiusMap(Complex a, Complex b, Complex c, Complex d, raw_tag)
        : a_(a), b_(b), c_(c), d_(d) {}
};

/// compose(m1, m2) represents m1 after m2, i.e. z -> m1(m2(z)).
inline MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) { return m1 * m2; }

/// The unique map sending (z1, z2, z3) to (0, 1, infinity). Any one of the
/// three points may be infinity.
MoebiusMap cross_ratio_map(const SpherePoint& z1, const SpherePoint& z2, const SpherePoint& z3);

/// Square root with nonnegative real part; on a tie, nonnegative imaginary part.
Complex principal_sqrt(Complex z);

}  // namespace szeta
