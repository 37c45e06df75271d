#include "schottky_zeta/moebius.hpp"

#include <cmath>

namespace szeta {

namespace {
constexpr double kLoxodromicMargin = 1e-9;
}

Complex principal_sqrt(Complex z) {
    Complex s = std::sqrt(z);
    if (s.real() < 0.0 || (s.real() == 0.0 && s.imag() < 0.0)) s = -s;
    return s;
}

Circle::Circle(Complex c, double r, Orientation o) : center(c), radius(r), orientation(o) {
    if (!(r > 0.0)) throw Error("circle radius must be positive");
}

Complex Circle::point(double theta) const {
    return center + radius * Complex(std::cos(theta), std::sin(theta));
}

bool Circle::disk_contains(Complex z) const {
    const double d = std::abs(z - center);
    return disk_is_interior() ? d < radius : d > radius;
}

bool Circle::disk_contains(const SpherePoint& p) const {
    if (p.is_infinity()) return !disk_is_interior();
    return disk_contains(p.value);
}

double Circle::boundary_distance(Complex z) const {
    const double d = std::abs(z - center);
    return disk_is_interior() ? radius - d : d - radius;
}

Circle Circle::image_under(const MoebiusMap& m) const {
    const Complex c = m.c();
    if (std::abs(c) < 1e-300) {
        // Affine map z -> (a/d) z + b/d.
        const Complex scale = m.a() / m.d();
        Circle out(m.a() / m.d() * center + m.b() / m.d(), std::abs(scale) * radius, orientation);
        return out;
    }
    // m(z) = A + B / (z - p), pole p = -d/c, B = -1/c^2 for a det-1 lift.
    const Complex p = -m.d() / c;
    const Complex A = m.a() / c;
    const Complex B = -1.0 / (c * c);
    const Complex delta = center - p;
    const double t = std::norm(delta) - radius * radius;
    if (std::abs(t) < 1e-14 * (std::norm(delta) + radius * radius)) {
        throw Error("circle passes through the pole of the map; image is a line");
    }
    Circle out;
    out.center = A + B * std::conj(delta) / t;
    out.radius = std::abs(B) * radius / std::abs(t);
    // The image disk is the exterior exactly when the original disk side
    // contained the pole.
    const bool pole_in_disk = disk_contains(p);
    out.orientation = pole_in_disk ? Orientation::clockwise : Orientation::counterclockwise;
    return out;
}

double disk_gap(const Circle& a, const Circle& b) {
    const double d = std::abs(a.center - b.center);
    if (a.disk_is_interior() && b.disk_is_interior()) return d - a.radius - b.radius;
    if (!a.disk_is_interior() && !b.disk_is_interior()) return -1.0;  // two exteriors always meet
    const Circle& in = a.disk_is_interior() ? a : b;
    const Circle& out = a.disk_is_interior() ? b : a;
    // Interior disk must sit inside the complement of the exterior disk.
    return out.radius - (std::abs(in.center - out.center) + in.radius);
}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d) {
    const Complex det = a * d - b * c;
    const double scale = std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d);
    if (std::abs(det) < 1e-14 * scale * scale || std::abs(det) == 0.0) {
        throw SingularMatrix();
    }
    const Complex s = principal_sqrt(det);
    a_ = a / s;
    b_ = b / s;
    c_ = c / s;
    d_ = d / s;
}

MoebiusMap MoebiusMap::from_fixed_points(const SpherePoint& attracting,
                                         const SpherePoint& repelling, Complex q) {
    if (std::abs(q) <= 0.0 || std::abs(q) >= 1.0) {
        throw Error("multiplier must satisfy 0 < |q| < 1");
    }
    if (chordal_distance(attracting, repelling) < 1e-13) throw DegenerateFixedPoints();
    // The determinant is known in closed form per case; normalizing with it
    // keeps tiny multipliers exact where the numeric ad - bc would cancel.
    if (attracting.is_infinity()) {
        // z -> beta + (z - beta)/q, repelling at the finite point; det = q.
        const Complex beta = repelling.value;
        const Complex s = principal_sqrt(q);
        return MoebiusMap(1.0 / s, beta * (q - 1.0) / s, Complex(0.0), q / s, raw_tag{});
    }
    if (repelling.is_infinity()) {
        // z -> alpha + q (z - alpha); det = q.
        const Complex alpha = attracting.value;
        const Complex s = principal_sqrt(q);
        return MoebiusMap(q / s, alpha * (1.0 - q) / s, Complex(0.0), 1.0 / s, raw_tag{});
    }
    const Complex alpha = attracting.value;
    const Complex beta = repelling.value;
    // V diag(1, q) V^{-1} with V = ((alpha, beta), (1, 1)); det = q (alpha - beta)^2.
    const Complex s = principal_sqrt(q * (alpha - beta) * (alpha - beta));
    return MoebiusMap((alpha - beta * q) / s, alpha * beta * (q - 1.0) / s, (1.0 - q) / s,
                      (alpha * q - beta) / s, raw_tag{});
}

MoebiusMap MoebiusMap::inverse() const {
    // det = 1, so the adjugate is the inverse; entries stay det-1 normalized.
    return MoebiusMap(d_, -b_, -c_, a_, raw_tag{});
}

SpherePoint MoebiusMap::operator()(const SpherePoint& p) const {
    if (p.is_infinity()) {
        if (std::abs(c_) == 0.0) return SpherePoint::infinity();
        return SpherePoint(a_ / c_);
    }
    const Complex num = a_ * p.value + b_;
    const Complex den = c_ * p.value + d_;
    // Ratios beyond 1e14 are indistinguishable from infinity at this scale
    // (rounding alone leaves residuals of that order in c z + d).
    if (std::abs(den) == 0.0 || std::abs(num) > std::abs(den) * 1e14) {
        return SpherePoint::infinity();
    }
    return SpherePoint(num / den);
}

Complex MoebiusMap::apply_finite(Complex z) const {
    return (a_ * z + b_) / (c_ * z + d_);
}

Complex MoebiusMap::derivative(Complex z) const {
    const Complex den = c_ * z + d_;
    return 1.0 / (den * den);
}

bool MoebiusMap::is_identity(double tol) const {
    // Projectively: M = +-I.
    const double plus = std::abs(a_ - 1.0) + std::abs(b_) + std::abs(c_) + std::abs(d_ - 1.0);
    const double minus = std::abs(a_ + 1.0) + std::abs(b_) + std::abs(c_) + std::abs(d_ + 1.0);
    return std::min(plus, minus) <= tol;
}

bool MoebiusMap::is_real(double tol) const {
    // Real up to projective scale: with det = 1, either all entries are real
    // or all are purely imaginary.
    const double re = std::abs(a_.real()) + std::abs(b_.real()) + std::abs(c_.real()) + std::abs(d_.real());
    const double im = std::abs(a_.imag()) + std::abs(b_.imag()) + std::abs(c_.imag()) + std::abs(d_.imag());
    return im <= tol * (1.0 + re) || re <= tol * (1.0 + im);
}

namespace {

// Large eigenvalue of a det-1 matrix with trace t, chosen to avoid
// cancellation in (t + sqrt(t^2 - 4))/2.
Complex large_eigenvalue(Complex t) {
    Complex s = std::sqrt(t * t - 4.0);
    if (std::real(std::conj(t) * s) < 0.0) s = -s;
    return (t + s) / 2.0;
}

}  // namespace

bool MoebiusMap::is_loxodromic() const {
    const Complex lam = large_eigenvalue(trace());
    const double q_abs = 1.0 / std::norm(lam);  // |q| = 1/|lambda|^2
    return q_abs < 1.0 - kLoxodromicMargin;
}

Complex MoebiusMap::multiplier() const {
    const Complex lam = large_eigenvalue(trace());
    const Complex q = 1.0 / (lam * lam);
    if (!(std::abs(q) < 1.0 - kLoxodromicMargin)) throw NotLoxodromic();
    return q;
}

std::pair<SpherePoint, SpherePoint> MoebiusMap::fixed_points() const {
    const Complex lam = large_eigenvalue(trace());
    const Complex q = 1.0 / (lam * lam);
    if (!(std::abs(q) < 1.0 - kLoxodromicMargin)) throw NotLoxodromic();
    if (std::abs(c_) == 0.0) {
        // Infinity is fixed; the other fixed point solves (a - d) z + b = 0.
        const SpherePoint finite_pt = SpherePoint(b_ / (d_ - a_));
        if (std::abs(a_) > std::abs(d_)) {
            return {SpherePoint::infinity(), finite_pt};
        }
        return {finite_pt, SpherePoint::infinity()};
    }
    // Fixed point of eigenvalue lambda is (lambda - d)/c; the attracting one
    // belongs to the large eigenvalue.
    const Complex lam_small = 1.0 / lam;
    const SpherePoint attract((lam - d_) / c_);
    const SpherePoint repel((lam_small - d_) / c_);
    return {attract, repel};
}

Circle MoebiusMap::isometric_circle() const {
    if (std::abs(c_) == 0.0) throw FixesInfinity();
    return Circle(-d_ / c_, 1.0 / std::abs(c_));
}

MoebiusMap operator*(const MoebiusMap& m1, const MoebiusMap& m2) {
    // Both factors have det 1, so the raw product does too; no renormalization.
    return MoebiusMap(m1.a_ * m2.a_ + m1.b_ * m2.c_, m1.a_ * m2.b_ + m1.b_ * m2.d_,
                      m1.c_ * m2.a_ + m1.d_ * m2.c_, m1.c_ * m2.b_ + m1.d_ * m2.d_,
                      MoebiusMap::raw_tag{});
}

MoebiusMap cross_ratio_map(const SpherePoint& z1, const SpherePoint& z2, const SpherePoint& z3) {
    if (chordal_distance(z1, z2) < 1e-13 || chordal_distance(z2, z3) < 1e-13 ||
        chordal_distance(z1, z3) < 1e-13) {
        throw DegenerateFixedPoints("cross-ratio map needs three distinct points");
    }
    if (z1.is_infinity()) return MoebiusMap(0.0, z2.value - z3.value, 1.0, -z3.value);
    if (z2.is_infinity()) return MoebiusMap(1.0, -z1.value, 1.0, -z3.value);
    if (z3.is_infinity()) return MoebiusMap(1.0, -z1.value, 0.0, z2.value - z1.value);
    const Complex p = z2.value - z3.value;
    const Complex q = z2.value - z1.value;
    return MoebiusMap(p, -z1.value * p, q, -z3.value * q);
}

}  // namespace szeta
