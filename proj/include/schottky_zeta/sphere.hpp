#pragma once

#include <cmath>
#include <complex>

namespace szeta {

using Complex = std::complex<double>;

/// A point of the Riemann sphere: a finite complex number or the point at infinity.
struct SpherePoint {
    Complex value{0.0, 0.0};
    bool infinite = false;

    SpherePoint() = default;
    SpherePoint(Complex z) : value(z) {}  // NOLINT(google-explicit-constructor)
    SpherePoint(double x) : value(x, 0.0) {}

    static SpherePoint infinity() {
        SpherePoint p;
        p.infinite = true;
        return p;
    }

    bool is_infinity() const { return infinite; }

    bool is_real(double tol = 1e-12) const {
        return infinite || std::abs(value.imag()) <= tol;
    }
};

inline bool operator==(const SpherePoint& a, const SpherePoint& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
}

/// Chordal metric on the sphere, range [0, 2]. Used for distinctness checks
/// that must treat infinity like any other point.
inline double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
    auto lift = [](const SpherePoint& p, double& x, double& y, double& z) {
        if (p.infinite) {
            x = 0.0; y = 0.0; z = 1.0;
            return;
        }
        const double n2 = std::norm(p.value);
        x = 2.0 * p.value.real() / (1.0 + n2);
        y = 2.0 * p.value.imag() / (1.0 + n2);
        z = (n2 - 1.0) / (n2 + 1.0);
    };
    double ax, ay, az, bx, by, bz;
    lift(a, ax, ay, az);
    lift(b, bx, by, bz);
    return std::sqrt((ax - bx) * (ax - bx) + (ay - by) * (ay - by) + (az - bz) * (az - bz));
}

}  // namespace szeta
