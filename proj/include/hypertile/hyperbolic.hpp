#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "hypertile/error.hpp"

// Hyperboloid (Minkowski) model of the hyperbolic plane.
//
// Points live on the upper sheet of x^2 + y^2 - z^2 = -1, z > 0, and
// isometries are the 3x3 matrices preserving the bilinear form
// J = diag(1, 1, -1) and the sheet. Composition is plain matrix product,
// which stays numerically tame over the word lengths this project needs;
// the Poincaré disk is used for rendering only.

namespace hypertile::hyp {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSheetTol = 1e-12;   // Minkowski norm drift allowed on points
inline constexpr double kAlgebraicTol = 1e-10;
inline constexpr double kComposedTol = 1e-9;

struct Vec3 {
    double x = 0, y = 0, z = 0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }

// Minkowski form <a,b> = ax bx + ay by - az bz.
inline double mdot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y - a.z * b.z; }

// J * (a x b): Minkowski-orthogonal to both arguments.
inline Vec3 mcross(Vec3 a, Vec3 b) {
    Vec3 c{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    return {c.x, c.y, -c.z};
}

struct Mat3 {
    // row-major
    std::array<double, 9> a{1, 0, 0, 0, 1, 0, 0, 0, 1};

    double& operator()(int r, int c) { return a[std::size_t(3 * r + c)]; }
    double operator()(int r, int c) const { return a[std::size_t(3 * r + c)]; }

    static Mat3 identity() { return Mat3{}; }

    Vec3 apply(Vec3 v) const {
        return {a[0] * v.x + a[1] * v.y + a[2] * v.z,
                a[3] * v.x + a[4] * v.y + a[5] * v.z,
                a[6] * v.x + a[7] * v.y + a[8] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    double det() const {
        return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
               a[2] * (a[3] * a[7] - a[4] * a[6]);
    }
};

/// A point of H^2 on the upper hyperboloid sheet.
class HPoint {
public:
    HPoint() : v_{0, 0, 1} {}

    // Renormalizes onto the sheet; the raw vector must be timelike with z > 0.
    static HPoint from_vec(Vec3 v);

    // Polar coordinates around the origin: direction phi, hyperbolic distance d.
    static HPoint polar(double phi, double d) {
        return from_vec({std::sinh(d) * std::cos(phi), std::sinh(d) * std::sin(phi), std::cosh(d)});
    }

    static HPoint origin() { return HPoint(); }

    double x() const { return v_.x; }
    double y() const { return v_.y; }
    double z() const { return v_.z; }
    Vec3 vec() const { return v_; }

    // Central projection to the Poincaré unit disk (for rendering).
    std::array<double, 2> disk() const { return {v_.x / (1 + v_.z), v_.y / (1 + v_.z)}; }

private:
    explicit HPoint(Vec3 v) : v_(v) {}
    Vec3 v_;
    friend class Isometry;
};

/// An isometry of H^2: a J-orthogonal matrix preserving the upper sheet.
class Isometry {
public:
    Isometry() = default;

    static Isometry identity() { return Isometry(); }
    static Isometry from_matrix(const Mat3& m);

    // Rotation about the origin by phi (counterclockwise in disk coordinates).
    static Isometry rotation(double phi);
    // Translation along the x-axis geodesic by (signed) distance d.
    static Isometry x_translation(double d);
    // Reflection across the x-axis geodesic.
    static Isometry x_reflection();

    HPoint apply(const HPoint& p) const { return HPoint::from_vec(m_.apply(p.vec())); }
    HPoint operator()(const HPoint& p) const { return apply(p); }

    Isometry operator*(const Isometry& o) const { return Isometry(m_ * o.m_, reversing_ != o.reversing_); }

    // For J-orthogonal M the inverse is J M^T J; no numerical inversion needed.
    Isometry inverse() const;

    const Mat3& matrix() const { return m_; }
    bool orientation_reversing() const { return reversing_; }
    int parity() const { return reversing_ ? -1 : +1; }
    double trace() const { return m_(0, 0) + m_(1, 1) + m_(2, 2); }

    // max abs deviation of M^T J M from J
    double form_residual() const;
    // max abs entry difference
    double distance_to(const Isometry& o) const;

private:
    Isometry(const Mat3& m, bool rev) : m_(m), reversing_(rev) {}
    Mat3 m_;
    bool reversing_ = false;
};

double distance(const HPoint& a, const HPoint& b);
HPoint midpoint(const HPoint& a, const HPoint& b);

// Unoriented angle at `apex` between the geodesic rays toward a and b,
// in [0, pi].
double angle_at(const HPoint& apex, const HPoint& a, const HPoint& b);

// Interior angle at a boundary vertex of a polygon traversed
// counterclockwise (interior on the left); reflex corners land in (pi, 2pi).
double interior_angle(const HPoint& apex, const HPoint& prev, const HPoint& next);

// Distance from p to the geodesic through a, b.
double distance_to_geodesic(const HPoint& p, const HPoint& a, const HPoint& b);

// Orientation-reversing involution fixing the geodesic through a and b.
// Throws DegenerateGeodesic when a and b nearly coincide.
Isometry reflect_across(const HPoint& a, const HPoint& b);

// Rotation by pi about m.
Isometry half_turn(const HPoint& m);

// Rotation by `angle` about c.
Isometry rotate_about(const HPoint& c, double angle);

// Pure translation along the geodesic from a to b, mapping a onto b.
Isometry transport(const HPoint& a, const HPoint& b);

// Isometry taking the origin to a and the x-direction at the origin to the
// direction from a toward b (orientation-preserving framing of a ray).
Isometry frame(const HPoint& a, const HPoint& b);

/// Radii and edge length of a regular hyperbolic k-gon with interior angle theta.
struct PolygonMetrics {
    int k = 0;
    double theta = 0;  // interior angle
    double s = 0;      // edge length
    double R = 0;      // circumradius (center to vertex)
    double r = 0;      // inradius (center to edge midpoint)
};

// Solves the right triangle (center, edge midpoint, vertex); requires
// 0 < theta < (k-2)*pi/k so the polygon is hyperbolic.
PolygonMetrics regular_polygon_metrics(int k, double theta);

} // namespace hypertile::hyp
