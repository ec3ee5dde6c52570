#include "hypertile/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

namespace hypertile::hyp {

HPoint HPoint::from_vec(Vec3 v) {
    double q = -mdot(v, v);
    if (!(q > 0) || !(v.z > 0)) fail(errc::degenerate_geodesic, "vector does not point into the upper sheet");
    double s = 1.0 / std::sqrt(q);
    return HPoint({v.x * s, v.y * s, v.z * s});
}

Isometry Isometry::from_matrix(const Mat3& m) {
    Isometry g(m, m.det() < 0);
    if (g.form_residual() > 1e-8) fail(errc::degenerate_geodesic, "matrix does not preserve the Minkowski form");
    if (m(2, 2) <= 0) fail(errc::degenerate_geodesic, "matrix swaps the hyperboloid sheets");
    return g;
}

Isometry Isometry::rotation(double phi) {
    Mat3 m;
    double c = std::cos(phi), s = std::sin(phi);
    m(0, 0) = c; m(0, 1) = -s;
    m(1, 0) = s; m(1, 1) = c;
    return Isometry(m, false);
}

Isometry Isometry::x_translation(double d) {
    Mat3 m;
    double c = std::cosh(d), s = std::sinh(d);
    m(0, 0) = c; m(0, 2) = s;
    m(2, 0) = s; m(2, 2) = c;
    return Isometry(m, false);
}

Isometry Isometry::x_reflection() {
    Mat3 m;
    m(1, 1) = -1;
    return Isometry(m, true);
}

Isometry Isometry::inverse() const {
    // J M^T J
    Mat3 t = m_.transposed();
    t(0, 2) = -t(0, 2);
    t(1, 2) = -t(1, 2);
    t(2, 0) = -t(2, 0);
    t(2, 1) = -t(2, 1);
    return Isometry(t, reversing_);
}

double Isometry::form_residual() const {
    // M^T J M - J
    Mat3 t = m_.transposed();
    Mat3 jm = m_;
    for (int c = 0; c < 3; ++c) jm(2, c) = -jm(2, c);
    Mat3 r = t * jm;
    r(0, 0) -= 1;
    r(1, 1) -= 1;
    r(2, 2) += 1;
    double mx = 0;
    for (double v : r.a) mx = std::max(mx, std::abs(v));
    return mx;
}

double Isometry::distance_to(const Isometry& o) const {
    double mx = 0;
    for (int i = 0; i < 9; ++i) mx = std::max(mx, std::abs(m_.a[std::size_t(i)] - o.m_.a[std::size_t(i)]));
    return mx;
}

double distance(const HPoint& a, const HPoint& b) {
    // chordal form: <a-b, a-b> = 4 sinh^2(d/2); well conditioned near d = 0
    Vec3 diff = a.vec() - b.vec();
    double q = mdot(diff, diff);
    return 2 * std::asinh(std::sqrt(std::max(0.0, q)) / 2);
}

HPoint midpoint(const HPoint& a, const HPoint& b) { return HPoint::from_vec(a.vec() + b.vec()); }

namespace {

// Projection of x into the tangent plane at u (positive definite there).
Vec3 tangent_toward(const HPoint& u, const HPoint& x) {
    return x.vec() + mdot(x.vec(), u.vec()) * u.vec();
}

} // namespace

double angle_at(const HPoint& apex, const HPoint& a, const HPoint& b) {
    Vec3 ta = tangent_toward(apex, a);
    Vec3 tb = tangent_toward(apex, b);
    double na = mdot(ta, ta), nb = mdot(tb, tb);
    if (na <= 0 || nb <= 0) fail(errc::degenerate_geodesic, "angle at coincident points");
    double scale = std::sqrt(na * nb);
    double c = mdot(ta, tb) / scale;
    // mcross(ta, tb) is parallel to apex; its signed length is the sine
    double s = mdot(mcross(ta, tb), apex.vec()) / scale;
    return std::atan2(std::abs(s), c); // stable at both 0 and pi
}

double interior_angle(const HPoint& apex, const HPoint& prev, const HPoint& next) {
    // polygon traversed counterclockwise with the interior on its left;
    // reflex corners come out in (pi, 2 pi)
    Vec3 tin = -1.0 * tangent_toward(apex, prev); // incoming direction at apex
    Vec3 tout = tangent_toward(apex, next);
    double ni = mdot(tin, tin), no = mdot(tout, tout);
    if (ni <= 0 || no <= 0) fail(errc::degenerate_geodesic, "angle at coincident points");
    double scale = std::sqrt(ni * no);
    double c = mdot(tin, tout) / scale;
    double s = mdot(mcross(tin, tout), apex.vec()) / scale; // ccw-positive turn
    return kPi - std::atan2(s, c);
}

namespace {

// Unit spacelike Minkowski normal of the plane spanned by a, b.
Vec3 geodesic_normal(const HPoint& a, const HPoint& b) {
    if (distance(a, b) < 1e-9) fail(errc::degenerate_geodesic, "geodesic through coincident points");
    Vec3 n = mcross(a.vec(), b.vec());
    double q = mdot(n, n);
    if (q <= 0) fail(errc::degenerate_geodesic, "normal is not spacelike");
    double s = 1.0 / std::sqrt(q);
    return s * n;
}

} // namespace

double distance_to_geodesic(const HPoint& p, const HPoint& a, const HPoint& b) {
    Vec3 n = geodesic_normal(a, b);
    return std::asinh(std::abs(mdot(p.vec(), n)));
}

Isometry reflect_across(const HPoint& a, const HPoint& b) {
    Vec3 n = geodesic_normal(a, b);
    // R = I - 2 n (Jn)^T  for unit spacelike n
    Vec3 jn{n.x, n.y, -n.z};
    Mat3 m;
    const double nv[3] = {n.x, n.y, n.z};
    const double jv[3] = {jn.x, jn.y, jn.z};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) -= 2 * nv[i] * jv[j];
    return Isometry::from_matrix(m);
}

Isometry half_turn(const HPoint& c) {
    // Minkowski reflection in the timelike line through c: x -> -2<x,c> c - x.
    Vec3 v = c.vec();
    Vec3 jv{v.x, v.y, -v.z};
    Mat3 m;
    const double cv[3] = {v.x, v.y, v.z};
    const double jw[3] = {jv.x, jv.y, jv.z};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = -2 * cv[i] * jw[j] - (i == j ? 1.0 : 0.0);
    return Isometry::from_matrix(m);
}

Isometry transport(const HPoint& a, const HPoint& b) {
    double d = distance(a, b);
    if (d < 1e-14) return Isometry::identity();
    if (distance(HPoint::origin(), a) < 1e-14) {
        double phi = std::atan2(b.y(), b.x());
        return Isometry::rotation(phi) * Isometry::x_translation(d) * Isometry::rotation(-phi);
    }
    Isometry w = transport(HPoint::origin(), a);
    HPoint bl = w.inverse()(b);
    return w * transport(HPoint::origin(), bl) * w.inverse();
}

Isometry rotate_about(const HPoint& c, double angle) {
    if (distance(HPoint::origin(), c) < 1e-14) return Isometry::rotation(angle);
    Isometry t = transport(HPoint::origin(), c);
    return t * Isometry::rotation(angle) * t.inverse();
}

Isometry frame(const HPoint& a, const HPoint& b) {
    Isometry t = transport(HPoint::origin(), a);
    HPoint u = t.inverse()(b);
    double phi = std::atan2(u.y(), u.x());
    return t * Isometry::rotation(phi);
}

PolygonMetrics regular_polygon_metrics(int k, double theta) {
    if (k < 3) fail(errc::invalid_type, "polygon needs k >= 3");
    double limit = (k - 2) * kPi / k;
    if (!(theta > 0) || !(theta < limit)) fail(errc::angle_out_of_range, "interior angle outside (0, (k-2)pi/k)");
    // Right triangle center / edge midpoint / vertex with angles pi/k, pi/2, theta/2:
    //   cosh(s/2) sin(theta/2) = cos(pi/k)
    //   cosh R = cot(pi/k) cot(theta/2)
    //   cosh R = cosh r cosh(s/2)
    PolygonMetrics pm;
    pm.k = k;
    pm.theta = theta;
    double ck = std::cos(kPi / k);
    double half_s = std::acosh(ck / std::sin(theta / 2));
    pm.s = 2 * half_s;
    pm.R = std::acosh(1.0 / (std::tan(kPi / k) * std::tan(theta / 2)));
    pm.r = std::acosh(std::cosh(pm.R) / std::cosh(half_s));
    return pm;
}

} // namespace hypertile::hyp
