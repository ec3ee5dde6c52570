#include "hypertile/vertex_type.hpp"

#include <algorithm>
#include <cmath>

namespace hypertile {

VertexType::VertexType(std::vector<int> ks) {
    if (ks.size() < 3) fail(errc::invalid_type, "vertex degree must be at least 3");
    for (int k : ks)
        if (k < 3) fail(errc::invalid_type, "face size must be at least 3");
    ks_ = canonical_cycle(ks);
}

std::vector<int> VertexType::canonical_cycle(const std::vector<int>& ks) {
    const std::size_t d = ks.size();
    std::vector<int> best;
    auto consider = [&](const std::vector<int>& seq) {
        for (std::size_t r = 0; r < d; ++r) {
            std::vector<int> rot(d);
            for (std::size_t i = 0; i < d; ++i) rot[i] = seq[(r + i) % d];
            if (best.empty() || rot < best) best = std::move(rot);
        }
    };
    consider(ks);
    std::vector<int> rev(ks.rbegin(), ks.rend());
    consider(rev);
    return best;
}

Rational VertexType::alpha() const {
    Rational a{0, 1};
    for (int k : ks_) a = a + Rational{k - 2, k};
    return a;
}

std::string VertexType::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < ks_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(ks_[i]);
    }
    return s + "]";
}

double angle_sum(const VertexType& type, double s) {
    double ch = std::cosh(s / 2);
    double total = 0;
    for (int k : type.faces()) total += 2 * std::asin(std::cos(hyp::kPi / k) / ch);
    return total;
}

TypeAnalysis analyze_type(const VertexType& type) {
    TypeAnalysis ta{type, type.alpha(), Curvature::euclidean, std::nullopt, {}, 0};
    const Rational two{2, 1};
    if (ta.alpha < two) {
        ta.curvature = Curvature::spherical;
        return ta;
    }
    if (ta.alpha == two) {
        ta.curvature = Curvature::euclidean;
        return ta;
    }
    ta.curvature = Curvature::hyperbolic;

    // angle_sum is strictly decreasing with angle_sum(0) = pi*alpha > 2*pi,
    // so the root is bracketed by (0, hi] once angle_sum(hi) < 2*pi.
    double lo = 0, hi = 10;
    while (angle_sum(type, hi) > 2 * hyp::kPi) hi *= 2;
    double s = hi;
    for (int it = 0; it < 200; ++it) {
        s = 0.5 * (lo + hi);
        double a = angle_sum(type, s);
        if (std::abs(a - 2 * hyp::kPi) < 1e-12) break;
        if (a > 2 * hyp::kPi)
            lo = s;
        else
            hi = s;
    }
    ta.edge_length = s;

    double ch = std::cosh(s / 2);
    double total = 0;
    for (int k : type.faces()) {
        double theta = 2 * std::asin(std::cos(hyp::kPi / k) / ch);
        total += theta;
        if (!ta.metrics.count(k)) ta.metrics.emplace(k, hyp::regular_polygon_metrics(k, theta));
    }
    ta.angle_sum_residual = std::abs(total - 2 * hyp::kPi);
    return ta;
}

} // namespace hypertile
