#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hypertile/error.hpp"
#include "hypertile/hyperbolic.hpp"

namespace hypertile {

/// Exact fraction on int64, always normalized with positive denominator.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) fail(errc::invalid_type, "zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    Rational operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
    bool operator>(const Rational& o) const { return o < *this; }

    double value() const { return double(num) / double(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

enum class Curvature { spherical, euclidean, hyperbolic };

inline const char* curvature_name(Curvature c) {
    switch (c) {
        case Curvature::spherical: return "spherical";
        case Curvature::euclidean: return "euclidean";
        case Curvature::hyperbolic: return "hyperbolic";
    }
    return "?";
}

/// Cyclic tuple of face sizes around a vertex, stored canonically:
/// lexicographically least over all rotations and the reflection.
class VertexType {
public:
    explicit VertexType(std::vector<int> ks);

    const std::vector<int>& faces() const { return ks_; }
    int degree() const { return int(ks_.size()); }

    // Sum of (k-2)/k over the tuple, computed exactly.
    Rational alpha() const;

    std::string str() const;

    bool operator==(const VertexType& o) const { return ks_ == o.ks_; }
    bool operator!=(const VertexType& o) const { return !(*this == o); }
    bool operator<(const VertexType& o) const { return ks_ < o.ks_; }

    static std::vector<int> canonical_cycle(const std::vector<int>& ks);

private:
    std::vector<int> ks_;
};

/// Curvature classification of a vertex type plus, in the hyperbolic case,
/// the common edge length making the face angles close up to 2*pi.
struct TypeAnalysis {
    VertexType type;
    Rational alpha;
    Curvature curvature = Curvature::euclidean;
    std::optional<double> edge_length;          // present iff hyperbolic
    std::map<int, hyp::PolygonMetrics> metrics; // per distinct face size, iff hyperbolic
    double angle_sum_residual = 0;              // |sum theta_i - 2 pi|, iff hyperbolic

    double theta(int k) const { return metrics.at(k).theta; }
};

// Angle available around a vertex if all faces of `type` are regular with
// edge length s: sum of 2*asin(cos(pi/k_i)/cosh(s/2)). Strictly decreasing
// in s, with value pi*alpha at s=0.
double angle_sum(const VertexType& type, double s);

// Classifies by exact rational comparison of alpha against 2; for hyperbolic
// types solves angle_sum(s) = 2*pi by bisection on (0, 10].
TypeAnalysis analyze_type(const VertexType& type);

} // namespace hypertile
