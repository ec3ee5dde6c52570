#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hypertile/vertex_type.hpp"

using namespace hypertile;

TEST_CASE("canonical form is idempotent and reflection-invariant") {
    VertexType a({5, 5, 3, 5});
    VertexType b({3, 5, 5, 5});
    CHECK(a == b);
    CHECK(a.str() == "[3,5,5,5]");
    CHECK(VertexType(a.faces()) == a);

    // a genuinely chiral-looking cycle and its mirror
    VertexType c({3, 4, 5, 6});
    VertexType d({6, 5, 4, 3});
    CHECK(c == d);
}

TEST_CASE("invalid types are rejected") {
    CHECK_THROWS_AS(VertexType({3, 3}), Error);
    CHECK_THROWS_AS(VertexType({3, 3, 2}), Error);
}

TEST_CASE("alpha is exact") {
    CHECK(VertexType({4, 4, 4, 4}).alpha() == Rational(2));
    CHECK(VertexType({3, 3, 3, 3}).alpha() == Rational(4, 3));
    CHECK(VertexType({5, 5, 5, 3}).alpha() == Rational(32, 15));
    CHECK(VertexType({7, 7, 7, 3}).alpha() == Rational(52, 21));
}

TEST_CASE("classification is exact") {
    CHECK(analyze_type(VertexType({4, 4, 4, 4})).curvature == Curvature::euclidean);
    CHECK_FALSE(analyze_type(VertexType({4, 4, 4, 4})).edge_length.has_value());
    CHECK(analyze_type(VertexType({3, 3, 3, 3})).curvature == Curvature::spherical);
    CHECK(analyze_type(VertexType({5, 5, 5, 3})).curvature == Curvature::hyperbolic);
    // near-euclidean hyperbolic type: exact rationals must not misclassify
    CHECK(analyze_type(VertexType({3, 7, 43})).curvature == Curvature::hyperbolic);
    CHECK(VertexType({3, 7, 43}).alpha() > Rational(2));
    CHECK(analyze_type(VertexType({3, 7, 42})).curvature == Curvature::euclidean);
}

TEST_CASE("hyperbolic edge length closes the angle sum") {
    TypeAnalysis ta = analyze_type(VertexType({5, 5, 5, 3}));
    REQUIRE(ta.edge_length.has_value());
    CHECK(*ta.edge_length == doctest::Approx(0.618).epsilon(2e-3));
    CHECK(std::abs(angle_sum(ta.type, *ta.edge_length) - 2 * hyp::kPi) < 1e-12);
    CHECK(ta.angle_sum_residual < 1e-10);
    // the per-face metrics share the solved edge length
    for (const auto& [k, pm] : ta.metrics) CHECK(pm.s == doctest::Approx(*ta.edge_length).epsilon(1e-9));
    // 3 theta_p + theta_3 = 2 pi
    CHECK(3 * ta.theta(5) + ta.theta(3) == doctest::Approx(2 * hyp::kPi).epsilon(1e-12));
}

TEST_CASE("angle sum is strictly decreasing and starts at pi*alpha") {
    for (int p : {5, 7, 9, 11}) {
        VertexType t({p, p, p, 3});
        CHECK(std::abs(angle_sum(t, 0) - hyp::kPi * t.alpha().value()) < 1e-12);
        double prev = angle_sum(t, 1e-9);
        for (int i = 1; i <= 100; ++i) {
            double s = 6.0 * i / 100;
            double a = angle_sum(t, s);
            CHECK(a < prev);
            prev = a;
        }
    }
}
