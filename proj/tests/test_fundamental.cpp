#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "hypertile/fundamental.hpp"

using namespace hypertile;
using namespace hypertile::hyp;

TEST_CASE("kite preconditions") {
    CHECK_THROWS_AS((void)build_kite(4), Error);
    CHECK_THROWS_AS((void)build_kite(3), Error);
    try {
        (void)build_kite(4);
    } catch (const Error& e) {
        CHECK(e.code() == errc::parity_rejected);
    }
    try {
        (void)build_kite(3);
    } catch (const Error& e) {
        CHECK(e.code() == errc::not_hyperbolic);
    }
}

TEST_CASE("kite corner angles and area") {
    for (int p : {5, 7, 9}) {
        DualKite k = build_kite(p);
        double ap = 2 * kPi / p, at = 2 * kPi / 3;
        CHECK(std::abs(k.measured_angles[0] - ap) < 1e-9);
        CHECK(std::abs(k.measured_angles[1] - ap) < 1e-9);
        CHECK(std::abs(k.measured_angles[2] - at) < 1e-9);
        CHECK(std::abs(k.measured_angles[3] - ap) < 1e-9);
        // Gauss-Bonnet: angle defect of the quadrilateral
        double expected_area = 2 * kPi - (3 * ap + at);
        CHECK(std::abs(k.measured_area - expected_area) < 1e-9);
        if (p == 5) CHECK(expected_area == doctest::Approx(2 * kPi / 15).epsilon(1e-12));
    }
}

TEST_CASE("kite sides join incenters across edge midpoints orthogonally") {
    for (int p : {5, 7}) {
        DualKite k = build_kite(p);
        double tp = k.pgon.theta;
        double s = k.edge_length;
        // radial sides have length 2 r_p, apex sides r_p + r_3
        CHECK(std::abs(distance(k.center, k.flank1) - 2 * k.pgon.r) < 1e-9);
        CHECK(std::abs(distance(k.center, k.flank2) - 2 * k.pgon.r) < 1e-9);
        CHECK(std::abs(distance(k.flank1, k.apex) - (k.pgon.r + k.tri.r)) < 1e-9);
        CHECK(std::abs(distance(k.flank2, k.apex) - (k.pgon.r + k.tri.r)) < 1e-9);

        // the primal edge between faces B and C leaves the origin at angle
        // 2*theta_p; its midpoint lies on the segment center--flank1 and the
        // crossing is orthogonal
        HPoint mid = HPoint::polar(2 * tp, s / 2);
        CHECK(std::abs(distance(k.center, mid) + distance(mid, k.flank1) - distance(k.center, k.flank1)) < 1e-9);
        HPoint edge_end = HPoint::polar(2 * tp, s);
        CHECK(std::abs(angle_at(mid, k.center, edge_end) - kPi / 2) < 1e-8);
    }
}

TEST_CASE("fundamental polygon structure") {
    for (int p : {5, 7, 9, 11}) {
        FundamentalPolygon f = build_fundamental_polygon(p);
        CHECK(f.vertex_count() == 2 * p + 2);
        CHECK(int(f.pairings.size()) == p + 1);
        CHECK(int(f.kites.size()) == p);

        // each side is in exactly one pairing
        std::set<int> covered;
        for (const auto& pr : f.pairings) {
            CHECK(covered.insert(pr.source).second);
            CHECK(covered.insert(pr.target).second);
        }
        CHECK(int(covered.size()) == 2 * p + 2);

        // paired sides have equal length and the isometry maps the directed
        // source side onto the directed target side endpoint-to-endpoint
        for (const auto& pr : f.pairings) {
            CHECK(std::abs(f.side_length(pr.source) - f.side_length(pr.target)) < 1e-9);
            const DirectedSide& a = f.sides[std::size_t(pr.source)];
            const DirectedSide& b = f.sides[std::size_t(pr.target)];
            CHECK(distance(pr.g(f.vertices[std::size_t(a.tail)].pos), f.vertices[std::size_t(b.tail)].pos) < 1e-9);
            CHECK(distance(pr.g(f.vertices[std::size_t(a.head)].pos), f.vertices[std::size_t(b.head)].pos) < 1e-9);
            CHECK(pr.g.parity() == +1);
        }

        // the p kite copies fill the full angle at the center: each copy
        // presents one corner at the center (the half-turn copies present the
        // image of a flank corner there)
        double total = 0;
        for (const auto& kc : f.kites) {
            int at_center = -1;
            for (int c = 0; c < 4; ++c)
                if (distance(kc.corners[std::size_t(c)], f.center) < 1e-9) at_center = c;
            REQUIRE(at_center >= 0);
            total += angle_at(f.center, kc.corners[std::size_t((at_center + 3) % 4)],
                              kc.corners[std::size_t((at_center + 1) % 4)]);
        }
        CHECK(std::abs(total - 2 * kPi) < 1e-9);

        // the two declared midpoints bisect their dotted sides
        for (int base : {p, p + 3}) {
            int pos = f.position_of(VertexLabel{base, true});
            REQUIRE(pos >= 0);
            int n = f.vertex_count();
            const HPoint& before = f.vertices[std::size_t((pos + n - 1) % n)].pos;
            const HPoint& after = f.vertices[std::size_t((pos + 1) % n)].pos;
            const HPoint& mid = f.vertices[std::size_t(pos)].pos;
            CHECK(std::abs(distance(before, mid) - distance(mid, after)) < 1e-9);
            CHECK(std::abs(angle_at(mid, before, after) - kPi) < 1e-9);
        }
    }
}

TEST_CASE("fundamental polygon boundary is a simple closed curve at render resolution") {
    FundamentalPolygon f = build_fundamental_polygon(7);
    int n = f.vertex_count();
    auto seg = [&](int i) {
        auto a = f.vertices[std::size_t(i)].pos.disk();
        auto b = f.vertices[std::size_t((i + 1) % n)].pos.disk();
        return std::pair{a, b};
    };
    auto crosses = [](auto s1, auto s2) {
        auto [a, b] = s1;
        auto [c, d] = s2;
        auto orient = [](std::array<double, 2> p, std::array<double, 2> q, std::array<double, 2> r) {
            return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
        };
        return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue; // adjacent around the wrap
            CHECK_FALSE(crosses(seg(i), seg(j)));
        }
}

TEST_CASE("cycle walk partitions the boundary into the announced cells") {
    for (int p : {5, 7}) {
        FundamentalPolygon f = build_fundamental_polygon(p);
        CycleReport rep = trace_cycles(f);
        CHECK(rep.partition_ok);
        CHECK(int(rep.cycles.size()) == 5 + (p - 3));

        int covered = 0;
        for (const auto& c : rep.cycles) {
            covered += int(c.members.size());
            CHECK(c.partition_match); // member sets equal the announced cells
        }
        CHECK(covered == 2 * p + 2);
    }
}

TEST_CASE("p=5 cycle partition cells are exactly the announced seven") {
    FundamentalPolygon f = build_fundamental_polygon(5);
    CycleReport rep = trace_cycles(f);
    std::set<std::set<std::string>> got;
    for (const auto& c : rep.cycles) got.insert({c.member_labels.begin(), c.member_labels.end()});
    std::set<std::set<std::string>> want{
        {"v_2", "v_7"}, {"v_3", "v_5", "v_6"}, {"v_8", "v_9", "v_1"}, {"v'_5"}, {"v'_8"}, {"v_4"}, {"v_10"}};
    CHECK(got == want);
}

TEST_CASE("measured cycle sums: big cells and midpoints match, singletons are proper but 2*pi/3") {
    // independent bookkeeping oracle: boundary angles are 4pi/p at junctions,
    // 2pi/3 at apexes, 2pi/p at the two half-turn image corners, 4pi/3 where
    // the two half-turn copies meet, pi at the declared midpoints
    for (int p : {5, 7, 9}) {
        FundamentalPolygon f = build_fundamental_polygon(p);
        CycleReport rep = trace_cycles(f);
        double boundary_total = 0;
        for (const auto& c : rep.cycles) boundary_total += c.measured_sum;
        // (2p+2)-gon interior angle total = (n-2)*pi - area, with the area
        // p * (kite angle defect) = (4p/3 - 6)*pi
        double gauss_bonnet = (2 * p) * kPi - (4.0 * p / 3 - 6) * kPi;
        CHECK(std::abs(boundary_total - gauss_bonnet) < 1e-8);

        int match = 0, mismatch = 0;
        for (const auto& c : rep.cycles) {
            // every cycle is a proper elliptic cycle: the sum is 2*pi/m
            CHECK(c.residual_nearest < 1e-8);
            if (c.sum_match)
                ++match;
            else
                ++mismatch;
            if (c.members.size() == 1 && !f.vertices[std::size_t(c.members[0])].label.prime) {
                // announced 2*pi/p, measured 2*pi/3
                CHECK(std::abs(c.measured_sum - 2 * kPi / 3) < 1e-8);
                CHECK_FALSE(c.sum_match);
                CHECK(c.nearest_m == 3);
            }
        }
        CHECK(match == 5);
        CHECK(mismatch == p - 3);
        CHECK_FALSE(rep.all_match);
    }
}

TEST_CASE("cycle report json is deterministic") {
    FundamentalPolygon f = build_fundamental_polygon(5);
    std::string a = trace_cycles(f).to_json();
    std::string b = trace_cycles(build_fundamental_polygon(5)).to_json();
    CHECK(a == b);
    CHECK(a.find("\"p\": 5") != std::string::npos);
    CHECK(a.find("\"pairings\"") != std::string::npos);
    CHECK(a.find("\"verdict\"") != std::string::npos);
}

TEST_CASE("vt obstruction") {
    for (int p : {5, 7, 11, 13, 17, 19}) {
        ObstructionReport r = vt_obstruction_p33(p);
        CHECK(r.obstructed);
        CHECK_FALSE(r.contact_counts.has_value());
    }
    for (int p : {9, 12, 15}) {
        ObstructionReport r = vt_obstruction_p33(p);
        CHECK_FALSE(r.obstructed);
        if (p % 3 == 0) {
            REQUIRE(r.contact_counts.has_value());
            CHECK(r.contact_counts->first == p / 3);
            CHECK(r.contact_counts->second == p / 3);
        }
    }
    ObstructionReport r9 = vt_obstruction_p33(9);
    CHECK(r9.contact_counts->first == 3);
    CHECK_FALSE(vt_obstruction_p33(4).obstructed);
    CHECK_THROWS_AS((void)vt_obstruction_p33(3), Error);
}
