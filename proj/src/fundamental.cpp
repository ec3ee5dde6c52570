#include "hypertile/fundamental.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "hypertile/json_writer.hpp"

namespace hypertile {

using hyp::HPoint;
using hyp::Isometry;
using hyp::kPi;

DualKite build_kite(int p) {
    if (p < 3) fail(errc::invalid_type, "p must be at least 3");
    if (p % 2 == 0) fail(errc::parity_rejected, "the construction indexes kites by (p-1)/2 and needs p odd");
    if (p < 5) fail(errc::not_hyperbolic, "[3,3,3,3] is not of hyperbolic type");

    TypeAnalysis ta = analyze_type(VertexType({p, p, p, 3}));
    if (ta.curvature != Curvature::hyperbolic) fail(errc::not_hyperbolic, "type is not hyperbolic");

    DualKite k;
    k.p = p;
    k.pgon = ta.metrics.at(p);
    k.tri = ta.metrics.at(3);
    k.edge_length = *ta.edge_length;

    // Faces around the primal vertex (at the origin), counterclockwise:
    // p-gons A, B, C then the triangle T. Each incenter sits at distance
    // R_k from the vertex along the face's angle bisector.
    double tp = k.pgon.theta;
    double tt = k.tri.theta;
    HPoint cA = HPoint::polar(tp / 2, k.pgon.R);
    HPoint cB = HPoint::polar(3 * tp / 2, k.pgon.R);
    HPoint cC = HPoint::polar(5 * tp / 2, k.pgon.R);
    HPoint cT = HPoint::polar(3 * tp + tt / 2, k.tri.R);

    k.center = cB;
    k.flank1 = cC;
    k.apex = cT;
    k.flank2 = cA;

    k.measured_angles = {
        hyp::angle_at(k.center, k.flank2, k.flank1),
        hyp::angle_at(k.flank1, k.center, k.apex),
        hyp::angle_at(k.apex, k.flank1, k.flank2),
        hyp::angle_at(k.flank2, k.apex, k.center),
    };

    // Area by angle defect of the two halves cut along center--apex.
    auto tri_area = [](const HPoint& a, const HPoint& b, const HPoint& c) {
        return kPi - hyp::angle_at(a, b, c) - hyp::angle_at(b, c, a) - hyp::angle_at(c, a, b);
    };
    k.measured_area = tri_area(k.center, k.flank1, k.apex) + tri_area(k.center, k.apex, k.flank2);
    return k;
}

namespace {

std::string side_name(const VertexLabel& a) {
    // side from label a toward the ccw-next vertex
    return (a.prime ? "e'_" : "e_") + std::to_string(a.base);
}

} // namespace

int FundamentalPolygon::position_of(const VertexLabel& l) const {
    for (int i = 0; i < int(vertices.size()); ++i)
        if (vertices[std::size_t(i)].label == l) return i;
    return -1;
}

std::pair<int, int> FundamentalPolygon::incident_sides(int pos) const {
    int n = int(sides.size());
    return {(pos + n - 1) % n, pos};
}

double FundamentalPolygon::side_length(int side) const {
    int n = int(vertices.size());
    return hyp::distance(vertices[std::size_t(side)].pos, vertices[std::size_t((side + 1) % n)].pos);
}

FundamentalPolygon build_fundamental_polygon(int p) {
    FundamentalPolygon f;
    f.p = p;
    f.kite = build_kite(p);
    f.center = HPoint::origin();

    const double delta = 2 * kPi / p;
    const double rp = f.kite.pgon.r;
    const int m = (p - 1) / 2;

    // Base kite in the slot-1 frame: center at the origin, one flank on the
    // positive x-axis, apex at angle pi/p.
    Isometry h = hyp::frame(f.kite.center, f.kite.flank1).inverse();
    std::array<HPoint, 4> base{h(f.kite.center), h(f.kite.flank1), h(f.kite.apex), h(f.kite.flank2)};
    if (std::atan2(base[2].y(), base[2].x()) < 0) {
        Isometry mir = Isometry::x_reflection();
        for (auto& c : base) c = mir(c);
    }

    // Placements: the seed copy sits in slot (p-1)/2 and is reflected
    // successively across the radial geodesics; the last two copies are
    // half-turns about the midpoints of the free radial sides.
    std::vector<Isometry> g(std::size_t(p) + 1);
    g[std::size_t(m)] = Isometry::rotation((m - 1) * delta);
    for (int i = m - 1; i >= 1; --i)
        g[std::size_t(i)] = hyp::reflect_across(f.center, HPoint::polar(i * delta, 1.0)) * g[std::size_t(i + 1)];
    for (int i = m + 1; i <= p - 2; ++i)
        g[std::size_t(i)] = hyp::reflect_across(f.center, HPoint::polar((i - 1) * delta, 1.0)) * g[std::size_t(i - 1)];
    Isometry h_hi = hyp::half_turn(HPoint::polar((p - 2) * delta, rp));
    Isometry h_lo = hyp::half_turn(HPoint::polar(0.0, rp));
    g[std::size_t(p - 1)] = h_hi * g[std::size_t(p - 2)];
    g[std::size_t(p)] = h_lo * g[std::size_t(1)];

    for (int i = 1; i <= p; ++i) {
        KiteCopy kc;
        kc.slot = i;
        kc.place = g[std::size_t(i)];
        for (int c = 0; c < 4; ++c) kc.corners[std::size_t(c)] = g[std::size_t(i)](base[std::size_t(c)]);
        f.kites.push_back(kc);
    }

    // Boundary of the kite union, counterclockwise from the outer radial
    // corner of slot 1: junctions w_k, apexes f_k, then the three corners
    // contributed by the two half-turn copies.
    std::vector<HPoint> ring;
    ring.reserve(std::size_t(2 * p));
    for (int kk = 0; kk <= p - 2; ++kk) {
        ring.push_back(HPoint::polar(kk * delta, 2 * rp));
        if (kk < p - 2) ring.push_back(g[std::size_t(kk + 1)](base[2]));
    }
    ring.push_back(h_hi(HPoint::polar((p - 3) * delta, 2 * rp))); // a'
    ring.push_back(h_hi(g[std::size_t(p - 2)](base[2])));         // f'
    ring.push_back(h_lo(HPoint::polar(delta, 2 * rp)));           // a''

    // Position j on the ring carries label v_{(p+3+j) mod 2p + 1}; the two
    // dotted boundary sides are then {v_p, v_{p+1}} and {v_{p+3}, v_{p+4}},
    // whose midpoints become v'_p and v'_{p+3}.
    for (int j = 0; j < 2 * p; ++j) {
        int lbl = (p + 3 + j) % (2 * p) + 1;
        f.vertices.push_back({VertexLabel{lbl, false}, ring[std::size_t(j)]});
        if (lbl == p || lbl == p + 3) {
            HPoint mid = hyp::midpoint(ring[std::size_t(j)], ring[std::size_t((j + 1) % (2 * p))]);
            f.vertices.push_back({VertexLabel{lbl, true}, mid});
        }
    }

    const int n = int(f.vertices.size()); // 2p+2
    for (int j = 0; j < n; ++j) f.sides.push_back({side_name(f.vertices[std::size_t(j)].label), j, (j + 1) % n});

    // Orientation arrows: outward from v'_p, v'_{p+3} and the even singleton
    // vertices, inward to v_2 and v_{p+2}.
    auto flip = [&](int side) { std::swap(f.sides[std::size_t(side)].tail, f.sides[std::size_t(side)].head); };
    auto side_from = [&](const VertexLabel& l) {
        int pos = f.position_of(l);
        return pos; // side whose ccw tail is l
    };
    auto side_into = [&](const VertexLabel& l) {
        int pos = f.position_of(l);
        return (pos + n - 1) % n;
    };

    std::vector<int> singles;
    for (int i = 4; i <= p - 1; i += 2) singles.push_back(i);
    for (int i = p + 5; i <= 2 * p; i += 2) singles.push_back(i);

    // e_2 points into v_2 and e_{p+2} into v_{p+2}; all other ccw sides
    // already start at their arrow tail.
    flip(side_into(VertexLabel{3, false}));     // e_2: v_3 -> v_2
    flip(side_into(VertexLabel{p + 3, false})); // e_{p+2}: v_{p+3} -> v_{p+2}
    for (int i : singles) flip(side_into(VertexLabel{i, false})); // e_{i-1}: v_i -> v_{i-1}
    flip(side_into(VertexLabel{p, true}));      // e_p: v'_p -> v_p
    flip(side_into(VertexLabel{p + 3, true}));  // e_{p+3}: v'_{p+3} -> v_{p+3}

    auto add_pairing = [&](int src, int tgt) {
        const DirectedSide& a = f.sides[std::size_t(src)];
        const DirectedSide& b = f.sides[std::size_t(tgt)];
        Isometry ga = hyp::frame(f.vertices[std::size_t(a.tail)].pos, f.vertices[std::size_t(a.head)].pos);
        Isometry gb = hyp::frame(f.vertices[std::size_t(b.tail)].pos, f.vertices[std::size_t(b.head)].pos);
        f.pairings.push_back({src, tgt, gb * ga.inverse()});
    };

    auto side_at = [&](const VertexLabel& tail_ccw) { return side_from(tail_ccw); };

    add_pairing(side_at(VertexLabel{1, false}), side_into(VertexLabel{p + 3, false})); // [e_1, e_{p+2}]
    add_pairing(side_into(VertexLabel{3, false}), side_at(VertexLabel{p + 1, false})); // [e_2, e_{p+1}]
    add_pairing(side_at(VertexLabel{p, false}), side_at(VertexLabel{p, true}));        // [e_p, e'_p]
    add_pairing(side_at(VertexLabel{p + 3, false}), side_at(VertexLabel{p + 3, true})); // [e_{p+3}, e'_{p+3}]
    for (int i : singles)
        add_pairing(side_at(VertexLabel{i, false}), side_into(VertexLabel{i, false})); // [e_i, e_{i-1}]

    f.labeling_note =
        "v at the origin; copy V_i spans the sector [(i-1)*2pi/p, i*2pi/p]; "
        "v_" + std::to_string(p + 4) + " is the outer radial corner of V_1 and labels increase counterclockwise";
    return f;
}

std::vector<std::pair<std::vector<VertexLabel>, double>> expected_cycles(int p) {
    std::vector<std::pair<std::vector<VertexLabel>, double>> out;
    out.push_back({{{2, false}, {p + 2, false}}, 2 * kPi});
    std::vector<VertexLabel> b;
    for (int i = 3; i <= p; i += 2) b.push_back({i, false});
    b.push_back({p + 1, false});
    out.push_back({b, 2 * kPi});
    std::vector<VertexLabel> c{{p + 3, false}, {p + 4, false}};
    for (int i = p + 6; i <= 2 * p - 1; i += 2) c.push_back({i, false});
    c.push_back({1, false});
    out.push_back({c, 2 * kPi});
    out.push_back({{{p, true}}, kPi});
    out.push_back({{{p + 3, true}}, kPi});
    for (int i = 4; i <= p - 1; i += 2) out.push_back({{{i, false}}, 2 * kPi / p});
    for (int i = p + 5; i <= 2 * p; i += 2) out.push_back({{{i, false}}, 2 * kPi / p});
    return out;
}

CycleReport trace_cycles(const FundamentalPolygon& f, double match_tol) {
    CycleReport rep;
    rep.p = f.p;
    rep.boundary_vertex_count = f.vertex_count();
    rep.pairings = f.pairings;
    rep.labeling_note = f.labeling_note;

    const int n = f.vertex_count();
    std::vector<int> pairing_of_side(std::size_t(n), -1);
    for (int i = 0; i < int(f.pairings.size()); ++i) {
        pairing_of_side[std::size_t(f.pairings[std::size_t(i)].source)] = i;
        pairing_of_side[std::size_t(f.pairings[std::size_t(i)].target)] = i;
    }

    // One step of the vertex-cycle walk: jump across the pairing of side s,
    // then turn to the other side at the image vertex.
    auto step = [&](int u, int s) {
        const SidePairing& pr = f.pairings[std::size_t(pairing_of_side[std::size_t(s)])];
        const DirectedSide& from = f.sides[std::size_t(pr.source == s ? pr.source : pr.target)];
        const DirectedSide& to = f.sides[std::size_t(pr.source == s ? pr.target : pr.source)];
        int u2;
        if (u == from.tail)
            u2 = to.tail;
        else if (u == from.head)
            u2 = to.head;
        else
            fail(errc::non_closing_cycle, "walk vertex not on its side");
        int arrived = pr.source == s ? pr.target : pr.source;
        auto [sa, sb] = f.incident_sides(u2);
        int next = (sa == arrived) ? sb : sa;
        return std::pair<int, int>{u2, next};
    };

    std::vector<bool> seen(std::size_t(n), false);
    std::vector<std::vector<int>> cycles;
    for (int start = 0; start < n; ++start) {
        if (seen[std::size_t(start)]) continue;
        std::vector<int> members;
        int u = start, s = f.incident_sides(start).second;
        const int u0 = u, s0 = s;
        int guard = 0;
        do {
            if (!seen[std::size_t(u)]) {
                seen[std::size_t(u)] = true;
                members.push_back(u);
            }
            std::tie(u, s) = step(u, s);
            if (++guard > 10 * n)
                fail(errc::non_closing_cycle, "cycle walk did not return after " + std::to_string(guard) + " steps");
        } while (u != u0 || s != s0);
        cycles.push_back(std::move(members));
    }

    int covered = 0;
    for (const auto& c : cycles) covered += int(c.size());
    rep.partition_ok = covered == n;

    auto expected = expected_cycles(f.p);
    auto key_of = [&](const std::vector<VertexLabel>& ls) {
        std::set<std::string> k;
        for (const auto& l : ls) k.insert(l.str());
        return k;
    };
    std::map<std::set<std::string>, std::pair<double, std::string>> expect_by_set;
    for (const auto& [labels, target] : expected) {
        std::string text;
        for (const auto& l : labels) text += (text.empty() ? "" : ",") + l.str();
        expect_by_set[key_of(labels)] = {target, text};
    }

    rep.all_match = true;
    for (const auto& mem : cycles) {
        CycleCell cell;
        cell.members = mem;
        std::set<std::string> key;
        for (int u : mem) {
            cell.member_labels.push_back(f.vertices[std::size_t(u)].label.str());
            key.insert(cell.member_labels.back());
        }
        double sum = 0;
        for (int u : mem) {
            const HPoint& prev = f.vertices[std::size_t((u + n - 1) % n)].pos;
            const HPoint& next = f.vertices[std::size_t((u + 1) % n)].pos;
            sum += hyp::interior_angle(f.vertices[std::size_t(u)].pos, prev, next);
        }
        cell.measured_sum = sum;
        cell.nearest_m = std::max(1, int(std::lround(2 * kPi / sum)));
        cell.residual_nearest = std::abs(sum - 2 * kPi / cell.nearest_m);
        auto it = expect_by_set.find(key);
        if (it != expect_by_set.end()) {
            cell.partition_match = true;
            cell.paper_expected = it->second.first;
            cell.expected_cell = it->second.second;
            cell.sum_match = std::abs(sum - it->second.first) < match_tol;
        }
        rep.all_match = rep.all_match && cell.sum_match;
        rep.cycles.push_back(std::move(cell));
    }
    rep.all_match = rep.all_match && rep.partition_ok && cycles.size() == expected.size();
    return rep;
}

std::string CycleReport::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("p").value(p);
    w.key("boundary_vertex_count").value(boundary_vertex_count);
    w.key("pairings").begin_array();
    for (const auto& pr : pairings) {
        w.begin_object();
        w.key("source").value(std::int64_t(pr.source));
        w.key("target").value(std::int64_t(pr.target));
        w.key("matrix").begin_array();
        for (double v : pr.g.matrix().a) w.value(v);
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.key("cycles").begin_array();
    for (const auto& c : cycles) {
        w.begin_object();
        w.key("members").begin_array();
        for (const auto& l : c.member_labels) w.value(l);
        w.end_array();
        w.key("measured_sum").value(c.measured_sum);
        w.key("nearest_m").value(std::int64_t(c.nearest_m));
        w.key("residual").value(c.residual_nearest);
        if (c.paper_expected)
            w.key("paper_expected").value(*c.paper_expected);
        else
            w.key("paper_expected").value("none");
        w.key("expected_cell").value(c.expected_cell);
        w.key("verdict").value(c.verdict());
        w.end_object();
    }
    w.end_array();
    w.key("partition_ok").value(partition_ok);
    w.key("all_match").value(all_match);
    w.key("labeling").value(labeling_note);
    w.end_object();
    return w.take();
}

ObstructionReport vt_obstruction_p33(int p) {
    if (p < 4) fail(errc::invalid_type, "obstruction argument needs p >= 4");
    ObstructionReport r;
    r.p = p;
    if (p % 3 == 0) {
        r.obstructed = false;
        r.contact_counts = {long(p / 3), long(p / 3)};
        r.reason = "contact balance 2i+j=p with i=j admits i=j=" + std::to_string(p / 3) +
                   "; for p=6n the [(6n)^3,3] family is vertex-transitive";
        return r;
    }
    if (p % 2 == 0) {
        r.obstructed = false;
        r.reason = "argument requires p odd (each p-gon must meet some triangle in a single vertex); "
                   "no obstruction asserted for even p";
        return r;
    }
    r.obstructed = true;
    r.reason = "p odd, not a multiple of 3 (p = " + std::to_string(p % 6) +
               " mod 6): a single p-gon contact class needs 2i+j=p with i=j, so 3 | p; "
               "both p = 1 and p = 5 mod 6 are covered by this criterion";
    return r;
}

} // namespace hypertile
