#include "hypertile/tiler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <set>

#include "hypertile/json_writer.hpp"

namespace hypertile {

using hyp::HPoint;
using hyp::Isometry;

namespace {

constexpr double kGrid = 1e-6;

struct PointIndex {
    std::map<std::pair<long, long>, int> cells;

    static std::pair<long, long> key(const std::array<double, 2>& d) {
        return {std::lround(d[0] / kGrid), std::lround(d[1] / kGrid)};
    }

    // id of a point already stored within tolerance, else -1
    int lookup(const std::array<double, 2>& d, const std::vector<std::array<double, 2>>& pts) const {
        auto [cx, cy] = key(d);
        for (long dx = -1; dx <= 1; ++dx)
            for (long dy = -1; dy <= 1; ++dy) {
                auto it = cells.find({cx + dx, cy + dy});
                if (it == cells.end()) continue;
                const auto& q = pts[std::size_t(it->second)];
                if (std::abs(q[0] - d[0]) <= kGrid && std::abs(q[1] - d[1]) <= kGrid) return it->second;
            }
        return -1;
    }

    void insert(const std::array<double, 2>& d, int id) { cells[key(d)] = id; }
};

HPoint kite_centroid(const std::array<HPoint, 4>& corners) {
    hyp::Vec3 s{0, 0, 0};
    for (const auto& c : corners) s = s + c.vec();
    return HPoint::from_vec(s);
}

} // namespace

TilingPatch expand(const FundamentalPolygon& f, int depth) {
    if (depth < 0) fail(errc::invalid_type, "depth must be nonnegative");
    if (depth > 8) fail(errc::invalid_type, "depth is capped at 8: matrix drift would exceed the dedup tolerance");

    TilingPatch t;
    t.p = f.p;
    t.depth = depth;

    std::vector<Isometry> gens;
    for (const auto& pr : f.pairings) {
        gens.push_back(pr.g);
        gens.push_back(pr.g.inverse());
    }

    std::vector<std::array<HPoint, 4>> base_corners;
    std::vector<HPoint> base_centers;
    for (const auto& kc : f.kites) {
        base_corners.push_back(kc.corners);
        base_centers.push_back(kite_centroid(kc.corners));
    }

    PointIndex kite_index;
    std::vector<std::array<double, 2>> kite_pts;

    std::deque<std::pair<Isometry, int>> queue;
    queue.push_back({Isometry::identity(), 0});

    while (!queue.empty()) {
        auto [W, len] = queue.front();
        queue.pop_front();

        std::vector<HPoint> centers;
        int found = 0;
        for (int i = 0; i < f.p; ++i) {
            centers.push_back(W(base_centers[std::size_t(i)]));
            int id = kite_index.lookup(centers.back().disk(), kite_pts);
            if (id >= 0) {
                ++found;
                if (t.kites[std::size_t(id)].slot != i + 1)
                    fail(errc::dedup_collision,
                         "kite of slot " + std::to_string(i + 1) + " landed on an existing slot-" +
                             std::to_string(t.kites[std::size_t(id)].slot) + " kite (copy " +
                             std::to_string(t.kites[std::size_t(id)].copy_id) + ")");
            }
        }
        if (found == f.p) continue; // this group element was already placed
        if (found != 0)
            fail(errc::dedup_collision, "copy overlaps an existing copy on " + std::to_string(found) + " of " +
                                            std::to_string(f.p) + " kites");

        int copy_id = t.copies++;
        for (int i = 0; i < f.p; ++i) {
            PlacedKite k;
            k.id = int(t.kites.size());
            k.copy_id = copy_id;
            k.slot = i + 1;
            k.word_length = len;
            k.place = W * f.kites[std::size_t(i)].place;
            for (int c = 0; c < 4; ++c) k.corners[std::size_t(c)] = W(base_corners[std::size_t(i)][std::size_t(c)]);
            k.center = centers[std::size_t(i)];
            kite_index.insert(k.center.disk(), k.id);
            kite_pts.push_back(k.center.disk());
            t.kites.push_back(std::move(k));
        }
        if (len < depth)
            for (const auto& g : gens) queue.push_back({W * g, len + 1});
    }

    // corner rings
    PointIndex corner_index;
    std::vector<std::array<double, 2>> corner_pts;
    t.kite_ring.assign(t.kites.size(), {-1, -1, -1, -1});
    for (const auto& k : t.kites) {
        for (int c = 0; c < 4; ++c) {
            std::array<double, 2> d = k.corners[std::size_t(c)].disk();
            int expected = c == 2 ? 3 : f.p;
            int rid = corner_index.lookup(d, corner_pts);
            if (rid < 0) {
                rid = int(t.rings.size());
                corner_index.insert(d, rid);
                corner_pts.push_back(d);
                t.rings.push_back({d, expected, {}, false});
            } else if (t.rings[std::size_t(rid)].expected != expected) {
                fail(errc::dedup_collision, "triangle and p-gon incenters coincide at a corner point");
            }
            t.rings[std::size_t(rid)].kites.push_back(k.id);
            t.kite_ring[std::size_t(k.id)][std::size_t(c)] = rid;
        }
    }
    for (auto& r : t.rings) {
        std::sort(r.kites.begin(), r.kites.end());
        if (int(r.kites.size()) > r.expected)
            fail(errc::dedup_collision, "corner ring holds more kites than its face size");
        r.complete = int(r.kites.size()) == r.expected;
    }

    // adjacency across full shared sides (= shared ring pairs)
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> side_map; // ring pair -> (kite, side)
    for (const auto& k : t.kites)
        for (int c = 0; c < 4; ++c) {
            int r1 = t.kite_ring[std::size_t(k.id)][std::size_t(c)];
            int r2 = t.kite_ring[std::size_t(k.id)][std::size_t((c + 1) % 4)];
            side_map[{std::min(r1, r2), std::max(r1, r2)}].push_back({k.id, c});
        }
    t.neighbors.assign(t.kites.size(), {-1, -1, -1, -1});
    for (const auto& [key, users] : side_map) {
        if (users.size() > 2) fail(errc::dedup_collision, "three kites share one side");
        if (users.size() == 2) {
            t.neighbors[std::size_t(users[0].first)][std::size_t(users[0].second)] = users[1].first;
            t.neighbors[std::size_t(users[1].first)][std::size_t(users[1].second)] = users[0].first;
        }
    }

    t.interior.assign(t.kites.size(), false);
    for (const auto& k : t.kites) {
        bool in = true;
        for (int c = 0; c < 4; ++c) in = in && t.rings[std::size_t(t.kite_ring[std::size_t(k.id)][std::size_t(c)])].complete;
        t.interior[std::size_t(k.id)] = in;
        if (in) ++t.interior_count;
    }
    return t;
}

int slot_classes(const TilingPatch& t) {
    std::set<int> slots;
    for (const auto& k : t.kites) slots.insert(k.slot);
    return int(slots.size());
}

PatchMap extract_primal(const TilingPatch& t) {
    if (t.interior_count == 0) fail(errc::empty_interior, "patch has no interior kite");
    PatchMap m;
    m.p = t.p;
    m.vertex_count = int(t.kites.size());
    m.vertex_faces = t.kite_ring;
    for (const auto& r : t.rings) m.faces.push_back(r.kites);
    std::set<std::pair<int, int>> es;
    for (const auto& k : t.kites)
        for (int nb : t.neighbors[std::size_t(k.id)])
            if (nb >= 0) es.insert({std::min(k.id, nb), std::max(k.id, nb)});
    m.edges.assign(es.begin(), es.end());
    m.interior = t.interior;
    return m;
}

std::vector<int> interior_vertex_type(const PatchMap& m, int v) {
    std::vector<int> ks;
    for (int rid : m.vertex_faces[std::size_t(v)]) ks.push_back(int(m.faces[std::size_t(rid)].size()));
    return VertexType::canonical_cycle(ks);
}

PatchPolyhedralReport check_polyhedral_patch(const PatchMap& m) {
    PatchPolyhedralReport rep;
    std::set<std::pair<int, int>> edges(m.edges.begin(), m.edges.end());
    for (int v = 0; v < m.vertex_count; ++v) {
        if (!m.interior[std::size_t(v)]) continue;
        const auto& fs = m.vertex_faces[std::size_t(v)];
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i)
            for (int j = i + 1; j < 4 && ok; ++j) {
                if (fs[std::size_t(i)] == fs[std::size_t(j)]) { ok = false; break; }
                const auto& A = m.faces[std::size_t(fs[std::size_t(i)])];
                const auto& B = m.faces[std::size_t(fs[std::size_t(j)])];
                std::vector<int> common;
                std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(common));
                if (common.size() == 1) {
                    ok = common[0] == v;
                } else if (common.size() == 2) {
                    ok = (common[0] == v || common[1] == v) && edges.count({common[0], common[1]}) > 0;
                } else {
                    ok = false;
                }
            }
        if (!ok) {
            rep.all_ok = false;
            rep.violations.push_back(v);
        }
    }
    return rep;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v + 0.0); // normalize -0
    return buf;
}

// SVG path segment for the geodesic between two disk points: a circular arc
// orthogonal to the unit circle, or a straight chord through the origin.
std::string arc_to(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    double det = 2 * (a[0] * b[1] - a[1] * b[0]);
    if (std::abs(det) < 1e-9) return "L " + fmt(b[0]) + " " + fmt(b[1]);
    // center c with 2 a.c = |a|^2+1, 2 b.c = |b|^2+1
    double ra = a[0] * a[0] + a[1] * a[1] + 1;
    double rb = b[0] * b[0] + b[1] * b[1] + 1;
    double cx = (ra * b[1] - rb * a[1]) / det;
    double cy = (rb * a[0] - ra * b[0]) / det;
    double r = std::sqrt(cx * cx + cy * cy - 1);
    double cross = (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx);
    const char* sweep = cross > 0 ? "1" : "0";
    return "A " + fmt(r) + " " + fmt(r) + " 0 0 " + sweep + " " + fmt(b[0]) + " " + fmt(b[1]);
}

const char* kPalette[12] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
                            "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295"};

} // namespace

std::string render_svg_string(const TilingPatch& t) {
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.05 -1.05 2.10 2.10\" width=\"800\" height=\"800\">\n";
    svg += "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.004\"/>\n";

    svg += "<g id=\"kites\" stroke=\"none\">\n";
    for (const auto& k : t.kites) {
        std::array<std::array<double, 2>, 4> d;
        for (int c = 0; c < 4; ++c) d[std::size_t(c)] = k.corners[std::size_t(c)].disk();
        std::string path = "M " + fmt(d[0][0]) + " " + fmt(d[0][1]);
        for (int c = 0; c < 4; ++c) path += " " + arc_to(d[std::size_t(c)], d[std::size_t((c + 1) % 4)]);
        path += " Z";
        svg += "<path d=\"" + path + "\" fill=\"" + kPalette[(k.slot - 1) % 12] + "\"/>\n";
    }
    svg += "</g>\n";

    // each shared side once
    std::map<std::pair<int, int>, std::pair<std::array<double, 2>, std::array<double, 2>>> sides;
    for (const auto& k : t.kites)
        for (int c = 0; c < 4; ++c) {
            int r1 = t.kite_ring[std::size_t(k.id)][std::size_t(c)];
            int r2 = t.kite_ring[std::size_t(k.id)][std::size_t((c + 1) % 4)];
            std::pair<int, int> key{std::min(r1, r2), std::max(r1, r2)};
            if (!sides.count(key))
                sides[key] = {k.corners[std::size_t(c)].disk(), k.corners[std::size_t((c + 1) % 4)].disk()};
        }
    svg += "<g id=\"edges\" fill=\"none\" stroke=\"#1a1a1a\" stroke-width=\"0.003\">\n";
    for (const auto& [key, ab] : sides) {
        svg += "<path d=\"M " + fmt(ab.first[0]) + " " + fmt(ab.first[1]) + " " + arc_to(ab.first, ab.second) + "\"/>\n";
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

void render_svg(const TilingPatch& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io_error, "cannot open " + path + " for writing");
    out << render_svg_string(t);
}

std::string patch_summary_json(const TilingPatch& t) {
    bool homogeneous = true;
    bool polyhedral = true;
    if (t.interior_count > 0) {
        PatchMap m = extract_primal(t);
        std::vector<int> want = VertexType::canonical_cycle({t.p, t.p, t.p, 3});
        for (int v = 0; v < m.vertex_count; ++v)
            if (m.interior[std::size_t(v)] && interior_vertex_type(m, v) != want) homogeneous = false;
        polyhedral = check_polyhedral_patch(m).all_ok;
    }
    JsonWriter w;
    w.begin_object();
    w.key("p").value(t.p);
    w.key("depth").value(t.depth);
    w.key("copies").value(t.copies);
    w.key("kite_count").value(std::int64_t(t.kites.size()));
    w.key("interior_count").value(t.interior_count);
    w.key("slot_classes").value(slot_classes(t));
    w.key("interior_homogeneous").value(homogeneous);
    w.key("interior_polyhedral").value(polyhedral);
    w.end_object();
    return w.take();
}

} // namespace hypertile
