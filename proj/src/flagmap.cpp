#include "hypertile/flagmap.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>

namespace hypertile {

std::optional<ValidationIssue> validate(const FlagMap& m) {
    if (m.n <= 0) return ValidationIssue{errc::invalid_type, "empty flag set"};
    for (int g = 0; g < 3; ++g) {
        const auto& s = m.gen(g);
        if (int(s.size()) != m.n)
            return ValidationIssue{errc::invalid_type, "s" + std::to_string(g) + " has wrong length"};
        for (int i = 0; i < m.n; ++i) {
            int j = s[std::size_t(i)];
            if (j < 0 || j >= m.n)
                return ValidationIssue{errc::invalid_type, "s" + std::to_string(g) + " image out of range at flag " +
                                                                std::to_string(i)};
        }
        for (int i = 0; i < m.n; ++i) {
            if (s[std::size_t(s[std::size_t(i)])] != i)
                return ValidationIssue{errc::not_involution,
                                       "s" + std::to_string(g) + " is not an involution at flag " + std::to_string(i)};
            if (s[std::size_t(i)] == i)
                return ValidationIssue{errc::fixed_point,
                                       "s" + std::to_string(g) + " fixes flag " + std::to_string(i)};
        }
    }
    for (int i = 0; i < m.n; ++i) {
        int j = m.s0[std::size_t(m.s2[std::size_t(i)])];
        if (j == i) return ValidationIssue{errc::edge_degeneracy, "s0*s2 fixes flag " + std::to_string(i)};
        if (m.s0[std::size_t(m.s2[std::size_t(j)])] != i)
            return ValidationIssue{errc::edge_degeneracy, "s0*s2 is not an involution at flag " + std::to_string(i)};
    }
    // connectivity under all three involutions
    std::vector<char> seen(std::size_t(m.n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        for (int g = 0; g < 3; ++g) {
            int t = m.gen(g)[std::size_t(f)];
            if (!seen[std::size_t(t)]) {
                seen[std::size_t(t)] = 1;
                ++reached;
                stack.push_back(t);
            }
        }
    }
    if (reached != m.n) return ValidationIssue{errc::disconnected, "flag action is not transitive"};
    return std::nullopt;
}

void require_valid(const FlagMap& m) {
    if (auto issue = validate(m)) fail(issue->code, issue->detail);
}

Orbits flag_orbits(const FlagMap& m, std::initializer_list<int> gens) {
    Orbits o;
    o.id.assign(std::size_t(m.n), -1);
    for (int f = 0; f < m.n; ++f) {
        if (o.id[std::size_t(f)] != -1) continue;
        int idx = o.count++;
        o.rep.push_back(f);
        o.size.push_back(0);
        std::vector<int> stack{f};
        o.id[std::size_t(f)] = idx;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            ++o.size[std::size_t(idx)];
            for (int g : gens) {
                int t = m.gen(g)[std::size_t(x)];
                if (o.id[std::size_t(t)] == -1) {
                    o.id[std::size_t(t)] = idx;
                    stack.push_back(t);
                }
            }
        }
    }
    return o;
}

namespace {

struct Incidence {
    Orbits vertices, edges, faces;
};

Incidence incidence(const FlagMap& m) {
    return {flag_orbits(m, {1, 2}), flag_orbits(m, {0, 2}), flag_orbits(m, {0, 1})};
}

// Face sizes around a vertex, read from its least flag by alternating s1, s2.
std::vector<int> vertex_type_cycle(const FlagMap& m, const Incidence& inc, int vertex) {
    int start = inc.vertices.rep[std::size_t(vertex)];
    int d = inc.vertices.size[std::size_t(vertex)] / 2;
    std::vector<int> ks;
    int f = start;
    for (int i = 0; i < d; ++i) {
        ks.push_back(inc.faces.size[std::size_t(inc.faces.id[std::size_t(f)])] / 2);
        f = m.s2[std::size_t(m.s1[std::size_t(f)])];
    }
    return ks;
}

std::pair<int, int> edge_endpoints(const FlagMap& m, const Incidence& inc, int edge) {
    int f = inc.edges.rep[std::size_t(edge)];
    int a = inc.vertices.id[std::size_t(f)];
    int b = inc.vertices.id[std::size_t(m.s0[std::size_t(f)])];
    return {std::min(a, b), std::max(a, b)};
}

} // namespace

bool is_simple(const FlagMap& m) {
    Incidence inc = incidence(m);
    std::set<std::pair<int, int>> pairs;
    for (int e = 0; e < inc.edges.count; ++e) {
        auto [a, b] = edge_endpoints(m, inc, e);
        if (a == b) return false;           // loop
        if (!pairs.insert({a, b}).second) return false; // parallel edge
    }
    return true;
}

PolyhedralReport is_polyhedral(const FlagMap& m) {
    PolyhedralReport rep;
    if (!is_simple(m)) return rep;
    Incidence inc = incidence(m);

    std::vector<std::set<int>> face_vertices(std::size_t(inc.faces.count));
    std::vector<std::set<int>> face_edges(std::size_t(inc.faces.count));
    for (int f = 0; f < m.n; ++f) {
        int fc = inc.faces.id[std::size_t(f)];
        face_vertices[std::size_t(fc)].insert(inc.vertices.id[std::size_t(f)]);
        face_edges[std::size_t(fc)].insert(inc.edges.id[std::size_t(f)]);
    }

    for (int v = 0; v < inc.vertices.count; ++v) {
        // distinct faces incident to v
        std::set<int> faces_at;
        int start = inc.vertices.rep[std::size_t(v)];
        int d = inc.vertices.size[std::size_t(v)] / 2;
        int fl = start;
        for (int i = 0; i < d; ++i) {
            faces_at.insert(inc.faces.id[std::size_t(fl)]);
            fl = m.s2[std::size_t(m.s1[std::size_t(fl)])];
        }
        std::vector<int> fs(faces_at.begin(), faces_at.end());
        for (std::size_t i = 0; i < fs.size(); ++i) {
            for (std::size_t j = i + 1; j < fs.size(); ++j) {
                std::vector<int> common_v;
                std::set_intersection(face_vertices[std::size_t(fs[i])].begin(), face_vertices[std::size_t(fs[i])].end(),
                                      face_vertices[std::size_t(fs[j])].begin(), face_vertices[std::size_t(fs[j])].end(),
                                      std::back_inserter(common_v));
                std::vector<int> common_e;
                std::set_intersection(face_edges[std::size_t(fs[i])].begin(), face_edges[std::size_t(fs[i])].end(),
                                      face_edges[std::size_t(fs[j])].begin(), face_edges[std::size_t(fs[j])].end(),
                                      std::back_inserter(common_e));
                bool ok;
                if (common_e.empty()) {
                    ok = common_v.size() == 1 && common_v[0] == v;
                } else if (common_e.size() == 1) {
                    auto [a, b] = edge_endpoints(m, inc, common_e[0]);
                    ok = common_v.size() == 2 && (a == v || b == v) && common_v[0] == a && common_v[1] == b;
                } else {
                    ok = false;
                }
                if (!ok) {
                    rep.violation = PolyhedralViolation{v, fs[i], fs[j],
                                                        "faces share " + std::to_string(common_v.size()) +
                                                            " vertices and " + std::to_string(common_e.size()) +
                                                            " edges at vertex " + std::to_string(v)};
                    return rep;
                }
            }
        }
    }
    rep.polyhedral = true;
    return rep;
}

MapSummary summarize(const FlagMap& m) {
    require_valid(m);
    Incidence inc = incidence(m);
    MapSummary s;
    s.V = inc.vertices.count;
    s.E = inc.edges.count;
    s.F = inc.faces.count;
    s.chi = s.V - s.E + s.F;

    // orientable iff the even subgroup <s0 s1, s1 s2> has two flag orbits
    {
        std::vector<int> id(std::size_t(m.n), -1);
        int comps = 0;
        for (int f = 0; f < m.n; ++f) {
            if (id[std::size_t(f)] != -1) continue;
            ++comps;
            std::vector<int> stack{f};
            id[std::size_t(f)] = comps;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                int imgs[4] = {m.s0[std::size_t(m.s1[std::size_t(x)])], m.s1[std::size_t(m.s0[std::size_t(x)])],
                               m.s1[std::size_t(m.s2[std::size_t(x)])], m.s2[std::size_t(m.s1[std::size_t(x)])]};
                for (int t : imgs)
                    if (id[std::size_t(t)] == -1) {
                        id[std::size_t(t)] = comps;
                        stack.push_back(t);
                    }
            }
        }
        s.orientable = comps == 2;
    }

    for (int fc = 0; fc < inc.faces.count; ++fc) s.face_sizes[inc.faces.size[std::size_t(fc)] / 2]++;

    bool typable = true;
    for (int v = 0; v < inc.vertices.count; ++v) {
        std::vector<int> ks = vertex_type_cycle(m, inc, v);
        for (int k : ks) typable = typable && k >= 3;
        typable = typable && ks.size() >= 3;
        std::vector<int> canon = VertexType::canonical_cycle(ks);
        std::string key = "[";
        for (std::size_t i = 0; i < canon.size(); ++i) key += (i ? "," : "") + std::to_string(canon[i]);
        key += "]";
        s.vertex_types[key]++;
    }
    s.homogeneous = s.vertex_types.size() == 1;
    if (s.homogeneous && typable) {
        s.type = VertexType(vertex_type_cycle(m, inc, 0));
    }

    s.simple = is_simple(m);
    s.polyhedral = s.simple && is_polyhedral(m).polyhedral;
    s.vertex_orbits = vertex_orbit_count(m);
    return s;
}

FlagMap dual(const FlagMap& m) { return FlagMap{m.n, m.s2, m.s1, m.s0}; }

std::vector<std::vector<int>> automorphisms(const FlagMap& m) {
    std::vector<std::vector<int>> autos;
    for (int target = 0; target < m.n; ++target) {
        std::vector<int> img(std::size_t(m.n), -1);
        img[0] = target;
        std::vector<int> stack{0};
        bool ok = true;
        while (!stack.empty() && ok) {
            int f = stack.back();
            stack.pop_back();
            for (int g = 0; g < 3 && ok; ++g) {
                int a = m.gen(g)[std::size_t(f)];
                int b = m.gen(g)[std::size_t(img[std::size_t(f)])];
                if (img[std::size_t(a)] == -1) {
                    img[std::size_t(a)] = b;
                    stack.push_back(a);
                } else if (img[std::size_t(a)] != b) {
                    ok = false;
                }
            }
        }
        if (!ok) continue;
        // connectivity guarantees totality; check bijectivity
        std::vector<char> used(std::size_t(m.n), 0);
        for (int f = 0; f < m.n && ok; ++f) {
            if (img[std::size_t(f)] < 0 || used[std::size_t(img[std::size_t(f)])]) ok = false;
            else used[std::size_t(img[std::size_t(f)])] = 1;
        }
        if (ok) autos.push_back(std::move(img));
    }
    return autos;
}

long vertex_orbit_count(const FlagMap& m) {
    Orbits verts = flag_orbits(m, {1, 2});
    std::vector<int> parent(std::size_t(verts.count));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[std::size_t(x)] == x ? x : parent[std::size_t(x)] = find(parent[std::size_t(x)]); };
    for (const auto& a : automorphisms(m))
        for (int f = 0; f < m.n; ++f) {
            int u = find(verts.id[std::size_t(f)]);
            int v = find(verts.id[std::size_t(a[std::size_t(f)])]);
            if (u != v) parent[std::size_t(u)] = v;
        }
    std::set<int> roots;
    for (int v = 0; v < verts.count; ++v) roots.insert(find(v));
    return long(roots.size());
}

std::vector<int> bfs_encoding(const FlagMap& m, int start) {
    std::vector<int> label(std::size_t(m.n), -1);
    std::vector<int> order;
    order.reserve(std::size_t(m.n));
    label[std::size_t(start)] = 0;
    order.push_back(start);
    for (std::size_t q = 0; q < order.size(); ++q) {
        int f = order[q];
        for (int g = 0; g < 3; ++g) {
            int t = m.gen(g)[std::size_t(f)];
            if (label[std::size_t(t)] == -1) {
                label[std::size_t(t)] = int(order.size());
                order.push_back(t);
            }
        }
    }
    std::vector<int> enc(std::size_t(3 * m.n));
    for (int l = 0; l < m.n; ++l) {
        int f = order[std::size_t(l)];
        for (int g = 0; g < 3; ++g) enc[std::size_t(3 * l + g)] = label[std::size_t(m.gen(g)[std::size_t(f)])];
    }
    return enc;
}

std::vector<int> canonical_encoding(const FlagMap& m) {
    std::vector<int> best;
    for (int start = 0; start < m.n; ++start) {
        std::vector<int> enc = bfs_encoding(m, start);
        if (best.empty() || enc < best) best = std::move(enc);
    }
    return best;
}

std::string canonical_digest(const FlagMap& m) {
    std::vector<int> enc = canonical_encoding(m);
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(std::uint64_t(m.n));
    for (int v : enc) mix(std::uint64_t(v));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool isomorphic(const FlagMap& a, const FlagMap& b) {
    if (a.n != b.n) return false;
    return canonical_encoding(a) == canonical_encoding(b);
}

namespace {

[[noreturn]] void parse_fail(int line, int col, const std::string& what) {
    fail(errc::parse_error, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

} // namespace

FlagMap read_fm(std::istream& in) {
    std::vector<std::pair<int, std::string>> lines; // (line number, text)
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto cr = raw.find('\r');
        if (cr != std::string::npos) parse_fail(lineno, int(cr) + 1, "carriage return; .fm files use LF line endings");
        if (raw.empty() || raw[0] == '#') continue;
        lines.push_back({lineno, raw});
    }
    if (lines.size() != 4) {
        int at = lines.empty() ? lineno + 1 : lines.back().first;
        parse_fail(at, 1, "expected exactly 4 content lines (flags header and s0/s1/s2), found " +
                               std::to_string(lines.size()));
    }

    auto parse_ints = [](const std::string& text, int lno, std::size_t from, int expect) {
        std::vector<int> out;
        std::size_t i = from;
        while (i < text.size()) {
            if (text[i] == ' ') { ++i; continue; }
            std::size_t j = i;
            if (text[j] == '-') ++j;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j == i || (text[i] == '-' && j == i + 1)) parse_fail(lno, int(i) + 1, "expected an integer");
            out.push_back(std::stoi(text.substr(i, j - i)));
            i = j;
        }
        if (expect >= 0 && int(out.size()) != expect)
            parse_fail(lno, int(text.size()) + 1,
                       "expected " + std::to_string(expect) + " integers, found " + std::to_string(out.size()));
        return out;
    };

    auto [hline, htext] = lines[0];
    if (htext.rfind("flags ", 0) != 0) parse_fail(hline, 1, "expected 'flags N' header");
    std::vector<int> hdr = parse_ints(htext, hline, 6, 1);
    int n = hdr[0];
    if (n <= 0) parse_fail(hline, 7, "flag count must be positive");

    FlagMap m;
    m.n = n;
    const char* names[3] = {"s0:", "s1:", "s2:"};
    for (int g = 0; g < 3; ++g) {
        auto [lno, text] = lines[std::size_t(g) + 1];
        if (text.rfind(names[g], 0) != 0) parse_fail(lno, 1, std::string("expected '") + names[g] + "' line");
        std::vector<int> vals = parse_ints(text, lno, 3, n);
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (vals[i] < 0 || vals[i] >= n)
                parse_fail(lno, 4, "image " + std::to_string(vals[i]) + " out of range [0," + std::to_string(n) + ")");
        (g == 0 ? m.s0 : g == 1 ? m.s1 : m.s2) = std::move(vals);
    }
    return m;
}

FlagMap read_fm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::io_error, "cannot open " + path);
    return read_fm(in);
}

std::string write_fm(const FlagMap& m) {
    std::string out = "flags " + std::to_string(m.n) + "\n";
    const char* names[3] = {"s0:", "s1:", "s2:"};
    for (int g = 0; g < 3; ++g) {
        out += names[g];
        for (int v : m.gen(g)) out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

void write_fm_file(const FlagMap& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io_error, "cannot open " + path + " for writing");
    out << write_fm(m);
}

FlagMap flagmap_from_faces(const std::vector<std::vector<int>>& faces) {
    // darts: (face, position); dart id = base[face] + position
    std::vector<int> base;
    int ndarts = 0;
    for (const auto& f : faces) {
        if (f.size() < 2) fail(errc::invalid_type, "face with fewer than 2 vertices");
        base.push_back(ndarts);
        ndarts += int(f.size());
    }
    auto tail = [&](int d) {
        int f = int(std::upper_bound(base.begin(), base.end(), d) - base.begin()) - 1;
        return std::pair<int, int>{f, d - base[std::size_t(f)]};
    };
    auto vert = [&](int d, int b) {
        auto [f, i] = tail(d);
        const auto& cyc = faces[std::size_t(f)];
        return b == 0 ? cyc[std::size_t(i)] : cyc[(std::size_t(i) + 1) % cyc.size()];
    };

    std::map<std::pair<int, int>, std::vector<int>> by_edge;
    for (int d = 0; d < ndarts; ++d) {
        int u = vert(d, 0), w = vert(d, 1);
        if (u == w) fail(errc::invalid_type, "loop edges need a hand-built flag map");
        by_edge[{std::min(u, w), std::max(u, w)}].push_back(d);
    }

    FlagMap m;
    m.n = 2 * ndarts;
    m.s0.assign(std::size_t(m.n), -1);
    m.s1.assign(std::size_t(m.n), -1);
    m.s2.assign(std::size_t(m.n), -1);
    auto flag = [&](int d, int b) { return 2 * d + b; };

    for (int d = 0; d < ndarts; ++d) {
        m.s0[std::size_t(flag(d, 0))] = flag(d, 1);
        m.s0[std::size_t(flag(d, 1))] = flag(d, 0);
        auto [f, i] = tail(d);
        int k = int(faces[std::size_t(f)].size());
        int prev = base[std::size_t(f)] + (i + k - 1) % k;
        m.s1[std::size_t(flag(d, 0))] = flag(prev, 1);
        m.s1[std::size_t(flag(prev, 1))] = flag(d, 0);
    }
    for (const auto& [e, ds] : by_edge) {
        if (ds.size() != 2)
            fail(errc::invalid_type, "edge {" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                         "} occurs in " + std::to_string(ds.size()) + " face boundaries");
        int d1 = ds[0], d2 = ds[1];
        for (int b1 = 0; b1 < 2; ++b1)
            for (int b2 = 0; b2 < 2; ++b2)
                if (vert(d1, b1) == vert(d2, b2)) {
                    m.s2[std::size_t(flag(d1, b1))] = flag(d2, b2);
                    m.s2[std::size_t(flag(d2, b2))] = flag(d1, b1);
                }
    }
    require_valid(m);
    return m;
}

} // namespace hypertile
