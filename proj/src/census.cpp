#include "hypertile/census.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "hypertile/json_writer.hpp"

namespace hypertile {

void CensusStats::add(const CensusStats& o) {
    nodes += o.nodes;
    forced_gluings += o.forced_gluings;
    prunes_star += o.prunes_star;
    prunes_simple += o.prunes_simple;
    prunes_face += o.prunes_face;
    prunes_pentagon += o.prunes_pentagon;
    prunes_polyhedral += o.prunes_polyhedral;
    prunes_canonical += o.prunes_canonical;
    complete_maps += o.complete_maps;
}

FaceVector face_vector(const VertexType& t, long chi) {
    FaceVector fv;
    fv.type = t;
    fv.chi = chi;
    Rational alpha = t.alpha();
    const Rational two{2, 1};
    // chi = V (2 - alpha) / 2
    if (alpha > two && chi >= 0)
        fail(errc::curvature_mismatch, "hyperbolic type " + t.str() + " needs chi < 0");
    if (alpha < two && chi <= 0)
        fail(errc::curvature_mismatch, "spherical type " + t.str() + " needs chi > 0");
    if (alpha == two) {
        if (chi != 0) fail(errc::curvature_mismatch, "euclidean type " + t.str() + " needs chi = 0");
        fail(errc::underdetermined, "euclidean type at chi = 0 has no forced vertex count");
    }
    if (chi > 2) fail(errc::curvature_mismatch, "no closed surface has chi > 2");

    Rational two_minus{2 * alpha.den - alpha.num, alpha.den};
    long long num = 2LL * chi * two_minus.den;
    if (num % two_minus.num != 0)
        fail(errc::non_integral_solution, "V = 2*chi/(2-alpha) is not an integer for " + t.str());
    long V = long(num / two_minus.num);
    if (V <= 0) fail(errc::curvature_mismatch, "vertex count is not positive");
    fv.V = V;

    long d = t.degree();
    if ((d * V) % 2 != 0) fail(errc::non_integral_solution, "E = d*V/2 is not an integer");
    fv.E = d * V / 2;

    std::map<int, long> mult;
    for (int k : t.faces()) mult[k]++;
    long F = 0;
    for (auto [k, c] : mult) {
        if ((c * V) % k != 0)
            fail(errc::non_integral_solution,
                 "count of " + std::to_string(k) + "-gons is not an integer for " + t.str());
        fv.faces_by_size[k] = c * V / k;
        F += c * V / k;
    }
    fv.F = F;
    if (fv.V - fv.E + fv.F != chi)
        fail(errc::non_integral_solution, "face vector does not satisfy the Euler relation");
    return fv;
}

std::vector<std::array<long, 3>> pentagon_type_solutions(const FaceVector& fv) {
    long t = 0, q = 0;
    for (auto [k, c] : fv.faces_by_size) {
        if (k == 3)
            t = c;
        else
            q += c;
    }
    // x3 + x4 + x5 = q and 3 x3 + 4 x4 + 5 x5 = 6 t
    std::vector<std::array<long, 3>> sols;
    long s = 6 * t - 3 * q;
    for (long x5 = 0; x5 <= q; ++x5) {
        long x4 = s - 2 * x5;
        if (x4 < 0) break;
        long x3 = q - x4 - x5;
        if (x3 >= 0) sols.push_back({x3, x4, x5});
    }
    std::sort(sols.begin(), sols.end());
    return sols;
}

bool triangle_disjointness(const FlagMap& m) {
    Orbits verts = flag_orbits(m, {1, 2});
    Orbits faces = flag_orbits(m, {0, 1});
    std::vector<int> tri_corners(std::size_t(verts.count), 0);
    for (int f = 0; f < m.n; ++f) {
        if (f > m.s1[std::size_t(f)]) continue; // one flag per corner
        if (faces.size[std::size_t(faces.id[std::size_t(f)])] / 2 != 3) continue;
        if (++tri_corners[std::size_t(verts.id[std::size_t(f)])] > 1) return false;
    }
    return true;
}

std::map<long, long> polygon_triangle_adjacency(const FlagMap& m, int gon) {
    Orbits verts = flag_orbits(m, {1, 2});
    Orbits faces = flag_orbits(m, {0, 1});
    std::vector<std::set<int>> vertex_tris(std::size_t(verts.count));
    std::vector<std::set<int>> face_verts(std::size_t(faces.count));
    for (int f = 0; f < m.n; ++f) {
        int fc = faces.id[std::size_t(f)];
        int vx = verts.id[std::size_t(f)];
        face_verts[std::size_t(fc)].insert(vx);
        if (faces.size[std::size_t(fc)] / 2 == 3) vertex_tris[std::size_t(vx)].insert(fc);
    }
    std::map<long, long> hist;
    for (int fc = 0; fc < faces.count; ++fc) {
        if (faces.size[std::size_t(fc)] / 2 != gon) continue;
        std::set<int> tris;
        for (int vx : face_verts[std::size_t(fc)])
            tris.insert(vertex_tris[std::size_t(vx)].begin(), vertex_tris[std::size_t(vx)].end());
        hist[long(tris.size())]++;
    }
    return hist;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Control {
    std::atomic<bool> stop{false};
    std::atomic<bool> budget_hit{false};
    Clock::time_point t0;
    double budget_sec = 0;

    std::mutex sink;
    std::vector<FlagMap> maps;
    std::vector<std::vector<int>> keys; // canonical encodings, for deterministic order
    long accepted = 0;
    long max_results = 0;
    bool truncated = false;
    SearchMode mode = SearchMode::exhaustive;
    const std::function<void(const FlagMap&)>* on_complete = nullptr;
};

struct Cand {
    int side_b = -1;   // existing open side, or -1 for a fresh face
    int fresh_size = 0;
    int flip = 0;
};

// Face-gluing DFS over partial flag maps. Faces are discovered in creation
// order; the branch point is always the least-index open side, so a rooted
// isomorphism class determines the path and the min-root acceptance rule
// emits exactly one representative per class.
class Searcher {
public:
    Searcher(const VertexType& t, const FaceVector& fv, const CensusOptions& o, Control& ctl)
        : type_(t.faces()), opts_(o), ctl_(ctl) {
        d_ = int(type_.size());
        min_size_ = *std::min_element(type_.begin(), type_.end());
        for (auto [k, c] : fv.faces_by_size) target_[k] = c;
        total_sides_ = int(2 * fv.E);
        polyhedral_mode_ = opts_.filters.polyhedral.has_value() && *opts_.filters.polyhedral;
        orientable_only_ = opts_.filters.orientable.has_value() && *opts_.filters.orientable;

        // [p^3,3] pentagon-style pruning bounds (polyhedral searches only):
        // every k-gon (k = gon_) meets between ceil(k/2) and k triangles and
        // the total adjacency count is 6 * #triangles.
        std::map<int, long> mult;
        for (int k : type_) mult[k]++;
        p33_mode_ = false;
        if (polyhedral_mode_ && mult.size() == 2 && mult.count(3) && mult.at(3) == 1 && d_ == 4) {
            gon_ = type_[0] == 3 ? type_[1] : type_[0];
            if (mult.at(gon_) == 3 && gon_ > 3) {
                p33_mode_ = true;
                tri_total_ = target_.count(3) ? target_.at(3) : 0;
                gon_total_ = target_.count(gon_) ? target_.at(gon_) : 0;
            }
        }

        reserve();
        root_setup();
    }

    CensusStats stats;

    // Runs the DFS from the current state.
    void run() { dfs(); }

    // Enumerates candidate paths of the given depth for worker splitting.
    void collect_seeds(int depth, std::vector<std::vector<int>>& out, std::vector<int>& path) {
        if (ctl_.stop.load(std::memory_order_relaxed)) return;
        if (open_count_ == 0 || depth == 0) {
            if (open_count_ == 0) {
                handle_complete();
            } else {
                out.push_back(path);
            }
            return;
        }
        std::vector<Cand> cands;
        candidates(cands);
        for (std::size_t i = 0; i < cands.size(); ++i) {
            std::size_t mark = log_.size();
            if (apply_candidate(cands[i])) {
                path.push_back(int(i));
                collect_seeds(depth - 1, out, path);
                path.pop_back();
            }
            undo_to(mark);
        }
    }

    bool replay(const std::vector<int>& path) {
        for (int idx : path) {
            std::vector<Cand> cands;
            candidates(cands);
            if (idx >= int(cands.size())) return false;
            if (!apply_candidate(cands[std::size_t(idx)])) return false;
        }
        return true;
    }

private:
    // ---- static config ----
    std::vector<int> type_; // canonical cyclic type
    int d_ = 0;
    int min_size_ = 0;
    std::map<int, long> target_;
    int total_sides_ = 0;
    bool polyhedral_mode_ = false;
    bool orientable_only_ = false;
    bool p33_mode_ = false;
    int gon_ = 0;
    long tri_total_ = 0, gon_total_ = 0;
    const CensusOptions& opts_;
    Control& ctl_;

    // ---- faces / sides / corners ----
    struct FaceRec {
        int size;
        int side0;
    };
    std::vector<FaceRec> faces_;
    std::vector<int> face_closed_; // closed corner count per face
    std::map<int, long> used_;

    std::vector<int> side_face_;
    std::vector<int> partner_, flip_;
    // star adjacency per corner: slot 0 = across the prev side, 1 = across the next side
    std::vector<std::array<int, 2>> nbr_, nbr_slot_;

    // DSU over corners with member lists (class size is at most d_)
    std::vector<int> par_, szv_, head_, tail_, nxt_;
    std::vector<char> closed_;
    std::vector<int> endA_, endB_;

    int open_count_ = 0;
    std::array<long, 64> adj_count_{}; // completed gon_-faces by triangle adjacency
    long gon_completed_ = 0;

    std::vector<int> forced_; // corners whose star must close now

    // ---- undo log ----
    enum class Op : std::uint8_t { glue, nbr, uni, ends, close, face_closed, adj, fresh };
    struct LogRec {
        Op op;
        int a, b, c;
    };
    std::vector<LogRec> log_;

    void reserve() {
        faces_.reserve(64);
        side_face_.reserve(std::size_t(total_sides_));
        partner_.reserve(std::size_t(total_sides_));
        flip_.reserve(std::size_t(total_sides_));
    }

    // ---- primitive accessors ----
    int side0(int f) const { return faces_[std::size_t(f)].side0; }
    int fsize(int f) const { return faces_[std::size_t(f)].size; }
    int sindex(int s) const { return s - side0(side_face_[std::size_t(s)]); }
    int tail_corner(int s) const { return s; }
    int head_corner(int s) const {
        int f = side_face_[std::size_t(s)];
        return side0(f) + (sindex(s) + 1) % fsize(f);
    }
    int prev_side(int c) const {
        int f = side_face_[std::size_t(c)];
        return side0(f) + (sindex(c) + fsize(f) - 1) % fsize(f);
    }
    int next_side(int c) const { return c; }
    int corner_face_size(int c) const { return fsize(side_face_[std::size_t(c)]); }

    int find(int c) const {
        while (par_[std::size_t(c)] != c) c = par_[std::size_t(c)];
        return c;
    }

    // ---- undo ----
    void undo_to(std::size_t mark) {
        while (log_.size() > mark) {
            LogRec r = log_.back();
            log_.pop_back();
            switch (r.op) {
                case Op::glue:
                    partner_[std::size_t(r.a)] = -1;
                    partner_[std::size_t(r.b)] = -1;
                    open_count_ += 2;
                    break;
                case Op::nbr:
                    nbr_[std::size_t(r.a)][std::size_t(r.b)] = -1;
                    nbr_slot_[std::size_t(r.a)][std::size_t(r.b)] = -1;
                    break;
                case Op::uni: // a = kept root, b = absorbed root, c = old tail of a
                    par_[std::size_t(r.b)] = r.b;
                    szv_[std::size_t(r.a)] -= szv_[std::size_t(r.b)];
                    nxt_[std::size_t(r.c)] = -1;
                    tail_[std::size_t(r.a)] = r.c;
                    break;
                case Op::ends:
                    endA_[std::size_t(r.a)] = r.b;
                    endB_[std::size_t(r.a)] = r.c;
                    break;
                case Op::close:
                    closed_[std::size_t(r.a)] = 0;
                    break;
                case Op::face_closed:
                    --face_closed_[std::size_t(r.a)];
                    break;
                case Op::adj:
                    --adj_count_[std::size_t(r.a)];
                    --gon_completed_;
                    break;
                case Op::fresh: {
                    int f = r.a;
                    int k = fsize(f);
                    used_[k]--;
                    open_count_ -= k;
                    for (int i = 0; i < k; ++i) {
                        side_face_.pop_back();
                        partner_.pop_back();
                        flip_.pop_back();
                        nbr_.pop_back();
                        nbr_slot_.pop_back();
                        par_.pop_back();
                        szv_.pop_back();
                        head_.pop_back();
                        tail_.pop_back();
                        nxt_.pop_back();
                        closed_.pop_back();
                        endA_.pop_back();
                        endB_.pop_back();
                    }
                    face_closed_.pop_back();
                    faces_.pop_back();
                    break;
                }
            }
        }
    }

    int add_face(int k) {
        int f = int(faces_.size());
        int s0 = int(side_face_.size());
        faces_.push_back({k, s0});
        face_closed_.push_back(0);
        for (int i = 0; i < k; ++i) {
            side_face_.push_back(f);
            partner_.push_back(-1);
            flip_.push_back(0);
            nbr_.push_back({-1, -1});
            nbr_slot_.push_back({-1, -1});
            int c = s0 + i;
            par_.push_back(c);
            szv_.push_back(1);
            head_.push_back(c);
            tail_.push_back(c);
            nxt_.push_back(-1);
            closed_.push_back(0);
            endA_.push_back(c);
            endB_.push_back(c);
        }
        used_[k]++;
        open_count_ += k;
        log_.push_back({Op::fresh, f, 0, 0});
        return f;
    }

    void root_setup() { add_face(min_size_); }

    // ---- star path / cycle walks ----
    // Walks from `c` leaving through `slot`, visiting each corner reached.
    // Stops at a free slot (path) or on returning to the start (cycle).
    template <typename F>
    void walk(int c, int slot, F&& visit) const {
        const int start_c = c;
        while (true) {
            int nb = nbr_[std::size_t(c)][std::size_t(slot)];
            if (nb < 0 || nb == start_c) return;
            visit(nb);
            int ent = nbr_slot_[std::size_t(c)][std::size_t(slot)];
            c = nb;
            slot = 1 - ent;
        }
    }

    // face sizes along the open path of root r, end to end
    std::vector<int> path_word(int r) const {
        int e = endA_[std::size_t(r)];
        int slot = nbr_[std::size_t(e)][0] == -1 && nbr_[std::size_t(e)][1] == -1 ? -1
                 : (nbr_[std::size_t(e)][0] == -1 ? 1 : 0);
        std::vector<int> w{corner_face_size(e)};
        if (slot >= 0)
            walk(e, slot, [&](int c) { w.push_back(corner_face_size(c)); });
        return w;
    }

    bool subword_of_type(const std::vector<int>& w) const {
        if (int(w.size()) > d_) return false;
        for (int refl = 0; refl < 2; ++refl) {
            std::vector<int> cyc = type_;
            if (refl) std::reverse(cyc.begin(), cyc.end());
            for (int rot = 0; rot < d_; ++rot) {
                bool ok = true;
                for (std::size_t i = 0; i < w.size() && ok; ++i)
                    ok = cyc[std::size_t((rot + int(i)) % d_)] == w[i];
                if (ok) return true;
            }
        }
        return false;
    }

    // ---- closure hooks ----
    bool on_star_closed(int r, int member_corner) {
        log_.push_back({Op::close, r, 0, 0});
        closed_[std::size_t(r)] = 1;

        // cycle word check against the vertex type
        std::vector<int> word{corner_face_size(member_corner)};
        walk(member_corner, 1, [&](int c) { word.push_back(corner_face_size(c)); });
        if (int(word.size()) != d_) {
            ++stats.prunes_star;
            return false;
        }
        if (VertexType::canonical_cycle(word) != type_) {
            ++stats.prunes_star;
            return false;
        }

        // collect members and their faces (in star-cycle order)
        std::vector<int> members{member_corner};
        walk(member_corner, 1, [&](int c) { members.push_back(c); });
        for (int c : members) {
            int f = side_face_[std::size_t(c)];
            log_.push_back({Op::face_closed, f, 0, 0});
            if (++face_closed_[std::size_t(f)] == fsize(f)) {
                if (!on_face_completed(f)) return false;
            }
        }
        if (polyhedral_mode_ && !closed_vertex_polyhedral_check(members)) {
            ++stats.prunes_polyhedral;
            return false;
        }
        return true;
    }

    bool on_face_completed(int f) {
        if (!p33_mode_ || fsize(f) != gon_) return true;
        // distinct triangles met by this gon's (now final) vertex classes
        std::set<int> tris;
        for (int i = 0; i < gon_; ++i) {
            int r = find(side0(f) + i);
            for (int mc = head_[std::size_t(r)]; mc != -1; mc = nxt_[std::size_t(mc)])
                if (corner_face_size(mc) == 3) tris.insert(side_face_[std::size_t(mc)]);
        }
        long n = long(tris.size());
        long lo = (gon_ + 1) / 2, hi = gon_;
        if (n < lo || n > hi) {
            ++stats.prunes_pentagon;
            return false;
        }
        log_.push_back({Op::adj, int(n), 0, 0});
        ++adj_count_[std::size_t(n)];
        ++gon_completed_;

        // remaining gons must be able to balance the 6 * #triangles count
        long seen = 0;
        for (long k = lo; k <= hi; ++k) seen += k * adj_count_[std::size_t(k)];
        long remaining = gon_total_ - gon_completed_;
        long need = 6 * tri_total_ - seen;
        if (need < lo * remaining || need > hi * remaining) {
            ++stats.prunes_pentagon;
            return false;
        }
        return true;
    }

    // Sound partial polyhedrality test at a closed vertex: faces consecutive
    // around it may share at most 2 vertex classes, non-consecutive exactly 1.
    bool closed_vertex_polyhedral_check(const std::vector<int>& members) {
        int dd = int(members.size());
        std::vector<std::vector<int>> roots;
        roots.resize(std::size_t(dd));
        for (int i = 0; i < dd; ++i) {
            int f = side_face_[std::size_t(members[std::size_t(i)])];
            for (int j = 0; j < fsize(f); ++j) roots[std::size_t(i)].push_back(find(side0(f) + j));
            std::sort(roots[std::size_t(i)].begin(), roots[std::size_t(i)].end());
        }
        for (int i = 0; i < dd; ++i)
            for (int j = i + 1; j < dd; ++j) {
                std::size_t shared = 0;
                std::size_t a = 0, b = 0;
                const auto& A = roots[std::size_t(i)];
                const auto& B = roots[std::size_t(j)];
                while (a < A.size() && b < B.size()) {
                    if (A[a] < B[b]) ++a;
                    else if (B[b] < A[a]) ++b;
                    else { ++shared; ++a; ++b; }
                }
                bool consecutive = (j == i + 1) || (i == 0 && j == dd - 1);
                if (shared > (consecutive ? 2u : 1u)) return false;
            }
        return true;
    }

    // ---- gluing ----
    bool add_adjacency(int ca, int sa, int cb, int sb) {
        if (ca == cb) {
            ++stats.prunes_star; // one-corner vertex
            return false;
        }
        log_.push_back({Op::nbr, ca, sa, 0});
        nbr_[std::size_t(ca)][std::size_t(sa)] = cb;
        nbr_slot_[std::size_t(ca)][std::size_t(sa)] = sb;
        log_.push_back({Op::nbr, cb, sb, 0});
        nbr_[std::size_t(cb)][std::size_t(sb)] = ca;
        nbr_slot_[std::size_t(cb)][std::size_t(sb)] = sa;

        int ra = find(ca), rb = find(cb);
        if (ra == rb) {
            if (szv_[std::size_t(ra)] != d_) {
                ++stats.prunes_star;
                return false;
            }
            return on_star_closed(ra, ca);
        }
        if (szv_[std::size_t(ra)] + szv_[std::size_t(rb)] > d_) {
            ++stats.prunes_star;
            return false;
        }
        // face-simplicity: a face may not visit a vertex twice
        for (int m1 = head_[std::size_t(ra)]; m1 != -1; m1 = nxt_[std::size_t(m1)])
            for (int m2 = head_[std::size_t(rb)]; m2 != -1; m2 = nxt_[std::size_t(m2)])
                if (side_face_[std::size_t(m1)] == side_face_[std::size_t(m2)]) {
                    ++stats.prunes_face;
                    return false;
                }
        // the merged path runs from ca's far end to cb's far end
        int otherA = endA_[std::size_t(ra)] == ca ? endB_[std::size_t(ra)] : endA_[std::size_t(ra)];
        int otherB = endA_[std::size_t(rb)] == cb ? endB_[std::size_t(rb)] : endA_[std::size_t(rb)];
        if (szv_[std::size_t(ra)] < szv_[std::size_t(rb)]) std::swap(ra, rb);

        log_.push_back({Op::uni, ra, rb, tail_[std::size_t(ra)]});
        par_[std::size_t(rb)] = ra;
        szv_[std::size_t(ra)] += szv_[std::size_t(rb)];
        nxt_[std::size_t(tail_[std::size_t(ra)])] = head_[std::size_t(rb)];
        tail_[std::size_t(ra)] = tail_[std::size_t(rb)];

        log_.push_back({Op::ends, ra, endA_[std::size_t(ra)], endB_[std::size_t(ra)]});
        endA_[std::size_t(ra)] = otherA;
        endB_[std::size_t(ra)] = otherB;

        if (!subword_of_type(path_word(ra))) {
            ++stats.prunes_star;
            return false;
        }
        if (szv_[std::size_t(ra)] == d_) forced_.push_back(otherA);
        return true;
    }

    bool simplicity_check(int r) {
        // edges incident to the class of r: loop and parallel detection
        std::vector<std::pair<int, int>> seen; // (edge id, other endpoint root)
        for (int mc = head_[std::size_t(r)]; mc != -1; mc = nxt_[std::size_t(mc)]) {
            int sides[2] = {prev_side(mc), next_side(mc)};
            for (int s : sides) {
                if (partner_[std::size_t(s)] == -1) continue;
                int edge = std::min(s, partner_[std::size_t(s)]);
                int e1 = find(tail_corner(s)), e2 = find(head_corner(s));
                int other = e1 == r ? e2 : e1;
                if (other == r) {
                    ++stats.prunes_simple; // loop
                    return false;
                }
                bool dup_edge = false;
                for (auto& [e, o] : seen) {
                    if (e == edge) { dup_edge = true; break; }
                }
                if (dup_edge) continue;
                for (auto& [e, o] : seen)
                    if (o == other) {
                        ++stats.prunes_simple; // parallel edge
                        return false;
                    }
                seen.push_back({edge, other});
            }
        }
        return true;
    }

    bool glue(int A, int B, int flip) {
        log_.push_back({Op::glue, A, B, 0});
        partner_[std::size_t(A)] = B;
        partner_[std::size_t(B)] = A;
        flip_[std::size_t(A)] = flip;
        flip_[std::size_t(B)] = flip;
        open_count_ -= 2;

        int ta = tail_corner(A), ha = head_corner(A);
        int tb = tail_corner(B), hb = head_corner(B);
        // slot 1 = next side (the tail corner's own side), slot 0 = prev side
        if (flip == 0) {
            if (!add_adjacency(ta, 1, hb, 0)) return false;
            if (!add_adjacency(ha, 0, tb, 1)) return false;
        } else {
            if (!add_adjacency(ta, 1, tb, 1)) return false;
            if (!add_adjacency(ha, 0, hb, 0)) return false;
        }
        if (!simplicity_check(find(ta))) return false;
        if (!simplicity_check(find(ha))) return false;
        return true;
    }

    bool process_forced() {
        while (!forced_.empty()) {
            int c = forced_.back();
            forced_.pop_back();
            int r = find(c);
            if (closed_[std::size_t(r)]) continue;
            if (szv_[std::size_t(r)] != d_) continue; // stale
            int ea = endA_[std::size_t(r)], eb = endB_[std::size_t(r)];
            int slot_a = nbr_[std::size_t(ea)][0] == -1 ? 0 : 1;
            int slot_b = nbr_[std::size_t(eb)][0] == -1 ? 0 : 1;
            int sa = slot_a == 0 ? prev_side(ea) : next_side(ea);
            int sb = slot_b == 0 ? prev_side(eb) : next_side(eb);
            if (sa == sb) {
                ++stats.prunes_star; // the two free slots are the two ends of one side
                return false;
            }
            // the junction {ea, eb} fixes the flip: tail corners use slot 1
            bool ea_tail = slot_a == 1;
            bool eb_tail = slot_b == 1;
            int flip = ea_tail == eb_tail ? 1 : 0;
            if (orientable_only_ && flip == 1) {
                ++stats.prunes_star;
                return false;
            }
            ++stats.forced_gluings;
            if (!glue(sa, sb, flip)) return false;
        }
        return true;
    }

    bool apply_candidate(const Cand& cand) {
        forced_.clear();
        int A = least_open_side();
        bool ok;
        if (cand.side_b >= 0) {
            ok = glue(A, cand.side_b, cand.flip);
        } else {
            int f = add_face(cand.fresh_size);
            ok = glue(A, side0(f), 0);
        }
        ok = ok && process_forced();
        forced_.clear();
        return ok;
    }

    int least_open_side() const {
        for (int s = 0; s < int(partner_.size()); ++s)
            if (partner_[std::size_t(s)] == -1) return s;
        return -1;
    }

    void candidates(std::vector<Cand>& out) const {
        int A = least_open_side();
        for (int b = 0; b < int(partner_.size()); ++b) {
            if (b == A || partner_[std::size_t(b)] != -1) continue;
            out.push_back({b, 0, 0});
            if (!orientable_only_) out.push_back({b, 0, 1});
        }
        for (auto [k, c] : target_)
            if (used_.count(k) == 0 || used_.at(k) < c) out.push_back({-1, k, 0});
    }

    // ---- lazy BFS encoding over the partial structure ----
    // flags are 2*side + bit; s2 is unknown on open sides.
    struct LazyEnc {
        const Searcher* S;
        std::vector<int> label;
        std::vector<int> order;
        explicit LazyEnc(const Searcher* s, int start) : S(s), label(2 * s->partner_.size(), -1) {
            label[std::size_t(start)] = 0;
            order.push_back(start);
        }
        // flag image under generator g, or -2 if undetermined
        int image(int flag, int g) const {
            int s = flag >> 1, b = flag & 1;
            switch (g) {
                case 0: return (s << 1) | (1 - b);
                case 1: {
                    int corner = b == 0 ? S->tail_corner(s) : S->head_corner(s);
                    return b == 0 ? (S->prev_side(corner) << 1) | 1 : (S->next_side(corner) << 1);
                }
                default: {
                    int p = S->partner_[std::size_t(s)];
                    if (p < 0) return -2;
                    int fl = S->flip_[std::size_t(s)];
                    return (p << 1) | (fl == 0 ? 1 - b : b);
                }
            }
        }
        // emits item t = 3*l + g; returns -2 when undetermined / exhausted
        int emit(int t) {
            int l = t / 3, g = t % 3;
            if (l >= int(order.size())) return -2;
            int img = image(order[std::size_t(l)], g);
            if (img == -2) return -2;
            if (label[std::size_t(img)] == -1) {
                label[std::size_t(img)] = int(order.size());
                order.push_back(img);
            }
            return label[std::size_t(img)];
        }
    };

    // true if some alternative root on a min-size face already beats flag 0
    // decidedly on the glued prefix (then no completion can be canonical)
    bool prefix_dominated() {
        constexpr int kMaxItems = 120;
        for (int f = 0; f < int(faces_.size()); ++f) {
            if (fsize(f) != min_size_) continue;
            for (int i = 0; i < fsize(f); ++i)
                for (int b = 0; b < 2; ++b) {
                    int start = ((side0(f) + i) << 1) | b;
                    if (start == 0) continue;
                    LazyEnc ea(this, 0), eb(this, start);
                    for (int t = 0; t < kMaxItems; ++t) {
                        int va = ea.emit(t), vb = eb.emit(t);
                        if (va == -2 || vb == -2) break;
                        if (vb < va) return true;
                        if (va < vb) break;
                    }
                }
        }
        return false;
    }

    // ---- completion ----
    FlagMap assemble() const {
        FlagMap m;
        int ns = int(partner_.size());
        m.n = 2 * ns;
        m.s0.resize(std::size_t(m.n));
        m.s1.resize(std::size_t(m.n));
        m.s2.resize(std::size_t(m.n));
        for (int s = 0; s < ns; ++s) {
            m.s0[std::size_t(2 * s)] = 2 * s + 1;
            m.s0[std::size_t(2 * s + 1)] = 2 * s;
            int hc = head_corner(s);
            m.s1[std::size_t(2 * s + 1)] = 2 * next_side(hc);
            m.s1[std::size_t(2 * next_side(hc))] = 2 * s + 1;
            int p = partner_[std::size_t(s)];
            int fl = flip_[std::size_t(s)];
            m.s2[std::size_t(2 * s)] = fl == 0 ? 2 * p + 1 : 2 * p;
            m.s2[std::size_t(2 * s + 1)] = fl == 0 ? 2 * p : 2 * p + 1;
        }
        return m;
    }

    void handle_complete() {
        ++stats.complete_maps;
        for (auto [k, c] : target_)
            if (used_.count(k) == 0 || used_.at(k) != c) return; // closed early, wrong surface

        FlagMap fm = assemble();
        {
            std::lock_guard<std::mutex> lk(ctl_.sink);
            if (ctl_.on_complete && *ctl_.on_complete) (*ctl_.on_complete)(fm);
        }

        if (opts_.filters.orientable.has_value() || opts_.filters.polyhedral.has_value()) {
            if (opts_.filters.orientable.has_value()) {
                // cheap orientability: orbits of <s0s1, s1s2>
                std::vector<int> id(std::size_t(fm.n), -1);
                int comps = 0;
                for (int f = 0; f < fm.n; ++f) {
                    if (id[std::size_t(f)] != -1) continue;
                    ++comps;
                    std::vector<int> st{f};
                    id[std::size_t(f)] = comps;
                    while (!st.empty()) {
                        int x = st.back();
                        st.pop_back();
                        int im[4] = {fm.s0[std::size_t(fm.s1[std::size_t(x)])], fm.s1[std::size_t(fm.s0[std::size_t(x)])],
                                     fm.s1[std::size_t(fm.s2[std::size_t(x)])], fm.s2[std::size_t(fm.s1[std::size_t(x)])]};
                        for (int t : im)
                            if (id[std::size_t(t)] == -1) {
                                id[std::size_t(t)] = comps;
                                st.push_back(t);
                            }
                    }
                }
                bool orientable = comps == 2;
                if (orientable != *opts_.filters.orientable) return;
            }
            if (opts_.filters.polyhedral.has_value()) {
                bool poly = is_polyhedral(fm).polyhedral;
                if (poly != *opts_.filters.polyhedral) return;
            }
        }

        if (opts_.mode == SearchMode::exhaustive) {
            // min-root acceptance: flag 0 must realize the least BFS encoding
            // among all flags on minimal-size faces
            std::vector<int> enc0 = bfs_encoding(fm, 0);
            for (int f = 0; f < int(faces_.size()); ++f) {
                if (fsize(f) != min_size_) continue;
                for (int i = 0; i < 2 * fsize(f); ++i) {
                    int start = 2 * side0(f) + i;
                    if (start == 0) continue;
                    if (bfs_encoding(fm, start) < enc0) {
                        ++stats.prunes_canonical;
                        return;
                    }
                }
            }
        }

        std::lock_guard<std::mutex> lk(ctl_.sink);
        ctl_.maps.push_back(fm);
        ctl_.keys.push_back(canonical_encoding(fm));
        ++ctl_.accepted;
        if (opts_.mode == SearchMode::first_found) {
            ctl_.stop.store(true, std::memory_order_relaxed);
        } else if (ctl_.max_results > 0 && ctl_.accepted >= ctl_.max_results) {
            ctl_.truncated = true;
            ctl_.stop.store(true, std::memory_order_relaxed);
        }
    }

    void dfs() {
        if (ctl_.stop.load(std::memory_order_relaxed)) return;
        if ((++stats.nodes & 1023) == 0 && ctl_.budget_sec > 0) {
            double el = std::chrono::duration<double>(Clock::now() - ctl_.t0).count();
            if (el > ctl_.budget_sec) {
                ctl_.budget_hit.store(true, std::memory_order_relaxed);
                ctl_.stop.store(true, std::memory_order_relaxed);
                return;
            }
        }
        if (open_count_ == 0) {
            handle_complete();
            return;
        }
        if (opts_.mode == SearchMode::exhaustive && opts_.partial_canonical_prune && prefix_dominated()) {
            ++stats.prunes_canonical;
            return;
        }
        std::vector<Cand> cands;
        candidates(cands);
        for (const Cand& cand : cands) {
            std::size_t mark = log_.size();
            if (apply_candidate(cand)) dfs();
            undo_to(mark);
            if (ctl_.stop.load(std::memory_order_relaxed)) return;
        }
    }
};

} // namespace

CensusResult enumerate_maps(const VertexType& t, long chi, const CensusOptions& opts) {
    FaceVector fv = face_vector(t, chi);
    if (fv.V <= 0 || fv.E <= 0) fail(errc::infeasible_counts, "degenerate face vector");

    Control ctl;
    ctl.t0 = Clock::now();
    ctl.budget_sec = opts.budget_sec;
    ctl.max_results = opts.max_results;
    ctl.mode = opts.mode;
    ctl.on_complete = &opts.on_complete;

    CensusResult res;
    res.mode = opts.mode;
    res.fv = fv;

    int workers = std::max(1, opts.workers);
    if (workers == 1) {
        Searcher s(t, fv, opts, ctl);
        s.run();
        res.stats = s.stats;
    } else {
        Searcher seeder(t, fv, opts, ctl);
        std::vector<std::vector<int>> seeds;
        std::vector<int> path;
        seeder.collect_seeds(2, seeds, path);
        res.stats = seeder.stats;

        std::atomic<std::size_t> next{0};
        std::mutex stats_mx;
        auto work = [&]() {
            CensusStats local;
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= seeds.size() || ctl.stop.load(std::memory_order_relaxed)) break;
                Searcher s(t, fv, opts, ctl);
                if (s.replay(seeds[i])) s.run();
                local.add(s.stats);
            }
            std::lock_guard<std::mutex> lk(stats_mx);
            res.stats.add(local);
        };
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) threads.emplace_back(work);
        for (auto& th : threads) th.join();
    }

    res.stats.wall_sec = std::chrono::duration<double>(Clock::now() - ctl.t0).count();
    res.inconclusive = ctl.budget_hit.load();
    res.truncated = ctl.truncated;

    // deterministic order regardless of traversal and worker count
    std::vector<std::size_t> idx(ctl.maps.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return ctl.keys[a] < ctl.keys[b]; });
    for (std::size_t i : idx) {
        res.maps.push_back(std::move(ctl.maps[i]));
        res.summaries.push_back(summarize(res.maps.back()));
        res.digests.push_back(canonical_digest(res.maps.back()));
    }
    return res;
}

QvtCertificate quasi_vt_certificate(int p, double budget_sec) {
    if (p < 5) fail(errc::invalid_type, "need p >= 5");
    if (p % 2 == 0) fail(errc::parity_rejected, "need p odd");
    long chi = 9 - 2 * p;
    CensusOptions o;
    o.mode = SearchMode::first_found;
    o.budget_sec = budget_sec;
    CensusResult r = enumerate_maps(VertexType({p, p, p, 3}), chi, o);
    if (r.maps.empty()) {
        if (r.inconclusive)
            fail(errc::search_exhausted_no_witness,
                 "budget exhausted before a [" + std::to_string(p) + "^3,3] witness was found (inconclusive)");
        fail(errc::search_exhausted_no_witness,
             "search space exhausted with no [" + std::to_string(p) + "^3,3] witness at chi = " + std::to_string(chi));
    }
    QvtCertificate c;
    c.p = p;
    c.V = r.fv.V;
    c.chi = chi;
    c.witness = r.maps[0];
    c.summary = r.summaries[0];
    c.orbit_bound = r.fv.V;
    return c;
}

void write_census_output(const std::string& dir, const VertexType& t, long chi,
                         const CensusOptions& opts, const CensusResult& res) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    JsonWriter w;
    w.begin_object();
    w.key("type").value(t.str());
    w.key("chi").value(std::int64_t(chi));
    w.key("mode").value(res.mode == SearchMode::exhaustive ? "exhaustive" : "first-found");
    w.key("filters").begin_object();
    w.key("simple").value(true);
    if (opts.filters.polyhedral) w.key("polyhedral").value(*opts.filters.polyhedral);
    if (opts.filters.orientable) w.key("orientable").value(*opts.filters.orientable);
    w.end_object();
    w.key("face_vector").begin_object();
    w.key("V").value(std::int64_t(res.fv.V));
    w.key("E").value(std::int64_t(res.fv.E));
    w.key("F").value(std::int64_t(res.fv.F));
    w.key("faces_by_size").begin_object();
    for (auto [k, c] : res.fv.faces_by_size) w.key(std::to_string(k)).value(std::int64_t(c));
    w.end_object();
    w.end_object();
    w.key("count").value(std::int64_t(res.maps.size()));
    w.key("inconclusive").value(res.inconclusive);
    w.key("truncated").value(res.truncated);
    w.key("maps").begin_array();
    for (std::size_t i = 0; i < res.maps.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "map_%04zu.fm", i);
        write_fm_file(res.maps[i], (fs::path(dir) / name).string());
        const MapSummary& s = res.summaries[i];
        w.begin_object();
        w.key("file").value(name);
        w.key("digest").value(res.digests[i]);
        w.key("V").value(std::int64_t(s.V));
        w.key("E").value(std::int64_t(s.E));
        w.key("F").value(std::int64_t(s.F));
        w.key("chi").value(std::int64_t(s.chi));
        w.key("orientable").value(s.orientable);
        w.key("simple").value(s.simple);
        w.key("polyhedral").value(s.polyhedral);
        w.key("vertex_orbits").value(std::int64_t(s.vertex_orbits));
        w.key("triangle_disjoint").value(triangle_disjointness(res.maps[i]));
        std::map<long, long> hist;
        for (auto [k, c] : res.fv.faces_by_size)
            if (k != 3) hist = polygon_triangle_adjacency(res.maps[i], k);
        w.key("gon_triangle_adjacency").begin_object();
        for (auto [n, c] : hist) w.key(std::to_string(n)).value(std::int64_t(c));
        w.end_object();
        w.end_object();
    }
    w.end_array();
    w.key("stats").begin_object();
    w.key("nodes").value(std::int64_t(res.stats.nodes));
    w.key("forced_gluings").value(std::int64_t(res.stats.forced_gluings));
    w.key("prunes_star").value(std::int64_t(res.stats.prunes_star));
    w.key("prunes_simple").value(std::int64_t(res.stats.prunes_simple));
    w.key("prunes_face").value(std::int64_t(res.stats.prunes_face));
    w.key("prunes_pentagon").value(std::int64_t(res.stats.prunes_pentagon));
    w.key("prunes_polyhedral").value(std::int64_t(res.stats.prunes_polyhedral));
    w.key("prunes_canonical").value(std::int64_t(res.stats.prunes_canonical));
    w.key("complete_maps").value(std::int64_t(res.stats.complete_maps));
    w.key("wall_sec").value(res.stats.wall_sec);
    w.end_object();
    w.end_object();

    std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary);
    if (!out) fail(errc::io_error, "cannot write manifest in " + dir);
    out << w.str();
}

} // namespace hypertile
