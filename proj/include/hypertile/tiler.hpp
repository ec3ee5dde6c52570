#pragma once

#include <array>
#include <string>
#include <vector>

#include "hypertile/fundamental.hpp"
#include "hypertile/hyperbolic.hpp"

namespace hypertile {

struct PlacedKite {
    int id = 0;
    int copy_id = 0;      // F(p) copy, in BFS discovery order
    int slot = 0;         // 1..p within its copy
    int word_length = 0;  // generator word length of the copy
    hyp::Isometry place;  // maps the slot-1 base kite onto this kite
    std::array<hyp::HPoint, 4> corners; // [center, flank, apex, flank]; apex is the triangle incenter
    hyp::HPoint center;                 // normalized corner average (dedup key)
};

/// A vertex of the dual tiling: one shared kite corner with its ring of
/// incident kites. `expected` is p at p-gon incenters and 3 at triangle
/// incenters; the ring is complete when every incident kite is placed.
struct CornerRing {
    std::array<double, 2> disk{};
    int expected = 0;
    std::vector<int> kites;
    bool complete = false;
};

struct TilingPatch {
    int p = 0;
    int depth = 0;
    int copies = 0;
    std::vector<PlacedKite> kites;
    std::vector<CornerRing> rings;
    std::vector<std::array<int, 4>> kite_ring;  // per kite: ring of corner 0..3
    std::vector<std::array<int, 4>> neighbors;  // per kite: across side (corner i, i+1), -1 open
    std::vector<bool> interior;                 // all four rings complete
    int interior_count = 0;
};

// Breadth-first closure of the side-pairing generators up to the given word
// length, with kites deduplicated on a 1e-6 grid in disk coordinates.
// Throws DedupCollision when distinct-slot kites land on one cell.
TilingPatch expand(const FundamentalPolygon& f, int depth);

// Number of distinct slot indices present (at most p).
int slot_classes(const TilingPatch& t);

/// Primal map extracted from a patch: vertices are kites, faces are the
/// corner rings, edges join kites sharing a full side.
struct PatchMap {
    int p = 0;
    int vertex_count = 0;
    std::vector<std::array<int, 4>> vertex_faces; // ring ids in cyclic corner order
    std::vector<std::vector<int>> faces;          // ring id -> sorted incident kites
    std::vector<std::pair<int, int>> edges;       // sorted kite id pairs
    std::vector<bool> interior;
};

// Throws EmptyInterior when no kite has all four rings complete.
PatchMap extract_primal(const TilingPatch& t);

// Cyclic face-size sequence at an interior vertex, canonicalized.
std::vector<int> interior_vertex_type(const PatchMap& m, int v);

struct PatchPolyhedralReport {
    bool all_ok = true;
    std::vector<int> violations; // interior vertices failing the face-pair test
};

// For every interior vertex: each pair of incident faces meets in exactly
// that vertex or in exactly one edge through it.
PatchPolyhedralReport check_polyhedral_patch(const PatchMap& m);

void render_svg(const TilingPatch& t, const std::string& path);
std::string render_svg_string(const TilingPatch& t);

std::string patch_summary_json(const TilingPatch& t);

} // namespace hypertile
