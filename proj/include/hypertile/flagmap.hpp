#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypertile/error.hpp"
#include "hypertile/vertex_type.hpp"

namespace hypertile {

/// A finite map on a closed surface encoded by three fixed-point-free
/// involutions on its flag set. Vertices, edges and faces are the orbits of
/// <s1,s2>, <s0,s2> and <s0,s1> respectively.
struct FlagMap {
    int n = 0;
    std::vector<int> s0, s1, s2;

    const std::vector<int>& gen(int i) const { return i == 0 ? s0 : (i == 1 ? s1 : s2); }
};

struct ValidationIssue {
    errc code;
    std::string detail;
};

// nullopt means the map satisfies all structural invariants.
std::optional<ValidationIssue> validate(const FlagMap& m);
void require_valid(const FlagMap& m); // throws the issue as an Error

/// Orbit decomposition of the flag set under a subset of the involutions.
struct Orbits {
    std::vector<int> id;    // flag -> orbit index
    std::vector<int> size;  // orbit index -> flag count
    std::vector<int> rep;   // orbit index -> least flag
    int count = 0;
};

Orbits flag_orbits(const FlagMap& m, std::initializer_list<int> gens);

struct MapSummary {
    long V = 0, E = 0, F = 0;
    long chi = 0;
    bool orientable = false;
    std::map<int, long> face_sizes;            // face size -> count
    std::map<std::string, long> vertex_types;  // canonical cyclic type -> count
    bool homogeneous = false;
    std::optional<VertexType> type;            // set iff homogeneous and all sizes >= 3
    bool simple = false;
    bool polyhedral = false;                   // false whenever not simple
    long vertex_orbits = 0;                    // orbits of Aut on vertices
};

MapSummary summarize(const FlagMap& m);

bool is_simple(const FlagMap& m);

struct PolyhedralViolation {
    int vertex = 0;
    int face_a = 0;
    int face_b = 0;
    std::string detail;
};

struct PolyhedralReport {
    bool polyhedral = false;
    std::optional<PolyhedralViolation> violation;
};

// Checks, for every vertex and every pair of distinct incident faces, that
// the faces intersect in exactly that vertex or exactly one edge through it.
// Non-simple maps report polyhedral = false without a face pair.
PolyhedralReport is_polyhedral(const FlagMap& m);

FlagMap dual(const FlagMap& m);

// All flag permutations commuting with s0, s1, s2. An automorphism is fixed
// by the image of flag 0, so there are at most n of them.
std::vector<std::vector<int>> automorphisms(const FlagMap& m);
long vertex_orbit_count(const FlagMap& m);

// Lexicographically least BFS relabeling over all start flags; equal
// encodings mean isomorphic maps.
std::vector<int> canonical_encoding(const FlagMap& m);
std::vector<int> bfs_encoding(const FlagMap& m, int start);
std::string canonical_digest(const FlagMap& m);
bool isomorphic(const FlagMap& a, const FlagMap& b);

// .fm text format: "flags N" then "s0:", "s1:", "s2:" lines with N
// space-separated 0-based images; '#' lines are comments; LF endings only.
FlagMap read_fm(std::istream& in);
FlagMap read_fm_file(const std::string& path);
std::string write_fm(const FlagMap& m);
void write_fm_file(const FlagMap& m, const std::string& path);

// Builds the flag map of a polygonal complex given per-face cyclic vertex
// lists. Every edge must occur in exactly two face boundaries and loops are
// rejected; gluing is forced by vertex incidence, so listed orientations do
// not matter. Intended for fixtures and for exporting tiling patches.
FlagMap flagmap_from_faces(const std::vector<std::vector<int>>& faces);

} // namespace hypertile
