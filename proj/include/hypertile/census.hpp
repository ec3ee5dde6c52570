#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypertile/flagmap.hpp"
#include "hypertile/vertex_type.hpp"

namespace hypertile {

/// Face counts forced by a vertex type and an Euler characteristic through
/// chi = V (2 - alpha) / 2 and the per-size incidence relations.
struct FaceVector {
    VertexType type{std::vector<int>{3, 3, 3}};
    long chi = 0;
    long V = 0, E = 0, F = 0;
    std::map<int, long> faces_by_size;
};

// Throws CurvatureMismatch, Underdetermined or NonIntegralSolution.
FaceVector face_vector(const VertexType& t, long chi);

// All nonnegative integer solutions (p3, p4, p5) of
//   p3 + p4 + p5 = #p-gons,  3 p3 + 4 p4 + 5 p5 = 6 * #triangles
// for a [p^3,3]-shaped face vector.
std::vector<std::array<long, 3>> pentagon_type_solutions(const FaceVector& fv);

// True when no two triangles share a vertex.
bool triangle_disjointness(const FlagMap& m);

// Histogram n -> count of k-gons (k = `gon`) adjacent to exactly n distinct
// triangles (sharing at least one vertex).
std::map<long, long> polygon_triangle_adjacency(const FlagMap& m, int gon);

struct CensusFilters {
    std::optional<bool> polyhedral; // require (true) / forbid (false) polyhedrality
    std::optional<bool> orientable;
};

enum class SearchMode { exhaustive, first_found };

struct CensusOptions {
    SearchMode mode = SearchMode::exhaustive;
    CensusFilters filters;
    int workers = 1;
    long max_results = 0;   // stop after this many accepted maps (0 = no cap)
    double budget_sec = 0;  // wall-clock budget (0 = none)
    bool partial_canonical_prune = true;
    // called for every completed simple map of the right type, before filters
    std::function<void(const FlagMap&)> on_complete;
};

struct CensusStats {
    std::uint64_t nodes = 0;
    std::uint64_t forced_gluings = 0;
    std::uint64_t prunes_star = 0;
    std::uint64_t prunes_simple = 0;
    std::uint64_t prunes_face = 0;
    std::uint64_t prunes_pentagon = 0;
    std::uint64_t prunes_polyhedral = 0;
    std::uint64_t prunes_canonical = 0;
    std::uint64_t complete_maps = 0;
    double wall_sec = 0;

    void add(const CensusStats& o);
};

struct CensusResult {
    SearchMode mode = SearchMode::exhaustive;
    FaceVector fv;
    std::vector<FlagMap> maps;       // canonical representatives (exhaustive)
    std::vector<MapSummary> summaries;
    std::vector<std::string> digests;
    CensusStats stats;
    bool inconclusive = false; // budget ran out before the space was covered
    bool truncated = false;    // max_results reached
};

// Isomorph-free enumeration of the homogeneous maps of the given type and
// characteristic with a simple underlying graph, subject to the filters.
CensusResult enumerate_maps(const VertexType& t, long chi, const CensusOptions& opts = {});

/// Existence witness for a quasi-vertex-transitive planar map of type
/// [p^3,3]: a finite quotient map of the type at V = 3p.
struct QvtCertificate {
    int p = 0;
    long V = 0;
    long chi = 0;
    FlagMap witness;
    MapSummary summary;
    long orbit_bound = 0; // vertex orbits of the planar lift are at most V
};

// Throws SearchExhaustedNoWitness when the search ends (or the budget runs
// out) without a witness.
QvtCertificate quasi_vt_certificate(int p, double budget_sec = 0);

// Writes map_NNNN.fm files plus manifest.json under `dir`.
void write_census_output(const std::string& dir, const VertexType& t, long chi,
                         const CensusOptions& opts, const CensusResult& res);

} // namespace hypertile
