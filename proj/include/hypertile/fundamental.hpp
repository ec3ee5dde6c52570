#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypertile/hyperbolic.hpp"
#include "hypertile/vertex_type.hpp"

namespace hypertile {

/// Dual face of the [p,p,p,3] configuration around one vertex: the hyperbolic
/// quadrilateral joining the incenters of the three p-gons and the triangle.
/// Corners in boundary order: center -> flank1 -> apex -> flank2, where apex
/// is the triangle incenter and center is opposite to it.
struct DualKite {
    int p = 0;
    hyp::HPoint center, flank1, apex, flank2;
    hyp::PolygonMetrics pgon, tri; // face metrics at the common edge length
    double edge_length = 0;        // primal edge length s

    std::array<double, 4> measured_angles{}; // at center, flank1, apex, flank2
    double measured_area = 0;                // angle defect of the two triangle halves

    std::array<hyp::HPoint, 4> corners() const { return {center, flank1, apex, flank2}; }
    double target_angle_p() const { return 2 * hyp::kPi / p; }
    double target_angle_tri() const { return 2 * hyp::kPi / 3; }
};

// Requires p odd and >= 5 (even p is ParityRejected, p = 3 is NotHyperbolic).
DualKite build_kite(int p);

/// Boundary vertex label: v_base or, for a declared side midpoint, v'_base.
struct VertexLabel {
    int base = 0;
    bool prime = false;
    std::string str() const { return (prime ? "v'_" : "v_") + std::to_string(base); }
    bool operator==(const VertexLabel& o) const { return base == o.base && prime == o.prime; }
};

struct PolyVertex {
    VertexLabel label;
    hyp::HPoint pos;
};

/// Polygon side with the orientation arrow used by the side pairings.
/// Geometrically side i joins boundary positions i and i+1 (mod count);
/// tail/head give the arrow direction as vertex positions.
struct DirectedSide {
    std::string name; // e_i or e'_i
    int tail = 0;
    int head = 0;
};

struct SidePairing {
    int source = 0; // side index
    int target = 0;
    hyp::Isometry g; // maps the directed source side onto the directed target side
};

struct KiteCopy {
    int slot = 0;            // 1..p
    hyp::Isometry place;     // maps the slot-1 base kite onto this copy
    std::array<hyp::HPoint, 4> corners; // [center, flank, apex, flank]
};

/// The (2p+2)-gon F(p): one ring of p kites around the origin, its boundary
/// with the two dotted-side midpoints declared as vertices, and the p+1
/// side pairings.
struct FundamentalPolygon {
    int p = 0;
    DualKite kite;
    hyp::HPoint center; // common kite corner, at the origin
    std::vector<PolyVertex> vertices; // 2p+2 in ccw boundary order
    std::vector<DirectedSide> sides;  // 2p+2
    std::vector<SidePairing> pairings; // p+1
    std::vector<KiteCopy> kites;      // p
    std::string labeling_note;

    int vertex_count() const { return int(vertices.size()); }
    // index into `vertices`, -1 if absent
    int position_of(const VertexLabel& l) const;
    // the two sides incident to the boundary vertex at `pos`
    std::pair<int, int> incident_sides(int pos) const;
    double side_length(int side) const;
};

FundamentalPolygon build_fundamental_polygon(int p);

/// One elliptic cycle of the side-pairing walk, with its measured angle sum
/// and the comparison against the announced target.
struct CycleCell {
    std::vector<int> members;                // boundary positions, in walk order
    std::vector<std::string> member_labels;
    double measured_sum = 0;
    int nearest_m = 1;                       // nearest 2*pi/m
    double residual_nearest = 0;             // |sum - 2*pi/nearest_m|
    std::optional<double> paper_expected;    // target for the matching announced cell
    std::string expected_cell;               // announced cell as a label list, if matched
    bool partition_match = false;            // member set equals an announced cell
    bool sum_match = false;
    const char* verdict() const { return sum_match ? "MATCH" : "MISMATCH"; }
};

struct CycleReport {
    int p = 0;
    int boundary_vertex_count = 0;
    std::vector<SidePairing> pairings;
    std::vector<CycleCell> cycles;
    bool partition_ok = false;
    bool all_match = false;
    std::string labeling_note;

    std::string to_json() const;
};

// Walks every boundary vertex through the side pairings, measures each
// cycle's angle sum from coordinates and compares against the announced
// cycle list. Throws NonClosingCycle if a walk fails to return.
CycleReport trace_cycles(const FundamentalPolygon& f, double match_tol = 1e-8);

// The announced partition of the boundary labels with its angle-sum targets.
std::vector<std::pair<std::vector<VertexLabel>, double>> expected_cycles(int p);

/// Outcome of the vertex-transitivity obstruction for planar type [p^3,3]:
/// a single p-gon contact class needs 2i + j = p edge/vertex contacts with
/// i = j, impossible unless 3 divides p.
struct ObstructionReport {
    int p = 0;
    bool obstructed = false;
    std::optional<std::pair<long, long>> contact_counts; // (i, j) when 3 | p
    std::string reason;
};

ObstructionReport vt_obstruction_p33(int p); // requires p >= 4

} // namespace hypertile
