#pragma once

#include <stdexcept>
#include <string>

namespace hypertile {

enum class errc {
    degenerate_geodesic,
    angle_out_of_range,
    invalid_type,
    not_hyperbolic,
    parity_rejected,
    non_closing_cycle,
    dedup_collision,
    empty_interior,
    not_involution,
    fixed_point,
    edge_degeneracy,
    disconnected,
    parse_error,
    non_integral_solution,
    curvature_mismatch,
    underdetermined,
    infeasible_counts,
    search_exhausted_no_witness,
    io_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::degenerate_geodesic: return "DegenerateGeodesic";
        case errc::angle_out_of_range: return "AngleOutOfRange";
        case errc::invalid_type: return "InvalidType";
        case errc::not_hyperbolic: return "NotHyperbolic";
        case errc::parity_rejected: return "ParityRejected";
        case errc::non_closing_cycle: return "NonClosingCycle";
        case errc::dedup_collision: return "DedupCollision";
        case errc::empty_interior: return "EmptyInterior";
        case errc::not_involution: return "NotInvolution";
        case errc::fixed_point: return "FixedPoint";
        case errc::edge_degeneracy: return "EdgeDegeneracy";
        case errc::disconnected: return "Disconnected";
        case errc::parse_error: return "ParseError";
        case errc::non_integral_solution: return "NonIntegralSolution";
        case errc::curvature_mismatch: return "CurvatureMismatch";
        case errc::underdetermined: return "Underdetermined";
        case errc::infeasible_counts: return "InfeasibleCounts";
        case errc::search_exhausted_no_witness: return "SearchExhaustedNoWitness";
        case errc::io_error: return "IoError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace hypertile
