#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hypertile/census.hpp"
#include "hypertile/flagmap.hpp"
#include "hypertile/fundamental.hpp"
#include "hypertile/json_writer.hpp"
#include "hypertile/tiler.hpp"
#include "hypertile/vertex_type.hpp"

using namespace hypertile;

namespace {

// exit codes: 0 ok, 1 invalid input, 2 verification mismatch, 3 no witness
constexpr int kOk = 0, kInvalid = 1, kMismatch = 2, kNoWitness = 3;

std::vector<int> parse_tuple(const std::string& s) {
    std::vector<int> ks;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = s.find(',', i);
        if (j == std::string::npos) j = s.size();
        ks.push_back(std::stoi(s.substr(i, j - i)));
        i = j + 1;
    }
    return ks;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io_error, "cannot open " + path + " for writing");
    out << text;
}

int default_workers() {
    if (const char* env = std::getenv("HYPERTILE_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

int cmd_solve_type(const std::string& tuple, bool as_json) {
    TypeAnalysis ta = analyze_type(VertexType(parse_tuple(tuple)));
    if (as_json) {
        JsonWriter w;
        w.begin_object();
        w.key("type").value(ta.type.str());
        w.key("alpha").value(ta.alpha.str());
        w.key("alpha_value").value(ta.alpha.value());
        w.key("class").value(curvature_name(ta.curvature));
        if (ta.edge_length) {
            w.key("edge_length").value(*ta.edge_length);
            w.key("angle_sum_residual").value(ta.angle_sum_residual);
            w.key("thetas").begin_object();
            for (const auto& [k, pm] : ta.metrics) w.key(std::to_string(k)).value(pm.theta);
            w.end_object();
        }
        w.end_object();
        std::cout << w.str();
        return kOk;
    }
    std::cout << "type   " << ta.type.str() << "\n";
    std::cout << "alpha  " << ta.alpha.str() << " (" << ta.alpha.value() << ")\n";
    std::cout << "class  " << curvature_name(ta.curvature) << "\n";
    if (ta.edge_length) {
        std::printf("edge   s = %.15g  (angle-sum residual %.3g)\n", *ta.edge_length, ta.angle_sum_residual);
        for (const auto& [k, pm] : ta.metrics)
            std::printf("theta_%d = %.15g   R_%d = %.15g   r_%d = %.15g\n", k, pm.theta, k, pm.R, k, pm.r);
    }
    return kOk;
}

int cmd_build_f(int p, const std::string& json_path) {
    FundamentalPolygon f = build_fundamental_polygon(p);
    CycleReport rep = trace_cycles(f);
    std::cout << "F(" << p << "): " << rep.boundary_vertex_count << " boundary vertices, "
              << f.pairings.size() << " side pairings\n";
    for (const auto& c : rep.cycles) {
        std::string members;
        for (const auto& l : c.member_labels) members += (members.empty() ? "" : " ") + l;
        std::printf("cycle {%s}: sum %.12f, nearest 2pi/%d (residual %.2e), expected %s -> %s\n", members.c_str(),
                    c.measured_sum, c.nearest_m, c.residual_nearest,
                    c.paper_expected ? std::to_string(*c.paper_expected).c_str() : "none", c.verdict());
    }
    std::cout << (rep.all_match ? "all cycles MATCH the announced sums\n"
                                : "some cycles MISMATCH the announced sums\n");
    if (!json_path.empty()) write_text_file(json_path, rep.to_json());
    return rep.all_match ? kOk : kMismatch;
}

int cmd_tile(int p, int depth, const std::string& svg_path, const std::string& json_path) {
    FundamentalPolygon f = build_fundamental_polygon(p);
    TilingPatch t = expand(f, depth);
    render_svg(t, svg_path);
    std::string summary = patch_summary_json(t);
    if (!json_path.empty()) write_text_file(json_path, summary);
    std::cout << summary;
    bool ok = true;
    if (t.interior_count > 0) {
        PatchMap m = extract_primal(t);
        std::vector<int> want = VertexType::canonical_cycle({p, p, p, 3});
        for (int v = 0; v < m.vertex_count && ok; ++v)
            if (m.interior[std::size_t(v)]) ok = interior_vertex_type(m, v) == want;
        ok = ok && check_polyhedral_patch(m).all_ok;
    }
    return ok ? kOk : kMismatch;
}

int cmd_census(const std::string& tuple, long chi, bool polyhedral, bool orientable, bool nonorientable,
               bool first, const std::string& out_dir, int workers, double budget, long limit) {
    VertexType t(parse_tuple(tuple));
    CensusOptions opts;
    opts.mode = first ? SearchMode::first_found : SearchMode::exhaustive;
    if (polyhedral) opts.filters.polyhedral = true;
    if (orientable) opts.filters.orientable = true;
    if (nonorientable) opts.filters.orientable = false;
    opts.workers = workers;
    opts.budget_sec = budget;
    opts.max_results = limit;
    CensusResult res = enumerate_maps(t, chi, opts);
    write_census_output(out_dir, t, chi, opts, res);
    std::cout << "census " << t.str() << " chi=" << chi << ": " << res.maps.size() << " map(s), "
              << res.stats.nodes << " nodes, " << res.stats.wall_sec << " s\n";
    if (res.inconclusive) {
        std::cout << "INCONCLUSIVE: budget exhausted before the search space was covered\n";
        return kNoWitness;
    }
    if (first && res.maps.empty()) {
        std::cout << "no witness found (search space exhausted)\n";
        return kNoWitness;
    }
    return kOk;
}

int cmd_inspect(const std::string& path, bool as_json) {
    FlagMap m = read_fm_file(path);
    require_valid(m);
    MapSummary s = summarize(m);
    auto types_str = [&]() {
        std::string out;
        for (const auto& [k, c] : s.vertex_types) out += (out.empty() ? "" : " ") + k + "x" + std::to_string(c);
        return out;
    };
    if (as_json) {
        JsonWriter w;
        w.begin_object();
        w.key("flags").value(m.n);
        w.key("V").value(std::int64_t(s.V));
        w.key("E").value(std::int64_t(s.E));
        w.key("F").value(std::int64_t(s.F));
        w.key("chi").value(std::int64_t(s.chi));
        w.key("orientable").value(s.orientable);
        w.key("simple").value(s.simple);
        w.key("polyhedral").value(s.polyhedral);
        w.key("homogeneous").value(s.homogeneous);
        w.key("vertex_types").begin_object();
        for (const auto& [k, c] : s.vertex_types) w.key(k).value(std::int64_t(c));
        w.end_object();
        w.key("vertex_orbits").value(std::int64_t(s.vertex_orbits));
        w.key("digest").value(canonical_digest(m));
        w.end_object();
        std::cout << w.str();
        return kOk;
    }
    std::cout << "flags " << m.n << "\n";
    std::cout << "V=" << s.V << " E=" << s.E << " F=" << s.F << " chi=" << s.chi << "\n";
    std::cout << (s.orientable ? "orientable" : "non-orientable") << ", " << (s.simple ? "simple" : "not simple")
              << ", " << (s.polyhedral ? "polyhedral" : "not polyhedral") << "\n";
    std::cout << "vertex types: " << types_str() << (s.homogeneous ? " (homogeneous)" : "") << "\n";
    std::cout << "vertex orbits: " << s.vertex_orbits << "\n";
    return kOk;
}

int cmd_dual(const std::string& in_path, const std::string& out_path) {
    FlagMap m = read_fm_file(in_path);
    require_valid(m);
    write_fm_file(dual(m), out_path);
    return kOk;
}

int cmd_vt_check(int p, bool as_json) {
    ObstructionReport r = vt_obstruction_p33(p);
    if (as_json) {
        JsonWriter w;
        w.begin_object();
        w.key("p").value(r.p);
        w.key("verdict").value(r.obstructed ? "obstructed" : "not_obstructed");
        if (r.contact_counts) {
            w.key("edge_contacts").value(std::int64_t(r.contact_counts->first));
            w.key("vertex_contacts").value(std::int64_t(r.contact_counts->second));
        }
        w.key("reason").value(r.reason);
        w.end_object();
        std::cout << w.str();
        return kOk;
    }
    std::cout << "p=" << p << ": " << (r.obstructed ? "obstructed" : "not_obstructed") << "\n" << r.reason << "\n";
    if (r.contact_counts)
        std::cout << "contact certificate (i,j) = (" << r.contact_counts->first << ","
                  << r.contact_counts->second << ")\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypertile: [p^3,3] hyperbolic tilings and homogeneous-map census"};
    app.require_subcommand(1);

    std::string tuple, json_path, svg_path, out_dir, fm_in, fm_out;
    int p = 0, depth = 0, workers = default_workers();
    long chi = 0, limit = 0;
    double budget = 0;
    bool as_json = false, polyhedral = false, orientable = false, nonorientable = false, first = false;

    auto* solve = app.add_subcommand("solve-type", "classify a vertex type and solve its edge length");
    solve->add_option("tuple", tuple, "comma-separated face sizes, e.g. 5,5,5,3")->required();
    solve->add_flag("--json", as_json, "emit JSON instead of text");

    auto* buildf = app.add_subcommand("build-f", "construct F(p) and verify its elliptic cycles");
    buildf->add_option("p", p, "odd p >= 5")->required();
    buildf->add_option("--json", json_path, "write the cycle report as JSON");

    auto* tile = app.add_subcommand("tile", "expand the tiling patch, run checks, render SVG");
    tile->add_option("p", p, "odd p >= 5")->required();
    tile->add_option("--depth", depth, "generator word length")->required();
    tile->add_option("--svg", svg_path, "output SVG path")->required();
    tile->add_option("--json", json_path, "write the patch summary as JSON");

    auto* census = app.add_subcommand("census", "enumerate homogeneous maps of a type on a surface");
    census->add_option("--type", tuple, "vertex type, e.g. 5,5,5,3")->required();
    census->add_option("--chi", chi, "Euler characteristic")->required();
    census->add_flag("--polyhedral", polyhedral, "only polyhedral maps");
    census->add_flag("--orientable", orientable, "only orientable maps");
    census->add_flag("--nonorientable", nonorientable, "only non-orientable maps");
    census->add_flag("--first", first, "stop at the first witness");
    census->add_option("--out", out_dir, "output directory")->required();
    census->add_option("--workers", workers, "parallel workers (default $HYPERTILE_WORKERS or 1)");
    census->add_option("--budget-sec", budget, "wall-clock budget in seconds (0 = none)");
    census->add_option("--limit", limit, "stop after this many maps (exhaustive mode)");

    auto* inspect = app.add_subcommand("inspect", "summarize a .fm flag map");
    inspect->add_option("file", fm_in, "input .fm file")->required();
    inspect->add_flag("--json", as_json, "emit JSON instead of text");

    auto* dualc = app.add_subcommand("dual", "write the dual of a .fm flag map");
    dualc->add_option("in", fm_in, "input .fm file")->required();
    dualc->add_option("out", fm_out, "output .fm file")->required();

    auto* vt = app.add_subcommand("vt-check", "vertex-transitivity obstruction for planar [p^3,3]");
    vt->add_option("p", p, "p >= 4")->required();
    vt->add_flag("--json", as_json, "emit JSON instead of text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << e.what() << "\n";
        return kInvalid;
    }

    try {
        if (solve->parsed()) return cmd_solve_type(tuple, as_json);
        if (buildf->parsed()) return cmd_build_f(p, json_path);
        if (tile->parsed()) return cmd_tile(p, depth, svg_path, json_path);
        if (census->parsed()) {
            if (orientable && nonorientable) {
                std::cerr << "--orientable and --nonorientable are mutually exclusive\n";
                return kInvalid;
            }
            return cmd_census(tuple, chi, polyhedral, orientable, nonorientable, first, out_dir, workers, budget,
                              limit);
        }
        if (inspect->parsed()) return cmd_inspect(fm_in, as_json);
        if (dualc->parsed()) return cmd_dual(fm_in, fm_out);
        if (vt->parsed()) return cmd_vt_check(p, as_json);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        switch (e.code()) {
            case errc::dedup_collision:
            case errc::non_closing_cycle:
                return kMismatch;
            case errc::search_exhausted_no_witness:
                return kNoWitness;
            default:
                return kInvalid;
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
