#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "hypertile/flagmap.hpp"

using namespace hypertile;

TEST_CASE("tetrahedron summary") {
    FlagMap m = fixtures::tetrahedron();
    CHECK(m.n == 24);
    CHECK_FALSE(validate(m).has_value());
    MapSummary s = summarize(m);
    CHECK(s.V == 4);
    CHECK(s.E == 6);
    CHECK(s.F == 4);
    CHECK(s.chi == 2);
    CHECK(s.orientable);
    CHECK(s.simple);
    CHECK(s.polyhedral);
    CHECK(s.homogeneous);
    REQUIRE(s.type.has_value());
    CHECK(s.type->str() == "[3,3,3]");
    CHECK(s.vertex_orbits == 1);
    // the full symmetry group acts regularly on the 24 flags
    CHECK(automorphisms(m).size() == 24);
}

TEST_CASE("cube and octahedron are dual") {
    FlagMap c = fixtures::cube();
    MapSummary sc = summarize(c);
    CHECK(sc.V == 8);
    CHECK(sc.E == 12);
    CHECK(sc.F == 6);
    CHECK(sc.polyhedral);
    MapSummary so = summarize(dual(c));
    CHECK(so.V == 6);
    CHECK(so.F == 8);
    CHECK(isomorphic(dual(c), fixtures::octahedron()));
    CHECK(isomorphic(dual(dual(c)), c));
}

TEST_CASE("square antiprism") {
    FlagMap m = fixtures::square_antiprism();
    MapSummary s = summarize(m);
    CHECK(s.V == 8);
    CHECK(s.E == 16);
    CHECK(s.F == 10);
    CHECK(s.chi == 2);
    CHECK(s.orientable);
    CHECK(s.homogeneous);
    CHECK(s.type->str() == "[3,3,3,4]");
    CHECK(s.vertex_orbits == 1);
}

TEST_CASE("icosahedron") {
    MapSummary s = summarize(fixtures::icosahedron());
    CHECK(s.V == 12);
    CHECK(s.E == 30);
    CHECK(s.F == 20);
    CHECK(s.homogeneous);
    CHECK(s.type->str() == "[3,3,3,3,3]");
    CHECK(s.vertex_orbits == 1);
}

TEST_CASE("rhombicuboctahedron vs pseudo-rhombicuboctahedron") {
    FlagMap rco = fixtures::rhombicuboctahedron();
    FlagMap pseudo = fixtures::pseudo_rhombicuboctahedron();
    MapSummary a = summarize(rco), b = summarize(pseudo);
    for (const MapSummary* s : {&a, &b}) {
        CHECK(s->V == 24);
        CHECK(s->E == 48);
        CHECK(s->F == 26);
        CHECK(s->homogeneous);
        CHECK(s->type->str() == "[3,4,4,4]");
        CHECK(s->polyhedral);
    }
    CHECK(a.vertex_orbits == 1);  // the archimedean solid is vertex-transitive
    CHECK(b.vertex_orbits > 1);   // J37 is homogeneous but not
    CHECK_FALSE(isomorphic(rco, pseudo));
}

TEST_CASE("validation errors") {
    FlagMap m = fixtures::tetrahedron();
    SUBCASE("not an involution") {
        m.s1[0] = m.s1[std::size_t(m.s1[0])]; // break involution
        auto issue = validate(m);
        REQUIRE(issue.has_value());
    }
    SUBCASE("fixed point") {
        int a = 0, b = m.s0[0];
        m.s0[std::size_t(a)] = a;
        m.s0[std::size_t(b)] = b;
        auto issue = validate(m);
        REQUIRE(issue.has_value());
        CHECK(issue->code == errc::fixed_point);
    }
    SUBCASE("disconnected union of two tetrahedra") {
        FlagMap two;
        two.n = 48;
        two.s0.resize(48);
        two.s1.resize(48);
        two.s2.resize(48);
        for (int i = 0; i < 24; ++i) {
            two.s0[std::size_t(i)] = m.s0[std::size_t(i)];
            two.s1[std::size_t(i)] = m.s1[std::size_t(i)];
            two.s2[std::size_t(i)] = m.s2[std::size_t(i)];
            two.s0[std::size_t(i + 24)] = m.s0[std::size_t(i)] + 24;
            two.s1[std::size_t(i + 24)] = m.s1[std::size_t(i)] + 24;
            two.s2[std::size_t(i + 24)] = m.s2[std::size_t(i)] + 24;
        }
        auto issue = validate(two);
        REQUIRE(issue.has_value());
        CHECK(issue->code == errc::disconnected);
    }
    SUBCASE("edge degeneracy") {
        // s2 = s0 makes s0*s2 the identity
        m.s2 = m.s0;
        auto issue = validate(m);
        REQUIRE(issue.has_value());
        CHECK(issue->code == errc::edge_degeneracy);
    }
}

TEST_CASE("simplicity negatives") {
    FlagMap bouquet = fixtures::bouquet_torus();
    CHECK_FALSE(validate(bouquet).has_value());
    MapSummary s = summarize(bouquet);
    CHECK(s.V == 1);
    CHECK(s.E == 2);
    CHECK(s.F == 1);
    CHECK(s.chi == 0);
    CHECK(s.orientable);
    CHECK_FALSE(s.simple); // loops

    FlagMap digons = fixtures::digon_pair();
    CHECK_FALSE(validate(digons).has_value());
    MapSummary d = summarize(digons);
    CHECK(d.V == 2);
    CHECK(d.E == 2);
    CHECK(d.F == 2);
    CHECK(d.chi == 2);
    CHECK_FALSE(d.simple); // parallel edges
}

TEST_CASE("polyhedral checks") {
    CHECK(is_polyhedral(fixtures::cube()).polyhedral);
    CHECK(is_polyhedral(fixtures::square_antiprism()).polyhedral);
    // four quads through the poles 0 and 1: opposite quads share the two
    // poles but no edge, adjacent quads share two edges
    FlagMap bad = flagmap_from_faces({
        {0, 2, 1, 3}, {0, 3, 1, 4}, {0, 4, 1, 5}, {0, 5, 1, 2}});
    CHECK(is_simple(bad));
    PolyhedralReport rep = is_polyhedral(bad);
    CHECK_FALSE(rep.polyhedral);
    REQUIRE(rep.violation.has_value());
}

TEST_CASE("self-dual tetrahedron") {
    CHECK(isomorphic(fixtures::tetrahedron(), dual(fixtures::tetrahedron())));
}

TEST_CASE("canonical digest distinguishes and identifies") {
    CHECK(canonical_digest(fixtures::cube()) == canonical_digest(dual(fixtures::octahedron())));
    CHECK(canonical_digest(fixtures::cube()) != canonical_digest(fixtures::square_antiprism()));
    // relabeling flags leaves the canonical form unchanged: BFS relabel
    FlagMap m = fixtures::square_antiprism();
    std::vector<int> enc = bfs_encoding(m, 7);
    FlagMap relabeled;
    relabeled.n = m.n;
    // rebuild from the encoding (it is itself a flag map description)
    relabeled.s0.resize(std::size_t(m.n));
    relabeled.s1.resize(std::size_t(m.n));
    relabeled.s2.resize(std::size_t(m.n));
    for (int l = 0; l < m.n; ++l) {
        relabeled.s0[std::size_t(l)] = enc[std::size_t(3 * l)];
        relabeled.s1[std::size_t(l)] = enc[std::size_t(3 * l + 1)];
        relabeled.s2[std::size_t(l)] = enc[std::size_t(3 * l + 2)];
    }
    CHECK(isomorphic(m, relabeled));
    CHECK(canonical_digest(m) == canonical_digest(relabeled));
}

TEST_CASE("fm round trip is byte identical") {
    for (const FlagMap& m : {fixtures::tetrahedron(), fixtures::square_antiprism(), fixtures::bouquet_torus()}) {
        std::string text = write_fm(m);
        std::istringstream in(text);
        FlagMap back = read_fm(in);
        CHECK(write_fm(back) == text);
        CHECK(back.n == m.n);
        CHECK(back.s0 == m.s0);
        CHECK(back.s1 == m.s1);
        CHECK(back.s2 == m.s2);
    }
}

TEST_CASE("fm comments are ignored; errors carry line and column") {
    std::istringstream ok("# a comment\nflags 8\ns0: 1 0 3 2 5 4 7 6\n# mid\ns1: 3 2 1 0 7 6 5 4\ns2: 5 4 7 6 1 0 3 2\n");
    FlagMap m = read_fm(ok);
    CHECK(m.n == 8);

    auto expect_error = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            (void)read_fm(in);
            FAIL_CHECK("expected a parse error for: " << text);
        } catch (const Error& e) {
            CHECK(e.code() == errc::parse_error);
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error("flagz 8\ns0: 1 0\ns1: 1 0\ns2: 1 0\n", "line 1");
    expect_error("flags 4\ns0: 1 0 3\ns1: 1 0 3 2\ns2: 3 2 1 0\n", "expected 4 integers");
    expect_error("flags 4\ns0: 1 0 3 9\ns1: 1 0 3 2\ns2: 3 2 1 0\n", "out of range");
    expect_error("flags 4\r\ns0: 1 0 3 2\ns1: 1 0 3 2\ns2: 3 2 1 0\n", "carriage return");
    expect_error("flags 4\ns0: 1 0 3 2\ns1: 1 0 3 2\n", "4 content lines");
}

TEST_CASE("fm file io") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "hypertile_fm_test";
    fs::create_directories(dir);
    fs::path file = dir / "anti.fm";
    write_fm_file(fixtures::square_antiprism(), file.string());
    FlagMap m = read_fm_file(file.string());
    CHECK(isomorphic(m, fixtures::square_antiprism()));
    // byte-identical round trip through the file system
    std::ifstream in(file, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == write_fm(m));
    fs::remove_all(dir);
}
