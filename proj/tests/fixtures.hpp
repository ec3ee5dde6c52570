#pragma once

#include <vector>

#include "hypertile/flagmap.hpp"

// Classical maps used as test fixtures, built from face lists (the gluing is
// forced by vertex incidence, so listed orientations are irrelevant).
namespace fixtures {

inline hypertile::FlagMap tetrahedron() {
    return hypertile::flagmap_from_faces({{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}});
}

inline hypertile::FlagMap cube() {
    return hypertile::flagmap_from_faces({
        {0, 1, 3, 2}, {4, 6, 7, 5}, {0, 4, 5, 1}, {2, 3, 7, 6}, {0, 2, 6, 4}, {1, 5, 7, 3}});
}

inline hypertile::FlagMap octahedron() {
    return hypertile::flagmap_from_faces({
        {0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}});
}

// top square 0..3, bottom square 4..7
inline hypertile::FlagMap square_antiprism() {
    std::vector<std::vector<int>> faces{{0, 1, 2, 3}, {7, 6, 5, 4}};
    for (int i = 0; i < 4; ++i) {
        faces.push_back({i, 4 + i, 4 + (i + 1) % 4});
        faces.push_back({i, 4 + (i + 1) % 4, (i + 1) % 4});
    }
    return hypertile::flagmap_from_faces(faces);
}

inline hypertile::FlagMap icosahedron() {
    std::vector<std::vector<int>> faces;
    for (int i = 0; i < 5; ++i) {
        int a = 1 + i, b = 1 + (i + 1) % 5;         // upper ring
        int c = 6 + i, d = 6 + (i + 1) % 5;          // lower ring
        faces.push_back({0, a, b});
        faces.push_back({a, c, d});
        faces.push_back({a, d, b});
        faces.push_back({11, d, c});
    }
    return hypertile::flagmap_from_faces(faces);
}

// Elongated square bicupola: rings A = 0..3 (top square), B = 4..11 (upper
// octagon), C = 12..19 (lower octagon), D = 20..23 (bottom square). twist = 0
// aligns the cupolas (rhombicuboctahedron); twist = 1 gyrates the bottom one
// (pseudo-rhombicuboctahedron, J37).
inline hypertile::FlagMap square_bicupola(int twist) {
    auto B = [](int i) { return 4 + ((i % 8) + 8) % 8; };
    auto C = [](int i) { return 12 + ((i % 8) + 8) % 8; };
    auto D = [](int i) { return 20 + ((i % 4) + 4) % 4; };
    std::vector<std::vector<int>> faces;
    faces.push_back({0, 1, 2, 3});
    for (int i = 0; i < 4; ++i) {
        faces.push_back({i, B(2 * i), B(2 * i + 1)});
        faces.push_back({i, B(2 * i + 1), B(2 * i + 2), (i + 1) % 4});
    }
    for (int j = 0; j < 8; ++j) faces.push_back({B(j), C(j), C(j + 1), B(j + 1)});
    faces.push_back({D(0), D(1), D(2), D(3)});
    for (int i = 0; i < 4; ++i) {
        faces.push_back({D(i), C(2 * i + twist), C(2 * i + 1 + twist)});
        faces.push_back({D(i), C(2 * i + 1 + twist), C(2 * i + 2 + twist), D(i + 1)});
    }
    return hypertile::flagmap_from_faces(faces);
}

inline hypertile::FlagMap rhombicuboctahedron() { return square_bicupola(0); }
inline hypertile::FlagMap pseudo_rhombicuboctahedron() { return square_bicupola(1); }

// One vertex, two loops, one square face glued a b a^-1 b^-1 (torus).
// Needs hand-built involutions since the face builder rejects loops.
inline hypertile::FlagMap bouquet_torus() {
    hypertile::FlagMap m;
    m.n = 8; // flags 2*dart+bit for darts 0..3 of the single square face
    m.s0 = {1, 0, 3, 2, 5, 4, 7, 6};
    m.s1.assign(8, -1);
    for (int d = 0; d < 4; ++d) {
        int prev = (d + 3) % 4;
        m.s1[std::size_t(2 * d)] = 2 * prev + 1;
        m.s1[std::size_t(2 * prev + 1)] = 2 * d;
    }
    // darts 0 and 2 are the two traversals of loop a (opposite direction),
    // darts 1 and 3 of loop b
    m.s2.assign(8, -1);
    auto glue = [&](int d1, int d2) {
        m.s2[std::size_t(2 * d1)] = 2 * d2 + 1;
        m.s2[std::size_t(2 * d2 + 1)] = 2 * d1;
        m.s2[std::size_t(2 * d1 + 1)] = 2 * d2;
        m.s2[std::size_t(2 * d2)] = 2 * d1 + 1;
    };
    glue(0, 2);
    glue(1, 3);
    return m;
}

// Two vertices joined by two parallel edges; two digon faces (sphere).
inline hypertile::FlagMap digon_pair() {
    hypertile::FlagMap m;
    m.n = 8; // face 0 darts 0,1; face 1 darts 2,3
    m.s0 = {1, 0, 3, 2, 5, 4, 7, 6};
    m.s1.assign(8, -1);
    auto corner = [&](int d, int prev) {
        m.s1[std::size_t(2 * d)] = 2 * prev + 1;
        m.s1[std::size_t(2 * prev + 1)] = 2 * d;
    };
    corner(0, 1);
    corner(1, 0);
    corner(2, 3);
    corner(3, 2);
    // edge x: face0 dart0 (u->w) with face1 dart3 (w->u); edge y: dart1 with dart2
    m.s2.assign(8, -1);
    auto glue = [&](int d1, int d2) {
        m.s2[std::size_t(2 * d1)] = 2 * d2 + 1;
        m.s2[std::size_t(2 * d2 + 1)] = 2 * d1;
        m.s2[std::size_t(2 * d1 + 1)] = 2 * d2;
        m.s2[std::size_t(2 * d2)] = 2 * d1 + 1;
    };
    glue(0, 3);
    glue(1, 2);
    return m;
}

} // namespace fixtures
