// Tile-code builder.  Check counts follow the closed-form identities, the two
// check kinds commute, boundary clipping behaves as worked out by hand for
// explicit anchors, and the serialisation formats round-trip through their
// importers (the importer doubles as the oracle for the exporters).

#include <doctest.h>

#include <stdexcept>

#include "tilekit/code.hpp"

using namespace tilekit;

namespace {

TilePair running_tiles() {
    return make_tile_pair(parse_poly("1+x^2*y+x^2*y^2", 2), parse_poly("x+x^2+y^2", 2), 2);
}

TilePair toy_tiles() {
    return make_tile_pair(parse_poly("1+y+x*y", 2), parse_poly("1+x+x*y", 2), 1);
}

// Rank of h restricted to the columns outside [lo, hi) on the given axis
// (axis 0: column a of the site, axis 1: row b), both copies.
bool strip_supports_stabilizer(const CssCode& code, const BitMatrix& h, int axis, int lo, int hi) {
    std::vector<std::size_t> outside;
    for (std::size_t q = 0; q < code.n; ++q) {
        int v = code.qubit_labels[q].pos.e[axis];
        if (v < lo || v >= hi) outside.push_back(q);
    }
    // A nonzero row combination supported inside the strip vanishes on every
    // outside column, so it exists exactly when restricting to the outside
    // columns drops the row rank.
    return rank(select_columns(h, outside)) != rank(h);
}

}  // namespace

TEST_SUITE_BEGIN("code");

TEST_CASE("running-pair code at 12x12 has the promised shape") {
    CssCode code = build_tile_code(running_tiles(), 12, 12);
    CHECK(code.n == 288);
    CHECK(code.hx.rows() == 140);  // (L-D)(M+D) = 10*14
    CHECK(code.hz.rows() == 140);  // (L+D)(M-D) = 14*10
    CodeParams p = code_params(code);
    CHECK(p.rank_hx == 140);
    CHECK(p.rank_hz == 140);
    CHECK(p.k == 8);
}

TEST_CASE("running-pair code at 6x6") {
    CssCode code = build_tile_code(running_tiles(), 6, 6);
    CHECK(code.n == 72);
    CHECK(code.hx.rows() == 32);  // 4*8
    CHECK(code.hz.rows() == 32);
    CHECK(code_params(code).k == 8);
}

TEST_CASE("width-1 toy code at 3x3") {
    CssCode code = build_tile_code(toy_tiles(), 3, 3);
    CHECK(code.n == 18);
    CHECK(code.hx.rows() == 8);  // (3-1)(3+1)
    CHECK(code.hz.rows() == 8);
    CHECK(code_params(code).k == 2);
}

TEST_CASE("explicit check rows, including boundary clipping") {
    CssCode code = build_tile_code(running_tiles(), 12, 12);
    LatticeIndex idx{12, 12};

    // Bulk X check anchored at (0,0): vertical support from f, horizontal from g.
    std::size_t r00 = 0;
    bool found = false;
    for (std::size_t r = 0; r < code.x_labels.size(); ++r)
        if (code.x_labels[r].pos == Mono(0, 0)) { r00 = r; found = true; }
    REQUIRE(found);
    BitVec row = code.hx.row(r00);
    CHECK(row.weight() == 6);
    CHECK(row.get(idx(kVertical, 0, 0)));
    CHECK(row.get(idx(kVertical, 2, 1)));
    CHECK(row.get(idx(kVertical, 2, 2)));
    CHECK(row.get(idx(kHorizontal, 1, 0)));
    CHECK(row.get(idx(kHorizontal, 2, 0)));
    CHECK(row.get(idx(kHorizontal, 0, 2)));

    // Southmost boundary X check at (0,-2) keeps only the parts that land in
    // the patch: vertical (2,0) from f's x^2*y^2 term, horizontal (0,0) from
    // g's y^2 term.
    for (std::size_t r = 0; r < code.x_labels.size(); ++r)
        if (code.x_labels[r].pos == Mono(0, -2)) { r00 = r; }
    row = code.hx.row(r00);
    CHECK(row.weight() == 2);
    CHECK(row.get(idx(kVertical, 2, 0)));
    CHECK(row.get(idx(kHorizontal, 0, 0)));

    // Westmost boundary Z check at (-2,0): the Z tile reads the reversed
    // polynomials, vertical via rev(g), horizontal via rev(f).
    for (std::size_t r = 0; r < code.z_labels.size(); ++r)
        if (code.z_labels[r].pos == Mono(-2, 0)) { r00 = r; }
    row = code.hz.row(r00);
    CHECK(row.weight() == 2);
    CHECK(row.get(idx(kVertical, 0, 0)));    // rev(g) term x^2
    CHECK(row.get(idx(kHorizontal, 0, 2)));  // rev(f) term x^2*y^2
}

TEST_CASE("check kinds commute, on full codes and windows") {
    // build_tile_code and build_tile_window assert commutation internally;
    // exercise a spread of shapes and masks.
    for (auto [L, M] : {std::pair{5, 7}, {8, 6}, {12, 12}})
        CHECK_NOTHROW(build_tile_code(running_tiles(), L, M));
    for (bool south : {false, true})
        for (bool west : {false, true}) {
            BoundaryMask mask{south, !south, west, !west};
            CHECK_NOTHROW(build_tile_window(running_tiles(), 9, 9, mask));
        }
}

TEST_CASE("no product of full tiles fits in a thin strip") {
    // Boundary checks are clipped and can collapse into a single qubit row, so
    // the thin-strip exclusion is a statement about bulk (unclipped) tiles:
    // no nonzero combination of them is supported within D consecutive rows or
    // D consecutive columns.
    CssCode bulk = build_tile_window(running_tiles(), 6, 6, BoundaryMask{false, false, false, false});
    for (int axis : {0, 1}) {
        int extent = axis == 0 ? bulk.L : bulk.M;
        for (int lo = 0; lo + bulk.D <= extent; ++lo) {
            CHECK_FALSE(strip_supports_stabilizer(bulk, bulk.hx, axis, lo, lo + bulk.D));
            CHECK_FALSE(strip_supports_stabilizer(bulk, bulk.hz, axis, lo, lo + bulk.D));
        }
    }
}

TEST_CASE("patch must exceed the tile width") {
    CHECK_THROWS_AS(build_tile_code(running_tiles(), 2, 12), std::invalid_argument);
    CHECK_THROWS_AS(build_tile_code(running_tiles(), 12, 1), std::invalid_argument);
}

TEST_CASE("alist export round-trips and matches the degenerate golden form") {
    CssCode code = build_tile_code(running_tiles(), 6, 6);
    for (const BitMatrix* m : {&code.hx, &code.hz}) {
        std::string text = export_alist(*m);
        CHECK(import_alist(text) == *m);
    }
    // One qubit, zero checks.
    BitMatrix empty(0, 1);
    std::string text = export_alist(empty);
    CHECK(text.substr(0, 4) == "1 0\n");
    CHECK(import_alist(text) == empty);
}

TEST_CASE("alist import rejects corrupted input") {
    CssCode code = build_tile_code(toy_tiles(), 3, 3);
    std::string good = export_alist(code.hx);
    CHECK_THROWS_AS(import_alist(good + " 7"), std::invalid_argument);
    CHECK_THROWS_AS(import_alist("2 2\n1 1\n1 1\n1 1\n9\n1\n1\n2\n"), std::invalid_argument);
    CHECK_THROWS_AS(import_alist("not numbers"), std::invalid_argument);
    // Column weight that disagrees with the listed entries.
    CHECK_THROWS_AS(import_alist("1 1\n1 1\n0\n1\n1\n1\n"), std::invalid_argument);
}

TEST_CASE("triplet export round-trips") {
    CssCode code = build_tile_code(running_tiles(), 6, 6);
    for (const BitMatrix* m : {&code.hx, &code.hz}) {
        std::string text = export_triplets(*m);
        CHECK(import_triplets(text) == *m);
    }
    CHECK_THROWS_AS(import_triplets("2 2 2\n1 1\n0 0\n"), std::invalid_argument);  // unsorted
    CHECK_THROWS_AS(import_triplets("2 2 1\n5 0\n"), std::invalid_argument);       // range
}

TEST_CASE("json summary carries the advertised fields") {
    CssCode code = build_tile_code(running_tiles(), 12, 12);
    std::string j = export_json(code, std::nullopt);
    CHECK(j.find("\"n\": 288") != std::string::npos);
    CHECK(j.find("\"k\": 8") != std::string::npos);
    CHECK(j.find("\"D\": 2") != std::string::npos);
    CHECK(j.find("\"f\": \"1+x^2*y+x^2*y^2\"") != std::string::npos);
    CHECK(j.find("d_upper") == std::string::npos);
    std::string jd = export_json(code, 12);
    CHECK(jd.find("\"d_upper\": 12") != std::string::npos);
}

TEST_SUITE_END();
