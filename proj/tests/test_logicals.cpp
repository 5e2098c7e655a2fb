// Canonical logical basis and its cellular automaton.  The full support of
// the first X operator of the 12x12 code is pinned cell by cell, every basis
// vector is re-derived through a generic row-by-row solver that only touches
// the stored check matrix, the automaton rules are checked against their
// defining syndrome-match property by plain polynomial arithmetic and then
// replayed to rebuild the basis, and the boundary maps (quotient coordinates
// below the lattice, omitted-check product certificates) are exercised on
// logicals, stabilizers and rejected inputs.

#include <doctest.h>

#include <array>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tilekit/code.hpp"
#include "tilekit/koszul.hpp"
#include "tilekit/logicals.hpp"
#include "tilekit/quotient.hpp"

using namespace tilekit;

TEST_SUITE_BEGIN("logicals");

namespace {

TilePair running_tiles() {
    return make_tile_pair(parse_poly("1+x^2*y+x^2*y^2", 2), parse_poly("x+x^2+y^2", 2), 2);
}

TilePair toy_tiles() {
    return make_tile_pair(parse_poly("1+y+x*y", 2), parse_poly("1+x+x*y", 2), 1);
}

using Cell = std::array<int, 3>;  // copy, column, row

BitVec from_cells(const CssCode& code, const std::vector<Cell>& cells) {
    LatticeIndex idx{code.L, code.M};
    BitVec v(code.n);
    for (const Cell& c : cells) v.set(idx(c[0], c[1], c[2]), true);
    return v;
}

// Independent re-derivation of one X logical: walk the lattice upward and at
// each row satisfy the four checks anchored on the lowest unresolved check
// row, reading all coefficients from the stored matrix and solving each step
// with the generic solver.
BitVec grow_with_generic_solver(const CssCode& code, const Label& seed) {
    int D = code.D, L = code.L, M = code.M;
    LatticeIndex idx{L, M};
    std::map<std::pair<int, int>, std::size_t> zrow;
    for (std::size_t r = 0; r < code.z_labels.size(); ++r)
        zrow[{code.z_labels[r].pos.e[0], code.z_labels[r].pos.e[1]}] = r;

    BitVec bits(code.n);
    bits.set(idx(seed.copy, seed.pos.e[0], seed.pos.e[1]), true);
    for (int r = D; r < M; ++r) {
        BitMatrix sys(2 * std::size_t(D), 2 * std::size_t(D));
        BitVec rhs(2 * std::size_t(D));
        for (int alpha = -D; alpha < D; ++alpha) {
            BitVec check = code.hz.row(zrow.at({alpha, r - D}));
            rhs.set(std::size_t(alpha + D), check.dot(bits));
            for (int copy = 0; copy < 2; ++copy)
                for (int col = 0; col < D; ++col)
                    sys.set(std::size_t(alpha + D), std::size_t(copy) * D + col,
                            check.get(idx(copy, col, r)));
        }
        auto sol = solve(sys, rhs);
        REQUIRE(sol.has_value());
        for (std::size_t u : sol->ones()) bits.set(idx(int(u) / D, int(u) % D, r), true);
    }
    return bits;
}

// Syndrome polynomial of an X support over infinite-plane check anchors.
LaurentPoly anchor_syndrome(const TilePair& tiles, const std::vector<Cell>& cells) {
    std::vector<Mono> h, v;
    for (const Cell& c : cells) (c[0] == kVertical ? v : h).push_back(Mono(c[1], c[2]));
    LaurentPoly ph = LaurentPoly::from_terms(std::move(h), 2);
    LaurentPoly pv = LaurentPoly::from_terms(std::move(v), 2);
    return (tiles.f * ph + tiles.g * pv).shifted(Mono(-tiles.D, -tiles.D));
}

std::vector<Cell> rule_cells(const CaRule& rule) {
    std::vector<Cell> out;
    for (const Label& l : rule.replacement) out.push_back({l.copy, l.pos.e[0], l.pos.e[1]});
    return out;
}

// Clipped support of the Z check anchored at (alpha, beta), straight from the
// reversed-tile definition.
BitVec omitted_row(const CssCode& code, int alpha, int beta) {
    int D = code.D;
    LatticeIndex idx{code.L, code.M};
    BitVec row(code.n);
    for (const Mono& t : code.tiles.g.terms()) {
        int a = alpha + D - t.e[0], b = beta + D - t.e[1];
        if (idx.contains(a, b)) row.flip(idx(kVertical, a, b));
    }
    for (const Mono& t : code.tiles.f.terms()) {
        int a = alpha + D - t.e[0], b = beta + D - t.e[1];
        if (idx.contains(a, b)) row.flip(idx(kHorizontal, a, b));
    }
    return row;
}

}  // namespace

TEST_CASE("canonical basis of the running code") {
    CssCode code = build_tile_code(running_tiles(), 12, 12);
    SymplecticBasis basis = build_basis(code);

    REQUIRE(basis.xs.size() == 8);
    REQUIRE(basis.zs.size() == 8);
    CHECK(basis.labels[0] == Label{kHorizontal, Mono(0, 0)});
    CHECK(basis.labels[1] == Label{kHorizontal, Mono(1, 0)});
    CHECK(basis.labels[2] == Label{kHorizontal, Mono(0, 1)});
    CHECK(basis.labels[4] == Label{kVertical, Mono(0, 0)});

    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(!code.hz.mul(basis.xs[i].bits).any());
        CHECK(!code.hx.mul(basis.zs[i].bits).any());
        for (std::size_t j = 0; j < 8; ++j)
            CHECK(basis.xs[i].bits.dot(basis.zs[j].bits) == (i == j));
    }

    // Each operator escapes the stabilizer row space: appending it raises the
    // rank.
    std::size_t rx = rank(code.hx), rz = rank(code.hz);
    for (std::size_t i = 0; i < 8; ++i) {
        BitMatrix mx = code.hx;
        mx.append_row(basis.xs[i].bits);
        CHECK(rank(mx) == rx + 1);
        BitMatrix mz = code.hz;
        mz.append_row(basis.zs[i].bits);
        CHECK(rank(mz) == rz + 1);
    }

    // Strip confinement.
    LatticeIndex idx{code.L, code.M};
    for (std::size_t i = 0; i < 8; ++i)
        for (int copy = 0; copy < 2; ++copy)
            for (int b = 0; b < code.M; ++b)
                for (int a = 0; a < code.L; ++a) {
                    if (basis.xs[i].bits.get(idx(copy, a, b))) CHECK(a < code.D);
                    if (basis.zs[i].bits.get(idx(copy, a, b))) CHECK(b < code.D);
                }

    // The construction is deterministic down to the bit pattern.
    SymplecticBasis again = build_basis(code);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(again.xs[i].bits == basis.xs[i].bits);
        CHECK(again.zs[i].bits == basis.zs[i].bits);
    }

    // Full support of the first X operator, cell by cell.  Its corner-box
    // restriction is the single seed cell, row 1 is empty, and the first
    // solved rows are {h(1,2), v(0,2)} and {h(1,3), v(0,3), v(1,3)}.
    std::vector<Cell> first = {
        {0, 0, 0},  {0, 1, 2}, {0, 1, 3}, {0, 0, 4},  {0, 0, 5},  {0, 1, 5},  {0, 1, 6},
        {0, 0, 8},  {0, 0, 9}, {0, 1, 9}, {0, 0, 10}, {0, 0, 11}, {0, 1, 11}, {1, 0, 2},
        {1, 0, 3},  {1, 1, 3}, {1, 1, 5}, {1, 0, 6},  {1, 1, 6},  {1, 0, 7},  {1, 0, 8},
        {1, 1, 8},  {1, 0, 9}, {1, 0, 10}, {1, 1, 10}, {1, 0, 11}, {1, 1, 11}};
    CHECK(basis.xs[0].bits == from_cells(code, first));

    // Weights, and the whole vectors against the generic-solver derivation.
    std::array<std::size_t, 8> wx = {27, 26, 21, 24, 21, 22, 19, 20};
    std::array<std::size_t, 8> wz = {28, 20, 26, 19, 18, 17, 16, 16};
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(basis.xs[i].bits.weight() == wx[i]);
        CHECK(basis.zs[i].bits.weight() == wz[i]);
        CHECK(grow_with_generic_solver(code, basis.labels[i]) == basis.xs[i].bits);
    }
}

TEST_CASE("degenerate seed patterns are rejected") {
    CssCode code = build_tile_code(running_tiles(), 12, 12);
    CHECK_THROWS_AS(extend_box_pauli(code, PauliKind::x, BitVec(8)), std::invalid_argument);
    CHECK_THROWS_AS(extend_box_pauli(code, PauliKind::z, BitVec(8)), std::invalid_argument);
    CHECK_THROWS_AS(extend_box_pauli(code, PauliKind::x, BitVec(5)), std::invalid_argument);

    KoszulSpec spec = make_koszul_spec(
        {parse_poly("1+x^2*y+x^2*y^2", 2), parse_poly("x+x^2+y^2", 2)}, 2, {6, 6});
    CssCode box = build_box_code(spec);
    BitVec seed(8);
    seed.set(0, true);
    CHECK_THROWS_AS(extend_box_pauli(box, PauliKind::x, seed), std::invalid_argument);

    // Identical tiles collapse the line-extension system.
    LaurentPoly f = parse_poly("1+x^2*y+x^2*y^2", 2);
    CssCode bad = build_tile_code(make_tile_pair(f, f, 2), 12, 12);
    CHECK_THROWS_AS(extend_box_pauli(bad, PauliKind::x, seed), std::runtime_error);
}

TEST_CASE("automaton rules match syndromes and replay the basis") {
    TilePair tiles = running_tiles();
    CaRuleSet rules = extract_rules(tiles);
    REQUIRE(rules.rules.size() == 8);

    // Defining property, recomputed with polynomial arithmetic: seed and
    // replacement excite the same checks on the band above the seed box.
    for (const CaRule& rule : rules.rules) {
        LaurentPoly seed_syn = anchor_syndrome(
            tiles, {{rule.seed.copy, rule.seed.pos.e[0], rule.seed.pos.e[1]}});
        LaurentPoly repl_syn = anchor_syndrome(tiles, rule_cells(rule));
        for (int rho = 0; rho < tiles.D; ++rho)
            for (int alpha = -tiles.D; alpha < tiles.D; ++alpha)
                CHECK(seed_syn.contains(Mono(alpha, rho)) == repl_syn.contains(Mono(alpha, rho)));
        for (const Label& cell : rule.replacement) {
            CHECK(cell.pos.e[0] >= 0);
            CHECK(cell.pos.e[0] < tiles.D);
            CHECK(cell.pos.e[1] >= tiles.D);
            CHECK(cell.pos.e[1] < 2 * tiles.D);
        }
    }

    // The full rule table.  The first rule's cells are exactly rows 2 and 3
    // of the first basis operator: {h(1,2), v(0,2)} then {h(1,3), v(0,3),
    // v(1,3)}.
    std::vector<std::vector<Cell>> expected = {
        {{0, 1, 2}, {0, 1, 3}, {1, 0, 2}, {1, 0, 3}, {1, 1, 3}},
        {{0, 1, 2}, {0, 1, 3}, {1, 0, 2}, {1, 1, 2}, {1, 0, 3}, {1, 1, 3}},
        {{0, 1, 2}, {1, 0, 2}, {1, 1, 3}},
        {{0, 1, 2}, {1, 0, 2}, {1, 1, 2}},
        {{0, 0, 2}, {0, 1, 3}, {1, 0, 3}},
        {{0, 1, 2}, {0, 1, 3}, {1, 0, 3}, {1, 1, 3}},
        {{0, 0, 3}},
        {{0, 1, 3}}};
    for (std::size_t i = 0; i < 8; ++i) CHECK(rule_cells(rules.rules[i]) == expected[i]);

    // Replaying the rules rebuilds every X logical bit for bit.
    CssCode code = build_tile_code(tiles, 12, 12);
    SymplecticBasis basis = build_basis(code);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(rules.rules[i].seed == basis.labels[i]);
        PauliVec replayed = replay_rules(rules, code, basis.labels[i]);
        CHECK(replayed.bits == basis.xs[i].bits);
    }

    CssCode uneven = build_tile_code(tiles, 12, 13);
    CHECK_THROWS_AS(replay_rules(rules, uneven, basis.labels[0]), std::invalid_argument);
    CHECK_THROWS_AS(replay_rules(rules, code, Label{0, Mono(5, 0)}), std::invalid_argument);

    LaurentPoly f = parse_poly("1+x^2*y+x^2*y^2", 2);
    CHECK_THROWS_AS(extract_rules(make_tile_pair(f, f, 2)), std::runtime_error);
}

TEST_CASE("bottom boundary classes") {
    TilePair tiles = running_tiles();
    CssCode code = build_tile_code(tiles, 12, 12);
    SymplecticBasis basis = build_basis(code);
    QuotientRing q = quotient_ring(tiles.f, tiles.g, 2);

    // Stabilizer rows land in the ideal.
    for (std::size_t r : {std::size_t(0), std::size_t(37), std::size_t(100)})
        CHECK(!bottom_boundary_class(code, q, PauliVec{PauliKind::x, code.hx.row(r)}).any());

    // Over the X basis the map is a bijection onto the quotient ring.
    BitMatrix classes(0, q.dim);
    for (std::size_t i = 0; i < 8; ++i)
        classes.append_row(bottom_boundary_class(code, q, basis.xs[i]));
    CHECK(rank(classes) == 8);

    // The first operator reduces to the unit class, and multiplying by a
    // stabilizer row does not move the class.
    BitVec first = bottom_boundary_class(code, q, basis.xs[0]);
    CHECK(first == q.one);
    PauliVec bumped{PauliKind::x, basis.xs[0].bits ^ code.hx.row(60)};
    CHECK(bottom_boundary_class(code, q, bumped) == first);

    BitVec lone(code.n);
    lone.set(LatticeIndex{12, 12}(kHorizontal, 5, 5), true);
    CHECK_THROWS_AS(bottom_boundary_class(code, q, PauliVec{PauliKind::x, lone}),
                    std::invalid_argument);
}

TEST_CASE("omitted boundary products") {
    CssCode code = build_tile_code(running_tiles(), 12, 12);
    SymplecticBasis basis = build_basis(code);

    // Anchor order of the certificate: below-lattice rows then above-lattice
    // rows, columns [-D, L) within each.
    std::vector<std::pair<int, int>> anchors;
    for (int beta : {-2, -1, 10, 11})
        for (int alpha = -2; alpha < 12; ++alpha) anchors.push_back({alpha, beta});

    for (std::size_t i = 0; i < 8; ++i) {
        auto cert = verify_omitted_product(code, basis.zs[i]);
        REQUIRE(cert.has_value());
        REQUIRE(cert->size() == anchors.size());
        BitVec rebuilt(code.n);
        for (std::size_t j : cert->ones())
            rebuilt ^= omitted_row(code, anchors[j].first, anchors[j].second);
        CHECK(rebuilt == basis.zs[i].bits);
    }

    auto empty = verify_omitted_product(code, PauliVec{PauliKind::z, BitVec(code.n)});
    REQUIRE(empty.has_value());
    CHECK(!empty->any());

    // In-code check rows are not products of the omitted boundary checks.
    for (std::size_t r : {std::size_t(0), std::size_t(70)})
        CHECK(!verify_omitted_product(code, PauliVec{PauliKind::z, code.hz.row(r)}).has_value());

    BitVec lone(code.n);
    lone.set(LatticeIndex{12, 12}(kVertical, 6, 6), true);
    CHECK_THROWS_AS(verify_omitted_product(code, PauliVec{PauliKind::z, lone}),
                    std::invalid_argument);
}

TEST_CASE("toy lattice basis") {
    TilePair tiles = toy_tiles();
    CssCode code = build_tile_code(tiles, 3, 3);
    SymplecticBasis basis = build_basis(code);
    REQUIRE(basis.xs.size() == 2);

    LatticeIndex idx{3, 3};
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(!code.hz.mul(basis.xs[i].bits).any());
        CHECK(!code.hx.mul(basis.zs[i].bits).any());
        for (int copy = 0; copy < 2; ++copy)
            for (int b = 0; b < 3; ++b)
                for (int a = 0; a < 3; ++a) {
                    if (basis.xs[i].bits.get(idx(copy, a, b))) CHECK(a == 0);
                    if (basis.zs[i].bits.get(idx(copy, a, b))) CHECK(b == 0);
                }
    }

    CaRuleSet rules = extract_rules(tiles);
    REQUIRE(rules.rules.size() == 2);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(replay_rules(rules, code, basis.labels[i]).bits == basis.xs[i].bits);

    QuotientRing q = quotient_ring(tiles.f, tiles.g, 1);
    BitMatrix classes(0, q.dim);
    for (std::size_t i = 0; i < 2; ++i)
        classes.append_row(bottom_boundary_class(code, q, basis.xs[i]));
    CHECK(rank(classes) == 2);

    for (std::size_t i = 0; i < 2; ++i)
        CHECK(verify_omitted_product(code, basis.zs[i]).has_value());
}

TEST_CASE("basis and rule exports") {
    TilePair tiles = running_tiles();
    CssCode code = build_tile_code(tiles, 12, 12);
    SymplecticBasis basis = build_basis(code);

    auto j = nlohmann::json::parse(export_basis_json(code, basis));
    CHECK(j["n"] == 288);
    CHECK(j["D"] == 2);
    REQUIRE(j["labels"].size() == 8);
    CHECK(j["labels"][0] == nlohmann::json({{"copy", 0}, {"a", 0}, {"b", 0}}));
    REQUIRE(j["xs"].size() == 8);
    CHECK(j["xs"][0].size() == basis.xs[0].bits.weight());
    CHECK(j["zs"][3].size() == basis.zs[3].bits.weight());

    auto r = nlohmann::json::parse(export_rules_json(extract_rules(tiles)));
    CHECK(r["D"] == 2);
    REQUIRE(r["rules"].size() == 8);
    CHECK(r["rules"][6]["replacement"].size() == 1);
    CHECK(r["rules"][0]["seed"] == nlohmann::json({{"copy", 0}, {"a", 0}, {"b", 0}}));
}

TEST_SUITE_END();
