// Shift automorphisms of the logical space.  The two k x k action blocks of
// the x- and y-shifts on the 12x12 code are pinned bit for bit, their images
// are checked against the raw geometric shift modulo stabilizer rows, both
// shifts are intertwined with quotient-ring multiplication through the
// bottom boundary map, their cyclic-group structure (order 217, y-shift =
// x-shift to the 150th power) is verified, and the synthesized CNOT/SWAP
// circuit is replayed gate by gate.

#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tilekit/autos.hpp"
#include "tilekit/code.hpp"
#include "tilekit/logicals.hpp"
#include "tilekit/quotient.hpp"

using namespace tilekit;

TEST_SUITE_BEGIN("autos");

namespace {

TilePair running_tiles() {
    return make_tile_pair(parse_poly("1+x^2*y+x^2*y^2", 2), parse_poly("x+x^2+y^2", 2), 2);
}

BitMatrix mat_from(const std::vector<std::string>& rows) {
    BitMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, rows[r][c] == '1');
    return m;
}

BitVec plain_shift(const CssCode& code, const BitVec& bits, int dx, int dy) {
    LatticeIndex idx{code.L, code.M};
    BitVec out(code.n);
    for (int copy = 0; copy < 2; ++copy)
        for (int b = 0; b < code.M; ++b)
            for (int a = 0; a < code.L; ++a)
                if (bits.get(idx(copy, a, b)) && idx.contains(a + dx, b + dy))
                    out.set(idx(copy, a + dx, b + dy), true);
    return out;
}

BitVec image_vector(const SymplecticBasis& basis, const BitMatrix& action, std::size_t j,
                    bool x_side) {
    BitVec v(basis.xs[0].bits.size());
    for (std::size_t i = 0; i < action.rows(); ++i)
        if (action.get(i, j)) v ^= (x_side ? basis.xs[i] : basis.zs[i]).bits;
    return v;
}

}  // namespace

TEST_CASE("shift actions on the running code") {
    TilePair tiles = running_tiles();
    CssCode code = build_tile_code(tiles, 12, 12);
    SymplecticBasis basis = build_basis(code);
    QuotientRing q = quotient_ring(tiles.f, tiles.g, 2);

    LogicalAuto tx = derived_auto(code, basis, AutoAxis::x);
    LogicalAuto ty = derived_auto(code, basis, AutoAxis::y);
    CHECK(tx.axis == AutoAxis::x);
    CHECK(ty.axis == AutoAxis::y);

    CHECK(tx.x_action == mat_from({"01000101", "11000000", "01000001", "00110000", "01000000",
                                   "00001000", "00010000", "00000010"}));
    CHECK(tx.z_action == mat_from({"00000100", "10000000", "00000101", "00100000", "11000001",
                                   "00001000", "00110000", "00000010"}));
    CHECK(ty.x_action == mat_from({"10000011", "01000001", "10000000", "01000000", "00100000",
                                   "00010010", "00001000", "00000100"}));

    // The first X operator shifts onto exactly the second basis operator.
    for (std::size_t i = 0; i < 8; ++i) CHECK(tx.x_action.get(i, 0) == (i == 1));

    // Symplectic preservation.
    CHECK(tx.x_action.transposed() * tx.z_action == BitMatrix::identity(8));
    CHECK(ty.x_action.transposed() * ty.z_action == BitMatrix::identity(8));

    // The coordinate image of each X operator differs from its raw geometric
    // shift by stabilizer rows only.
    RrefResult hx_rr = rref(code.hx);
    for (std::size_t j = 0; j < 8; ++j) {
        BitVec canonical = image_vector(basis, tx.x_action, j, true);
        CHECK(in_rowspace(hx_rr, canonical ^ plain_shift(code, basis.xs[j].bits, 1, 0)));
    }

    // Both shifts generate the same cyclic group of order 217, and the
    // boundary map carries them to multiplication by x and y.
    CHECK(matrix_order(tx.x_action) == 217);
    CHECK(matrix_order(ty.x_action) == 217);
    BitMatrix block(16, 16);
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c) {
            block.set(r, c, tx.x_action.get(r, c));
            block.set(8 + r, 8 + c, tx.z_action.get(r, c));
        }
    CHECK(matrix_order(block) == 217);
    CHECK(tx.x_action * ty.x_action == ty.x_action * tx.x_action);

    CHECK(intertwiner_check(code, basis, q, tx));
    CHECK(intertwiner_check(code, basis, q, ty));
    LogicalAuto tampered = tx;
    tampered.x_action.flip(0, 0);
    CHECK(!intertwiner_check(code, basis, q, tampered));

    CHECK(char_poly(tx.x_action) == char_poly(q.mx));
    CHECK(char_poly(tx.x_action).to_string() == "x^8+x^5+1");
    CHECK(char_poly(ty.x_action) == char_poly(q.my));
    CHECK(char_poly(ty.x_action).to_string() == "x^8+x^6+x^2+x+1");

    // The y-shift is the 150th power of the x-shift, matching the quotient
    // identity y = x^150.
    LogicalAuto tx150 = auto_power(tx, 150);
    CHECK(tx150.x_action == ty.x_action);
    CHECK(tx150.z_action == ty.z_action);
    auto dl = discrete_log(tx, ty);
    REQUIRE(dl.has_value());
    CHECK(*dl == 150);
    CHECK(discrete_log(tx, tx) == std::uint64_t(1));

    LogicalAuto id = auto_power(tx, 217);
    CHECK(id.x_action == BitMatrix::identity(8));
    CHECK(id.z_action == BitMatrix::identity(8));
    CHECK(auto_power(tx, 0).x_action == BitMatrix::identity(8));
    LogicalAuto inv = auto_power(tx, -1);
    CHECK(tx.x_action * inv.x_action == BitMatrix::identity(8));
    CHECK(tx.z_action * inv.z_action == BitMatrix::identity(8));

    // The reverse shifts derived directly agree with the inverse powers and
    // still carry one image operator per logical, on both axes.
    for (AutoAxis axis : {AutoAxis::x, AutoAxis::y}) {
        LogicalAuto fwd = derived_auto(code, basis, axis);
        LogicalAuto rev = derived_auto(code, basis, axis, -1);
        CHECK(rev.x_action == *inverse(fwd.x_action));
        CHECK(rev.z_action == *inverse(fwd.z_action));
        CHECK(rev.x_images.size() == 8);
        CHECK(rev.z_images.size() == 8);
    }

    // Outside the cycle: a transvection has even order, the cycle is odd.
    LogicalAuto stray{AutoAxis::x, BitMatrix::identity(8), BitMatrix::identity(8), {}, {}};
    stray.x_action.set(0, 1, true);
    stray.z_action.set(1, 0, true);
    CHECK(!discrete_log(tx, stray).has_value());
    LogicalAuto half_wrong{AutoAxis::x, tx.x_action, BitMatrix::identity(8), {}, {}};
    CHECK(!discrete_log(tx, half_wrong).has_value());
}

TEST_CASE("circuit synthesis replays the action") {
    TilePair tiles = running_tiles();
    CssCode code = build_tile_code(tiles, 12, 12);
    SymplecticBasis basis = build_basis(code);
    LogicalAuto tx = derived_auto(code, basis, AutoAxis::x);

    std::vector<Gate> gates = synthesize_circuit(tx);
    REQUIRE(gates.size() == 13);
    std::size_t cnots = 0;
    for (const Gate& g : gates) cnots += g.kind == GateKind::cnot;
    CHECK(cnots == 8);
    auto replay = apply_circuit(gates, 8);
    CHECK(replay.first == tx.x_action);
    CHECK(replay.second == tx.z_action);
    CHECK(circuit_to_text(gates) ==
          "CNOT 7 5\nSWAP 6 7\nCNOT 5 6\nCNOT 5 1\nCNOT 5 0\nSWAP 4 5\nCNOT 3 2\nSWAP 3 6\n"
          "SWAP 2 3\nCNOT 1 4\nCNOT 1 2\nCNOT 1 0\nSWAP 0 1\n");

    // Identity needs no gates; permutations need only SWAPs.
    LogicalAuto ident{AutoAxis::x, BitMatrix::identity(4), BitMatrix::identity(4), {}, {}};
    CHECK(synthesize_circuit(ident).empty());
    auto empty_replay = apply_circuit({}, 4);
    CHECK(empty_replay.first == BitMatrix::identity(4));
    CHECK(empty_replay.second == BitMatrix::identity(4));

    BitMatrix perm(3, 3);
    perm.set(1, 0, true);
    perm.set(2, 1, true);
    perm.set(0, 2, true);
    LogicalAuto rot{AutoAxis::x, perm, perm, {}, {}};
    std::vector<Gate> swaps = synthesize_circuit(rot);
    for (const Gate& g : swaps) CHECK(g.kind == GateKind::swap_wires);
    auto rot_replay = apply_circuit(swaps, 3);
    CHECK(rot_replay.first == perm);
    CHECK(rot_replay.second == perm);

    // Further powers of the shift replay as well.
    for (long long t : {3, 50, 123}) {
        LogicalAuto p = auto_power(tx, t);
        auto r = apply_circuit(synthesize_circuit(p), 8);
        CHECK(r.first == p.x_action);
        CHECK(r.second == p.z_action);
    }

    LogicalAuto singular{AutoAxis::x, BitMatrix(2, 2), BitMatrix(2, 2), {}, {}};
    CHECK_THROWS_AS(synthesize_circuit(singular), std::invalid_argument);
}

TEST_CASE("toy lattice shift action") {
    TilePair tiles = make_tile_pair(parse_poly("1+y+x*y", 2), parse_poly("1+x+x*y", 2), 1);
    CssCode code = build_tile_code(tiles, 3, 3);
    SymplecticBasis basis = build_basis(code);
    QuotientRing q = quotient_ring(tiles.f, tiles.g, 1);

    LogicalAuto tx = derived_auto(code, basis, AutoAxis::x);
    LogicalAuto ty = derived_auto(code, basis, AutoAxis::y);
    CHECK(tx.x_action == mat_from({"11", "10"}));
    CHECK(tx.z_action == mat_from({"01", "11"}));
    CHECK(ty.x_action == tx.x_action);
    CHECK(ty.z_action == tx.z_action);
    CHECK(matrix_order(tx.x_action) == 3);
    CHECK(intertwiner_check(code, basis, q, tx));
    CHECK(intertwiner_check(code, basis, q, ty));
    CHECK(discrete_log(tx, ty) == std::uint64_t(1));
    CHECK(auto_power(tx, 3).x_action == BitMatrix::identity(2));
}

TEST_CASE("mismatched or degenerate inputs are rejected") {
    TilePair tiles = running_tiles();
    CssCode code = build_tile_code(tiles, 12, 12);
    SymplecticBasis basis = build_basis(code);

    CssCode toy = build_tile_code(make_tile_pair(parse_poly("1+y+x*y", 2),
                                                 parse_poly("1+x+x*y", 2), 1),
                                  3, 3);
    SymplecticBasis toy_basis = build_basis(toy);
    CHECK_THROWS_AS(derived_auto(code, toy_basis, AutoAxis::x), std::invalid_argument);

    // An X operator reaching the last column cannot shift along x.
    SymplecticBasis doctored = basis;
    doctored.xs[0].bits.set(LatticeIndex{12, 12}(kHorizontal, 11, 5), true);
    CHECK_THROWS_AS(derived_auto(code, doctored, AutoAxis::x), std::invalid_argument);

    SymplecticBasis empty;
    CHECK_THROWS_AS(derived_auto(code, empty, AutoAxis::x), std::invalid_argument);
}

TEST_SUITE_END();
