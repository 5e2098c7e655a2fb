#include "tilekit/logicals.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

namespace tilekit {

namespace {

// Basis/label order of the corner-box cells: horizontal copy before vertical,
// rows before columns within a copy.
Label box_label(int D, std::size_t i) {
    int copy = int(i) / (D * D);
    int rem = int(i) % (D * D);
    return Label{copy, Mono(rem % D, rem / D)};
}

std::size_t box_index(int D, int copy, int a, int b) {
    return std::size_t(copy) * std::size_t(D) * std::size_t(D) +
           std::size_t(b) * std::size_t(D) + std::size_t(a);
}

// Coefficient of the Z check anchored at (alpha, beta) on the qubit
// (copy, col, row), with no boundary involved: the Z tile carries the
// box-reversed g on vertical qubits and the box-reversed f on horizontal
// ones, so the entry is a plain tile lookup at the mirrored offset.
bool z_check_coeff(const TilePair& tiles, int copy, int col, int row, int alpha, int beta) {
    Mono at(tiles.D - (col - alpha), tiles.D - (row - beta));
    return copy == kVertical ? tiles.g.contains(at) : tiles.f.contains(at);
}

// Same for an X check: f acts on vertical qubits, g on horizontal ones.
bool x_check_coeff(const TilePair& tiles, int copy, int col, int row, int alpha, int beta) {
    Mono at(col - alpha, row - beta);
    return copy == kVertical ? tiles.f.contains(at) : tiles.g.contains(at);
}

// The invertible window that forces each line extension.  For the X side,
// unknowns are the 2D cells of one lattice row and equations the 2D checks of
// the check row D below it; the matrix entries only involve offsets inside
// the tile box, so boundary clipping never changes them.  The Z side is the
// mirror with rows and columns exchanged.
BitMatrix line_matrix(const TilePair& tiles, PauliKind kind) {
    int D = tiles.D;
    BitMatrix u(2 * std::size_t(D), 2 * std::size_t(D));
    for (int off = -D; off < D; ++off)
        for (int copy = 0; copy < 2; ++copy)
            for (int cell = 0; cell < D; ++cell) {
                bool bit = kind == PauliKind::x
                               ? z_check_coeff(tiles, copy, cell, D, off, 0)
                               : x_check_coeff(tiles, copy, D, cell, 0, off);
                u.set(std::size_t(off + D), std::size_t(copy) * D + cell, bit);
            }
    return u;
}

}  // namespace

PauliVec extend_box_pauli(const CssCode& code, PauliKind kind, const BitVec& box) {
    if (code.kind != CodeKind::tile_lattice)
        throw std::invalid_argument("logical basis: expected a lattice tile code");
    int D = code.D, L = code.L, M = code.M;
    if (box.size() != 2 * std::size_t(D) * std::size_t(D))
        throw std::invalid_argument("logical basis: box pattern has the wrong length");
    if (!box.any())
        throw std::invalid_argument("logical basis: empty box pattern has no logical extension");

    LatticeIndex idx{L, M};
    BitVec bits(code.n);
    for (std::size_t i : box.ones()) {
        Label cell = box_label(D, i);
        bits.set(idx(cell.copy, cell.pos.e[0], cell.pos.e[1]), true);
    }

    auto inv = inverse(line_matrix(code.tiles, kind));
    if (!inv)
        throw std::runtime_error(
            "logical basis: line extension system is singular; tiles lack topological order");

    const TilePair& tiles = code.tiles;
    if (kind == PauliKind::x) {
        // March upward: row r cancels the 2D checks anchored on check row r-D.
        for (int r = D; r < M; ++r) {
            BitVec rhs(2 * std::size_t(D));
            for (int alpha = -D; alpha < D; ++alpha) {
                bool parity = false;
                for (int rho = r - D; rho < r; ++rho)
                    for (int col = 0; col < D; ++col)
                        for (int copy = 0; copy < 2; ++copy)
                            if (bits.get(idx(copy, col, rho)))
                                parity ^= z_check_coeff(tiles, copy, col, rho, alpha, r - D);
                rhs.set(std::size_t(alpha + D), parity);
            }
            BitVec line = inv->mul(rhs);
            for (std::size_t u : line.ones())
                bits.set(idx(int(u) / D, int(u) % D, r), true);
        }
        BitVec syndrome = code.hz.mul(bits);
        if (syndrome.any())
            throw std::runtime_error("logical basis: residual syndrome after the upward march");
    } else {
        // Mirror march rightward: column c cancels check column c-D.
        for (int c = D; c < L; ++c) {
            BitVec rhs(2 * std::size_t(D));
            for (int beta = -D; beta < D; ++beta) {
                bool parity = false;
                for (int col = c - D; col < c; ++col)
                    for (int row = 0; row < D; ++row)
                        for (int copy = 0; copy < 2; ++copy)
                            if (bits.get(idx(copy, col, row)))
                                parity ^= x_check_coeff(tiles, copy, col, row, c - D, beta);
                rhs.set(std::size_t(beta + D), parity);
            }
            BitVec line = inv->mul(rhs);
            for (std::size_t u : line.ones())
                bits.set(idx(int(u) / D, c, int(u) % D), true);
        }
        BitVec syndrome = code.hx.mul(bits);
        if (syndrome.any())
            throw std::runtime_error("logical basis: residual syndrome after the rightward march");
    }
    return PauliVec{kind, std::move(bits)};
}

SymplecticBasis build_basis(const CssCode& code) {
    int D = code.D;
    std::size_t half = 2 * std::size_t(D) * std::size_t(D);
    SymplecticBasis basis;
    basis.labels.reserve(half);
    for (std::size_t i = 0; i < half; ++i) basis.labels.push_back(box_label(D, i));
    for (std::size_t i = 0; i < half; ++i) {
        BitVec seed(half);
        seed.set(i, true);
        basis.xs.push_back(extend_box_pauli(code, PauliKind::x, seed));
        basis.zs.push_back(extend_box_pauli(code, PauliKind::z, seed));
    }
    for (std::size_t i = 0; i < half; ++i)
        for (std::size_t j = 0; j < half; ++j)
            if (basis.xs[i].bits.dot(basis.zs[j].bits) != (i == j))
                throw std::logic_error("logical basis: symplectic pairing is not the identity");
    return basis;
}

CaRuleSet extract_rules(const TilePair& tiles) {
    int D = tiles.D;
    std::size_t half = 2 * std::size_t(D) * std::size_t(D);

    // Unknowns: cells of the box shifted D rows up (columns [0,D), rows
    // [D,2D)).  Equations: the 2D^2 checks with anchors in [-D,D) x [0,D).
    // On the infinite plane those checks see the shifted box exactly the way
    // the lower check band sees the original box, so the system is invertible
    // precisely when single-cell syndromes below the box are independent.
    BitMatrix a(half, half);
    for (int rho = 0; rho < D; ++rho)
        for (int alpha = -D; alpha < D; ++alpha) {
            std::size_t eq = std::size_t(rho) * 2 * D + std::size_t(alpha + D);
            for (int copy = 0; copy < 2; ++copy)
                for (int row = D; row < 2 * D; ++row)
                    for (int col = 0; col < D; ++col)
                        a.set(eq, box_index(D, copy, col, row - D),
                              z_check_coeff(tiles, copy, col, row, alpha, rho));
        }
    auto inv = inverse(a);
    if (!inv)
        throw std::runtime_error("cellular automaton: syndrome matching system is singular");

    CaRuleSet out;
    out.D = D;
    for (std::size_t i = 0; i < half; ++i) {
        Label seed = box_label(D, i);
        BitVec rhs(half);
        for (int rho = 0; rho < D; ++rho)
            for (int alpha = -D; alpha < D; ++alpha)
                rhs.set(std::size_t(rho) * 2 * D + std::size_t(alpha + D),
                        z_check_coeff(tiles, seed.copy, seed.pos.e[0], seed.pos.e[1], alpha, rho));
        BitVec sol = inv->mul(rhs);
        CaRule rule;
        rule.seed = seed;
        for (std::size_t u : sol.ones()) {
            Label cell = box_label(D, u);
            rule.replacement.push_back(Label{cell.copy, Mono(cell.pos.e[0], cell.pos.e[1] + D)});
        }
        out.rules.push_back(std::move(rule));
    }
    return out;
}

PauliVec replay_rules(const CaRuleSet& rules, const CssCode& code, const Label& seed) {
    if (code.kind != CodeKind::tile_lattice)
        throw std::invalid_argument("rule replay: expected a lattice tile code");
    int D = rules.D, L = code.L, M = code.M;
    if (D != code.D || rules.rules.size() != 2 * std::size_t(D) * std::size_t(D))
        throw std::invalid_argument("rule replay: rule set does not match the code");
    if (M % D != 0)
        throw std::invalid_argument(
            "rule replay: lattice height must be a multiple of the tile width");
    int a0 = seed.pos.e[0], b0 = seed.pos.e[1];
    if (seed.copy < 0 || seed.copy > 1 || a0 < 0 || a0 >= D || b0 < 0 || b0 >= D)
        throw std::invalid_argument("rule replay: seed is not a corner-box cell");

    LatticeIndex idx{L, M};
    BitVec bits(code.n);
    bits.set(idx(seed.copy, a0, b0), true);

    // The operator restricted to rows [kD,(k+1)D) determines, rule by rule,
    // its restriction to the next band of D rows.
    std::size_t half = 2 * std::size_t(D) * std::size_t(D);
    BitVec band(half);
    band.set(box_index(D, seed.copy, a0, b0), true);
    for (int k = 0; (k + 2) * D <= M; ++k) {
        BitVec next(half);
        for (std::size_t cell = 0; cell < half; ++cell)
            if (band.get(cell))
                for (const Label& r : rules.rules[cell].replacement)
                    next.flip(box_index(D, r.copy, r.pos.e[0], r.pos.e[1] - D));
        for (std::size_t cell = 0; cell < half; ++cell)
            if (next.get(cell)) {
                Label l = box_label(D, cell);
                bits.set(idx(l.copy, l.pos.e[0], l.pos.e[1] + (k + 1) * D), true);
            }
        band = std::move(next);
    }
    return PauliVec{PauliKind::x, std::move(bits)};
}

BitVec bottom_boundary_class(const CssCode& code, const QuotientRing& q, const PauliVec& p) {
    if (code.kind != CodeKind::tile_lattice)
        throw std::invalid_argument("bottom boundary: expected a lattice tile code");
    if (p.kind != PauliKind::x || p.bits.size() != code.n)
        throw std::invalid_argument("bottom boundary: expected an X operator over the code");
    if (code.hz.mul(p.bits).any())
        throw std::invalid_argument("bottom boundary: operator violates an in-code Z check");

    int D = code.D, L = code.L, M = code.M;
    LatticeIndex idx{L, M};
    std::vector<Mono> horiz, vert;
    for (int b = 0; b < M; ++b)
        for (int a = 0; a < L; ++a) {
            if (p.bits.get(idx(kHorizontal, a, b))) horiz.push_back(Mono(a, b));
            if (p.bits.get(idx(kVertical, a, b))) vert.push_back(Mono(a, b));
        }
    LaurentPoly ph = LaurentPoly::from_terms(std::move(horiz), 2);
    LaurentPoly pv = LaurentPoly::from_terms(std::move(vert), 2);

    // Infinite-plane syndrome of p as a polynomial over check anchors; the
    // in-code part vanishes by the precondition, so only the rows below the
    // lattice and above it survive.  Keep the below part and read it in the
    // quotient ring.
    LaurentPoly syndrome = (code.tiles.f * ph + code.tiles.g * pv).shifted(Mono(-D, -D));
    std::vector<Mono> below;
    for (const Mono& t : syndrome.terms())
        if (t.e[1] < 0) below.push_back(t);
    return reduce(q, LaurentPoly::from_terms(std::move(below), 2));
}

std::optional<BitVec> verify_omitted_product(const CssCode& code, const PauliVec& z) {
    if (code.kind != CodeKind::tile_lattice)
        throw std::invalid_argument("omitted product: expected a lattice tile code");
    if (z.kind != PauliKind::z || z.bits.size() != code.n)
        throw std::invalid_argument("omitted product: expected a Z operator over the code");
    if (code.hx.mul(z.bits).any())
        throw std::invalid_argument("omitted product: operator violates an in-code X check");

    int D = code.D, L = code.L, M = code.M;
    LatticeIndex idx{L, M};
    std::vector<int> betas;
    for (int b = -D; b < 0; ++b) betas.push_back(b);
    for (int b = M - D; b < M; ++b) betas.push_back(b);

    // One column per omitted anchor: its clipped support as a qubit vector.
    // Anchors share the kept checks' column range [-D, L); anything further
    // out never touches the lattice.
    std::size_t count = betas.size() * std::size_t(L + D);
    BitMatrix lattice_parts(code.n, count);
    std::size_t j = 0;
    for (int beta : betas)
        for (int alpha = -D; alpha < L; ++alpha, ++j)
            for (int copy = 0; copy < 2; ++copy)
                for (int col = std::max(0, alpha); col <= std::min(L - 1, alpha + D); ++col)
                    for (int row = std::max(0, beta); row <= std::min(M - 1, beta + D); ++row)
                        if (z_check_coeff(code.tiles, copy, col, row, alpha, beta))
                            lattice_parts.set(idx(copy, col, row), j, true);
    return solve(lattice_parts, z.bits);
}

std::string export_basis_json(const CssCode& code, const SymplecticBasis& basis) {
    nlohmann::json j;
    j["n"] = code.n;
    j["D"] = code.D;
    j["labels"] = nlohmann::json::array();
    for (const Label& l : basis.labels)
        j["labels"].push_back({{"copy", l.copy}, {"a", l.pos.e[0]}, {"b", l.pos.e[1]}});
    auto side = [](const std::vector<PauliVec>& ops) {
        nlohmann::json arr = nlohmann::json::array();
        for (const PauliVec& op : ops) arr.push_back(op.bits.ones());
        return arr;
    };
    j["xs"] = side(basis.xs);
    j["zs"] = side(basis.zs);
    return j.dump(2) + "\n";
}

std::string export_rules_json(const CaRuleSet& ruleset) {
    nlohmann::json j;
    j["D"] = ruleset.D;
    j["rules"] = nlohmann::json::array();
    for (const CaRule& r : ruleset.rules) {
        nlohmann::json cells = nlohmann::json::array();
        for (const Label& c : r.replacement)
            cells.push_back({{"copy", c.copy}, {"a", c.pos.e[0]}, {"b", c.pos.e[1]}});
        j["rules"].push_back(
            {{"seed", {{"copy", r.seed.copy}, {"a", r.seed.pos.e[0]}, {"b", r.seed.pos.e[1]}}},
             {"replacement", cells}});
    }
    return j.dump(2) + "\n";
}

}  // namespace tilekit
