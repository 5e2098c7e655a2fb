#include "tilekit/autos.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace tilekit {

namespace {

// Shift every support cell by (dx, dy); cells pushed outside the lattice
// are dropped and reported.
BitVec shifted_support(const CssCode& code, const BitVec& bits, int dx, int dy, bool* dropped) {
    LatticeIndex idx{code.L, code.M};
    BitVec out(code.n);
    for (int copy = 0; copy < 2; ++copy)
        for (int b = 0; b < code.M; ++b)
            for (int a = 0; a < code.L; ++a) {
                if (!bits.get(idx(copy, a, b))) continue;
                if (idx.contains(a + dx, b + dy))
                    out.set(idx(copy, a + dx, b + dy), true);
                else if (dropped)
                    *dropped = true;
            }
    return out;
}

// Repair a shift-restricted operator on the vacated boundary line: pick the
// unique pattern on the 2D candidate cells that cancels the residual
// syndrome of the dual checks.  For an x-shift the candidates sit on the
// given column, rows [0, D); for a y-shift on the given row, columns
// [0, D).
BitVec repair_on_boundary(const CssCode& code, const BitMatrix& checks, const BitVec& shifted,
                          AutoAxis axis, int line) {
    int D = code.D;
    LatticeIndex idx{code.L, code.M};
    std::size_t half = 2 * std::size_t(D);
    BitMatrix cols(checks.rows(), half);
    for (int copy = 0; copy < 2; ++copy)
        for (int off = 0; off < D; ++off) {
            std::size_t q = axis == AutoAxis::x ? idx(copy, line, off) : idx(copy, off, line);
            for (std::size_t r = 0; r < checks.rows(); ++r)
                cols.set(r, std::size_t(copy) * D + off, checks.get(r, q));
        }
    if (rank(cols) != half)
        throw std::runtime_error("derived automorphism: boundary repair is not unique");
    auto sol = solve(cols, checks.mul(shifted));
    if (!sol)
        throw std::runtime_error("derived automorphism: no boundary repair cancels the syndrome");
    BitVec out = shifted;
    for (std::size_t u : sol->ones()) {
        int copy = int(u) / D, off = int(u) % D;
        out.flip(axis == AutoAxis::x ? idx(copy, line, off) : idx(copy, off, line));
    }
    return out;
}

}  // namespace

LogicalAuto derived_auto(const CssCode& code, const SymplecticBasis& basis, AutoAxis axis,
                         int step) {
    if (code.kind != CodeKind::tile_lattice)
        throw std::invalid_argument("derived automorphism: expected a lattice tile code");
    if (step != 1 && step != -1)
        throw std::invalid_argument("derived automorphism: step must be +-1");
    std::size_t k = basis.xs.size();
    if (k == 0 || basis.zs.size() != k)
        throw std::invalid_argument("derived automorphism: malformed basis");
    for (std::size_t i = 0; i < k; ++i)
        if (basis.xs[i].bits.size() != code.n || basis.zs[i].bits.size() != code.n)
            throw std::invalid_argument("derived automorphism: basis does not fit the code");

    int dx = axis == AutoAxis::x ? step : 0;
    int dy = axis == AutoAxis::x ? 0 : step;
    // The side whose strip spans the shift direction loses its trailing
    // overhang and is repaired on the vacated leading line; the narrow strip
    // side shifts freely for step +1 and is reconstructed from the
    // symplectic blocks for step -1.
    int lead_x = step == 1 ? 0 : code.L - 1;
    int lead_y = step == 1 ? 0 : code.M - 1;
    BitMatrix a(k, k), b(k, k);
    std::vector<BitVec> ximg(k), zimg(k);
    for (std::size_t j = 0; j < k; ++j) {
        bool dropped = false;
        if (axis == AutoAxis::x) {
            zimg[j] = repair_on_boundary(
                code, code.hx, shifted_support(code, basis.zs[j].bits, dx, dy, nullptr), axis,
                lead_x);
            if (step == 1) {
                ximg[j] = shifted_support(code, basis.xs[j].bits, dx, dy, &dropped);
                if (dropped || code.hz.mul(ximg[j]).any())
                    throw std::invalid_argument(
                        "derived automorphism: X operator is not in canonical strip form");
            }
        } else {
            ximg[j] = repair_on_boundary(
                code, code.hz, shifted_support(code, basis.xs[j].bits, dx, dy, nullptr), axis,
                lead_y);
            if (step == 1) {
                zimg[j] = shifted_support(code, basis.zs[j].bits, dx, dy, &dropped);
                if (dropped || code.hx.mul(zimg[j]).any())
                    throw std::invalid_argument(
                        "derived automorphism: Z operator is not in canonical strip form");
            }
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (ximg[j].size()) a.set(i, j, ximg[j].dot(basis.zs[i].bits));
            if (zimg[j].size()) b.set(i, j, zimg[j].dot(basis.xs[i].bits));
        }
    }
    if (step == -1) {
        // The missing strip-side block follows from pairing preservation,
        // and its images are the canonical basis combinations.
        if (axis == AutoAxis::x) {
            auto inv = inverse(b.transposed());
            if (!inv) throw std::logic_error("derived automorphism: singular Z action");
            a = *std::move(inv);
            for (std::size_t j = 0; j < k; ++j) {
                ximg[j] = BitVec(code.n);
                for (std::size_t m = 0; m < k; ++m)
                    if (a.get(m, j)) ximg[j] ^= basis.xs[m].bits;
            }
        } else {
            auto inv = inverse(a.transposed());
            if (!inv) throw std::logic_error("derived automorphism: singular X action");
            b = *std::move(inv);
            for (std::size_t j = 0; j < k; ++j) {
                zimg[j] = BitVec(code.n);
                for (std::size_t m = 0; m < k; ++m)
                    if (b.get(m, j)) zimg[j] ^= basis.zs[m].bits;
            }
        }
    }
    if (!(a.transposed() * b == BitMatrix::identity(k)))
        throw std::logic_error("derived automorphism: symplectic pairing is not preserved");
    return LogicalAuto{axis, std::move(a), std::move(b), std::move(ximg), std::move(zimg)};
}

bool intertwiner_check(const CssCode& code, const SymplecticBasis& basis, const QuotientRing& q,
                       const LogicalAuto& a) {
    std::size_t k = basis.xs.size();
    if (a.x_action.rows() != k || q.dim != k)
        throw std::invalid_argument("intertwiner check: mismatched dimensions");
    BitMatrix classes(q.dim, k);
    for (std::size_t j = 0; j < k; ++j) {
        BitVec c = bottom_boundary_class(code, q, basis.xs[j]);
        for (std::size_t i = 0; i < q.dim; ++i) classes.set(i, j, c.get(i));
    }
    const BitMatrix& m = a.axis == AutoAxis::x ? q.mx : q.my;
    return classes * a.x_action == m * classes;
}

std::vector<Gate> synthesize_circuit(const LogicalAuto& a) {
    std::size_t k = a.x_action.rows();
    BitMatrix m = a.x_action;
    std::vector<Gate> ops;
    for (std::size_t j = 0; j < k; ++j) {
        std::size_t pivot = j;
        while (pivot < k && !m.get(pivot, j)) ++pivot;
        if (pivot == k)
            throw std::invalid_argument("circuit synthesis: the X action is singular");
        if (pivot != j) {
            m.swap_rows(j, pivot);
            ops.push_back(Gate{GateKind::swap_wires, int(j), int(pivot)});
        }
        for (std::size_t r = 0; r < k; ++r)
            if (r != j && m.get(r, j)) {
                m.xor_rows(r, j);
                ops.push_back(Gate{GateKind::cnot, int(j), int(r)});
            }
    }
    // The elimination factored the action as E_1 ... E_m (each factor is its
    // own inverse); playing the factors back in reverse rebuilds it.
    return std::vector<Gate>(ops.rbegin(), ops.rend());
}

std::pair<BitMatrix, BitMatrix> apply_circuit(const std::vector<Gate>& gates, std::size_t wires) {
    BitMatrix x = BitMatrix::identity(wires);
    BitMatrix z = BitMatrix::identity(wires);
    for (const Gate& g : gates) {
        if (g.kind == GateKind::cnot) {
            x.xor_rows(std::size_t(g.b), std::size_t(g.a));
            z.xor_rows(std::size_t(g.a), std::size_t(g.b));
        } else {
            x.swap_rows(std::size_t(g.a), std::size_t(g.b));
            z.swap_rows(std::size_t(g.a), std::size_t(g.b));
        }
    }
    return {std::move(x), std::move(z)};
}

std::string circuit_to_text(const std::vector<Gate>& gates) {
    std::ostringstream out;
    for (const Gate& g : gates)
        out << (g.kind == GateKind::cnot ? "CNOT " : "SWAP ") << g.a << ' ' << g.b << '\n';
    return out.str();
}

LogicalAuto auto_power(const LogicalAuto& a, long long t) {
    BitMatrix x = a.x_action, z = a.z_action;
    if (t < 0) {
        auto xi = inverse(x), zi = inverse(z);
        if (!xi || !zi) throw std::invalid_argument("automorphism power: singular action");
        x = *std::move(xi);
        z = *std::move(zi);
    }
    std::uint64_t e = t < 0 ? std::uint64_t(-(t + 1)) + 1 : std::uint64_t(t);
    return LogicalAuto{a.axis, matrix_power(x, e), matrix_power(z, e)};
}

std::optional<std::uint64_t> discrete_log(const LogicalAuto& a, const LogicalAuto& b) {
    auto t = matrix_discrete_log(a.x_action, b.x_action);
    if (!t) return std::nullopt;
    if (!(matrix_power(a.z_action, *t) == b.z_action)) return std::nullopt;
    return t;
}

}  // namespace tilekit
