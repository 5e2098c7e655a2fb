#include "tilekit/koszul.hpp"

#include <stdexcept>
#include <unordered_map>

namespace tilekit {

namespace {

int qubit_wedge_degree(int nvars) { return nvars == 4 ? 2 : 1; }

// Wedge-degree copies of each term: ranks of exterior powers of F_2^nvars.
std::size_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 0; i < k; ++i) r = r * std::size_t(n - i) / std::size_t(i + 1);
    return r;
}

TermBox term_box(const KoszulSpec& spec, int wedge_degree) {
    const int q = qubit_wedge_degree(spec.nvars);
    TermBox box;
    box.copies = binom(spec.nvars, wedge_degree);
    for (int i = 0; i < spec.nvars; ++i) {
        bool positive = i < spec.nvars - (spec.nvars == 4 ? 2 : 1);
        int base = positive ? spec.shape[std::size_t(i)] - 1 : -spec.shape[std::size_t(i)] - 1;
        int deg = base + (q - wedge_degree) * spec.D;
        if (deg == -1)
            throw std::invalid_argument("box code: a chain term collapses (axis degree -1)");
        if (deg >= 0) {
            box.lo.push_back(0);
            box.hi.push_back(deg);
        } else {
            box.lo.push_back(deg + 1);
            box.hi.push_back(-1);
        }
    }
    return box;
}

std::vector<Mono> enumerate_box(const TermBox& box, int nvars) {
    std::vector<Mono> out;
    std::size_t total = box.monos_per_copy();
    out.reserve(total);
    Mono m;
    for (int i = 0; i < nvars; ++i) m.e[std::size_t(i)] = box.lo[std::size_t(i)];
    while (true) {
        out.push_back(m);
        int axis = nvars - 1;
        while (axis >= 0) {
            if (m.e[std::size_t(axis)] < box.hi[std::size_t(axis)]) {
                ++m.e[std::size_t(axis)];
                break;
            }
            m.e[std::size_t(axis)] = box.lo[std::size_t(axis)];
            --axis;
        }
        if (axis < 0) break;
    }
    return out;
}

bool in_box(const TermBox& box, const Mono& m, int nvars) {
    for (int i = 0; i < nvars; ++i)
        if (m.e[std::size_t(i)] < box.lo[std::size_t(i)] || m.e[std::size_t(i)] > box.hi[std::size_t(i)])
            return false;
    return true;
}

}  // namespace

std::size_t TermBox::monos_per_copy() const {
    std::size_t total = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) total *= std::size_t(hi[i] - lo[i] + 1);
    return total;
}

KoszulSpec make_koszul_spec(std::vector<LaurentPoly> polys, int D, std::vector<int> shape) {
    KoszulSpec spec;
    spec.nvars = int(polys.size());
    if (spec.nvars < 2 || spec.nvars > 4)
        throw std::invalid_argument("box code: need 2, 3 or 4 polynomials");
    if (shape.size() != polys.size())
        throw std::invalid_argument("box code: shape size must match polynomial count");
    if (D < 1) throw std::invalid_argument("box code: width must be at least 1");
    for (const LaurentPoly& p : polys) {
        if (p.nvars() != spec.nvars)
            throw std::invalid_argument("box code: polynomial variable count mismatch");
        if (p.is_zero()) throw std::invalid_argument("box code: zero polynomial");
        DegreeBox b = p.degree_box();
        for (int i = 0; i < spec.nvars; ++i)
            if (b.lo[std::size_t(i)] < 0 || b.hi[std::size_t(i)] > D)
                throw std::invalid_argument("box code: polynomial support leaves [0,D]^v");
    }
    for (int s : shape)
        if (s <= D)
            throw std::invalid_argument("box code: every patch extent must exceed the width");
    spec.D = D;
    spec.polys = std::move(polys);
    spec.shape = std::move(shape);
    return spec;
}

KoszulTerms koszul_terms(const KoszulSpec& spec) {
    const int q = qubit_wedge_degree(spec.nvars);
    KoszulTerms t;
    t.x = term_box(spec, q + 1);
    t.q = term_box(spec, q);
    t.z = term_box(spec, q - 1);

    const LaurentPoly zero = LaurentPoly::zero(spec.nvars);
    const auto& P = spec.polys;
    if (spec.nvars == 2) {
        // f couples the vertical copy (index 1), g the horizontal copy (0).
        t.dx = {{P[1]}, {P[0]}};
        t.dz = {{P[0], P[1]}};
    } else if (spec.nvars == 3) {
        const LaurentPoly &f = P[0], &g = P[1], &h = P[2];
        t.dx = {{h, zero, g}, {zero, h, f}, {f, g, zero}};
        t.dz = {{f, g, h}};
    } else {
        const LaurentPoly &f = P[0], &g = P[1], &h = P[2], &i = P[3];
        // Columns of dx are the images of the four X copies.
        t.dx = {{h, i, zero, zero},
                {g, zero, i, zero},
                {zero, g, h, zero},
                {f, zero, zero, i},
                {zero, f, zero, h},
                {zero, zero, f, g}};
        t.dz = {{g, h, i, zero, zero, zero},
                {f, zero, zero, h, i, zero},
                {zero, f, zero, g, zero, i},
                {zero, zero, f, zero, g, h}};
    }

    // The chain condition before any clipping: dz * dx = 0 entrywise.
    for (std::size_t zr = 0; zr < t.dz.size(); ++zr)
        for (std::size_t xc = 0; xc < t.dx[0].size(); ++xc) {
            LaurentPoly acc = zero;
            for (std::size_t k = 0; k < t.dx.size(); ++k)
                acc = acc + t.dz[zr][k] * t.dx[k][xc];
            if (!acc.is_zero())
                throw std::logic_error("box code: differentials do not compose to zero");
        }
    return t;
}

CssCode build_box_code(const KoszulSpec& spec) {
    KoszulTerms t = koszul_terms(spec);

    CssCode code;
    code.kind = CodeKind::box;
    code.D = spec.D;
    code.shape = spec.shape;
    for (const LaurentPoly& p : spec.polys) code.poly_strings.push_back(p.to_string());
    if (spec.nvars == 2) {
        code.L = spec.shape[0];
        code.M = spec.shape[1];
    }

    const std::vector<Mono> x_monos = enumerate_box(t.x, spec.nvars);
    const std::vector<Mono> q_monos = enumerate_box(t.q, spec.nvars);
    const std::vector<Mono> z_monos = enumerate_box(t.z, spec.nvars);
    const std::size_t qm = q_monos.size();
    code.n = t.q.copies * qm;

    std::unordered_map<long long, std::size_t> q_pos;
    auto mono_key = [&](const Mono& m) {
        long long key = 0;
        for (int i = 0; i < spec.nvars; ++i) key = key * 4096 + (m.e[std::size_t(i)] + 1024);
        return key;
    };
    for (std::size_t i = 0; i < qm; ++i) q_pos[mono_key(q_monos[i])] = i;

    code.qubit_labels.reserve(code.n);
    for (std::size_t c = 0; c < t.q.copies; ++c)
        for (const Mono& m : q_monos) code.qubit_labels.push_back(Label{int(c), m});

    code.hx = BitMatrix(t.x.copies * x_monos.size(), code.n);
    std::size_t row = 0;
    for (std::size_t cx = 0; cx < t.x.copies; ++cx)
        for (const Mono& m : x_monos) {
            for (std::size_t cq = 0; cq < t.q.copies; ++cq)
                for (const Mono& term : t.dx[cq][cx].terms()) {
                    Mono target = m + term;
                    if (!in_box(t.q, target, spec.nvars)) continue;
                    code.hx.set(row, cq * qm + q_pos.at(mono_key(target)), true);
                }
            code.x_labels.push_back(Label{int(cx), m});
            ++row;
        }

    code.hz = BitMatrix(t.z.copies * z_monos.size(), code.n);
    row = 0;
    for (std::size_t cz = 0; cz < t.z.copies; ++cz)
        for (const Mono& mz : z_monos) {
            for (std::size_t cq = 0; cq < t.q.copies; ++cq)
                for (const Mono& term : t.dz[cz][cq].terms()) {
                    Mono source = mz - term;
                    if (!in_box(t.q, source, spec.nvars)) continue;
                    code.hz.set(row, cq * qm + q_pos.at(mono_key(source)), true);
                }
            code.z_labels.push_back(Label{int(cz), mz});
            ++row;
        }

    BitMatrix prod = code.hx * code.hz.transposed();
    if (!prod.is_zero()) throw std::logic_error("box code: hx and hz do not commute");

    // Every qubit must feel at least one check of each kind.
    std::vector<bool> seen_x(code.n, false), seen_z(code.n, false);
    for (std::size_t r = 0; r < code.hx.rows(); ++r)
        for (std::size_t c = 0; c < code.n; ++c)
            if (code.hx.get(r, c)) seen_x[c] = true;
    for (std::size_t r = 0; r < code.hz.rows(); ++r)
        for (std::size_t c = 0; c < code.n; ++c)
            if (code.hz.get(r, c)) seen_z[c] = true;
    for (std::size_t c = 0; c < code.n; ++c)
        if (!seen_x[c] || !seen_z[c])
            throw std::logic_error("box code: qubit not covered by both check kinds");
    return code;
}

}  // namespace tilekit
