#include "tilekit/quotient.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace tilekit {

namespace {

constexpr int kMaxWindow = 256;

// Graded lex, larger first: higher total degree wins, ties break on the
// exponent tuple.  Descending column order makes rref pivots the leading
// monomials the window can certify.
bool grlex_after(const Mono& a, const Mono& b) {
    int da = a.e[0] + a.e[1], db = b.e[0] + b.e[1];
    if (da != db) return da > db;
    return b.e < a.e;
}

long long mono_key(const Mono& m) {
    return (static_cast<long long>(m.e[0]) << 20) | m.e[1];
}

struct WindowData {
    int N = 0;
    std::vector<Mono> monos;  // descending graded lex
    std::unordered_map<long long, std::size_t> col;
    RrefResult rr;
    std::vector<Mono> standard;             // ascending graded lex
    std::vector<std::size_t> standard_cols;  // aligned with `standard`
};

WindowData analyze_window(const LaurentPoly& f, const LaurentPoly& g, int N) {
    WindowData w;
    w.N = N;
    w.monos.reserve(std::size_t(N) * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) w.monos.push_back(Mono(a, b));
    std::sort(w.monos.begin(), w.monos.end(), grlex_after);
    for (std::size_t i = 0; i < w.monos.size(); ++i) w.col[mono_key(w.monos[i])] = i;

    std::size_t rows = 0;
    for (const LaurentPoly* p : {&f, &g}) {
        DegreeBox box = p->degree_box();
        rows += std::size_t(N - box.hi[0]) * std::size_t(N - box.hi[1]);
    }
    BitMatrix ideal(rows, w.monos.size());
    std::size_t r = 0;
    for (const LaurentPoly* p : {&f, &g}) {
        DegreeBox box = p->degree_box();
        for (int i = 0; i + box.hi[0] < N; ++i)
            for (int j = 0; j + box.hi[1] < N; ++j) {
                for (const Mono& t : p->terms())
                    ideal.set(r, w.col.at(mono_key(t + Mono(i, j))), true);
                ++r;
            }
    }
    w.rr = rref(std::move(ideal));

    std::vector<bool> is_pivot(w.monos.size(), false);
    for (std::size_t c : w.rr.pivots) is_pivot[c] = true;
    for (std::size_t c = w.monos.size(); c-- > 0;)
        if (!is_pivot[c]) {
            w.standard.push_back(w.monos[c]);
            w.standard_cols.push_back(c);
        }
    return w;
}

void validate_tiles(const LaurentPoly& f, const LaurentPoly& g, int D) {
    if (D < 1) throw std::invalid_argument("quotient: width must be at least 1");
    for (const LaurentPoly* p : {&f, &g}) {
        if (p->nvars() != 2) throw std::invalid_argument("quotient: tiles must be bivariate");
        if (p->is_zero()) throw std::invalid_argument("quotient: zero tile");
        DegreeBox box = p->degree_box();
        for (int axis : {0, 1})
            if (box.lo[axis] < 0 || box.hi[axis] > D)
                throw std::invalid_argument("quotient: tile support leaves [0,D]^2");
    }
}

// --- bivariate gcd machinery: (F2[x])[y] with UniPoly coefficients ----------

// Coefficient vector by y-degree; index i is the coefficient of y^i.
std::vector<UniPoly> y_coefficients(const LaurentPoly& p) {
    DegreeBox box = p.degree_box();
    std::vector<UniPoly> c(std::size_t(box.hi[1]) + 1);
    for (const Mono& t : p.terms()) c[std::size_t(t.e[1])].set_coeff(std::size_t(t.e[0]), true);
    return c;
}

int y_degree(const std::vector<UniPoly>& c) {
    for (std::size_t i = c.size(); i-- > 0;)
        if (!c[i].is_zero()) return int(i);
    return -1;
}

UniPoly content(const std::vector<UniPoly>& c) {
    UniPoly acc;
    for (const UniPoly& u : c) acc = gcd(acc, u);
    return acc;
}

void divide_out(std::vector<UniPoly>& c, const UniPoly& d) {
    for (UniPoly& u : c) {
        if (u.is_zero()) continue;
        auto [q, r] = u.divmod(d);
        if (!r.is_zero())
            throw std::logic_error("quotient: content division left a remainder");
        u = q;
    }
}

// Fraction-free pseudo-remainder: repeatedly cancel the top y-coefficient of
// a against b after scaling a by b's leading coefficient.
std::vector<UniPoly> pseudo_remainder(std::vector<UniPoly> a, const std::vector<UniPoly>& b) {
    int db = y_degree(b);
    const UniPoly& lead_b = b[std::size_t(db)];
    for (int da = y_degree(a); da >= db; da = y_degree(a)) {
        UniPoly lead_a = a[std::size_t(da)];
        for (UniPoly& u : a) u = u * lead_b;
        for (int i = 0; i <= db; ++i)
            a[std::size_t(da - db + i)] = a[std::size_t(da - db + i)] + lead_a * b[std::size_t(i)];
        if (y_degree(a) == da)
            throw std::logic_error("quotient: pseudo-division failed to cancel");
    }
    a.resize(std::size_t(std::max(y_degree(a), 0)) + 1);
    return a;
}

}  // namespace

bool bivariate_coprime(const LaurentPoly& a, const LaurentPoly& b) {
    auto is_unit = [](const LaurentPoly& p) {
        return p.term_count() == 1 && p.terms()[0] == Mono(0, 0);
    };
    if (a.is_zero()) return is_unit(b);
    if (b.is_zero()) return is_unit(a);
    for (const LaurentPoly* p : {&a, &b}) {
        DegreeBox box = p->degree_box();
        if (box.lo[0] < 0 || box.lo[1] < 0)
            throw std::invalid_argument("coprimality is decided in the polynomial ring");
    }

    std::vector<UniPoly> ca = y_coefficients(a), cb = y_coefficients(b);
    if (gcd(content(ca), content(cb)).degree() != 0) return false;
    divide_out(ca, content(ca));
    divide_out(cb, content(cb));

    if (y_degree(ca) < y_degree(cb)) std::swap(ca, cb);
    while (y_degree(cb) >= 0) {
        std::vector<UniPoly> r = pseudo_remainder(ca, cb);
        if (y_degree(r) >= 0) divide_out(r, content(r));
        ca = std::move(cb);
        cb = std::move(r);
    }
    return y_degree(ca) == 0;
}

BitVec QuotientRing::reduce_in_window(const LaurentPoly& p) const {
    BitVec v(window_monos.size());
    for (const Mono& t : p.terms()) {
        auto it = window_col.find(mono_key(t));
        if (it == window_col.end())
            throw std::invalid_argument("quotient: polynomial leaves the reduction window");
        v.flip(it->second);
    }
    for (std::size_t i = 0; i < reducer.pivots.size(); ++i)
        if (v.get(reducer.pivots[i])) v ^= reducer.mat.row(i);
    BitVec out(dim);
    for (std::size_t i = 0; i < basis_cols.size(); ++i)
        if (v.get(basis_cols[i])) out.set(i, true);
    return out;
}

QuotientRing quotient_ring(const LaurentPoly& f, const LaurentPoly& g, int D) {
    validate_tiles(f, g, D);
    if (!bivariate_coprime(f, g))
        throw std::domain_error("quotient not finite-dimensional: the tiles share a factor");

    WindowData prev = analyze_window(f, g, 4 * (D + 1));
    while (true) {
        if (prev.N * 2 > kMaxWindow)
            throw std::domain_error("quotient not finite-dimensional: the tiles share a factor");
        WindowData cur = analyze_window(f, g, prev.N * 2);
        bool stable = cur.standard == prev.standard;
        // The multiplication step below needs x*basis and y*basis inside the
        // window; with the doubled window this only fails for wildly skewed
        // staircases, which just forces another doubling.
        for (const Mono& m : cur.standard)
            if (std::max(m.e[0], m.e[1]) + 1 >= cur.N) stable = false;
        if (!stable) {
            prev = std::move(cur);
            continue;
        }

        QuotientRing q;
        q.D = D;
        q.f = f;
        q.g = g;
        q.basis = cur.standard;
        q.dim = cur.standard.size();
        q.window = cur.N;
        q.window_monos = std::move(cur.monos);
        q.window_col = std::move(cur.col);
        q.reducer = std::move(cur.rr);
        q.basis_cols = std::move(cur.standard_cols);
        q.one = q.reduce_in_window(LaurentPoly::one(2));

        q.mx = BitMatrix(q.dim, q.dim);
        q.my = BitMatrix(q.dim, q.dim);
        for (std::size_t c = 0; c < q.dim; ++c) {
            BitVec vx = q.reduce_in_window(LaurentPoly::monomial(q.basis[c] + Mono(1, 0), 2));
            BitVec vy = q.reduce_in_window(LaurentPoly::monomial(q.basis[c] + Mono(0, 1), 2));
            for (std::size_t r = 0; r < q.dim; ++r) {
                if (vx.get(r)) q.mx.set(r, c, true);
                if (vy.get(r)) q.my.set(r, c, true);
            }
        }

        if (q.reduce_in_window(f).any() || q.reduce_in_window(g).any())
            throw std::logic_error("quotient: a generator does not reduce to zero");
        return q;
    }
}

BitVec reduce(const QuotientRing& q, const LaurentPoly& p) {
    BitVec acc(q.dim);
    if (q.dim == 0 || p.is_zero()) return acc;

    std::optional<BitMatrix> mx_inv, my_inv;
    auto apply = [&](const BitMatrix& m, std::optional<BitMatrix>& inv_cache, int e,
                     BitVec v) -> BitVec {
        if (e == 0) return v;
        const BitMatrix* base = &m;
        if (e < 0) {
            if (!inv_cache) {
                std::optional<BitMatrix> inv = inverse(m);
                if (!inv)
                    throw std::domain_error(
                        "quotient: negative exponent with a singular multiplication operator");
                inv_cache = std::move(*inv);
            }
            base = &*inv_cache;
            e = -e;
        }
        return matrix_power(*base, std::uint64_t(e)).mul(v);
    };

    for (const Mono& t : p.terms()) {
        BitVec v = apply(q.mx, mx_inv, t.e[0], q.one);
        v = apply(q.my, my_inv, t.e[1], std::move(v));
        acc ^= v;
    }
    return acc;
}

ToReport check_algebraic_to(const LaurentPoly& f, const LaurentPoly& g, int D) {
    validate_tiles(f, g, D);
    ToReport report;
    for (int o = 0; o < 4; ++o) {
        unsigned mask = unsigned(o);  // bit 0: reverse x, bit 1: reverse y
        report.coprime[std::size_t(o)] =
            bivariate_coprime(f.reversed(D, mask), g.reversed(D, mask));
    }
    if (report.coprime[std::size_t(Orientation::identity)]) {
        try {
            QuotientRing q = quotient_ring(f, g, D);
            report.finite = true;
            report.dim = q.dim;
            report.mx_invertible = inverse(q.mx).has_value();
            report.my_invertible = inverse(q.my).has_value();
        } catch (const std::domain_error&) {
            report.finite = false;
        }
    }
    report.dim_matches = report.finite && report.dim == 2 * std::size_t(D) * std::size_t(D);
    report.pass = report.coprime[0] && report.coprime[1] && report.coprime[2] &&
                  report.coprime[3] && report.mx_invertible && report.my_invertible &&
                  report.dim_matches;
    return report;
}

namespace {

// Does every vector supported on `inner` in ker(h_other) lie in rowspace(h_same)?
bool side_contained(const BitMatrix& h_other, const BitMatrix& h_same,
                    const std::vector<std::size_t>& inner, std::size_t n) {
    BitMatrix restricted = select_columns(h_other, inner);
    BitMatrix null_basis = kernel(restricted);
    RrefResult rr = rref(h_same);
    for (std::size_t r = 0; r < null_basis.rows(); ++r) {
        BitVec embedded(n);
        for (std::size_t i = 0; i < inner.size(); ++i)
            if (null_basis.get(r, i)) embedded.set(inner[i], true);
        if (!in_rowspace(rr, embedded)) return false;
    }
    return true;
}

}  // namespace

WindowToReport check_combinatorial_to(const LaurentPoly& f, const LaurentPoly& g, int D,
                                      int W) {
    validate_tiles(f, g, D);
    if (W < 4 * (D + 1))
        throw std::invalid_argument("combinatorial window too small: need W >= 4(D+1)");

    TilePair tiles{f, g, D};
    WindowToReport report;
    report.quadrants[0].mask = BoundaryMask{true, false, true, false};   // SW corner
    report.quadrants[1].mask = BoundaryMask{true, false, false, true};   // SE corner
    report.quadrants[2].mask = BoundaryMask{false, true, true, false};   // NW corner
    report.quadrants[3].mask = BoundaryMask{false, true, false, true};   // NE corner

    report.pass = true;
    for (QuadrantVerdict& quad : report.quadrants) {
        CssCode window = build_tile_window(tiles, W, W, quad.mask);
        std::vector<std::size_t> inner;
        for (std::size_t qb = 0; qb < window.n; ++qb) {
            const Mono& pos = window.qubit_labels[qb].pos;
            if (pos.e[0] >= D + 1 && pos.e[0] < W - (D + 1) && pos.e[1] >= D + 1 &&
                pos.e[1] < W - (D + 1))
                inner.push_back(qb);
        }
        quad.x_side = side_contained(window.hz, window.hx, inner, window.n);
        quad.z_side = side_contained(window.hx, window.hz, inner, window.n);
        report.pass = report.pass && quad.pass();
    }
    return report;
}

}  // namespace tilekit
