#include "tilekit/code.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace tilekit {

namespace {

// Anchors (a, b) at which the translated support of p stays inside the patch
// intersect nontrivially; callers restrict the anchor window further.
void add_check_row(BitMatrix& h, std::size_t row, const LatticeIndex& idx, int a, int b,
                   const LaurentPoly& vertical_part, const LaurentPoly& horizontal_part) {
    for (const Mono& t : vertical_part.terms()) {
        int qa = a + t.e[0], qb = b + t.e[1];
        if (idx.contains(qa, qb)) h.set(row, idx(kVertical, qa, qb), true);
    }
    for (const Mono& t : horizontal_part.terms()) {
        int qa = a + t.e[0], qb = b + t.e[1];
        if (idx.contains(qa, qb)) h.set(row, idx(kHorizontal, qa, qb), true);
    }
}

CssCode build_tile_code_impl(const TilePair& tiles, int L, int M, const BoundaryMask& mask,
                             bool full_checks) {
    const int D = tiles.D;
    if (L <= D || M <= D)
        throw std::invalid_argument("tile code: patch must exceed the tile width in both directions");

    LatticeIndex idx{L, M};
    CssCode code;
    code.kind = CodeKind::tile_lattice;
    code.L = L;
    code.M = M;
    code.D = D;
    code.tiles = tiles;
    code.n = std::size_t(2) * L * M;

    code.qubit_labels.resize(code.n);
    for (int copy : {kHorizontal, kVertical})
        for (int b = 0; b < M; ++b)
            for (int a = 0; a < L; ++a)
                code.qubit_labels[idx(copy, a, b)] = Label{copy, Mono(a, b)};

    // Z tiles are the box-reversal of the X tiles with the copies swapped:
    // vertical qubits see rev(g), horizontal qubits see rev(f).
    const LaurentPoly rev_f = tiles.f.reversed(D, 0b11);
    const LaurentPoly rev_g = tiles.g.reversed(D, 0b11);

    // Anchor windows, row-major in (b, a).
    std::vector<std::pair<int, int>> x_anchors, z_anchors;
    for (int b = -D; b < M; ++b) {
        if (b < 0 && !mask.south_x) continue;
        if (b >= M - D && !mask.north_x) continue;
        for (int a = 0; a < L - D; ++a) x_anchors.emplace_back(a, b);
    }
    for (int b = 0; b < M - D; ++b)
        for (int a = -D; a < L; ++a) {
            if (a < 0 && !mask.west_z) continue;
            if (a >= L - D && !mask.east_z) continue;
            z_anchors.emplace_back(a, b);
        }

    code.hx = BitMatrix(x_anchors.size(), code.n);
    code.hz = BitMatrix(z_anchors.size(), code.n);
    for (std::size_t r = 0; r < x_anchors.size(); ++r) {
        auto [a, b] = x_anchors[r];
        add_check_row(code.hx, r, idx, a, b, tiles.f, tiles.g);
        code.x_labels.push_back(Label{0, Mono(a, b)});
    }
    for (std::size_t r = 0; r < z_anchors.size(); ++r) {
        auto [a, b] = z_anchors[r];
        add_check_row(code.hz, r, idx, a, b, rev_g, rev_f);
        code.z_labels.push_back(Label{0, Mono(a, b)});
    }

    if (full_checks) {
        const std::size_t want_x = std::size_t(L - D) * std::size_t(M + D);
        const std::size_t want_z = std::size_t(L + D) * std::size_t(M - D);
        if (code.hx.rows() != want_x || code.hz.rows() != want_z)
            throw std::logic_error("tile code: check counts disagree with the anchor windows");

        // Verification pass: every check must keep some support after clipping
        // and every qubit must sit under both kinds of check.
        std::vector<bool> x_cov(code.n, false), z_cov(code.n, false);
        for (std::size_t r = 0; r < code.hx.rows(); ++r) {
            BitVec row = code.hx.row(r);
            if (!row.any()) throw std::logic_error("tile code: X check clipped to nothing");
            for (std::size_t q : row.ones()) x_cov[q] = true;
        }
        for (std::size_t r = 0; r < code.hz.rows(); ++r) {
            BitVec row = code.hz.row(r);
            if (!row.any()) throw std::logic_error("tile code: Z check clipped to nothing");
            for (std::size_t q : row.ones()) z_cov[q] = true;
        }
        for (std::size_t q = 0; q < code.n; ++q)
            if (!x_cov[q] || !z_cov[q])
                throw std::logic_error("tile code: qubit not covered by both check kinds");
    }

    // Clipping can never break commutation: see the boundary analysis in the
    // project notes — clipped X support lies strictly outside every in-patch
    // Z tile.  Assert it anyway on every build.
    BitMatrix prod = code.hx * code.hz.transposed();
    if (!prod.is_zero()) throw std::logic_error("tile code: hx and hz do not commute");

    return code;
}

}  // namespace

CssCode build_tile_code(const TilePair& tiles, int L, int M) {
    return build_tile_code_impl(tiles, L, M, BoundaryMask{}, /*full_checks=*/true);
}

CssCode build_tile_window(const TilePair& tiles, int L, int M, const BoundaryMask& mask) {
    return build_tile_code_impl(tiles, L, M, mask, /*full_checks=*/false);
}

CodeParams code_params(const CssCode& code) {
    CodeParams p;
    p.n = code.n;
    p.x_checks = code.hx.rows();
    p.z_checks = code.hz.rows();
    p.rank_hx = rank(code.hx);
    p.rank_hz = rank(code.hz);
    if (p.rank_hx + p.rank_hz > p.n)
        throw std::logic_error("code_params: check ranks exceed qubit count");
    p.k = p.n - p.rank_hx - p.rank_hz;
    return p;
}

// --- alist -----------------------------------------------------------------

std::string export_alist(const BitMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<std::size_t>> col_lists(cols), row_lists(rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c : m.row(r).ones()) {
            col_lists[c].push_back(r + 1);
            row_lists[r].push_back(c + 1);
        }
    std::size_t max_col = 0, max_row = 0;
    for (auto& l : col_lists) max_col = std::max(max_col, l.size());
    for (auto& l : row_lists) max_row = std::max(max_row, l.size());

    std::ostringstream out;
    out << cols << ' ' << rows << '\n';
    out << max_col << ' ' << max_row << '\n';
    for (std::size_t c = 0; c < cols; ++c) out << col_lists[c].size() << (c + 1 < cols ? ' ' : '\n');
    if (cols == 0) out << '\n';
    for (std::size_t r = 0; r < rows; ++r) out << row_lists[r].size() << (r + 1 < rows ? ' ' : '\n');
    if (rows == 0) out << '\n';
    auto emit_padded = [&](const std::vector<std::size_t>& list, std::size_t width) {
        for (std::size_t i = 0; i < width; ++i) {
            out << (i < list.size() ? list[i] : 0);
            out << (i + 1 < width ? ' ' : '\n');
        }
        if (width == 0) out << '\n';
    };
    for (auto& l : col_lists) emit_padded(l, max_col);
    for (auto& l : row_lists) emit_padded(l, max_row);
    return out.str();
}

namespace {

class TokenReader {
public:
    explicit TokenReader(const std::string& text) : in_(text) {}
    std::size_t next(const char* what) {
        long long v;
        if (!(in_ >> v) || v < 0)
            throw std::invalid_argument(std::string("import: expected nonnegative integer (") +
                                        what + ")");
        return std::size_t(v);
    }
    bool exhausted() {
        long long v;
        return !(in_ >> v);
    }

private:
    std::istringstream in_;
};

}  // namespace

BitMatrix import_alist(const std::string& text) {
    TokenReader tok(text);
    std::size_t cols = tok.next("column count");
    std::size_t rows = tok.next("row count");
    std::size_t max_col = tok.next("max column weight");
    std::size_t max_row = tok.next("max row weight");
    std::vector<std::size_t> col_wt(cols), row_wt(rows);
    for (auto& w : col_wt) w = tok.next("column weight");
    for (auto& w : row_wt) w = tok.next("row weight");

    BitMatrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t seen = 0;
        for (std::size_t i = 0; i < max_col; ++i) {
            std::size_t r = tok.next("column entry");
            if (r == 0) continue;  // padding
            if (r > rows) throw std::invalid_argument("import: alist row index out of range");
            if (m.get(r - 1, c)) throw std::invalid_argument("import: alist duplicate entry");
            m.set(r - 1, c, true);
            ++seen;
        }
        if (seen != col_wt[c])
            throw std::invalid_argument("import: alist column weight mismatch");
    }
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t seen = 0;
        for (std::size_t i = 0; i < max_row; ++i) {
            std::size_t c = tok.next("row entry");
            if (c == 0) continue;
            if (c > cols) throw std::invalid_argument("import: alist column index out of range");
            if (!m.get(r, c - 1))
                throw std::invalid_argument("import: alist row list disagrees with column lists");
            ++seen;
        }
        if (seen != row_wt[r]) throw std::invalid_argument("import: alist row weight mismatch");
    }
    if (!tok.exhausted()) throw std::invalid_argument("import: alist trailing data");
    // Row lists were only able to confirm listed entries; make sure the total
    // weights agree so nothing was set by columns but missed by rows.
    std::size_t total_col = 0, total_row = 0;
    for (std::size_t w : col_wt) total_col += w;
    for (std::size_t w : row_wt) total_row += w;
    if (total_col != total_row)
        throw std::invalid_argument("import: alist weight totals disagree");
    return m;
}

// --- triplets --------------------------------------------------------------

std::string export_triplets(const BitMatrix& m) {
    std::ostringstream out;
    std::size_t nnz = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) nnz += m.row(r).weight();
    out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c : m.row(r).ones()) out << r << ' ' << c << '\n';
    return out.str();
}

BitMatrix import_triplets(const std::string& text) {
    TokenReader tok(text);
    std::size_t rows = tok.next("row count");
    std::size_t cols = tok.next("column count");
    std::size_t nnz = tok.next("nonzero count");
    BitMatrix m(rows, cols);
    long long prev_r = -1, prev_c = -1;
    for (std::size_t i = 0; i < nnz; ++i) {
        long long r = static_cast<long long>(tok.next("row index"));
        long long c = static_cast<long long>(tok.next("column index"));
        if (r >= static_cast<long long>(rows) || c >= static_cast<long long>(cols))
            throw std::invalid_argument("import: triplet index out of range");
        if (r < prev_r || (r == prev_r && c <= prev_c))
            throw std::invalid_argument("import: triplets not sorted row-major");
        prev_r = r;
        prev_c = c;
        m.set(r, c, true);
    }
    if (!tok.exhausted()) throw std::invalid_argument("import: triplet trailing data");
    return m;
}

// --- JSON ------------------------------------------------------------------

std::string export_json(const CssCode& code, std::optional<std::size_t> d_upper) {
    CodeParams p = code_params(code);
    nlohmann::json j;
    j["n"] = p.n;
    j["k"] = p.k;
    j["counts"] = {{"x", p.x_checks}, {"z", p.z_checks}};
    if (code.kind == CodeKind::tile_lattice) {
        j["D"] = code.D;
        j["shape"] = {code.L, code.M};
        j["tiles"] = {{"f", code.tiles.f.to_string()}, {"g", code.tiles.g.to_string()}};
    } else {
        j["D"] = code.D;
        j["shape"] = code.shape;
        nlohmann::json tiles;
        const char* names[] = {"f", "g", "h", "i"};
        for (std::size_t i = 0; i < code.poly_strings.size() && i < 4; ++i)
            tiles[names[i]] = code.poly_strings[i];
        j["tiles"] = tiles;
    }
    if (d_upper) j["d_upper"] = *d_upper;
    return j.dump(2) + "\n";
}

}  // namespace tilekit
