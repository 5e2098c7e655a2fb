#include "tilekit/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace tilekit {

// ---------------------------------------------------------------------------
// BitVec
// ---------------------------------------------------------------------------

BitVec& BitVec::operator^=(const BitVec& o) {
    if (n_ != o.n_) throw std::invalid_argument("BitVec xor: length mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

bool BitVec::dot(const BitVec& o) const {
    if (n_ != o.n_) throw std::invalid_argument("BitVec dot: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
    return std::popcount(acc) & 1;
}

std::size_t BitVec::weight() const {
    std::size_t s = 0;
    for (std::uint64_t w : w_) s += std::popcount(w);
    return s;
}

bool BitVec::any() const {
    for (std::uint64_t w : w_) if (w) return true;
    return false;
}

std::vector<std::size_t> BitVec::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
        std::uint64_t w = w_[wi];
        while (w) {
            out.push_back(wi * 64 + std::countr_zero(w));
            w &= w - 1;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// BitMatrix
// ---------------------------------------------------------------------------

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

void BitMatrix::xor_rows(std::size_t dst, std::size_t src) {
    std::uint64_t* d = row_ptr(dst);
    const std::uint64_t* s = row_ptr(src);
    for (std::size_t i = 0; i < wpr_; ++i) d[i] ^= s[i];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::uint64_t* pa = row_ptr(a);
    std::uint64_t* pb = row_ptr(b);
    for (std::size_t i = 0; i < wpr_; ++i) std::swap(pa[i], pb[i]);
}

BitVec BitMatrix::row(std::size_t r) const {
    BitVec v(cols_);
    std::copy(row_ptr(r), row_ptr(r) + wpr_, v.words().begin());
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVec& v) {
    if (v.size() != cols_) throw std::invalid_argument("set_row: length mismatch");
    std::copy(v.words().begin(), v.words().end(), row_ptr(r));
}

void BitMatrix::append_row(const BitVec& v) {
    if (cols_ == 0 && rows_ == 0) { cols_ = v.size(); wpr_ = (cols_ + 63) / 64; }
    if (v.size() != cols_) throw std::invalid_argument("append_row: length mismatch");
    bits_.resize((rows_ + 1) * wpr_, 0);
    std::copy(v.words().begin(), v.words().end(), bits_.begin() + rows_ * wpr_);
    ++rows_;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const std::uint64_t* p = row_ptr(r);
        for (std::size_t wi = 0; wi < wpr_; ++wi) {
            std::uint64_t w = p[wi];
            while (w) {
                std::size_t c = wi * 64 + std::countr_zero(w);
                t.set(c, r, true);
                w &= w - 1;
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix mul: shape mismatch");
    BitMatrix out(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const std::uint64_t* p = row_ptr(r);
        std::uint64_t* op = out.row_ptr(r);
        for (std::size_t wi = 0; wi < wpr_; ++wi) {
            std::uint64_t w = p[wi];
            while (w) {
                std::size_t k = wi * 64 + std::countr_zero(w);
                const std::uint64_t* q = o.row_ptr(k);
                for (std::size_t j = 0; j < o.wpr_; ++j) op[j] ^= q[j];
                w &= w - 1;
            }
        }
    }
    return out;
}

BitVec BitMatrix::mul(const BitVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector mul: length mismatch");
    BitVec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const std::uint64_t* p = row_ptr(r);
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < wpr_; ++i) acc ^= p[i] & v.words()[i];
        if (std::popcount(acc) & 1) out.set(r, true);
    }
    return out;
}

bool BitMatrix::is_zero() const {
    for (std::uint64_t w : bits_) if (w) return false;
    return true;
}

BitMatrix vstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    BitMatrix out(a.rows() + b.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        std::copy(a.row_ptr(r), a.row_ptr(r) + a.words_per_row(), out.row_ptr(r));
    for (std::size_t r = 0; r < b.rows(); ++r)
        std::copy(b.row_ptr(r), b.row_ptr(r) + b.words_per_row(), out.row_ptr(a.rows() + r));
    return out;
}

BitMatrix select_columns(const BitMatrix& m, const std::vector<std::size_t>& cols) {
    BitMatrix out(m.rows(), cols.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (m.get(r, cols[j])) out.set(r, j, true);
    return out;
}

// ---------------------------------------------------------------------------
// Row reduction
// ---------------------------------------------------------------------------

RrefResult rref(BitMatrix m) {
    RrefResult res;
    std::size_t pr = 0;  // next pivot row
    for (std::size_t c = 0; c < m.cols() && pr < m.rows(); ++c) {
        std::size_t sel = m.rows();
        for (std::size_t r = pr; r < m.rows(); ++r)
            if (m.get(r, c)) { sel = r; break; }
        if (sel == m.rows()) continue;
        m.swap_rows(pr, sel);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != pr && m.get(r, c)) m.xor_rows(r, pr);
        res.pivots.push_back(c);
        ++pr;
    }
    res.rank = pr;
    res.mat = std::move(m);
    return res;
}

std::size_t rank(const BitMatrix& m) { return rref(m).rank; }

BitMatrix kernel(const BitMatrix& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : rr.pivots) is_pivot[c] = true;
    BitMatrix out(0, m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        BitVec v(m.cols());
        v.set(c, true);
        // Each pivot row reads "x_p + (free part) = 0", so x_p copies the
        // free column's entry.
        for (std::size_t i = 0; i < rr.pivots.size(); ++i)
            if (rr.mat.get(i, c)) v.set(rr.pivots[i], true);
        out.append_row(v);
    }
    return out;
}

std::optional<BitVec> solve(const BitMatrix& m, const BitVec& rhs) {
    if (rhs.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    // Row-reduce the augmented matrix [m | rhs].
    BitMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::copy(m.row_ptr(r), m.row_ptr(r) + m.words_per_row(), aug.row_ptr(r));
        if (rhs.get(r)) aug.set(r, m.cols(), true);
    }
    std::size_t pr = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < m.cols() && pr < aug.rows(); ++c) {
        std::size_t sel = aug.rows();
        for (std::size_t r = pr; r < aug.rows(); ++r)
            if (aug.get(r, c)) { sel = r; break; }
        if (sel == aug.rows()) continue;
        aug.swap_rows(pr, sel);
        for (std::size_t r = 0; r < aug.rows(); ++r)
            if (r != pr && aug.get(r, c)) aug.xor_rows(r, pr);
        pivots.push_back(c);
        ++pr;
    }
    for (std::size_t r = pr; r < aug.rows(); ++r)
        if (aug.get(r, m.cols())) return std::nullopt;
    // Also catch an inconsistent pivot that landed in the augmented column.
    BitVec x(m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (aug.get(i, m.cols())) x.set(pivots[i], true);
    return x;
}

std::optional<BitMatrix> inverse(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    std::size_t n = m.rows();
    BitMatrix work = m;
    BitMatrix inv = BitMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = n;
        for (std::size_t r = c; r < n; ++r)
            if (work.get(r, c)) { sel = r; break; }
        if (sel == n) return std::nullopt;
        work.swap_rows(c, sel);
        inv.swap_rows(c, sel);
        for (std::size_t r = 0; r < n; ++r)
            if (r != c && work.get(r, c)) { work.xor_rows(r, c); inv.xor_rows(r, c); }
    }
    return inv;
}

BitVec residual(const RrefResult& rr, BitVec v) {
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
        if (v.get(rr.pivots[i])) v ^= rr.mat.row(i);
    return v;
}

bool in_rowspace(const RrefResult& rr, const BitVec& v) {
    return !residual(rr, v).any();
}

// ---------------------------------------------------------------------------
// UniPoly
// ---------------------------------------------------------------------------

void UniPoly::trim() {
    while (!w_.empty() && w_.back() == 0) w_.pop_back();
}

UniPoly UniPoly::one() {
    UniPoly p;
    p.w_ = {1};
    return p;
}

UniPoly UniPoly::x() {
    UniPoly p;
    p.w_ = {2};
    return p;
}

UniPoly UniPoly::from_coeff_bits(std::uint64_t bits) {
    UniPoly p;
    if (bits) p.w_ = {bits};
    return p;
}

int UniPoly::degree() const {
    if (w_.empty()) return -1;
    return int((w_.size() - 1) * 64 + 63 - std::countl_zero(w_.back()));
}

bool UniPoly::coeff(std::size_t i) const {
    std::size_t wi = i >> 6;
    if (wi >= w_.size()) return false;
    return (w_[wi] >> (i & 63)) & 1;
}

void UniPoly::set_coeff(std::size_t i, bool v) {
    std::size_t wi = i >> 6;
    if (wi >= w_.size()) {
        if (!v) return;
        w_.resize(wi + 1, 0);
    }
    std::uint64_t mask = std::uint64_t(1) << (i & 63);
    if (v) w_[wi] |= mask; else w_[wi] &= ~mask;
    trim();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    UniPoly out;
    out.w_.resize(std::max(w_.size(), o.w_.size()), 0);
    for (std::size_t i = 0; i < w_.size(); ++i) out.w_[i] ^= w_[i];
    for (std::size_t i = 0; i < o.w_.size(); ++i) out.w_[i] ^= o.w_[i];
    out.trim();
    return out;
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return zero();
    UniPoly out;
    out.w_.resize(w_.size() + o.w_.size(), 0);
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
        std::uint64_t w = w_[wi];
        while (w) {
            std::size_t shift = wi * 64 + std::countr_zero(w);
            std::size_t wordoff = shift >> 6, bitoff = shift & 63;
            for (std::size_t j = 0; j < o.w_.size(); ++j) {
                out.w_[j + wordoff] ^= o.w_[j] << bitoff;
                if (bitoff) out.w_[j + wordoff + 1] ^= o.w_[j] >> (64 - bitoff);
            }
            w &= w - 1;
        }
    }
    out.trim();
    return out;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("UniPoly divmod: division by zero");
    UniPoly rem = *this;
    UniPoly quot;
    int dd = divisor.degree();
    int rd = rem.degree();
    while (rd >= dd) {
        std::size_t shift = std::size_t(rd - dd);
        quot.set_coeff(shift, true);
        // rem ^= divisor << shift
        std::size_t wordoff = shift >> 6, bitoff = shift & 63;
        if (rem.w_.size() < divisor.w_.size() + wordoff + 1)
            rem.w_.resize(divisor.w_.size() + wordoff + 1, 0);
        for (std::size_t j = 0; j < divisor.w_.size(); ++j) {
            rem.w_[j + wordoff] ^= divisor.w_[j] << bitoff;
            if (bitoff) rem.w_[j + wordoff + 1] ^= divisor.w_[j] >> (64 - bitoff);
        }
        rem.trim();
        rd = rem.degree();
    }
    return {quot, rem};
}

bool UniPoly::operator<(const UniPoly& o) const {
    int da = degree(), db = o.degree();
    if (da != db) return da < db;
    for (std::size_t i = std::max(w_.size(), o.w_.size()); i-- > 0;) {
        std::uint64_t a = i < w_.size() ? w_[i] : 0;
        std::uint64_t b = i < o.w_.size() ? o.w_[i] : 0;
        if (a != b) return a < b;
    }
    return false;
}

std::string UniPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        if (!coeff(std::size_t(i))) continue;
        if (!out.empty()) out += "+";
        if (i == 0) out += "1";
        else if (i == 1) out += "x";
        else out += "x^" + std::to_string(i);
    }
    return out;
}

UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

UniPoly powmod_x(std::uint64_t e, const UniPoly& m) {
    UniPoly result = UniPoly::one() % m;
    UniPoly base = UniPoly::x() % m;
    while (e) {
        if (e & 1) result = (result * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return result;
}

namespace {

// Irreducibles over GF(2) of degree 1, 2, ..., generated lazily by sieving
// candidates against the smaller irreducibles already found.
class IrreducibleStream {
public:
    // All irreducibles of degree exactly d.
    const std::vector<UniPoly>& of_degree(int d) {
        while (int(by_degree_.size()) <= d) grow();
        return by_degree_[std::size_t(d)];
    }

private:
    void grow() {
        int d = int(by_degree_.size());
        std::vector<UniPoly> found;
        if (d >= 1) {
            if (d > 40) throw std::runtime_error("irreducible generation: degree out of range");
            // Candidates: x^d + (lower terms); constant term must be 1 except for x itself.
            for (std::uint64_t low = 0; low < (std::uint64_t(1) << d); ++low) {
                UniPoly cand = UniPoly::from_coeff_bits(low | (std::uint64_t(1) << d));
                bool ok = true;
                for (int e = 1; ok && 2 * e <= d; ++e)
                    for (const UniPoly& q : by_degree_[std::size_t(e)])
                        if ((cand % q).is_zero()) { ok = false; break; }
                if (ok) found.push_back(cand);
            }
            std::sort(found.begin(), found.end());
        }
        by_degree_.push_back(std::move(found));
    }

    std::vector<std::vector<UniPoly>> by_degree_{{}};  // degree 0: none
};

}  // namespace

std::vector<std::pair<UniPoly, int>> factor(const UniPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("factor: zero polynomial");
    if (p.degree() > 64) throw std::invalid_argument("factor: degree out of supported range");
    std::vector<std::pair<UniPoly, int>> out;
    UniPoly rest = p;
    IrreducibleStream irr;
    for (int d = 1; rest.degree() >= 2 * d; ++d) {
        for (const UniPoly& q : irr.of_degree(d)) {
            if (rest.degree() < 2 * d) break;
            int mult = 0;
            while (true) {
                auto [quo, rem] = rest.divmod(q);
                if (!rem.is_zero()) break;
                rest = quo;
                ++mult;
            }
            if (mult) out.emplace_back(q, mult);
        }
    }
    if (rest.degree() >= 1) out.emplace_back(rest, 1);
    std::sort(out.begin(), out.end());
    return out;
}

UniPoly char_poly(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("char_poly: matrix not square");
    std::size_t n = m.rows();
    if (n == 0) return UniPoly::one();

    // Reduce to upper Hessenberg form by a similarity transform.  Row
    // operations are mirrored by the inverse column operations, which over
    // GF(2) are the same additions in the transposed direction.
    BitMatrix h = m;
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t sel = n;
        for (std::size_t r = j + 1; r < n; ++r)
            if (h.get(r, j)) { sel = r; break; }
        if (sel == n) continue;
        if (sel != j + 1) {
            h.swap_rows(j + 1, sel);
            for (std::size_t r = 0; r < n; ++r) {  // swap columns j+1 and sel
                bool a = h.get(r, j + 1), b = h.get(r, sel);
                h.set(r, j + 1, b);
                h.set(r, sel, a);
            }
        }
        for (std::size_t r = j + 2; r < n; ++r) {
            if (!h.get(r, j)) continue;
            h.xor_rows(r, j + 1);
            for (std::size_t rr = 0; rr < n; ++rr)  // column j+1 += column r
                if (h.get(rr, r)) h.flip(rr, j + 1);
        }
    }

    // Leading principal characteristic polynomials of a Hessenberg matrix
    // satisfy p_k = (x + h_{k,k}) p_{k-1} + sum_i h_{i,k} (prod of subdiagonal
    // entries between i and k) p_{i-1}; over GF(2) every sign is +.
    std::vector<UniPoly> p(n + 1);
    p[0] = UniPoly::one();
    for (std::size_t k = 1; k <= n; ++k) {
        UniPoly acc = (UniPoly::x() + UniPoly::from_coeff_bits(h.get(k - 1, k - 1) ? 1 : 0)) * p[k - 1];
        bool chain = true;
        for (std::size_t i = k - 1; i >= 1 && chain; --i) {
            // chain holds prod_{m=i}^{k-2} h_{m+1,m} so far (1-based: subdiagonal run).
            chain = h.get(i, i - 1);
            if (!chain) break;
            if (h.get(i - 1, k - 1)) acc = acc + p[i - 1];
        }
        p[k] = std::move(acc);
    }
    return p[n];
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Multiplicative order of x modulo an irreducible q: a divisor of 2^deg - 1.
std::uint64_t x_order_mod(const UniPoly& q) {
    int d = q.degree();
    if (d > 62) throw std::invalid_argument("x_order_mod: degree out of range");
    std::uint64_t t = (std::uint64_t(1) << d) - 1;
    for (std::uint64_t pf : prime_factors(t))
        while (t % pf == 0 && powmod_x(t / pf, q) == UniPoly::one()) t /= pf;
    return t;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    return a / std::gcd(a, b) * b;
}

}  // namespace

BitMatrix matrix_power(const BitMatrix& m, std::uint64_t e) {
    BitMatrix result = BitMatrix::identity(m.rows());
    BitMatrix base = m;
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

std::uint64_t matrix_order(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix_order: matrix not square");
    if (!inverse(m)) throw std::invalid_argument("matrix_order: matrix not invertible");
    // The order divides lcm over char-poly factors q^e of ord(x mod q) * 2^ceil(log2 e):
    // each generalised eigenblock for q has order ord(x mod q) times the 2-power
    // covering its nilpotent part.  Afterwards strip unnecessary prime factors.
    std::uint64_t t = 1;
    for (const auto& [q, e] : factor(char_poly(m))) {
        std::uint64_t pw = 1;
        while (pw < std::uint64_t(e)) pw <<= 1;
        t = lcm_u64(t, x_order_mod(q) * pw);
    }
    BitMatrix id = BitMatrix::identity(m.rows());
    for (std::uint64_t pf : prime_factors(t))
        while (t % pf == 0 && matrix_power(m, t / pf) == id) t /= pf;
    return t;
}

std::optional<std::uint64_t> matrix_discrete_log(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("matrix_discrete_log: shape mismatch");
    std::uint64_t ord = matrix_order(a);
    BitMatrix acc = BitMatrix::identity(a.rows());
    for (std::uint64_t t = 0; t < ord; ++t) {
        if (acc == b) return t;
        acc = acc * a;
    }
    return std::nullopt;
}

}  // namespace tilekit
