#pragma once

// Bit-packed linear algebra over GF(2): vectors, matrices, reduced row echelon
// form, kernels, linear solves, characteristic polynomials and multiplicative
// orders.  Everything is deterministic: row reduction always picks the first
// nonzero pivot, so canonical forms are reproducible across runs and platforms.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tilekit {

// ---------------------------------------------------------------------------
// BitVec: fixed-length vector over GF(2), packed 64 bits per word.
// ---------------------------------------------------------------------------
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= mask; else w_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }

    // Parity of the AND of two vectors (the symplectic-free inner product).
    bool dot(const BitVec& o) const;

    std::size_t weight() const;
    bool any() const;
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    const std::vector<std::uint64_t>& words() const { return w_; }
    std::vector<std::uint64_t>& words() { return w_; }

    // Indices of set bits, ascending.
    std::vector<std::size_t> ones() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// ---------------------------------------------------------------------------
// BitMatrix: rows x cols over GF(2), row-major, 64 bits per word.
// ---------------------------------------------------------------------------
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * wpr_, 0) {}

    static BitMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (bits_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t mask = std::uint64_t(1) << (c & 63);
        std::uint64_t& w = bits_[r * wpr_ + (c >> 6)];
        if (v) w |= mask; else w &= ~mask;
    }
    void flip(std::size_t r, std::size_t c) {
        bits_[r * wpr_ + (c >> 6)] ^= std::uint64_t(1) << (c & 63);
    }

    void xor_rows(std::size_t dst, std::size_t src);  // row[dst] ^= row[src]
    void swap_rows(std::size_t a, std::size_t b);

    BitVec row(std::size_t r) const;
    void set_row(std::size_t r, const BitVec& v);
    void append_row(const BitVec& v);

    BitMatrix transposed() const;
    BitMatrix operator*(const BitMatrix& o) const;
    BitVec mul(const BitVec& v) const;  // matrix * column vector

    bool is_zero() const;
    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
    }
    bool operator!=(const BitMatrix& o) const { return !(*this == o); }

    std::size_t words_per_row() const { return wpr_; }
    const std::uint64_t* row_ptr(std::size_t r) const { return bits_.data() + r * wpr_; }
    std::uint64_t* row_ptr(std::size_t r) { return bits_.data() + r * wpr_; }

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> bits_;
};

// Stack b's rows under a's (same column count).
BitMatrix vstack(const BitMatrix& a, const BitMatrix& b);

// Keep only the listed columns, in the given order.
BitMatrix select_columns(const BitMatrix& m, const std::vector<std::size_t>& cols);

// ---------------------------------------------------------------------------
// Row reduction and friends.
// ---------------------------------------------------------------------------
struct RrefResult {
    BitMatrix mat;                    // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column per pivot row, ascending
    std::size_t rank = 0;
};

// Deterministic RREF: scan columns left to right, pivot on the first row (at or
// below the current one) with a nonzero entry.
RrefResult rref(BitMatrix m);

std::size_t rank(const BitMatrix& m);

// Basis of the right kernel {v : m v = 0}, one vector per row.  Deterministic:
// one row per free column, in ascending column order.
BitMatrix kernel(const BitMatrix& m);

// One solution x of m x = rhs, or nullopt if inconsistent.
std::optional<BitVec> solve(const BitMatrix& m, const BitVec& rhs);

std::optional<BitMatrix> inverse(const BitMatrix& m);

// Reduce v against an RREF; returns the residual.  v is in the row space
// exactly when the residual is zero.
BitVec residual(const RrefResult& rr, BitVec v);
bool in_rowspace(const RrefResult& rr, const BitVec& v);

// ---------------------------------------------------------------------------
// UniPoly: univariate polynomials over GF(2), bit i of word i/64 = coeff of x^i.
// ---------------------------------------------------------------------------
class UniPoly {
public:
    UniPoly() = default;
    static UniPoly zero() { return UniPoly(); }
    static UniPoly one();
    static UniPoly x();
    static UniPoly from_coeff_bits(std::uint64_t bits);  // degree <= 63 shortcut

    int degree() const;  // -1 for the zero polynomial
    bool is_zero() const { return w_.empty(); }
    bool coeff(std::size_t i) const;
    void set_coeff(std::size_t i, bool v);

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    // Quotient and remainder of *this by divisor (divisor nonzero).
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;
    UniPoly operator%(const UniPoly& o) const { return divmod(o).second; }

    bool operator==(const UniPoly& o) const { return w_ == o.w_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }
    bool operator<(const UniPoly& o) const;  // by degree, then lex on coeffs

    std::string to_string() const;  // e.g. "x^5+x^3+1", "0"

private:
    void trim();
    std::vector<std::uint64_t> w_;  // empty == zero polynomial
};

UniPoly gcd(UniPoly a, UniPoly b);

// x^e mod m, with m of degree >= 1.
UniPoly powmod_x(std::uint64_t e, const UniPoly& m);

// Distinct irreducible factors with multiplicities, sorted.  Trial division by
// irreducibles of increasing degree; the input degree must stay desk-scale.
std::vector<std::pair<UniPoly, int>> factor(const UniPoly& p);

// Characteristic polynomial det(xI + m) via reduction to Hessenberg form.
UniPoly char_poly(const BitMatrix& m);

// Multiplicative order of an invertible matrix: smallest t >= 1 with m^t = I.
// Derived from the characteristic polynomial's factor structure, then
// minimised prime by prime, so no blind stepping is involved.
std::uint64_t matrix_order(const BitMatrix& m);

BitMatrix matrix_power(const BitMatrix& m, std::uint64_t e);

// Smallest t >= 0 with a^t = b, searching t below order(a); nullopt if b is
// not a power of a.
std::optional<std::uint64_t> matrix_discrete_log(const BitMatrix& a, const BitMatrix& b);

}  // namespace tilekit
