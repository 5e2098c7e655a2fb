#pragma once

// Multivariate Laurent polynomials over GF(2), used as supports of translation-
// invariant objects on lattices: a polynomial is just a finite set of monomials
// (coefficients are 0/1), stored sorted for canonical printing and hashing.
// Up to four variables named x, y, z, w, with integer (possibly negative)
// exponents.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tilekit {

inline constexpr int kMaxVars = 4;
inline constexpr char kVarNames[kMaxVars] = {'x', 'y', 'z', 'w'};

// Exponent tuple; axes beyond the ambient variable count stay zero.
struct Mono {
    std::array<int, kMaxVars> e{0, 0, 0, 0};

    Mono() = default;
    Mono(int a, int b) : e{a, b, 0, 0} {}
    Mono(int a, int b, int c) : e{a, b, c, 0} {}
    Mono(int a, int b, int c, int d) : e{a, b, c, d} {}

    friend bool operator==(const Mono& l, const Mono& r) { return l.e == r.e; }
    friend bool operator!=(const Mono& l, const Mono& r) { return !(l == r); }
    // Lexicographic by exponent tuple; the canonical term order everywhere.
    friend bool operator<(const Mono& l, const Mono& r) { return l.e < r.e; }

    Mono operator+(const Mono& o) const {
        Mono m;
        for (int i = 0; i < kMaxVars; ++i) m.e[i] = e[i] + o.e[i];
        return m;
    }
    Mono operator-(const Mono& o) const {
        Mono m;
        for (int i = 0; i < kMaxVars; ++i) m.e[i] = e[i] - o.e[i];
        return m;
    }
};

// Inclusive exponent range per axis.
struct DegreeBox {
    std::array<int, kMaxVars> lo{0, 0, 0, 0};
    std::array<int, kMaxVars> hi{0, 0, 0, 0};
};

class LaurentPoly {
public:
    explicit LaurentPoly(int nvars = 2);
    static LaurentPoly zero(int nvars) { return LaurentPoly(nvars); }
    static LaurentPoly one(int nvars);
    static LaurentPoly monomial(const Mono& m, int nvars);
    static LaurentPoly from_terms(std::vector<Mono> terms, int nvars);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Mono>& terms() const { return terms_; }
    bool contains(const Mono& m) const;

    LaurentPoly operator+(const LaurentPoly& o) const;  // GF(2): symmetric difference
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly shifted(const Mono& by) const;

    // Reverse exponents e -> D - e on the selected axes (bit i of axes_mask
    // selects variable i); other axes unchanged.
    LaurentPoly reversed(int width, unsigned axes_mask) const;

    // Substitute each selected variable v -> v^{-1} (exponent negation).
    LaurentPoly inverted(unsigned axes_mask) const;

    // Smallest per-axis exponent ranges containing the support.
    // The zero polynomial has no degree box.
    DegreeBox degree_box() const;

    bool operator==(const LaurentPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void normalize();  // sort and drop duplicate pairs (GF(2) cancellation)
    int nvars_;
    std::vector<Mono> terms_;  // sorted ascending, no duplicates
};

// Parse a polynomial written as terms joined by '+', each term "1" or a '*'
// joined product of factors "v" / "v^k" (k a possibly negative integer).
// Variables allowed: the first nvars of x, y, z, w.  Whitespace is ignored.
// Throws std::invalid_argument with a character position on malformed input.
LaurentPoly parse_poly(const std::string& text, int nvars);

// A pair of tiles of width D: supports inside [0,D]^2, and the maximum
// x-degree and maximum y-degree over the two polynomials both equal D (each
// corner line of the box is touched).  This is what makes boundary layers of
// checks terminate cleanly at lattice corners.
struct TilePair {
    LaurentPoly f;  // vertical-qubit component of the X tile
    LaurentPoly g;  // horizontal-qubit component of the X tile
    int D = 0;
};

// Validate and build a TilePair; throws std::invalid_argument when a support
// leaves the box or a box edge is unreached.
TilePair make_tile_pair(const LaurentPoly& f, const LaurentPoly& g, int D);

// Smallest D whose box fits both supports, if the pair is valid for it.
int infer_tile_width(const LaurentPoly& f, const LaurentPoly& g);

}  // namespace tilekit
