#pragma once

// The ring F2[x,y]/(f,g) computed through a finite monomial window, plus the
// two topological-order oracles built on it.
//
// The quotient is computed in the polynomial ring: all shifts of f and g that
// fit inside the square window [0,N)^2 are row-reduced with columns ordered by
// descending graded-lex, so pivot columns are exactly the leading monomials
// the window can certify and the non-pivot columns are the standard monomials.
// The window starts at side 4(D+1) and doubles until the standard set repeats.
// Multiplication by x or y is then a dim x dim matrix over the standard basis,
// and the Laurent quotient agrees with the polynomial one exactly when both
// operators are invertible -- which is one of the algebraic order conditions,
// so the toolkit never needs Laurent-ring elimination.

#include <array>
#include <cstddef>
#include <unordered_map>
#include <vector>

#include "tilekit/code.hpp"
#include "tilekit/gf2.hpp"
#include "tilekit/poly.hpp"

namespace tilekit {

struct QuotientRing {
    int D = 0;
    LaurentPoly f{2}, g{2};

    std::vector<Mono> basis;  // standard monomials, graded-lex ascending
    std::size_t dim = 0;
    // Column c holds the coordinates of x*basis[c] (resp. y*basis[c]).
    BitMatrix mx, my;
    BitVec one;  // coordinates of the class of 1

    // Window internals, kept so classes of in-window polynomials can be read
    // off directly.
    int window = 0;                            // side N of the monomial window
    std::vector<Mono> window_monos;            // column order, graded-lex descending
    std::unordered_map<long long, std::size_t> window_col;
    RrefResult reducer;                        // rref of the in-window ideal shifts
    std::vector<std::size_t> basis_cols;       // window column of each basis monomial

    // Class of p in basis coordinates; p must have support inside [0,N)^2.
    BitVec reduce_in_window(const LaurentPoly& p) const;
};

// Build the quotient ring.  Throws std::invalid_argument for malformed tiles
// (zero, wrong variable count, support outside [0,D]^2) and std::domain_error
// when the quotient is infinite-dimensional, i.e. the tiles share a factor.
QuotientRing quotient_ring(const LaurentPoly& f, const LaurentPoly& g, int D);

// Class of an arbitrary Laurent polynomial: each term x^a y^b contributes
// mx^a my^b applied to the class of 1.  Negative exponents go through the
// inverse operators; throws std::domain_error if the needed one is singular.
BitVec reduce(const QuotientRing& q, const LaurentPoly& p);

// Decide gcd(a, b) = 1 in the polynomial ring F2[x,y] (no negative exponents
// allowed).  Gauss's lemma: compare y-contents with a univariate gcd, then run
// a fraction-free pseudo-remainder sequence in y over F2[x] on the primitive
// parts.
bool bivariate_coprime(const LaurentPoly& a, const LaurentPoly& b);

// The four box orientations a quadrant can show: exponents reversed
// (e -> D - e) on no axis, on x, on y, or on both.
enum class Orientation { identity = 0, x_reversal = 1, y_reversal = 2, xy_reversal = 3 };

struct ToReport {
    // Per Orientation: the reversed pair generates a codimension-2 ideal,
    // i.e. its polynomial-ring gcd is 1.
    std::array<bool, 4> coprime{false, false, false, false};
    bool finite = false;  // quotient dimension stabilised
    std::size_t dim = 0;
    bool mx_invertible = false;
    bool my_invertible = false;
    bool dim_matches = false;  // dim == 2 D^2
    bool pass = false;
};

// Algebraic topological order: all four orientations coprime, multiplication
// by x and y invertible on the quotient, and dim = 2D^2.  Never throws for
// in-box nonzero tiles; failures are carried in the report.
ToReport check_algebraic_to(const LaurentPoly& f, const LaurentPoly& g, int D);

struct QuadrantVerdict {
    BoundaryMask mask;    // which boundary layers the window shows
    bool x_side = false;  // inner X-type kernel vectors all lie in rowspace(hx)
    bool z_side = false;
    bool pass() const { return x_side && z_side; }
};

struct WindowToReport {
    std::array<QuadrantVerdict, 4> quadrants;  // SW, SE, NW, NE corner windows
    bool pass = false;
};

// Combinatorial topological order probe: build one W x W window per visible
// corner and require every undetectable operator supported on the inner
// (W - 2(D+1))-square to be a product of the window's own stabilizers, on
// both sides.  Throws std::invalid_argument when W < 4(D+1).
WindowToReport check_combinatorial_to(const LaurentPoly& f, const LaurentPoly& g, int D,
                                      int W);

}  // namespace tilekit
