#pragma once

// Box-shaped CSS codes from Koszul-style differentials.
//
// Given 2, 3 or 4 polynomials confined to the box [0,D]^v, the chain terms are
// products of per-axis monomial ranges ("boxes") determined by a per-axis
// degree: a degree n >= 0 axis contributes exponents [0, n] (n+1 of them), a
// degree n <= -2 axis contributes [n+1, -1] (-n-1 of them), and n = -1 makes
// the term collapse (an error).  Differential entries act by "multiply by the
// polynomial, then drop anything that leaves the target box".  Positive axes
// never clip (their boxes widen by D per step, matching the polynomial
// support).  Negative axes clip in two ways: a monomial can cross exponent 0
// from below, or fall below the box bottom, which rises by D per step.  Both
// kinds stay clipped downstream -- an exponent >= 0 stays >= 0, and one at or
// below the bottom threshold stays at or below the next threshold -- so the
// squared differential still vanishes after clipping.
//
// The axis degree pattern: the first axes carry sign +, the last one (2D, 3D)
// or last two (4D) carry sign -.  With patch shape (s_1..s_v) and the qubit
// term at wedge degree q (1 for 2D/3D, 2 for 4D), the base degrees are
// s_i - 1 + qD on + axes and -s_i - 1 + qD on - axes, and a term at wedge
// degree m is shifted down by m*D on every axis.  X checks sit at wedge degree
// q+1, qubits at q, Z checks at q-1.

#include <vector>

#include "tilekit/code.hpp"
#include "tilekit/poly.hpp"

namespace tilekit {

struct KoszulSpec {
    int nvars = 2;
    int D = 1;
    std::vector<LaurentPoly> polys;  // f, g [, h [, i]]
    std::vector<int> shape;          // patch extent per axis, each > D
};

// Validate sizes, supports and shape; throws std::invalid_argument.
KoszulSpec make_koszul_spec(std::vector<LaurentPoly> polys, int D, std::vector<int> shape);

// Per-axis inclusive exponent range of one chain term.
struct TermBox {
    std::vector<int> lo, hi;
    std::size_t copies = 0;
    std::size_t monos_per_copy() const;
};

// The three terms used as checks and qubits: X, qubit, Z.
struct KoszulTerms {
    TermBox x, q, z;
    // Differential entry polynomials: dx[qubit_copy][x_copy], dz[z_copy][qubit_copy].
    std::vector<std::vector<LaurentPoly>> dx, dz;
};

KoszulTerms koszul_terms(const KoszulSpec& spec);

// Build the code: one X check per (copy, monomial) of the X term, etc.
// Throws if the symbolic composite dz*dx is nonzero or the built matrices
// fail to commute.
CssCode build_box_code(const KoszulSpec& spec);

}  // namespace tilekit
