#pragma once

// Canonical logical operators of a planar tile code.
//
// Every logical class of a tile code has exactly one representative living in
// a narrow boundary strip: X operators in the width-D strip along the left
// edge, Z operators in the height-D strip along the bottom edge.  Each such
// representative is pinned by its restriction to the D x D corner box, which
// gives a symplectic basis indexed by the 2D^2 box qubits.  Construction is a
// march across the lattice: with the operator fixed up to some line, the 2D
// checks on the lowest unresolved check line see exactly the 2D cells of the
// next lattice line through an invertible window of the tiles, so each line
// extension is forced.  The same window solves, read per seed cell, form a
// cellular automaton whose rules grow any of the basis operators.
//
// Two further maps tie the basis to the tile algebra: the bottom boundary map
// sends an X operator to the part of its infinite-plane syndrome that falls
// below the lattice, read as an element of the quotient ring of the tiles;
// and every Z logical is exhibited as a product of the boundary Z checks that
// the open boundary omits, restricted to the lattice.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tilekit/code.hpp"
#include "tilekit/gf2.hpp"
#include "tilekit/poly.hpp"
#include "tilekit/quotient.hpp"

namespace tilekit {

enum class PauliKind { x, z };

// A pure-kind Pauli operator over the qubits of one code, as a support vector.
struct PauliVec {
    PauliKind kind = PauliKind::x;
    BitVec bits;  // length n, indexed like the code's qubits
};

// The canonical basis: one X/Z pair per corner-box qubit.  labels fixes the
// pair order (horizontal copy before vertical, then row, then column); xs[i]
// and zs[i] are the unique strip representatives whose corner-box restriction
// is exactly the single qubit labels[i].
struct SymplecticBasis {
    std::vector<Label> labels;
    std::vector<PauliVec> xs;
    std::vector<PauliVec> zs;
};

// One growth rule of the X-side automaton: a seed cell of the D x D box, and
// the support in the box shifted one tile width upward that excites the same
// syndrome on the 2D^2 check nodes above the seed box (infinite plane, no
// boundary).  Replacement cells have columns in [0, D) and rows in [D, 2D).
struct CaRule {
    Label seed;
    std::vector<Label> replacement;
};

struct CaRuleSet {
    int D = 0;
    std::vector<CaRule> rules;  // 2D^2 rules, ordered like SymplecticBasis labels
};

// Unique strip extension of a nonzero Pauli pattern on the corner box.  box
// bits are indexed like SymplecticBasis labels.  Throws std::invalid_argument
// on an empty pattern and std::runtime_error when a line-extension system is
// singular (the tiles then lack topological order) or a residual syndrome
// survives to the far boundary.
PauliVec extend_box_pauli(const CssCode& code, PauliKind kind, const BitVec& box);

// The full canonical basis of a tile code; asserts the symplectic pairing.
SymplecticBasis build_basis(const CssCode& code);

// The 2D^2 X-side automaton rules for a tile pair.  Throws std::runtime_error
// when the syndrome-matching system is singular.
CaRuleSet extract_rules(const TilePair& tiles);

// Grow the X logical of one seed cell by repeated rule application on an
// L x M lattice.  The replay steps in strides of D rows, so M must be a
// multiple of D (std::invalid_argument otherwise).  Agrees bit-for-bit with
// extend_box_pauli on the same seed.
PauliVec replay_rules(const CaRuleSet& rules, const CssCode& code, const Label& seed);

// Quotient-ring coordinates of the below-lattice part of an X operator's
// infinite-plane syndrome.  q must be the quotient ring of the code's tiles.
// Throws std::invalid_argument when p violates an in-code Z check.
BitVec bottom_boundary_class(const CssCode& code, const QuotientRing& q, const PauliVec& p);

// Certificate that a Z operator is a product of omitted boundary Z checks
// restricted to the lattice: coefficients over the omitted anchors (rows
// [-D,-1] then [M-D,M-1], columns [-D,L) inner), or nullopt when no
// combination reproduces it.  Throws std::invalid_argument when z violates an
// in-code X check.
std::optional<BitVec> verify_omitted_product(const CssCode& code, const PauliVec& z);

// JSON exports: the basis as qubit-index arrays per operator, the rule set as
// (seed, replacement cells) records.
std::string export_basis_json(const CssCode& code, const SymplecticBasis& basis);
std::string export_rules_json(const CaRuleSet& ruleset);

}  // namespace tilekit
