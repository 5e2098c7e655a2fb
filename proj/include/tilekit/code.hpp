#pragma once

// CSS code containers and the planar tile-code builder.
//
// A tile code lives on an L x M patch of the square lattice with two qubits
// per site: a "horizontal" copy and a "vertical" copy.  An X check anchored at
// node (a, b) acts on vertical qubits through the tile polynomial f and on
// horizontal qubits through g, both translated by (a, b); a Z check uses the
// box-reversed polynomials with the roles swapped.  Qubits outside the patch
// are simply dropped (open boundaries), and check anchors run over boundary
// layers so that every qubit stays covered:
//
//   X-check anchors: a in [0, L-D),  b in [-D, M)   -> (L-D)(M+D) checks
//   Z-check anchors: a in [-D, L),   b in [0, M-D)  -> (L+D)(M-D) checks
//
// The count identities, the commutation hx * hz^T = 0 and full qubit coverage
// are asserted on every full build.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tilekit/gf2.hpp"
#include "tilekit/poly.hpp"

namespace tilekit {

inline constexpr int kHorizontal = 0;
inline constexpr int kVertical = 1;

enum class CodeKind { tile_lattice, box };

// Identity of a qubit or check: a copy index plus a lattice/monomial position.
// For lattice codes the position is the (column, row) pair; checks use copy 0.
struct Label {
    int copy = 0;
    Mono pos;
    friend bool operator==(const Label&, const Label&) = default;
};

struct CssCode {
    std::size_t n = 0;
    BitMatrix hx;  // one row per X check
    BitMatrix hz;  // one row per Z check

    CodeKind kind = CodeKind::tile_lattice;
    std::vector<Label> qubit_labels;
    std::vector<Label> x_labels;
    std::vector<Label> z_labels;

    // Lattice metadata (tile codes only).
    int L = 0, M = 0, D = 0;
    TilePair tiles;

    // Box metadata (box codes only).
    std::vector<int> shape;
    std::vector<std::string> poly_strings;  // canonical tile strings, f then g [...]
};

// Fixed qubit numbering of an L x M patch: the horizontal copy first, row by
// row (index b*L + a), then the vertical copy at offset L*M.
struct LatticeIndex {
    int L = 0, M = 0;
    std::size_t operator()(int copy, int a, int b) const {
        return std::size_t(copy) * std::size_t(L) * std::size_t(M) +
               std::size_t(b) * std::size_t(L) + std::size_t(a);
    }
    bool contains(int a, int b) const { return a >= 0 && a < L && b >= 0 && b < M; }
};

// Which boundary layers of checks to include.  The full code keeps all four;
// the quadrant windows used by the local-indistinguishability probe drop the
// layers on their open sides.
struct BoundaryMask {
    bool south_x = true;  // X anchors with b < 0
    bool north_x = true;  // X anchors with b >= M - D
    bool west_z = true;   // Z anchors with a < 0
    bool east_z = true;   // Z anchors with a >= L - D
};

// Build the full open-boundary tile code.  Throws when L or M is not larger
// than the tile width, when the count identities fail, when some check comes
// out empty or some qubit uncovered, or when hx and hz fail to commute.
CssCode build_tile_code(const TilePair& tiles, int L, int M);

// Partial variant used for windowed probes: boundary layers can be switched
// off and the coverage/count assertions are skipped (commutation still holds
// and is still checked).
CssCode build_tile_window(const TilePair& tiles, int L, int M, const BoundaryMask& mask);

struct CodeParams {
    std::size_t n = 0;
    std::size_t x_checks = 0, z_checks = 0;
    std::size_t rank_hx = 0, rank_hz = 0;
    std::size_t k = 0;  // n - rank_hx - rank_hz
};

CodeParams code_params(const CssCode& code);

// --- Interchange formats ---------------------------------------------------

// MacKay alist serialisation of one parity-check matrix (columns = qubits).
std::string export_alist(const BitMatrix& m);
BitMatrix import_alist(const std::string& text);

// Coordinate triplet form: header "rows cols nnz", then one "r c" pair per
// nonzero, 0-based, sorted row-major.
std::string export_triplets(const BitMatrix& m);
BitMatrix import_triplets(const std::string& text);

// JSON summary of a code: sizes, check counts, tile strings, optional upper
// distance bound.
std::string export_json(const CssCode& code, std::optional<std::size_t> d_upper);

}  // namespace tilekit
