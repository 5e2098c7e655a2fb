// Lattice-shift automorphisms of the logical space.  Shifting a code state
// one step along an axis is not a symmetry of the finite patch, but on the
// logical algebra it acts as a well-defined symplectic map: a strip-confined
// X operator shifted along x stays inside the lattice and its image
// coordinates can be read off with the dual basis, while a shifted Z
// operator loses its overhanging column and is repaired uniquely on the
// vacated boundary column so that every kept check is satisfied again.  The
// two actions assemble into a pair of k x k matrices that preserve the
// symplectic pairing.  Under the bottom boundary map the x-shift action is
// conjugate to multiplication by x in the quotient ring, which this module
// verifies directly, and the X action can be unrolled into a CNOT/SWAP
// circuit on the logical wires by Gaussian elimination.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tilekit/code.hpp"
#include "tilekit/gf2.hpp"
#include "tilekit/logicals.hpp"
#include "tilekit/quotient.hpp"

namespace tilekit {

enum class AutoAxis { x, y };

// Action of one lattice shift on the canonical logical basis.  Column j of
// x_action holds the coordinates of the image of the j-th X operator over
// the X basis; z_action does the same for the Z side.  The two blocks
// satisfy x_actionᵀ · z_action = I, so the pairing of the canonical basis is
// preserved and both blocks are invertible.  When the automorphism comes
// straight from derived_auto, x_images/z_images hold one concrete operator
// vector per basis element: on the side that spans the shift direction this
// is the shift-restrict-repair representative (the operator whose sign the
// sliding protocol pins), on the strip side the plainly shifted operator
// when the shift stays inside the lattice and the canonical basis
// combination otherwise.  Powers and products leave the image lists empty.
struct LogicalAuto {
    AutoAxis axis = AutoAxis::x;
    BitMatrix x_action;
    BitMatrix z_action;
    std::vector<BitVec> x_images, z_images;
};

// Compute the shift automorphism along the given axis; step selects the
// shift direction (+1 or -1).  Throws std::invalid_argument when the basis
// does not fit the code or is not in canonical strip form, and
// std::runtime_error when the boundary repair of the restricted shift fails
// to exist or to be unique.
LogicalAuto derived_auto(const CssCode& code, const SymplecticBasis& basis, AutoAxis axis,
                         int step = 1);

// Check that the bottom boundary map intertwines the automorphism with
// multiplication by the matching variable in the quotient ring: with P the
// matrix whose columns are the boundary classes of the X basis, verify
// P · x_action = M · P.
bool intertwiner_check(const CssCode& code, const SymplecticBasis& basis, const QuotientRing& q,
                       const LogicalAuto& a);

// Logical circuit gates over k wires, 0-based.  A CNOT propagates X from
// wire a (control) onto wire b (target); a SWAP exchanges two wires.
enum class GateKind { cnot, swap_wires };

struct Gate {
    GateKind kind = GateKind::cnot;
    int a = 0;
    int b = 0;

    friend bool operator==(const Gate&, const Gate&) = default;
};

// Unroll the X action into CNOT/SWAP gates by Gaussian elimination; at most
// k(k-1) CNOTs and k-1 SWAPs.  Applying the gates in order to the identity
// reproduces x_action exactly, and the induced Z action reproduces z_action.
// Throws std::invalid_argument when the X action is singular.
std::vector<Gate> synthesize_circuit(const LogicalAuto& a);

// Replay a gate list over the given number of wires; returns the X action
// and the induced Z action.
std::pair<BitMatrix, BitMatrix> apply_circuit(const std::vector<Gate>& gates, std::size_t wires);

// One line per gate: "CNOT c t" / "SWAP i j".
std::string circuit_to_text(const std::vector<Gate>& gates);

// Block-wise power; negative exponents go through the inverse.
LogicalAuto auto_power(const LogicalAuto& a, long long t);

// Least t >= 0 with a^t = b, or nullopt when b is not a power of a.
std::optional<std::uint64_t> discrete_log(const LogicalAuto& a, const LogicalAuto& b);

}  // namespace tilekit
