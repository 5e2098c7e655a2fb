// Fault-free sliding protocol on a signed CSS stabilizer tableau.  A logical
// Z-eigenstate is tracked as two sign-carrying GF(2) generator blocks; the
// slide extends the lattice by one column on the leading side with ancillas
// in |0>, measures every X check of the extended code, reads out the
// trailing column in the Z basis, and applies the frame correction
// determined by the -1 outcomes that overlap each logical Z operator.  In
// relative coordinates of the slid window the state ends up as the x-shift
// automorphism (or its inverse) applied to the input logical state, up to a
// Pauli frame fixed by the recorded outcomes; the frame-fix oracle finds
// that Pauli explicitly and certifies the signed stabilizer group.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tilekit/autos.hpp"
#include "tilekit/code.hpp"
#include "tilekit/gf2.hpp"
#include "tilekit/logicals.hpp"

namespace tilekit {

// One stabilizer generator: a support row over the current qubit set plus a
// sign bit (set = the generator carries -1).
struct SignedRow {
    BitVec bits;
    bool neg = false;
};

// Pure CSS stabilizer state: X-type and Z-type generator blocks over `width`
// qubits.  Invariants: every X row has even overlap with every Z row, rows
// are independent within each block, and the block ranks sum to `width`.
struct StabilizerState {
    std::size_t width = 0;
    std::vector<SignedRow> gx, gz;
    std::mt19937_64 rng;
};

// Record of one slide: per-check and per-qubit outcomes (+1/-1), the
// measured qubits with outcome -1 (ids on the pre-slide lattice), and the
// applied frame exponents j_i.
struct ProtocolTrace {
    std::uint64_t seed = 0;
    int epsilon = 1;
    std::vector<int> check_outcomes;
    std::vector<int> qubit_outcomes;
    std::vector<std::size_t> measured;
    std::vector<int> frame;
};

struct SlideResult {
    CssCode code;
    StabilizerState state;
    ProtocolTrace trace;
};

// Eigenstate of every code stabilizer and of sigma_i Z_i for the given sign
// vector (entries +1/-1, one per logical pair).
StabilizerState prepare_logical_state(const CssCode& code, const SymplecticBasis& basis,
                                      const std::vector<int>& z_signs);

// Measure one X-type operator (a check row) or one single-qubit Z.  The
// outcome is deterministic with the membership sign when the operator
// commutes with every generator, otherwise a fair coin from the state's
// generator; the tableau is updated in place.
int measure_x_check(StabilizerState& state, const BitVec& support);
int measure_z_qubit(StabilizerState& state, std::size_t q);

// Sign of a Pauli with the given support when the state is a definite
// eigenstate of it; nullopt when the outcome would be random.
std::optional<int> deterministic_sign(const StabilizerState& state, const BitVec& support,
                                      PauliKind kind);

// Conjugation by a Pauli: an X Pauli flips the sign of every Z generator it
// anticommutes with, and vice versa.
void apply_x_pauli(StabilizerState& state, const BitVec& bits);
void apply_z_pauli(StabilizerState& state, const BitVec& bits);

// Full invariant sweep: commutation, row independence, rank sum.
bool tableau_consistent(const StabilizerState& state);

// One slide along x.  epsilon = +1 grows the lattice on the left and reads
// out the rightmost column, epsilon = -1 mirrors; the returned state lives
// in relative coordinates of the slid window, whose code equals the input
// code, and the trace records every outcome.
SlideResult run_slide(const CssCode& code, const SymplecticBasis& basis,
                      const StabilizerState& state, int epsilon, std::uint64_t seed);

// Certify a slid state: the unsigned generator spans must match the code's
// check spans (with the logical rows adjoined on the Z side), and there must
// be a Pauli frame (f_z, f_x) that clears every check sign and leaves the
// logical Z signs predicted by the applied automorphism from the input
// signs.  Returns that frame, or nullopt when no such Pauli exists.
std::optional<std::pair<BitVec, BitVec>> frame_fix(const CssCode& code,
                                                   const SymplecticBasis& basis,
                                                   const LogicalAuto& applied,
                                                   const std::vector<int>& z_signs_before,
                                                   const StabilizerState& state);

// JSON object {seed, epsilon, check_outcomes, qubit_outcomes, measured,
// frame}.
std::string export_trace_json(const ProtocolTrace& trace);

}  // namespace tilekit
