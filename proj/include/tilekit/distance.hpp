// Minimum-distance machinery.  Tiny codes get the exact distance by
// weight-ordered enumeration over both Pauli kinds; anything larger gets a
// stochastic upper bound from an information-set search: permute the columns,
// reduce the stacked matrix of stabilizer and logical rows in permuted pivot
// order, and harvest any short row that is logical (it jumps the rank of the
// stabilizer rowspace).  Both searches certify their answer with an explicit
// witness operator.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "tilekit/code.hpp"
#include "tilekit/gf2.hpp"
#include "tilekit/logicals.hpp"

namespace tilekit {

// Reported distance of a code with no logical qubits.
inline constexpr std::size_t infinite_distance = std::numeric_limits<std::size_t>::max();

// Outcome of a distance search.  `d_exact` is present only when enumeration
// completed, so a report never claims exactness for a sampled bound.  The
// witness is a logical operator of the stated kind whose weight equals
// `d_upper`: it commutes with the opposite checks and lies outside the
// stabilizer rowspace of its own kind.  It is empty exactly when the bound
// is infinite.
struct DistanceReport {
    std::optional<std::size_t> d_exact;
    std::size_t d_upper = infinite_distance;
    BitVec witness;
    PauliKind witness_kind = PauliKind::x;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

// Exact minimum distance over both kinds by enumerating supports in weight
// order; the witness is the lexicographically first minimal support (the X
// kind wins ties).  A code with no logical qubits reports infinity.  Refuses
// codes with n > 28 -- the enumeration budget.
DistanceReport exact_distance(const CssCode& code);

// Information-set upper bound: `trials` independent column permutations, each
// reduced and harvested, alternating the searched kind per trial.  The result
// is bit-exact for fixed (trials, seed) regardless of worker count (capped by
// the TILEKIT_THREADS environment variable) and never increases as `trials`
// grows.  Requires at least one logical qubit.
DistanceReport stochastic_upper(const CssCode& code, std::size_t trials, std::uint64_t seed);

// JSON object {d_exact?, d_upper, witness, witness_kind, trials, seed} with
// the witness as its support index list and infinite bounds as the string
// "infinite".
std::string export_distance_json(const DistanceReport& report);

}  // namespace tilekit
