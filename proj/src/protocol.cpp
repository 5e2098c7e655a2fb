#include "tilekit/protocol.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <utility>

namespace tilekit {

namespace {

// Membership sign of `support` in the span of `rows`: the combination is
// found with the generic solver over the transposed system, and its sign is
// the parity of the chosen rows' signs.  nullopt when the support is not in
// the span.
std::optional<bool> span_sign(const std::vector<SignedRow>& rows, const BitVec& support) {
    if (rows.empty()) return support.any() ? std::optional<bool>() : std::optional<bool>(false);
    BitMatrix cols(support.size(), rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t i : rows[r].bits.ones()) cols.set(i, r, true);
    auto combo = solve(cols, support);
    if (!combo) return std::nullopt;
    bool neg = false;
    for (std::size_t r : combo->ones()) neg ^= rows[r].neg;
    return neg;
}

// Measure a Pauli with the given support; `same` is the generator block of
// the measured type, `other` the block that can anticommute with it.
int measure_pauli(StabilizerState& state, const BitVec& support, std::vector<SignedRow>& same,
                  std::vector<SignedRow>& other) {
    if (support.size() != state.width)
        throw std::invalid_argument("measurement: support does not fit the state");
    std::vector<std::size_t> anti;
    for (std::size_t r = 0; r < other.size(); ++r)
        if (other[r].bits.dot(support)) anti.push_back(r);

    if (anti.empty()) {
        // Deterministic: the operator is a member of the group up to sign.
        for (const SignedRow& row : same)
            if (row.bits == support) return row.neg ? -1 : 1;
        auto neg = span_sign(same, support);
        if (!neg)
            throw std::logic_error(
                "measurement: operator commutes with the group but is not a member");
        return *neg ? -1 : 1;
    }

    // Random: collapse onto the measured operator, folding the pivot into
    // the other anticommuting generators.
    std::size_t pivot = anti.front();
    for (std::size_t t = 1; t < anti.size(); ++t) {
        other[anti[t]].bits ^= other[pivot].bits;
        other[anti[t]].neg = other[anti[t]].neg != other[pivot].neg;
    }
    other.erase(other.begin() + long(pivot));
    bool neg = (state.rng() & 1) != 0;
    same.push_back(SignedRow{support, neg});
    return neg ? -1 : 1;
}

// Reduce a generator list to an independent subset.  A dependent row's sign
// is already implied by the rows that span it -- a mismatch would put minus
// identity into the group -- so dropping the row loses nothing, and the
// mismatch is worth a loud failure.
void prune_dependent(std::vector<SignedRow>& rows) {
    struct Elim {
        std::size_t pivot;
        BitVec bits;
        bool neg;
    };
    std::vector<Elim> elim;
    std::vector<SignedRow> kept;
    for (SignedRow& row : rows) {
        BitVec v = row.bits;
        bool neg = row.neg;
        for (const Elim& e : elim)
            if (v.get(e.pivot)) {
                v ^= e.bits;
                neg = neg != e.neg;
            }
        if (!v.any()) {
            if (neg) throw std::logic_error("tableau: minus identity in the generator list");
            continue;
        }
        std::size_t pivot = *v.ones().begin();
        for (Elim& e : elim)
            if (e.bits.get(pivot)) {
                e.bits ^= v;
                e.neg = e.neg != neg;
            }
        elim.push_back(Elim{pivot, std::move(v), neg});
        kept.push_back(std::move(row));
    }
    rows = std::move(kept);
}

}  // namespace

StabilizerState prepare_logical_state(const CssCode& code, const SymplecticBasis& basis,
                                      const std::vector<int>& z_signs) {
    std::size_t k = basis.zs.size();
    if (z_signs.size() != k)
        throw std::invalid_argument("state preparation: one sign per logical pair required");
    StabilizerState state;
    state.width = code.n;
    for (std::size_t r = 0; r < code.hx.rows(); ++r)
        state.gx.push_back(SignedRow{code.hx.row(r), false});
    for (std::size_t r = 0; r < code.hz.rows(); ++r)
        state.gz.push_back(SignedRow{code.hz.row(r), false});
    for (std::size_t i = 0; i < k; ++i)
        state.gz.push_back(SignedRow{basis.zs[i].bits, z_signs[i] < 0});
    return state;
}

int measure_x_check(StabilizerState& state, const BitVec& support) {
    return measure_pauli(state, support, state.gx, state.gz);
}

int measure_z_qubit(StabilizerState& state, std::size_t q) {
    if (q >= state.width) throw std::invalid_argument("measurement: qubit out of range");
    BitVec support(state.width);
    support.set(q, true);
    return measure_pauli(state, support, state.gz, state.gx);
}

std::optional<int> deterministic_sign(const StabilizerState& state, const BitVec& support,
                                      PauliKind kind) {
    const auto& same = kind == PauliKind::x ? state.gx : state.gz;
    const auto& other = kind == PauliKind::x ? state.gz : state.gx;
    for (const SignedRow& row : other)
        if (row.bits.dot(support)) return std::nullopt;
    auto neg = span_sign(same, support);
    if (!neg) return std::nullopt;
    return *neg ? -1 : 1;
}

void apply_x_pauli(StabilizerState& state, const BitVec& bits) {
    for (SignedRow& row : state.gz)
        if (row.bits.dot(bits)) row.neg = !row.neg;
}

void apply_z_pauli(StabilizerState& state, const BitVec& bits) {
    for (SignedRow& row : state.gx)
        if (row.bits.dot(bits)) row.neg = !row.neg;
}

bool tableau_consistent(const StabilizerState& state) {
    for (const SignedRow& x : state.gx)
        for (const SignedRow& z : state.gz)
            if (x.bits.dot(z.bits)) return false;
    BitMatrix mx(0, state.width), mz(0, state.width);
    for (const SignedRow& x : state.gx) mx.append_row(x.bits);
    for (const SignedRow& z : state.gz) mz.append_row(z.bits);
    return rank(mx) == state.gx.size() && rank(mz) == state.gz.size() &&
           state.gx.size() + state.gz.size() == state.width;
}

SlideResult run_slide(const CssCode& code, const SymplecticBasis& basis,
                      const StabilizerState& state, int epsilon, std::uint64_t seed) {
    if (code.kind != CodeKind::tile_lattice)
        throw std::invalid_argument("slide: expected a lattice tile code");
    if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("slide: epsilon must be +-1");
    if (state.width != code.n) throw std::invalid_argument("slide: state does not fit the code");

    int L = code.L, M = code.M;
    LatticeIndex idx{L, M};
    LatticeIndex pad{L + 1, M};
    // The lattice grows by one column on the leading side; in padded
    // coordinates the old window sits at columns [s0, L + s0).
    int s0 = epsilon == 1 ? 1 : 0;
    int ancilla_col = epsilon == 1 ? 0 : L;
    int readout_col = epsilon == 1 ? L : 0;

    StabilizerState work;
    work.width = 2 * std::size_t(L + 1) * std::size_t(M);
    work.rng.seed(seed);
    auto widen = [&](const BitVec& v) {
        BitVec out(work.width);
        for (int copy = 0; copy < 2; ++copy)
            for (int b = 0; b < M; ++b)
                for (int a = 0; a < L; ++a)
                    if (v.get(idx(copy, a, b))) out.set(pad(copy, a + s0, b), true);
        return out;
    };
    for (const SignedRow& row : state.gx) work.gx.push_back(SignedRow{widen(row.bits), row.neg});
    for (const SignedRow& row : state.gz) work.gz.push_back(SignedRow{widen(row.bits), row.neg});

    // P1: ancilla column in |0>.
    for (int copy = 0; copy < 2; ++copy)
        for (int b = 0; b < M; ++b) {
            BitVec z(work.width);
            z.set(pad(copy, ancilla_col, b), true);
            work.gz.push_back(SignedRow{std::move(z), false});
        }

    ProtocolTrace trace;
    trace.seed = seed;
    trace.epsilon = epsilon;

    // P2: measure every X check of the extended code.
    CssCode extended = build_tile_code(code.tiles, L + 1, M);
    for (std::size_t r = 0; r < extended.hx.rows(); ++r)
        trace.check_outcomes.push_back(measure_x_check(work, extended.hx.row(r)));

    // P3: read out the trailing column in the Z basis; M collects the -1
    // outcomes, identified by their pre-slide qubit ids.
    std::vector<int> outcome_at(2 * std::size_t(M));
    for (int copy = 0; copy < 2; ++copy)
        for (int b = 0; b < M; ++b) {
            int out = measure_z_qubit(work, pad(copy, readout_col, b));
            outcome_at[std::size_t(copy) * M + b] = out;
            trace.qubit_outcomes.push_back(out);
            if (out < 0)
                trace.measured.push_back(idx(copy, epsilon == 1 ? L - 1 : 0, b));
        }

    // Strip the measured column: every generator is cleared of it by
    // multiplying with the single-qubit Z stabilizers just created, and the
    // remaining window is relabeled to standard coordinates.  Clearing the
    // column drops one dimension per readout qubit, but only the qubits
    // measured randomly left an explicit single-qubit row behind; the rows
    // made redundant by the already-determined ones are pruned here.
    for (int copy = 0; copy < 2; ++copy)
        for (int b = 0; b < M; ++b) {
            std::size_t q = pad(copy, readout_col, b);
            bool neg = outcome_at[std::size_t(copy) * M + b] < 0;
            for (SignedRow& row : work.gz)
                if (row.bits.get(q)) {
                    row.bits.flip(q);
                    row.neg = row.neg != neg;
                }
        }
    prune_dependent(work.gz);
    for (const SignedRow& row : work.gx)
        for (int copy = 0; copy < 2; ++copy)
            for (int b = 0; b < M; ++b)
                if (row.bits.get(pad(copy, readout_col, b)))
                    throw std::logic_error("slide: X generator survived the readout column");

    StabilizerState next;
    next.width = code.n;
    next.rng = work.rng;
    int s1 = epsilon == 1 ? 0 : 1;
    auto narrow = [&](const BitVec& v) {
        BitVec out(code.n);
        for (int copy = 0; copy < 2; ++copy)
            for (int b = 0; b < M; ++b)
                for (int a = 0; a < L; ++a)
                    if (v.get(pad(copy, a + s1, b))) out.set(idx(copy, a, b), true);
        return out;
    };
    for (const SignedRow& row : work.gx) next.gx.push_back(SignedRow{narrow(row.bits), row.neg});
    for (const SignedRow& row : work.gz) next.gz.push_back(SignedRow{narrow(row.bits), row.neg});

    // P4: frame correction from the -1 readouts overlapping each logical Z.
    // The correction operators are the slid code's X logicals, i.e. the image
    // operators of the column shift: they pair one-to-one with the image Z
    // operators whose signs the slide pins, so each flip lands on exactly one
    // of them.
    LogicalAuto shift = derived_auto(code, basis, AutoAxis::x, epsilon);
    for (std::size_t i = 0; i < basis.zs.size(); ++i) {
        int j = 0;
        for (std::size_t q : trace.measured) j ^= basis.zs[i].bits.get(q) ? 1 : 0;
        trace.frame.push_back(j);
        if (j) apply_x_pauli(next, shift.x_images[i]);
    }

    return SlideResult{build_tile_code(code.tiles, L, M), std::move(next), std::move(trace)};
}

std::optional<std::pair<BitVec, BitVec>> frame_fix(const CssCode& code,
                                                   const SymplecticBasis& basis,
                                                   const LogicalAuto& applied,
                                                   const std::vector<int>& z_signs_before,
                                                   const StabilizerState& state) {
    std::size_t k = basis.zs.size();
    if (z_signs_before.size() != k || applied.z_action.rows() != k)
        throw std::invalid_argument("frame fix: mismatched logical dimensions");
    if (applied.z_images.size() != k)
        throw std::invalid_argument(
            "frame fix: the applied automorphism must carry image operators");
    if (state.width != code.n) return std::nullopt;

    // Unsigned spans must be the shifted code's: checks on the X side,
    // checks plus logical rows on the Z side.
    BitMatrix gx(0, code.n), gz(0, code.n);
    BitVec negx(state.gx.size());
    for (std::size_t r = 0; r < state.gx.size(); ++r) {
        gx.append_row(state.gx[r].bits);
        negx.set(r, state.gx[r].neg);
    }
    for (const SignedRow& row : state.gz) gz.append_row(row.bits);
    BitMatrix want_z = code.hz;
    for (std::size_t i = 0; i < k; ++i) want_z.append_row(basis.zs[i].bits);
    if (!(rref(gx).mat == rref(code.hx).mat)) return std::nullopt;
    if (!(rref(gz).mat == rref(want_z).mat)) return std::nullopt;

    // The slide pins the sign of each image operator: T(Z_i) must sit in the
    // state with exactly the sign Z_i carried going in.  This is the part a
    // wrong-direction or tampered run cannot fake, so check it before any
    // frame is even considered.
    for (std::size_t i = 0; i < k; ++i) {
        auto pinned = deterministic_sign(state, applied.z_images[i], PauliKind::z);
        if (!pinned || *pinned != z_signs_before[i]) return std::nullopt;
    }

    // A Z-type frame clearing every X-check sign.
    auto f_z = solve(gx, negx);
    if (!f_z) return std::nullopt;

    // Predicted logical sign exponents: the applied automorphism stabilizes
    // sigma_i T(Z_i), so the exponents r of the basis Z operators satisfy
    // (z_action)^T r = s.
    BitVec s(k);
    for (std::size_t i = 0; i < k; ++i) s.set(i, z_signs_before[i] < 0);
    auto zt_inv = inverse(applied.z_action.transposed());
    if (!zt_inv) return std::nullopt;
    BitVec target = zt_inv->mul(s);

    // An X-type frame clearing every Z-check sign and steering each logical
    // Z sign to its target.
    BitMatrix sys(0, code.n);
    BitVec rhs(code.hz.rows() + k);
    for (std::size_t r = 0; r < code.hz.rows(); ++r) {
        sys.append_row(code.hz.row(r));
        auto neg = span_sign(state.gz, code.hz.row(r));
        if (!neg) return std::nullopt;
        rhs.set(r, *neg);
    }
    for (std::size_t i = 0; i < k; ++i) {
        sys.append_row(basis.zs[i].bits);
        auto neg = span_sign(state.gz, basis.zs[i].bits);
        if (!neg) return std::nullopt;
        rhs.set(code.hz.rows() + i, *neg != target.get(i));
    }
    auto f_x = solve(sys, rhs);
    if (!f_x) return std::nullopt;
    return std::make_pair(*std::move(f_z), *std::move(f_x));
}

std::string export_trace_json(const ProtocolTrace& trace) {
    nlohmann::json j;
    j["seed"] = trace.seed;
    j["epsilon"] = trace.epsilon;
    j["check_outcomes"] = trace.check_outcomes;
    j["qubit_outcomes"] = trace.qubit_outcomes;
    j["measured"] = trace.measured;
    j["frame"] = trace.frame;
    return j.dump(2) + "\n";
}

}  // namespace tilekit
