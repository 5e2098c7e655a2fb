#include "tilekit/distance.hpp"

#include <atomic>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace tilekit {

namespace {

// SplitMix64 output function; stirs a seed/index pair into an engine seed so
// every chunk of trials owns an unrelated stream.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Incremental GF(2) row registry for independence tests while assembling the
// search stack.  Registered rows carry no pivot bit of an earlier row, so a
// single forward sweep fully reduces a query.
struct RowRegistry {
    struct Entry {
        std::size_t pivot;
        BitVec bits;
    };
    std::vector<Entry> entries;

    BitVec residue(BitVec v) const {
        for (const Entry& e : entries)
            if (v.get(e.pivot)) v ^= e.bits;
        return v;
    }
    void add(BitVec v) {
        std::size_t pivot = *v.ones().begin();
        entries.push_back(Entry{pivot, std::move(v)});
    }
};

// One side of the search: everything fixed across trials for one witness
// kind.  `base` holds the stacked rows -- the nonzero rows of the reduced
// same-kind check matrix, then one kernel row of the opposite matrix per
// logical qubit -- as raw words, `row_words` per row.
struct SideSearch {
    PauliKind kind = PauliKind::x;
    std::size_t n = 0;
    std::size_t rows = 0;
    std::size_t row_words = 0;
    std::vector<std::uint64_t> base;
    RrefResult stab;
};

SideSearch make_side(const CssCode& code, PauliKind kind) {
    const BitMatrix& own = kind == PauliKind::x ? code.hx : code.hz;
    const BitMatrix& opposite = kind == PauliKind::x ? code.hz : code.hx;

    SideSearch side;
    side.kind = kind;
    side.n = code.n;
    side.row_words = (code.n + 63) / 64;
    side.stab = rref(own);

    std::vector<BitVec> stacked;
    RowRegistry seen;
    for (std::size_t r = 0; r < side.stab.mat.rows(); ++r) {
        BitVec row = side.stab.mat.row(r);
        if (!row.any()) continue;
        seen.add(row);
        stacked.push_back(std::move(row));
    }
    // Kernel rows of the opposite matrix span stabilizers and logicals
    // together; keep one representative per rank jump to finish the stack.
    BitMatrix ker = kernel(opposite);
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        BitVec reduced = seen.residue(ker.row(r));
        if (!reduced.any()) continue;
        seen.add(std::move(reduced));
        stacked.push_back(ker.row(r));
    }

    side.rows = stacked.size();
    side.base.assign(side.rows * side.row_words, 0);
    for (std::size_t r = 0; r < side.rows; ++r)
        for (std::size_t w = 0; w < side.row_words; ++w)
            side.base[r * side.row_words + w] = stacked[r].words()[w];
    return side;
}

// Best harvest so far.  The (weight, trial, row) triple orders candidates so
// a merge over workers lands on the same winner as a serial sweep.
struct Candidate {
    std::size_t weight = infinite_distance;
    std::size_t trial = 0;
    std::size_t row = 0;
    BitVec bits;
    PauliKind kind = PauliKind::x;

    bool beats(const Candidate& other) const {
        if (weight != other.weight) return weight < other.weight;
        if (trial != other.trial) return trial < other.trial;
        return row < other.row;
    }
};

// Per-thread reusable buffers for the trial kernel.
struct TrialScratch {
    std::vector<std::size_t> order;
    std::vector<std::uint32_t> rank_of;
    std::vector<std::uint64_t> data;
    std::vector<std::int32_t> pivot_row;
};

// One information-set trial: draw a column order, fully reduce the stack
// with pivots chosen by that order, and harvest any reduced row that is
// shorter than the best so far and jumps the stabilizer rank.  The matrix
// itself stays in standard coordinates -- the permutation only steers pivot
// choice -- so harvested rows need no unscrambling.
void run_trial(const SideSearch& side, std::mt19937_64& rng, TrialScratch& scratch,
               std::size_t trial, Candidate& best) {
    std::size_t n = side.n, words = side.row_words;
    scratch.order.resize(n);
    scratch.rank_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) scratch.order[i] = i;
    for (std::size_t i = n; i > 1; --i)
        std::swap(scratch.order[i - 1], scratch.order[rng() % i]);
    for (std::size_t i = 0; i < n; ++i) scratch.rank_of[scratch.order[i]] = std::uint32_t(i);

    scratch.data = side.base;
    scratch.pivot_row.assign(n, -1);
    std::uint64_t* data = scratch.data.data();

    for (std::size_t r = 0; r < side.rows; ++r) {
        std::uint64_t* row = data + r * words;
        // Clear every registered pivot bit.  Pivot rows hold no other pivot
        // column, so one sweep over a snapshot of each word suffices.
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                std::size_t c = w * 64 + std::size_t(__builtin_ctzll(bits));
                bits &= bits - 1;
                std::int32_t p = scratch.pivot_row[c];
                if (p >= 0 && (row[w] >> (c & 63) & 1)) {
                    const std::uint64_t* src = data + std::size_t(p) * words;
                    for (std::size_t t = 0; t < words; ++t) row[t] ^= src[t];
                }
            }
        }
        // The surviving bit of least permuted rank becomes the pivot.
        std::uint32_t best_rank = ~0u;
        std::size_t pivot = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                std::size_t c = w * 64 + std::size_t(__builtin_ctzll(bits));
                bits &= bits - 1;
                if (scratch.rank_of[c] < best_rank) {
                    best_rank = scratch.rank_of[c];
                    pivot = c;
                }
            }
        }
        if (best_rank == ~0u) continue;
        std::size_t wi = pivot >> 6;
        std::uint64_t mask = std::uint64_t(1) << (pivot & 63);
        for (std::size_t r2 = 0; r2 < r; ++r2)
            if (data[r2 * words + wi] & mask)
                for (std::size_t t = 0; t < words; ++t) data[r2 * words + t] ^= row[t];
        scratch.pivot_row[pivot] = std::int32_t(r);
    }

    for (std::size_t r = 0; r < side.rows; ++r) {
        std::size_t w = 0;
        for (std::size_t t = 0; t < words; ++t)
            w += std::size_t(__builtin_popcountll(data[r * words + t]));
        if (w >= best.weight) continue;
        BitVec v(n);
        for (std::size_t t = 0; t < words; ++t) v.words()[t] = data[r * words + t];
        if (in_rowspace(side.stab, v)) continue;
        best = Candidate{w, trial, r, std::move(v), side.kind};
    }
}

constexpr std::size_t chunk_size = 64;

// Trials [chunk*chunk_size, end) share one engine; consuming them in order
// keeps every prefix of the trial sequence identical across budgets.
void run_chunk(const SideSearch& sx, const SideSearch& sz, std::uint64_t seed, std::size_t chunk,
               std::size_t trials, TrialScratch& scratch, Candidate& best) {
    std::mt19937_64 rng(mix64(seed ^ mix64(chunk)));
    std::size_t begin = chunk * chunk_size;
    std::size_t end = std::min(trials, begin + chunk_size);
    for (std::size_t t = begin; t < end; ++t)
        run_trial(t % 2 == 0 ? sx : sz, rng, scratch, t, best);
}

std::size_t worker_cap() {
    std::size_t cap = std::thread::hardware_concurrency();
    if (cap == 0) cap = 1;
    if (const char* env = std::getenv("TILEKIT_THREADS")) {
        char* rest = nullptr;
        unsigned long v = std::strtoul(env, &rest, 10);
        if (rest && *rest == '\0' && v >= 1) cap = std::size_t(v);
    }
    return cap;
}

std::size_t logical_count(const CssCode& code) {
    return code.n - rank(code.hx) - rank(code.hz);
}

// Weight-ordered depth-first enumeration of one kind.  Supports are visited
// in ascending lexicographic order of their index tuples, so the first hit
// at the first populated weight is the canonical minimal witness.  `limit`
// caps the searched weight (exclusive of nothing: limit itself is tried).
struct Enumerator {
    std::size_t n = 0;
    std::vector<BitVec> syndrome_cols;
    const RrefResult* stab = nullptr;

    Enumerator(const CssCode& code, PauliKind kind, const RrefResult& own) {
        n = code.n;
        const BitMatrix& opposite = kind == PauliKind::x ? code.hz : code.hx;
        syndrome_cols.assign(n, BitVec(opposite.rows()));
        for (std::size_t r = 0; r < opposite.rows(); ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (opposite.get(r, c)) syndrome_cols[c].set(r, true);
        stab = &own;
    }

    bool dfs(std::size_t start, std::size_t remaining, BitVec& syndrome, BitVec& chosen) const {
        if (remaining == 0)
            return !syndrome.any() && !in_rowspace(*stab, chosen);
        for (std::size_t q = start; q + remaining <= n; ++q) {
            chosen.set(q, true);
            syndrome ^= syndrome_cols[q];
            if (dfs(q + 1, remaining - 1, syndrome, chosen)) return true;
            syndrome ^= syndrome_cols[q];
            chosen.set(q, false);
        }
        return false;
    }

    std::optional<std::pair<std::size_t, BitVec>> search(std::size_t limit) const {
        for (std::size_t w = 1; w <= limit; ++w) {
            BitVec syndrome(syndrome_cols.empty() ? 0 : syndrome_cols.front().size());
            BitVec chosen(n);
            if (dfs(0, w, syndrome, chosen)) return std::make_pair(w, chosen);
        }
        return std::nullopt;
    }
};

}  // namespace

DistanceReport exact_distance(const CssCode& code) {
    if (code.n > 28)
        throw std::invalid_argument("exact distance: code exceeds the enumeration budget (n <= 28)");

    DistanceReport report;
    if (logical_count(code) == 0) {
        report.d_exact = infinite_distance;
        return report;
    }

    RrefResult rx = rref(code.hx), rz = rref(code.hz);
    auto x_hit = Enumerator(code, PauliKind::x, rx).search(code.n);
    // A shorter Z witness beats the X one; an equal-weight Z witness does
    // not, so the Z search stops one weight early.
    auto z_hit = x_hit->first > 1 ? Enumerator(code, PauliKind::z, rz).search(x_hit->first - 1)
                                  : std::nullopt;

    auto& [weight, witness] = z_hit ? *z_hit : *x_hit;
    report.d_exact = weight;
    report.d_upper = weight;
    report.witness = std::move(witness);
    report.witness_kind = z_hit ? PauliKind::z : PauliKind::x;
    return report;
}

DistanceReport stochastic_upper(const CssCode& code, std::size_t trials, std::uint64_t seed) {
    if (logical_count(code) == 0)
        throw std::invalid_argument("stochastic upper bound: the code has no logical qubits");

    SideSearch sx = make_side(code, PauliKind::x);
    SideSearch sz = make_side(code, PauliKind::z);

    std::size_t chunks = (trials + chunk_size - 1) / chunk_size;
    std::size_t workers = std::min(worker_cap(), std::max<std::size_t>(chunks, 1));

    Candidate best;
    if (workers <= 1) {
        TrialScratch scratch;
        for (std::size_t c = 0; c < chunks; ++c)
            run_chunk(sx, sz, seed, c, trials, scratch, best);
    } else {
        std::vector<Candidate> found(workers);
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                TrialScratch scratch;
                for (std::size_t c = next++; c < chunks; c = next++)
                    run_chunk(sx, sz, seed, c, trials, scratch, found[w]);
            });
        for (std::thread& t : pool) t.join();
        for (Candidate& c : found)
            if (c.beats(best)) best = std::move(c);
    }

    DistanceReport report;
    report.d_upper = best.weight;
    report.witness = std::move(best.bits);
    report.witness_kind = best.kind;
    report.trials = trials;
    report.seed = seed;
    return report;
}

std::string export_distance_json(const DistanceReport& report) {
    nlohmann::json j;
    auto bound = [](std::size_t d) -> nlohmann::json {
        if (d == infinite_distance) return "infinite";
        return d;
    };
    if (report.d_exact) j["d_exact"] = bound(*report.d_exact);
    j["d_upper"] = bound(report.d_upper);
    j["witness"] = report.witness.ones();
    j["witness_kind"] = report.witness_kind == PauliKind::x ? "x" : "z";
    j["trials"] = report.trials;
    j["seed"] = report.seed;
    return j.dump(2) + "\n";
}

}  // namespace tilekit
