// Minimum-distance search for CSS and deformed subsystem codes.
//
// Every query is an instance of one problem: find a minimum-weight vector
// e with A e^T = 0 that anticommutes with at least one probe row (the
// logical content of interest). Exhaustive enumeration proves exactness
// up to a weight cap; beyond the cap a randomized information-set search
// provides upper bounds, the approach used by randomized distance tools.

#ifndef CODECRAFT_DISTANCE_HPP
#define CODECRAFT_DISTANCE_HPP

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "codecraft/bb.hpp"
#include "codecraft/gf2.hpp"

namespace codecraft {

struct SearchBudget {
    std::size_t exhaustive_limit = 5;   // prove weights <= limit exhaustively
    std::uint64_t isd_rounds = 10000;   // randomized rounds past the cap
    std::uint64_t seed = 1;
    unsigned threads = 0;               // 0: honor CODECRAFT_THREADS, default 1
};

struct DistanceReport {
    std::size_t value = 0;
    bool exact = false;       // true only if all weights below `value` were ruled out
    char side = 'm';          // 'X', 'Z' or 'm' for min over both
    std::uint64_t trials = 0; // randomized rounds actually used
    std::uint64_t seed = 0;
    std::optional<BitVector> witness;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

struct Xoshiro {
    std::uint64_t s[4];
    explicit Xoshiro(std::uint64_t seed) {
        for (auto& w : s) w = splitmix64(seed);
    }
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t next() {
        std::uint64_t result = rotl(s[1] * 5, 7) * 9;
        std::uint64_t t = s[1] << 17;
        s[2] ^= s[0]; s[3] ^= s[1]; s[1] ^= s[2]; s[0] ^= s[3]; s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }
    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

// Column-major view of A stacked with probe rows, packed per column.
struct ColumnProblem {
    std::size_t n = 0;
    std::size_t syn_words = 0;
    std::vector<std::uint64_t> cols;     // syndrome part, column-major
    std::vector<std::uint64_t> probe_cols;
    std::size_t probe_words = 0;
    std::size_t max_col_weight = 0;

    ColumnProblem(const BitMatrix& a, const BitMatrix& probes) {
        n = a.cols();
        if (probes.rows() > 0 && probes.cols() != n)
            throw std::invalid_argument("distance: probe width mismatch");
        syn_words = (a.rows() + 63) / 64;
        probe_words = (probes.rows() + 63) / 64;
        if (syn_words == 0) syn_words = 1;
        if (probe_words == 0) probe_words = 1;
        cols.assign(n * syn_words, 0);
        probe_cols.assign(n * probe_words, 0);
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (a.get(r, c)) cols[c * syn_words + r / 64] |= 1ull << (r % 64);
        for (std::size_t r = 0; r < probes.rows(); ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (probes.get(r, c)) probe_cols[c * probe_words + r / 64] |= 1ull << (r % 64);
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t w = 0;
            for (std::size_t k = 0; k < syn_words; ++k)
                w += std::popcount(cols[c * syn_words + k]);
            max_col_weight = std::max(max_col_weight, w);
        }
    }
};

// Depth-first enumeration of supports of exactly `weight`, lexicographic
// order, so the first satisfying vector is the lexicographically smallest.
class ExhaustiveSearch {
public:
    ExhaustiveSearch(const ColumnProblem& p) : p_(p),
        syn_(p.syn_words, 0), probe_(p.probe_words, 0) {}

    std::optional<std::vector<std::size_t>> find_at_weight(std::size_t weight) {
        stack_.clear();
        return descend(0, weight) ? std::optional(stack_) : std::nullopt;
    }

private:
    bool descend(std::size_t first_col, std::size_t remaining) {
        if (remaining == 0) {
            for (std::uint64_t w : syn_) if (w) return false;
            for (std::uint64_t w : probe_) if (w) return true;
            return false;
        }
        // Each remaining column can cancel at most max_col_weight syndrome bits.
        std::size_t syn_weight = 0;
        for (std::uint64_t w : syn_) syn_weight += std::popcount(w);
        if (syn_weight > remaining * p_.max_col_weight) return false;
        for (std::size_t c = first_col; c + remaining <= p_.n; ++c) {
            toggle(c);
            stack_.push_back(c);
            if (descend(c + 1, remaining - 1)) return true;
            stack_.pop_back();
            toggle(c);
        }
        return false;
    }

    void toggle(std::size_t c) {
        for (std::size_t k = 0; k < p_.syn_words; ++k)
            syn_[k] ^= p_.cols[c * p_.syn_words + k];
        for (std::size_t k = 0; k < p_.probe_words; ++k)
            probe_[k] ^= p_.probe_cols[c * p_.probe_words + k];
    }

    const ColumnProblem& p_;
    std::vector<std::uint64_t> syn_, probe_;
    std::vector<std::size_t> stack_;
};

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CODECRAFT_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

} // namespace detail

// Minimum-weight vector in ker(A) anticommuting with >= 1 probe row.
// Returns nullopt if the exhaustive phase ruled out all weights up to the
// cap and no randomized round produced a candidate (or probes span nothing
// reachable). `exact` in the report distinguishes the two regimes.
inline DistanceReport min_weight_undetected(const BitMatrix& a, const BitMatrix& probes,
                                            const SearchBudget& budget) {
    detail::ColumnProblem prob(a, probes);
    DistanceReport rep;
    rep.seed = budget.seed;

    // Phase 1: exhaustive, weights 1..limit.
    detail::ExhaustiveSearch exh(prob);
    for (std::size_t w = 1; w <= budget.exhaustive_limit && w <= prob.n; ++w) {
        if (auto support = exh.find_at_weight(w)) {
            rep.value = w;
            rep.exact = true;
            rep.witness = BitVector::from_support(prob.n, *support);
            return rep;
        }
    }

    // Phase 2: information-set rounds on the kernel of A.
    BitMatrix gen = kernel_basis(a);
    if (gen.rows() == 0) return rep;  // value 0 encodes "none found"
    const std::size_t g = gen.rows(), n = prob.n;

    struct Best {
        std::size_t weight = SIZE_MAX;
        BitVector vec;
    };
    auto consider = [&probes](Best& best, const BitVector& v) {
        std::size_t w = v.weight();
        if (w == 0 || w > best.weight) return;
        if (w == best.weight && !v.support_less(best.vec)) return;
        bool hits = probes.rows() == 0 ? false : probes.mul_vec(v).any();
        if (!hits) return;
        best.weight = w;
        best.vec = v;
    };

    unsigned nthreads = detail::resolve_threads(budget.threads);
    std::vector<Best> round_best(nthreads);
    std::atomic<std::uint64_t> next_round{0};
    auto worker = [&](unsigned tid) {
        Best local;
        std::vector<std::size_t> perm(n);
        for (std::uint64_t round = next_round.fetch_add(1); round < budget.isd_rounds;
             round = next_round.fetch_add(1)) {
            std::uint64_t state = budget.seed ^ (0xa0761d6478bd642full * (round + 1));
            detail::Xoshiro rng(detail::splitmix64(state));
            std::iota(perm.begin(), perm.end(), 0);
            for (std::size_t i = n; i > 1; --i)
                std::swap(perm[i - 1], perm[rng.below(i)]);
            // Row-reduce the generator against the permuted column order.
            BitMatrix m = gen;
            std::size_t r = 0;
            for (std::size_t ci = 0; ci < n && r < g; ++ci) {
                std::size_t c = perm[ci];
                std::size_t piv = r;
                while (piv < g && !m.get(piv, c)) ++piv;
                if (piv == g) continue;
                m.swap_rows(r, piv);
                for (std::size_t i = 0; i < g; ++i)
                    if (i != r && m.get(i, c)) m.xor_row(i, r);
                ++r;
            }
            for (std::size_t i = 0; i < g; ++i) consider(local, m.row(i));
            // Pairs of rows often expose lower-weight codewords.
            for (std::size_t i = 0; i + 1 < g; ++i) {
                BitVector vi = m.row(i);
                for (std::size_t j = i + 1; j < g; ++j) {
                    BitVector v = vi ^ m.row(j);
                    consider(local, v);
                }
            }
        }
        round_best[tid] = local;
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    Best best;
    for (const auto& b : round_best) {
        if (b.weight < best.weight ||
            (b.weight == best.weight && b.weight != SIZE_MAX && b.vec.support_less(best.vec)))
            best = b;
    }
    rep.trials = budget.isd_rounds;
    if (best.weight != SIZE_MAX) {
        rep.value = best.weight;
        rep.exact = best.weight <= budget.exhaustive_limit + 1;
        rep.witness = best.vec;
    }
    return rep;
}

// CSS code distance, per side and combined. X side: minimum weight of an
// X-type operator in ker(h_z) outside rowsp(h_x); Z side symmetric.
inline std::pair<DistanceReport, DistanceReport>
css_distance_sides(const CssCode& code, const SearchBudget& budget) {
    if (logical_count(code) == 0)
        throw std::invalid_argument("css_distance: code has no logical qubits");
    LogicalBasis basis = canonical_logicals(code);
    DistanceReport dx = min_weight_undetected(code.h_z, basis.j_z, budget);
    dx.side = 'X';
    DistanceReport dz = min_weight_undetected(code.h_x, basis.j_x, budget);
    dz.side = 'Z';
    return {dx, dz};
}

inline DistanceReport css_distance(const CssCode& code, const SearchBudget& budget) {
    auto [dx, dz] = css_distance_sides(code, budget);
    if (dx.value == 0 || dz.value == 0)
        throw std::runtime_error("css_distance: search failed to produce a logical representative");
    DistanceReport rep = dx.value <= dz.value ? dx : dz;
    rep.side = 'm';
    rep.exact = (dx.value <= dz.value ? dx.exact : dz.exact);
    return rep;
}

// Exact distance by full enumeration; the independent oracle for small
// fixtures. Requires at most 24 columns.
inline std::size_t oracle_distance(const BitMatrix& a, const BitMatrix& probes) {
    const std::size_t n = a.cols();
    if (n > 24) throw std::invalid_argument("oracle_distance: more than 24 columns");
    if (probes.cols() != n) throw std::invalid_argument("oracle_distance: probe width mismatch");
    // Reduce both to row spaces of rank <= n <= 24 so masks fit in words.
    auto pack = [n](const BitMatrix& m) {
        RrefResult rr = rref(m);
        std::vector<std::uint32_t> col(n, 0);
        for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (rr.reduced.get(r, c)) col[c] |= 1u << r;
        return col;
    };
    std::vector<std::uint32_t> acol = pack(a), pcol = pack(probes);
    std::size_t best = SIZE_MAX;
    std::uint32_t syn = 0, hit = 0, prev = 0;
    for (std::uint32_t v = 1; v < (1u << n); ++v) {
        std::uint32_t gray = v ^ (v >> 1);
        std::uint32_t flipped = gray ^ prev;
        prev = gray;
        unsigned c = std::countr_zero(flipped);
        syn ^= acol[c];
        hit ^= pcol[c];
        if (syn == 0 && hit != 0)
            best = std::min(best, static_cast<std::size_t>(std::popcount(gray)));
    }
    if (best == SIZE_MAX)
        throw std::runtime_error("oracle_distance: no undetected logical operator exists");
    return best;
}

inline std::size_t oracle_css_distance(const CssCode& code) {
    LogicalBasis basis = canonical_logicals(code);
    return std::min(oracle_distance(code.h_z, basis.j_z),
                    oracle_distance(code.h_x, basis.j_x));
}

} // namespace codecraft

#endif
