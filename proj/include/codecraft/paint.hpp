// Logical operator painting: optimize the storages of the preserved
// logicals until the deformed code, treated as a subsystem code, reaches
// a target dressed distance. Also hosts the dressed-distance search.

#ifndef CODECRAFT_PAINT_HPP
#define CODECRAFT_PAINT_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "codecraft/craft.hpp"
#include "codecraft/distance.hpp"
#include "codecraft/gf2.hpp"

namespace codecraft {

// Raised when the painting loop finds no working-set vector to add; the
// documented failure mode of the storage optimization.
struct PaintFailure : std::runtime_error {
    explicit PaintFailure(const std::string& what) : std::runtime_error(what) {}
};

// Decomposition u = (j_z + h_z, beta) of one preserved logical's storage.
struct Storage {
    BitVector u;        // full vector over deformed columns, in ker(h_meas)
    BitVector j_z;      // logical part on base columns
    BitVector h_z;      // stabilizer part on base columns
    BitVector beta;     // ancilla part
};

// Partitioned basis of ker(h_meas) per the painting algorithm: u's pair
// with the unmeasured logicals (delta condition), v's are orthogonal to
// all of them, h_rows spans rowsp(h_other).
struct StorageSet {
    std::vector<BitVector> u;
    std::vector<BitVector> v;
    BitMatrix h_rows;
    std::vector<Storage> storages;   // filled by extract_storages
};

struct PaintConfig {
    std::size_t d_th = 1;
    SearchBudget search;
};

namespace detail {

inline BitMatrix embedded_unmeasured(const DeformedCode& def) {
    std::vector<BitVector> rows;
    for (std::size_t r = 0; r < def.unmeasured.rows(); ++r)
        rows.push_back(embed_base_vector(def.unmeasured.row(r), def.n_total()));
    if (rows.empty()) return BitMatrix(0, def.n_total());
    return BitMatrix::from_rows(rows);
}

} // namespace detail

// Basis of ker(h_meas) split into {u_a} + {v_b} + {h rows} with
//   (i)   (j'_a, 0) u_b^T = delta_ab
//   (ii)  (j'_a, 0) v_b^T = 0
//   (iii) h rows form a basis of rowsp(h_other).
inline StorageSet constrained_kernel_basis(const DeformedCode& def) {
    const BitMatrix probes = detail::embedded_unmeasured(def);
    const std::size_t km1 = probes.rows();
    BitMatrix ker = kernel_basis(def.h_meas());

    std::vector<BitVector> work, pairing;
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        work.push_back(ker.row(r));
        pairing.push_back(probes.mul_vec(work.back()));
    }
    StorageSet set;
    std::vector<std::size_t> upair;   // index of u_a inside set.u
    for (std::size_t a = 0; a < km1; ++a) {
        std::size_t pick = work.size();
        for (std::size_t r = 0; r < work.size(); ++r)
            if (pairing[r].get(a)) { pick = r; break; }
        if (pick == work.size())
            throw std::runtime_error("constrained_kernel_basis: infeasible pairing (rank defect)");
        BitVector ua = work[pick];
        BitVector pa = pairing[pick];
        work.erase(work.begin() + pick);
        pairing.erase(pairing.begin() + pick);
        for (std::size_t r = 0; r < work.size(); ++r) {
            if (pairing[r].get(a)) {
                work[r].xor_inplace(ua);
                pairing[r].xor_inplace(pa);
            }
        }
        for (std::size_t b = 0; b < set.u.size(); ++b) {
            if (probes.mul_vec(set.u[b]).get(a)) {
                set.u[b].xor_inplace(ua);
            }
        }
        set.u.push_back(ua);
    }
    // The chosen u's now pair exactly as delta; remaining rows span the
    // zero-pairing subspace of the kernel.
    for (std::size_t a = 0; a < set.u.size(); ++a) {
        BitVector p = probes.mul_vec(set.u[a]);
        for (std::size_t b = 0; b < km1; ++b)
            if (p.get(b) != (a == b))
                throw std::runtime_error("constrained_kernel_basis: pairing normalization failed");
    }

    // Condition (iii): a basis of rowsp(h_other), taken from its rref.
    RrefResult rr = rref(def.h_other());
    std::vector<BitVector> hrows;
    for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r) hrows.push_back(rr.reduced.row(r));
    set.h_rows = hrows.empty() ? BitMatrix(0, def.n_total()) : BitMatrix::from_rows(hrows);

    // Condition (ii): v's complete the zero-pairing subspace over the h rows.
    BitMatrix accum = set.h_rows;
    std::size_t base_rank = accum.rows();   // rref rows are independent
    for (const BitVector& w : work) {
        BitMatrix trial = BitMatrix::vstack(accum, BitMatrix::from_rows({w}));
        if (rank(trial) > base_rank + set.v.size()) {
            set.v.push_back(w);
            accum = trial;
        }
    }
    std::size_t expect = ker.rows() - km1 - set.h_rows.rows();
    if (set.v.size() != expect)
        throw std::runtime_error("constrained_kernel_basis: gauge sector has wrong dimension");
    return set;
}

// Minimum-weight e with h e^T = 0 and u e^T = 1; exhaustive up to the
// budget cap, then randomized information-set search. nullopt when no such
// vector exists at all (u orthogonal to the entire kernel).
inline std::optional<DistanceReport> min_weight_constrained(const BitMatrix& h, const BitVector& u,
                                                            const SearchBudget& budget) {
    DistanceReport rep = min_weight_undetected(h, BitMatrix::from_rows({u}), budget);
    if (rep.value == 0) {
        // Distinguish "nothing found within budget" from "provably none":
        // solvable iff u is not orthogonal to ker(h), i.e. u outside rowsp(h).
        if (in_rowspace(h, u)) return std::nullopt;
        return rep;   // value 0 with exact=false: budget exhausted
    }
    return rep;
}

// The painting loop (storage optimization). Returns the updated storage
// set; throws PaintFailure when no working-set vector can fix a weak
// storage, the algorithm's documented failure mode.
inline StorageSet paint(const DeformedCode& def, const StorageSet& init, const PaintConfig& cfg) {
    if (cfg.d_th < 1) throw std::invalid_argument("paint: d_th must be at least 1");
    const BitMatrix probes = detail::embedded_unmeasured(def);
    StorageSet out = init;
    const BitMatrix& guard = def.h_other();
    for (std::size_t a = 0; a < out.u.size(); ++a) {
        std::vector<BitVector> w_set = init.v;   // fresh working set per storage
        auto find_e = [&]() {
            auto rep = min_weight_constrained(guard, out.u[a], cfg.search);
            if (!rep || rep->value == 0)
                throw std::runtime_error("paint: no undetectable error flips storage " +
                                         std::to_string(a) + "; search budget exhausted");
            return *rep;
        };
        DistanceReport e = find_e();
        while (e.value < cfg.d_th) {
            const BitVector& evec = *e.witness;
            std::size_t pick = w_set.size();
            for (std::size_t i = 0; i < w_set.size(); ++i)
                if (w_set[i].dot(evec)) { pick = i; break; }
            if (pick == w_set.size())
                throw PaintFailure("paint: no working-set vector anticommutes with the weight-" +
                                   std::to_string(e.value) + " error of storage " + std::to_string(a));
            BitVector w = w_set[pick];
            w_set.erase(w_set.begin() + pick);
            for (auto& wp : w_set)
                if (wp.dot(evec)) wp.xor_inplace(w);
            out.u[a].xor_inplace(w);
            // Loop invariant: the pairing delta survives every update.
            BitVector p = probes.mul_vec(out.u[a]);
            for (std::size_t b = 0; b < out.u.size(); ++b)
                if (p.get(b) != (a == b))
                    throw std::logic_error("paint: pairing condition broken by an update");
            e = find_e();
        }
    }
    return out;
}

// Express u = (j_z + h_z, beta): logical part in the span of the preserved
// basis, stabilizer part in rowsp of the base check matrix, beta on the
// ancilla columns. Errors if the base part leaves the valid subspace.
inline Storage extract_storage(const BitVector& u, const DeformedCode& def,
                               const LogicalBasis& basis) {
    if (u.size() != def.n_total())
        throw std::invalid_argument("extract_storage: wrong vector length");
    if (def.h_meas().mul_vec(u).any())
        throw std::invalid_argument("extract_storage: vector is not in ker(h_meas)");
    const std::size_t n = def.n_base();
    // Storages are of the opposite type to the measured logical.
    const BitMatrix& jmat = def.measured == 'X' ? basis.j_z : basis.j_x;
    const BitMatrix& hmat = def.measured == 'X' ? def.base.h_z : def.base.h_x;

    Storage s;
    s.u = u;
    BitVector ubase(n), beta(u.size() - n);
    for (std::size_t i : u.support()) {
        if (i < n) ubase.set(i, true);
        else beta.set(i - n, true);
    }
    s.beta = beta;
    BitMatrix stacked = BitMatrix::vstack(jmat, hmat);
    auto x = solve_left(stacked, ubase);
    if (!x)
        throw std::runtime_error("extract_storage: base part is outside span(j) + rowsp(h)");
    BitVector jz(n), hz(n);
    for (std::size_t r = 0; r < jmat.rows(); ++r)
        if (x->get(r)) jz.xor_inplace(jmat.row(r));
    for (std::size_t r = 0; r < hmat.rows(); ++r)
        if (x->get(jmat.rows() + r)) hz.xor_inplace(hmat.row(r));
    s.j_z = jz;
    s.h_z = hz;
    BitVector recomposed = jz ^ hz;
    for (std::size_t c = 0; c < n; ++c)
        if (recomposed.get(c) != ubase.get(c))
            throw std::logic_error("extract_storage: recomposition mismatch");
    return s;
}

inline StorageSet extract_storages(StorageSet set, const DeformedCode& def,
                                   const LogicalBasis& basis) {
    set.storages.clear();
    for (const BitVector& u : set.u)
        set.storages.push_back(extract_storage(u, def, basis));
    return set;
}

// Pauli frame from the ancilla measurement outcomes: storage a needs a
// logical flip iff the outcome parity over supp(beta_a) is odd.
using PauliFrame = std::vector<bool>;

inline PauliFrame feedback_correction(const StorageSet& set, const BitVector& ancilla_outcomes) {
    PauliFrame frame;
    for (const Storage& s : set.storages) {
        if (s.beta.size() != ancilla_outcomes.size())
            throw std::invalid_argument("feedback_correction: outcome length mismatch");
        frame.push_back(s.beta.dot(ancilla_outcomes));
    }
    return frame;
}

// Dressed distance of the deformed subsystem code: the minimum weight of an
// undetectable error acting on a preserved logical. Two error sides:
//   (a) measured-type errors that flip some stored logical u_a, and
//   (b) opposite-type errors that flip some unmeasured logical (j'_a, 0).
inline std::pair<DistanceReport, DistanceReport>
dressed_distance_sides(const DeformedCode& def, const StorageSet& storages,
                       const SearchBudget& budget) {
    if (storages.u.empty())
        throw std::invalid_argument("dressed_distance: empty storage set");
    for (const BitVector& u : storages.u)
        if (u.size() != def.n_total() || def.h_meas().mul_vec(u).any())
            throw std::invalid_argument("dressed_distance: invalid storage vector");
    BitMatrix uprobe = BitMatrix::from_rows(storages.u);
    DistanceReport meas_side = min_weight_undetected(def.h_other(), uprobe, budget);
    meas_side.side = def.measured;
    BitMatrix jprobe = detail::embedded_unmeasured(def);
    DistanceReport other_side = min_weight_undetected(def.h_meas(), jprobe, budget);
    other_side.side = def.measured == 'X' ? 'Z' : 'X';
    return {meas_side, other_side};
}

inline DistanceReport dressed_distance(const DeformedCode& def, const StorageSet& storages,
                                       const SearchBudget& budget) {
    auto [a, b] = dressed_distance_sides(def, storages, budget);
    if (a.value == 0 || b.value == 0)
        throw std::runtime_error("dressed_distance: search produced no witness on one side");
    DistanceReport rep = a.value <= b.value ? a : b;
    rep.side = 'm';
    return rep;
}

} // namespace codecraft

#endif
