// Logical basis optimization: choose a symplectic logical basis whose
// designated pairs admit two-block measurement channels, horizontally for
// X logicals and vertically for Z logicals. The basis fixes which logical
// qubits can couple across neighboring blocks.

#ifndef CODECRAFT_BASIS_OPT_HPP
#define CODECRAFT_BASIS_OPT_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "codecraft/craft.hpp"
#include "codecraft/gf2.hpp"

namespace codecraft {

struct JointIntermediates {
    DeformedCode hxx;   // horizontal join, X-type joint measurements
    DeformedCode hzz;   // vertical join, Z-type joint measurements
    int s_xx = 0, s_zz = 0;
};

struct PairingSolution {
    BitVector j_x1, j_x2;    // horizontally joint-measurable X pair
    BitMatrix a_left, a_right;  // rows A_l = (A_L, 0, A_R) of the vertical join
    BitVector q;             // selector with qA_L, qA_R independent Z logicals
    BitVector j_z3, j_z4;    // vertically joint-measurable Z pair
};

namespace detail {

// Basis of {v in rowsp(m) : v restricted to cols >= split is zero}: row
// reduce with the tail columns first; rows with no tail support remain.
inline std::vector<BitVector> rowspace_vanishing_past(const BitMatrix& m, std::size_t split) {
    BitMatrix a = m;
    std::size_t r = 0;
    auto eliminate = [&](std::size_t c) {
        std::size_t piv = r;
        while (piv < a.rows() && !a.get(piv, c)) ++piv;
        if (piv == a.rows()) return;
        a.swap_rows(r, piv);
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (i != r && a.get(i, c)) a.xor_row(i, r);
        ++r;
    };
    for (std::size_t c = split; c < a.cols(); ++c) eliminate(c);
    std::vector<BitVector> out;
    for (std::size_t i = r; i < a.rows(); ++i) {
        BitVector row = a.row(i);
        if (!row.any()) continue;
        bool clean = true;
        for (std::size_t c = split; c < a.cols() && clean; ++c) clean = !row.get(c);
        if (clean) out.push_back(row);
    }
    return out;
}

// Enumerate the span of `gens` in order of increasing weight (bounded
// enumeration when the space is large), calling f until it returns true.
template <typename F>
bool span_search_by_weight(const std::vector<BitVector>& gens, F&& f) {
    if (gens.empty()) return false;
    const std::size_t s = gens.size();
    std::vector<std::pair<std::size_t, std::uint64_t>> order;
    if (s <= 18) {
        for (std::uint64_t mask = 1; mask < (1ull << s); ++mask) {
            BitVector v(gens[0].size());
            for (std::size_t i = 0; i < s; ++i)
                if (mask >> i & 1) v.xor_inplace(gens[i]);
            order.push_back({v.weight(), mask});
        }
    } else {
        // combinations of up to three generators
        for (std::size_t i = 0; i < s; ++i) {
            order.push_back({gens[i].weight(), 1ull << i});
            for (std::size_t j = i + 1; j < s; ++j) {
                BitVector v = gens[i] ^ gens[j];
                order.push_back({v.weight(), (1ull << i) | (1ull << j)});
                for (std::size_t k = j + 1; k < s; ++k) {
                    BitVector w = v ^ gens[k];
                    order.push_back({w.weight(), (1ull << i) | (1ull << j) | (1ull << k)});
                }
            }
        }
    }
    std::sort(order.begin(), order.end());
    for (auto [wt, mask] : order) {
        BitVector v(gens[0].size());
        for (std::size_t i = 0; i < s; ++i)
            if (mask >> i & 1) v.xor_inplace(gens[i]);
        if (f(v)) return true;
    }
    return false;
}

} // namespace detail

inline JointIntermediates build_joint_intermediates(const BuiltCode& code, int s_xx, int s_zz) {
    JointIntermediates ji;
    ji.hxx = joint_connect(code, code, JointOrientation::horizontal, s_xx);
    ji.hzz = joint_connect(code, code, JointOrientation::vertical, s_zz);
    ji.s_xx = s_xx;
    ji.s_zz = s_zz;
    return ji;
}

// Find (j_x1, 0, j_x2) in rowsp of the horizontal join's X matrix with both
// halves proper logicals independent of rowsp(H_X). Absent when the strip
// admits no such joint channel (a different s_xx is then needed).
inline std::optional<std::pair<BitVector, BitVector>>
find_joint_x_pair(const JointIntermediates& ji, const CssCode& code) {
    const std::size_t n = code.n();
    std::vector<BitVector> gens =
        detail::rowspace_vanishing_past(ji.hxx.hbar_x, 2 * n);
    std::optional<std::pair<BitVector, BitVector>> found;
    std::size_t base_rank = rank(code.h_x);
    detail::span_search_by_weight(gens, [&](const BitVector& v) {
        BitVector j1(n), j2(n);
        for (std::size_t i : v.support()) {
            if (i < n) j1.set(i, true);
            else if (i < 2 * n) j2.set(i - n, true);
        }
        if (!j1.any() || !j2.any()) return false;
        BitMatrix stacked = BitMatrix::vstack(
            code.h_x, BitMatrix::from_rows({j1, j2}));
        if (rank(stacked) != base_rank + 2) return false;
        found = std::pair(j1, j2);
        return true;
    });
    return found;
}

// Steps 5-8: collect the vertical join's (A_L, 0, A_R) rows, solve the four
// orthogonality equations for q, and derive j_z3 = qA_L, j_z4 = qA_R.
inline PairingSolution solve_pairing(const JointIntermediates& ji,
                                     const std::pair<BitVector, BitVector>& pair,
                                     const CssCode& code) {
    const std::size_t n = code.n();
    std::vector<BitVector> arows =
        detail::rowspace_vanishing_past(ji.hzz.hbar_z, 2 * n);
    if (arows.empty())
        throw std::runtime_error("solve_pairing: vertical join has no (A_L, 0, A_R) rows");
    std::vector<BitVector> als, ars;
    for (const BitVector& v : arows) {
        BitVector l(n), r(n);
        for (std::size_t i : v.support()) {
            if (i < n) l.set(i, true);
            else if (i < 2 * n) r.set(i - n, true);
        }
        als.push_back(l);
        ars.push_back(r);
    }
    BitMatrix a_left = BitMatrix::from_rows(als);
    BitMatrix a_right = BitMatrix::from_rows(ars);

    // Four linear constraints on q over GF(2).
    BitMatrix constraints(4, arows.size());
    for (std::size_t l = 0; l < arows.size(); ++l) {
        constraints.set(0, l, als[l].dot(pair.first));
        constraints.set(1, l, als[l].dot(pair.second));
        constraints.set(2, l, ars[l].dot(pair.first));
        constraints.set(3, l, ars[l].dot(pair.second));
    }
    BitMatrix qspace = kernel_basis(constraints);
    std::vector<BitVector> qgens;
    for (std::size_t r = 0; r < qspace.rows(); ++r) qgens.push_back(qspace.row(r));

    PairingSolution sol;
    sol.j_x1 = pair.first;
    sol.j_x2 = pair.second;
    sol.a_left = a_left;
    sol.a_right = a_right;
    std::size_t hz_rank = rank(code.h_z);
    bool ok = detail::span_search_by_weight(qgens, [&](const BitVector& q) {
        if (!q.any()) return false;
        BitVector jz3 = a_left.mul_left(q);
        BitVector jz4 = a_right.mul_left(q);
        BitMatrix stacked = BitMatrix::vstack(code.h_z, BitMatrix::from_rows({jz3, jz4}));
        if (rank(stacked) != hz_rank + 2) return false;
        sol.q = q;
        sol.j_z3 = jz3;
        sol.j_z4 = jz4;
        return true;
    });
    if (!ok)
        throw std::runtime_error(
            "solve_pairing: no admissible q; try a different (j_x1, j_x2) or separations");
    return sol;
}

namespace detail {

// Deterministic solution x of (M x^T = rhs) over GF(2), if any.
inline std::optional<BitVector> solve_linear(const BitMatrix& m, const BitVector& rhs) {
    // Solve m x = rhs by eliminating on the augmented system.
    BitMatrix aug = BitMatrix::hstack(m, BitMatrix::from_rows({rhs}).transpose());
    RrefResult rr = rref(aug);
    BitVector x(m.cols());
    for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r) {
        std::size_t p = rr.pivot_cols[r];
        if (p == m.cols()) return std::nullopt;   // pivot in the rhs column
        if (rr.reduced.get(r, m.cols())) x.set(p, true);
    }
    return x;
}

} // namespace detail

// Full Algorithm: fix j_x1, j_x2 (labels 0, 1) and j_z3, j_z4 (labels 2, 3),
// then complete to a k-pair basis with j_x * j_z^T = identity.
inline LogicalBasis optimize_basis(const BuiltCode& code, int s_xx, int s_zz) {
    std::size_t k = logical_count(code.code);
    if (k < 4)
        throw std::invalid_argument("optimize_basis: needs at least 4 logical qubits");
    JointIntermediates ji = build_joint_intermediates(code, s_xx, s_zz);
    auto pair = find_joint_x_pair(ji, code.code);
    if (!pair)
        throw std::runtime_error("optimize_basis: no joint X pair; try other s_xx");
    PairingSolution sol = solve_pairing(ji, *pair, code.code);

    // Any full bases to span the two quotients, seeded with the fixed rows.
    LogicalBasis seed = canonical_logicals(code.code);
    auto extend_quotient = [](const std::vector<BitVector>& fixed, const BitMatrix& candidates,
                              const BitMatrix& mod, std::size_t want) {
        std::vector<BitVector> rows = fixed;
        BitMatrix accum = mod;
        for (const BitVector& f : fixed) accum = BitMatrix::vstack(accum, BitMatrix::from_rows({f}));
        std::size_t base_rank = rank(mod);
        if (rank(accum) != base_rank + fixed.size())
            throw std::runtime_error("optimize_basis: fixed logicals are dependent");
        for (std::size_t r = 0; r < candidates.rows() && rows.size() < want; ++r) {
            BitMatrix trial = BitMatrix::vstack(accum, BitMatrix::from_rows({candidates.row(r)}));
            if (rank(trial) == base_rank + rows.size() + 1) {
                rows.push_back(candidates.row(r));
                accum = trial;
            }
        }
        if (rows.size() != want)
            throw std::runtime_error("optimize_basis: quotient completion failed");
        return BitMatrix::from_rows(rows);
    };
    BitMatrix jx_all = extend_quotient({sol.j_x1, sol.j_x2}, seed.j_x, code.code.h_x, k);
    BitMatrix jz_all = extend_quotient({sol.j_z3, sol.j_z4}, seed.j_z, code.code.h_z, k);

    // X rows 2 and 3 must pair (1,0) and (0,1) against (j_z3, j_z4); rows
    // 0, 1 already pair (0,0) by the q equations; the rest pair (0,0).
    BitMatrix pair_cols(2, k);   // pairing of every jx_all row against j_z3, j_z4
    for (std::size_t r = 0; r < k; ++r) {
        pair_cols.set(0, r, jx_all.row(r).dot(sol.j_z3));
        pair_cols.set(1, r, jx_all.row(r).dot(sol.j_z4));
    }
    auto pick_x = [&](bool want3, bool want4) {
        BitVector rhs(2);
        rhs.set(0, want3);
        rhs.set(1, want4);
        auto x = detail::solve_linear(pair_cols, rhs);
        if (!x) throw std::runtime_error("optimize_basis: no X partner for a fixed Z logical");
        BitVector v(code.code.n());
        for (std::size_t r = 0; r < k; ++r)
            if (x->get(r)) v.xor_inplace(jx_all.row(r));
        return v;
    };
    BitVector x2 = pick_x(true, false);
    BitVector x3 = pick_x(false, true);

    std::vector<BitVector> xrows = {sol.j_x1, sol.j_x2, x2, x3};
    // Remaining X rows: pair (0,0) with j_z3/j_z4 and stay independent.
    BitMatrix accum = code.code.h_x;
    for (const BitVector& v : xrows) accum = BitMatrix::vstack(accum, BitMatrix::from_rows({v}));
    std::size_t hx_rank = rank(code.code.h_x);
    if (rank(accum) != hx_rank + 4)
        throw std::runtime_error("optimize_basis: fixed X rows degenerate");
    BitMatrix ker2 = kernel_basis(pair_cols);   // combinations pairing (0,0)
    for (std::size_t r = 0; r < ker2.rows() && xrows.size() < k; ++r) {
        BitVector v(code.code.n());
        for (std::size_t i = 0; i < k; ++i)
            if (ker2.get(r, i)) v.xor_inplace(jx_all.row(i));
        BitMatrix trial = BitMatrix::vstack(accum, BitMatrix::from_rows({v}));
        if (rank(trial) == hx_rank + xrows.size() + 1) {
            xrows.push_back(v);
            accum = trial;
        }
    }
    if (xrows.size() != k)
        throw std::runtime_error("optimize_basis: X completion failed");
    BitMatrix jx = BitMatrix::from_rows(xrows);

    // Z side: unique combinations of jz_all delivering delta pairing. Rows
    // 2 and 3 must come out as exactly j_z3 and j_z4; the pairing matrix is
    // invertible so the solution is unique, and those rows already satisfy
    // their column constraints by construction.
    BitMatrix m = jx.mul(jz_all.transpose());   // k x k, invertible
    RrefResult rr = rref(m);
    if (rr.pivot_cols.size() != k)
        throw std::runtime_error("optimize_basis: degenerate pairing during completion");
    // For each target row b: z_b = sum_c inv(m^T)... use transform: rr.transform * m = I.
    BitMatrix inv = rr.transform;
    std::vector<BitVector> zrows;
    for (std::size_t b = 0; b < k; ++b) {
        BitVector z(code.code.n());
        for (std::size_t c = 0; c < k; ++c)
            if (inv.get(c, b)) z.xor_inplace(jz_all.row(c));
        zrows.push_back(z);
    }
    LogicalBasis out{jx, BitMatrix::from_rows(zrows)};

    // The construction promises delta pairing and row 2/3 equal to the
    // designated joint-measurable Z logicals.
    BitMatrix check = out.j_x.mul(out.j_z.transpose());
    if (!(check == BitMatrix::identity(k)))
        throw std::logic_error("optimize_basis: pairing is not the identity");
    if (!(out.j_z.row(2) == sol.j_z3) || !(out.j_z.row(3) == sol.j_z4))
        throw std::logic_error("optimize_basis: designated Z logicals were disturbed");
    return out;
}

} // namespace codecraft

#endif
