// Code craft: stretching, Z cutting, X cutting and two-block connection.
// Produces deformed codes whose stabilizer measurements realize individual
// logical Pauli measurements on planar BB codes.
//
// Deformed-code column convention: base-code qubits occupy the first
// n_base columns (in base order), ancilla qubits follow in coordinate
// order. Row convention: original stabilizer rows first, new rows after.

#ifndef CODECRAFT_CRAFT_HPP
#define CODECRAFT_CRAFT_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "codecraft/bb.hpp"
#include "codecraft/gf2.hpp"

namespace codecraft {

enum class Boundary { left, right, bottom, top };

inline const char* boundary_name(Boundary b) {
    switch (b) {
        case Boundary::left: return "left";
        case Boundary::right: return "right";
        case Boundary::bottom: return "bottom";
        case Boundary::top: return "top";
    }
    return "?";
}

inline std::optional<Boundary> boundary_from_name(const std::string& s) {
    if (s == "left") return Boundary::left;
    if (s == "right") return Boundary::right;
    if (s == "bottom") return Boundary::bottom;
    if (s == "top") return Boundary::top;
    return std::nullopt;
}

struct StretchParams {
    Boundary direction = Boundary::right;
    int tiles = 1;   // added tile columns; the ancilla grows linearly in this
};

// A code annotated with the geometry it was built from; craft operations
// re-place template stabilizers and need the region rectangles.
struct BuiltCode {
    CssCode code;
    PlanarBBSpec spec;
    std::optional<Boundary> moved;    // set by stretch, consumed by z_cut
};

inline BuiltCode build_planar(const PlanarBBSpec& spec) {
    return BuiltCode{build_planar_bb(spec), spec, std::nullopt};
}

// Overhang of the Z region beyond the X region on a given side, in sites.
// Positive: Z placements stick out, boundary Z stabilizers are truncated,
// Z logical strings terminate there -- a rough boundary.
inline int z_overhang(const PlanarBBSpec& spec, Boundary side) {
    const Rect& rx = spec.region_x;
    const Rect& rz = spec.region_z;
    switch (side) {
        case Boundary::left: return (rx.x0 - rz.x0) / 2;
        case Boundary::right: return ((rz.x0 + 2 * rz.width) - (rx.x0 + 2 * rx.width)) / 2;
        case Boundary::bottom: return (rx.y0 - rz.y0) / 2;
        case Boundary::top: return ((rz.y0 + 2 * rz.height) - (rx.y0 + 2 * rx.height)) / 2;
    }
    return 0;
}

inline bool is_rough(const PlanarBBSpec& spec, Boundary side) {
    return z_overhang(spec, side) > 0;
}

namespace detail {

inline void grow_rect(Rect& r, Boundary side, int amount) {
    switch (side) {
        case Boundary::left: r.x0 -= 2 * amount; r.width += amount; break;
        case Boundary::right: r.width += amount; break;
        case Boundary::bottom: r.y0 -= 2 * amount; r.height += amount; break;
        case Boundary::top: r.height += amount; break;
    }
}

} // namespace detail

// Enlarge the code block by moving one rough boundary outward. The original
// block is unchanged on its columns; the extension is placed periodically.
inline BuiltCode stretch(const BuiltCode& built, const StretchParams& p) {
    if (p.tiles < 1)
        throw std::invalid_argument("stretch: tile count must be positive");
    if (!is_rough(built.spec, p.direction))
        throw std::invalid_argument(std::string("stretch: ") + boundary_name(p.direction) +
                                    " is not a rough boundary of this code");
    PlanarBBSpec s = built.spec;
    detail::grow_rect(s.region_x, p.direction, p.tiles);
    detail::grow_rect(s.region_z, p.direction, p.tiles);
    return BuiltCode{build_planar_bb(s), s, p.direction};
}

// Convert the moved rough boundary into a smooth one: remove the boundary
// Z stabilizers (the overhang) plus B-1 bulk Z columns there; the cutting
// rule then prunes qubits. The result encodes no logical qubits.
inline BuiltCode z_cut(const BuiltCode& stretched, int tile_size) {
    if (!stretched.moved)
        throw std::invalid_argument("z_cut: code has no moved boundary (stretch it first)");
    if (tile_size != stretched.spec.tmpl.tile_size)
        throw std::invalid_argument("z_cut: tile size does not match the template");
    Boundary side = *stretched.moved;
    int trim = z_overhang(stretched.spec, side) + (tile_size - 1);
    PlanarBBSpec s = stretched.spec;
    detail::grow_rect(s.region_z, side, -trim);
    if (s.region_z.width < 1 || s.region_z.height < 1)
        throw std::invalid_argument("z_cut: stretch too short to cut");
    BuiltCode out{build_planar_bb(s), s, side};
    if (logical_count(out.code) != 0)
        throw std::runtime_error("z_cut: intermediate still encodes logical qubits");
    return out;
}

// Iterated cutting rule on raw check matrices: drop qubits supported by
// only one stabilizer type, then stabilizers with empty support. Idempotent
// and monotone. Coordinates are carried along.
inline CssCode cutting_rule(const CssCode& code) {
    CssCode cur = code;
    for (;;) {
        std::vector<std::size_t> keep_cols;
        for (std::size_t c = 0; c < cur.n(); ++c) {
            bool in_x = false, in_z = false;
            for (std::size_t r = 0; r < cur.h_x.rows() && !in_x; ++r) in_x = cur.h_x.get(r, c);
            for (std::size_t r = 0; r < cur.h_z.rows() && !in_z; ++r) in_z = cur.h_z.get(r, c);
            if (in_x && in_z) keep_cols.push_back(c);
        }
        bool col_change = keep_cols.size() != cur.n();
        CssCode next;
        next.h_x = cur.h_x.select_columns(keep_cols);
        next.h_z = cur.h_z.select_columns(keep_cols);
        for (std::size_t c : keep_cols) next.qubit_coords.push_back(cur.qubit_coords[c]);
        std::vector<std::size_t> keep_x, keep_z;
        for (std::size_t r = 0; r < next.h_x.rows(); ++r)
            if (next.h_x.row_any(r)) keep_x.push_back(r);
        for (std::size_t r = 0; r < next.h_z.rows(); ++r)
            if (next.h_z.row_any(r)) keep_z.push_back(r);
        bool row_change = keep_x.size() != next.h_x.rows() || keep_z.size() != next.h_z.rows();
        next.h_x = next.h_x.select_rows(keep_x);
        next.h_z = next.h_z.select_rows(keep_z);
        for (std::size_t r : keep_x) next.xstab_coords.push_back(cur.xstab_coords[r]);
        for (std::size_t r : keep_z) next.zstab_coords.push_back(cur.zstab_coords[r]);
        cur = std::move(next);
        if (!col_change && !row_change) return cur;
    }
}

// Deformed code with block-structured check matrices. For an X-type
// measurement the blocks read, over columns (base | ancilla):
//   hbar_x = (H_X 0 ; S H_G^T),   hbar_z = (H_Z T ; 0 H_M)
// For a Z-type measurement (built by duality) the roles are exchanged.
struct DeformedCode {
    CssCode base;
    char measured = 'X';
    BitMatrix hbar_x, hbar_z;
    std::size_t x_orig_rows = 0, z_orig_rows = 0;
    std::vector<Coord> qubit_coords, xstab_coords, zstab_coords;
    std::optional<BitVector> g_mask;      // diag(g_N) selection from X cutting
    BitVector target;                     // measured logical, base columns
    BitMatrix unmeasured;                 // k-1 preserved logicals of measured type

    std::size_t n_base() const { return base.n(); }
    std::size_t n_total() const { return qubit_coords.size(); }
    std::size_t ancilla_size() const { return n_total() - base.n(); }

    // Check matrix of the measured type (contains the channel) and of the
    // opposite type (constrains the storages).
    const BitMatrix& h_meas() const { return measured == 'X' ? hbar_x : hbar_z; }
    const BitMatrix& h_other() const { return measured == 'X' ? hbar_z : hbar_x; }
    std::size_t meas_orig_rows() const { return measured == 'X' ? x_orig_rows : z_orig_rows; }
};

// g with g * h_meas = (target, 0), split over original and new rows.
struct MeasurementChannel {
    BitVector g;
    std::size_t orig_rows = 0;
    BitVector g_o() const {
        BitVector v(orig_rows);
        for (std::size_t i = 0; i < orig_rows; ++i)
            if (g.get(i)) v.set(i, true);
        return v;
    }
    BitVector g_n() const {
        BitVector v(g.size() - orig_rows);
        for (std::size_t i = orig_rows; i < g.size(); ++i)
            if (g.get(i)) v.set(i - orig_rows, true);
        return v;
    }
};

namespace detail {

inline BitVector embed_base_vector(const BitVector& v, std::size_t total) {
    BitVector out(total);
    for (std::size_t i : v.support()) out.set(i, true);
    return out;
}

// Assemble the block-ordered deformed code from a base and an intermediate
// built on the same lattice, verifying every block-zero claim bitwise.
inline DeformedCode assemble_intermediate(const CssCode& base, const CssCode& inter) {
    std::map<Coord, std::size_t> iq;
    for (std::size_t i = 0; i < inter.n(); ++i) iq.emplace(inter.qubit_coords[i], i);

    std::vector<std::size_t> col_order;
    col_order.reserve(inter.n());
    std::set<Coord> base_coords;
    for (Coord q : base.qubit_coords) {
        auto it = iq.find(q);
        if (it == iq.end())
            throw std::runtime_error("assemble_intermediate: base qubit missing from intermediate");
        col_order.push_back(it->second);
        base_coords.insert(q);
    }
    for (std::size_t i = 0; i < inter.n(); ++i)
        if (!base_coords.count(inter.qubit_coords[i])) col_order.push_back(i);

    std::map<Coord, std::size_t> bx, bz;
    for (std::size_t r = 0; r < base.xstab_coords.size(); ++r) bx.emplace(base.xstab_coords[r], r);
    for (std::size_t r = 0; r < base.zstab_coords.size(); ++r) bz.emplace(base.zstab_coords[r], r);

    // Original-anchor rows first, new rows after; coordinate order inside.
    auto order_rows = [](const std::vector<Coord>& coords, const std::map<Coord, std::size_t>& orig) {
        std::vector<std::size_t> idx(coords.size());
        for (std::size_t r = 0; r < coords.size(); ++r) idx[r] = r;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            bool oa = orig.count(coords[a]), ob = orig.count(coords[b]);
            if (oa != ob) return oa;
            return coords[a] < coords[b];
        });
        return idx;
    };
    std::vector<std::size_t> x_order = order_rows(inter.xstab_coords, bx);
    std::vector<std::size_t> z_order = order_rows(inter.zstab_coords, bz);

    DeformedCode def;
    def.base = base;
    def.hbar_x = inter.h_x.select_rows(x_order).select_columns(col_order);
    def.hbar_z = inter.h_z.select_rows(z_order).select_columns(col_order);
    for (std::size_t c : col_order) def.qubit_coords.push_back(inter.qubit_coords[c]);
    for (std::size_t r : x_order) def.xstab_coords.push_back(inter.xstab_coords[r]);
    for (std::size_t r : z_order) def.zstab_coords.push_back(inter.zstab_coords[r]);
    for (Coord c : def.xstab_coords) if (bx.count(c)) ++def.x_orig_rows;
    for (Coord c : def.zstab_coords) if (bz.count(c)) ++def.z_orig_rows;
    if (def.x_orig_rows != base.h_x.rows() || def.z_orig_rows != base.h_z.rows())
        throw std::runtime_error("assemble_intermediate: an original stabilizer vanished");

    const std::size_t n = base.n(), total = def.qubit_coords.size();
    for (std::size_t r = 0; r < def.x_orig_rows; ++r) {
        BitVector row = def.hbar_x.row(r);
        BitVector orig = base.h_x.row(bx.at(def.xstab_coords[r]));
        for (std::size_t c = 0; c < total; ++c)
            if (row.get(c) != (c < n && orig.get(c)))
                throw std::runtime_error("assemble_intermediate: (H_X, 0) block violated");
    }
    for (std::size_t r = 0; r < def.z_orig_rows; ++r) {
        BitVector row = def.hbar_z.row(r);
        BitVector orig = base.h_z.row(bz.at(def.zstab_coords[r]));
        for (std::size_t c = 0; c < n; ++c)
            if (row.get(c) != orig.get(c))
                throw std::runtime_error("assemble_intermediate: (H_Z, T) block violated");
    }
    for (std::size_t r = def.z_orig_rows; r < def.hbar_z.rows(); ++r) {
        BitVector row = def.hbar_z.row(r);
        for (std::size_t c = 0; c < n; ++c)
            if (row.get(c))
                throw std::runtime_error("assemble_intermediate: (0, H_M) block violated");
    }
    if (!def.hbar_x.mul(def.hbar_z.transpose()).is_zero())
        throw std::runtime_error("assemble_intermediate: CSS condition violated");
    return def;
}

} // namespace detail

// Stretch + Z cut, assembled into block form: the X-measurement intermediate.
inline DeformedCode make_intermediate(const BuiltCode& base, const StretchParams& p) {
    BuiltCode zc = z_cut(stretch(base, p), base.spec.tmpl.tile_size);
    return detail::assemble_intermediate(base.code, zc.code);
}

// Measurement channel of j (a measured-type logical of the base code):
// a row combination g of h_meas with g * h_meas = (j, 0).
inline std::optional<MeasurementChannel> measurement_channel(const DeformedCode& inter,
                                                             const BitVector& j) {
    if (j.size() != inter.n_base())
        throw std::invalid_argument("measurement_channel: logical has wrong length");
    const BitMatrix& guard = inter.measured == 'X' ? inter.base.h_z : inter.base.h_x;
    if (guard.mul_vec(j).any())
        throw std::invalid_argument("measurement_channel: vector is not in the logical kernel");
    BitVector extended = detail::embed_base_vector(j, inter.n_total());
    auto g = solve_left(inter.h_meas(), extended);
    if (!g) return std::nullopt;
    return MeasurementChannel{*g, inter.meas_orig_rows()};
}

// X stabilizer cutting: close every channel except the target's. Keeps the
// base stabilizers, masks the new measured-type rows by diag(g_N), prunes
// emptied qubits and stabilizers, and verifies that exactly the target is
// measured: the k-1 unmeasured logicals stay independent of the stabilizers.
inline DeformedCode x_cut(const DeformedCode& inter, const BitVector& target,
                          const LogicalBasis& basis) {
    const BitMatrix& jmat = inter.measured == 'X' ? basis.j_x : basis.j_z;
    if (target.size() != inter.n_base())
        throw std::invalid_argument("x_cut: target has wrong length");
    if (!in_rowspace(jmat, target))
        throw std::invalid_argument("x_cut: target is outside the span of the logical basis");
    auto channel = measurement_channel(inter, target);
    if (!channel)
        throw std::runtime_error("x_cut: no measurement channel for the target");
    BitVector gn = channel->g_n();

    DeformedCode def = inter;
    std::size_t orig = channel->orig_rows;
    BitMatrix& meas = def.measured == 'X' ? def.hbar_x : def.hbar_z;
    for (std::size_t r = orig; r < meas.rows(); ++r)
        if (!gn.get(r - orig)) meas.set_row(r, BitVector(meas.cols()));

    CssCode shape;
    shape.h_x = def.hbar_x;
    shape.h_z = def.hbar_z;
    shape.qubit_coords = def.qubit_coords;
    shape.xstab_coords = def.xstab_coords;
    shape.zstab_coords = def.zstab_coords;
    CssCode pruned = cutting_rule(shape);
    for (std::size_t i = 0; i < inter.n_base(); ++i)
        if (i >= pruned.n() || !(pruned.qubit_coords[i] == inter.qubit_coords[i]))
            throw std::runtime_error("x_cut: cutting removed a base qubit");

    auto count_orig = [](const std::vector<Coord>& now, const std::vector<Coord>& before,
                         std::size_t orig_before) {
        std::set<Coord> origset(before.begin(), before.begin() + orig_before);
        std::size_t c = 0;
        for (Coord q : now) if (origset.count(q)) ++c;
        return c;
    };
    def.x_orig_rows = count_orig(pruned.xstab_coords, inter.xstab_coords, inter.x_orig_rows);
    def.z_orig_rows = count_orig(pruned.zstab_coords, inter.zstab_coords, inter.z_orig_rows);
    def.hbar_x = pruned.h_x;
    def.hbar_z = pruned.h_z;
    def.qubit_coords = pruned.qubit_coords;
    def.xstab_coords = pruned.xstab_coords;
    def.zstab_coords = pruned.zstab_coords;
    def.g_mask = gn;
    def.target = target;

    // Complete the target to a basis of the logical span; the other k-1
    // representatives are the unmeasured logicals.
    std::vector<BitVector> unmeasured;
    BitMatrix accum = BitMatrix::from_rows({target});
    for (std::size_t r = 0; r < jmat.rows() && unmeasured.size() + 1 < jmat.rows(); ++r) {
        BitMatrix trial = BitMatrix::vstack(accum, BitMatrix::from_rows({jmat.row(r)}));
        if (rank(trial) == accum.rows() + 1) {
            unmeasured.push_back(jmat.row(r));
            accum = trial;
        }
    }
    if (unmeasured.size() + 1 != jmat.rows())
        throw std::runtime_error("x_cut: could not complete a basis containing the target");
    def.unmeasured = BitMatrix::from_rows(unmeasured);

    const BitMatrix& hm = def.h_meas();
    BitMatrix stacked = hm;
    for (const BitVector& j : unmeasured)
        stacked = BitMatrix::vstack(stacked, BitMatrix::from_rows(
            {detail::embed_base_vector(j, def.n_total())}));
    if (rank(stacked) != rank(hm) + unmeasured.size())
        throw std::runtime_error("x_cut: deformed code measures non-target logicals");
    return def;
}

// Disjoint union of two codes (two blocks viewed as one CSS code); the
// second block's coordinates are translated by `shift`.
inline CssCode union_code(const CssCode& a, const CssCode& b, Coord shift) {
    CssCode u;
    std::size_t n = a.n() + b.n();
    std::vector<BitVector> xrows, zrows;
    auto widen = [&](const BitMatrix& m, std::size_t off) {
        std::vector<BitVector> rows;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            BitVector v(n);
            for (std::size_t c : m.row(r).support()) v.set(off + c, true);
            rows.push_back(v);
        }
        return rows;
    };
    for (auto& v : widen(a.h_x, 0)) xrows.push_back(v);
    for (auto& v : widen(b.h_x, a.n())) xrows.push_back(v);
    for (auto& v : widen(a.h_z, 0)) zrows.push_back(v);
    for (auto& v : widen(b.h_z, a.n())) zrows.push_back(v);
    u.h_x = BitMatrix::from_rows(xrows);
    u.h_z = BitMatrix::from_rows(zrows);
    u.qubit_coords = a.qubit_coords;
    for (Coord c : b.qubit_coords) u.qubit_coords.push_back(c + shift);
    u.xstab_coords = a.xstab_coords;
    for (Coord c : b.xstab_coords) u.xstab_coords.push_back(c + shift);
    u.zstab_coords = a.zstab_coords;
    for (Coord c : b.zstab_coords) u.zstab_coords.push_back(c + shift);
    return u;
}

// Block-diagonal basis of the two-block union code.
inline LogicalBasis union_basis(const LogicalBasis& a, const LogicalBasis& b) {
    std::size_t n1 = a.j_x.cols(), n2 = b.j_x.cols();
    std::vector<BitVector> jx, jz;
    auto widen = [&](const BitMatrix& m, std::size_t off, std::vector<BitVector>& out) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            BitVector v(n1 + n2);
            for (std::size_t c : m.row(r).support()) v.set(off + c, true);
            out.push_back(v);
        }
    };
    widen(a.j_x, 0, jx);
    widen(b.j_x, n1, jx);
    widen(a.j_z, 0, jz);
    widen(b.j_z, n1, jz);
    return LogicalBasis{BitMatrix::from_rows(jx), BitMatrix::from_rows(jz)};
}

inline CssCode dual_code(const CssCode& c) {
    CssCode d = c;
    std::swap(d.h_x, d.h_z);
    std::swap(d.xstab_coords, d.zstab_coords);
    return d;
}

inline BuiltCode dual_built(const BuiltCode& built) {
    BuiltCode d = built;
    std::swap(d.spec.tmpl.x_offsets, d.spec.tmpl.z_offsets);
    std::swap(d.spec.region_x, d.spec.region_z);
    d.code = dual_code(built.code);
    return d;
}

// Exchange X and Z roles of a deformed code; an involution.
inline DeformedCode dualize(const DeformedCode& def) {
    DeformedCode d = def;
    std::swap(d.hbar_x, d.hbar_z);
    std::swap(d.x_orig_rows, d.z_orig_rows);
    std::swap(d.xstab_coords, d.zstab_coords);
    d.base = dual_code(def.base);
    d.measured = def.measured == 'X' ? 'Z' : 'X';
    return d;
}

enum class JointOrientation { horizontal, vertical };

// Connect two blocks of the same family through an ancilla strip: the
// three-block intermediate for joint measurements. Horizontal joins bridge
// the rough boundaries and support X-type joint measurements; vertical
// joins are built on the dual and support Z-type joint measurements.
inline DeformedCode joint_connect(const BuiltCode& a, const BuiltCode& b,
                                  JointOrientation orientation, int separation) {
    if (separation < 1)
        throw std::invalid_argument("joint_connect: separation must be positive");
    auto same_offsets = [](std::vector<Coord> x, std::vector<Coord> y) {
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        return x == y;
    };
    if (!same_offsets(a.spec.tmpl.x_offsets, b.spec.tmpl.x_offsets) ||
        !same_offsets(a.spec.tmpl.z_offsets, b.spec.tmpl.z_offsets) ||
        a.spec.tmpl.tile_size != b.spec.tmpl.tile_size)
        throw std::invalid_argument("joint_connect: blocks are not from the same family");

    BuiltCode left = a, right = b;
    bool dual = orientation == JointOrientation::vertical;
    if (dual) {
        left = dual_built(a);
        right = dual_built(b);
    }
    // Work in an orientation where blocks are joined along x; for vertical
    // joins operate on the dual, whose rough boundaries are left/right.
    auto tp = [](PlanarBBSpec s) {
        for (auto* offs : {&s.tmpl.x_offsets, &s.tmpl.z_offsets})
            for (auto& c : *offs) std::swap(c.x, c.y);
        std::swap(s.region_x.x0, s.region_x.y0);
        std::swap(s.region_x.width, s.region_x.height);
        std::swap(s.region_z.x0, s.region_z.y0);
        std::swap(s.region_z.width, s.region_z.height);
        return s;
    };
    PlanarBBSpec sl = dual ? tp(left.spec) : left.spec;
    PlanarBBSpec sr = dual ? tp(right.spec) : right.spec;
    if (sl.region_x.y0 != sr.region_x.y0 || sl.region_x.height != sr.region_x.height ||
        sl.region_z.y0 != sr.region_z.y0 || sl.region_z.height != sr.region_z.height)
        throw std::invalid_argument("joint_connect: block cross-sections do not line up");

    int shift = sl.region_x.width + separation;   // sites from left block origin to right block origin
    PlanarBBSpec joint = sl;
    joint.region_x.width = shift + sr.region_x.width;
    joint.region_z.width = shift + sr.region_z.width +
                           (sr.region_z.x0 - sr.region_x.x0) / 2 -
                           (sl.region_z.x0 - sl.region_x.x0) / 2;
    // For vertical joins, `joint` lives in transposed coordinates; transpose
    // back so both the intermediate and the union base share one lattice.
    CssCode inter = build_planar_bb(dual ? tp(joint) : joint);

    Coord shift_coord = dual ? Coord{0, 2 * shift} : Coord{2 * shift, 0};
    CssCode base_union = union_code(left.code, right.code, shift_coord);
    DeformedCode def = detail::assemble_intermediate(base_union, inter);
    if (dual) def = dualize(def);    // back to the original convention, Z-type
    return def;
}

// The Z measurement pipeline: run the X pipeline on the dual code and
// dualize back ("a similar circuit can be used to measure Z logicals").
inline DeformedCode z_intermediate_by_duality(const BuiltCode& base, const StretchParams& p) {
    return dualize(make_intermediate(dual_built(base), p));
}

} // namespace codecraft

#endif
