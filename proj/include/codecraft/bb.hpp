// Planar bivariate-bicycle code construction from template stabilizers.
//
// Geometry: stabilizer anchors live on the even-even points of a doubled
// integer lattice; qubits live on edges, i.e. odd-even points (horizontal
// edges) and even-odd points (vertical edges). A template is the set of
// displacements from an anchor to the qubits its stabilizer acts on. A
// planar code is produced by placing the X template at every site of one
// rectangle and the Z template at every site of another, then applying
// the cutting rule: qubits touched by only one stabilizer type are
// removed, and stabilizers left with empty support are dropped.

#ifndef CODECRAFT_BB_HPP
#define CODECRAFT_BB_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "codecraft/gf2.hpp"

namespace codecraft {

struct Coord {
    int x = 0;
    int y = 0;
    friend bool operator==(const Coord& a, const Coord& b) { return a.x == b.x && a.y == b.y; }
    // Row-major order: y first, then x. Fixes qubit/stabilizer indexing.
    friend bool operator<(const Coord& a, const Coord& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
    Coord operator+(const Coord& o) const { return {x + o.x, y + o.y}; }
};

inline bool is_site(Coord c) { return (c.x % 2 == 0) && (c.y % 2 == 0); }
inline bool is_edge(Coord c) {
    bool ox = c.x & 1, oy = c.y & 1;
    return ox != oy;
}

struct Rect {
    int x0 = 0, y0 = 0;   // anchor of the lowest site, doubled coordinates (even)
    int width = 0, height = 0;  // extent in sites
    bool degenerate() const { return width < 1 || height < 1; }
};

struct TemplateSpec {
    int tile_size = 1;                // lattice period B of the template pattern
    std::vector<Coord> x_offsets;     // qubit displacements of the X template
    std::vector<Coord> z_offsets;

    void validate() const {
        if (tile_size < 1) throw std::invalid_argument("template: tile_size must be >= 1");
        if (x_offsets.empty() || z_offsets.empty())
            throw std::invalid_argument("template: offset sets must be non-empty");
        for (const auto& offs : {x_offsets, z_offsets})
            for (Coord c : offs)
                if (!is_edge(c))
                    throw std::invalid_argument("template: offset (" + std::to_string(c.x) + "," +
                                                std::to_string(c.y) + ") is not an edge displacement");
    }
};

struct PlanarBBSpec {
    std::string name;
    TemplateSpec tmpl;
    Rect region_x, region_z;

    void validate() const {
        tmpl.validate();
        if (region_x.degenerate() || region_z.degenerate())
            throw std::invalid_argument("planar spec: regions must be non-degenerate");
        if (region_x.x0 % 2 || region_x.y0 % 2 || region_z.x0 % 2 || region_z.y0 % 2)
            throw std::invalid_argument("planar spec: region origins must be even (site) coordinates");
    }
};

struct CssCode {
    BitMatrix h_x, h_z;
    std::vector<Coord> qubit_coords;   // optional layout metadata
    std::vector<Coord> xstab_coords, zstab_coords;

    std::size_t n() const { return h_x.cols(); }
};

struct LogicalBasis {
    BitMatrix j_x, j_z;   // k x n each; j_x * j_z^T = identity
    std::size_t k() const { return j_x.rows(); }
};

namespace detail {

inline std::vector<Coord> region_sites(const Rect& r) {
    std::vector<Coord> sites;
    sites.reserve(static_cast<std::size_t>(r.width) * r.height);
    for (int j = 0; j < r.height; ++j)
        for (int i = 0; i < r.width; ++i)
            sites.push_back({r.x0 + 2 * i, r.y0 + 2 * j});
    return sites;
}

} // namespace detail

inline bool validate_css(const CssCode& code) {
    return code.h_x.mul(code.h_z.transpose()).is_zero();
}

// Build the planar code; throws on non-commuting boundary stabilizers or
// an empty qubit set. When `check` is false the CSS test is skipped and
// left to the caller (used by parameter scans).
inline CssCode build_planar_bb(const PlanarBBSpec& spec, bool check = true) {
    spec.validate();
    std::vector<Coord> xsites = detail::region_sites(spec.region_x);
    std::vector<Coord> zsites = detail::region_sites(spec.region_z);

    std::map<Coord, int> cover;  // +1 bit: touched by X, +2 bit: touched by Z
    for (Coord s : xsites)
        for (Coord o : spec.tmpl.x_offsets) cover[s + o] |= 1;
    for (Coord s : zsites)
        for (Coord o : spec.tmpl.z_offsets) cover[s + o] |= 2;

    // Cutting rule: keep qubits acted on by both stabilizer types.
    std::map<Coord, std::size_t> qubit_index;
    std::vector<Coord> qubits;
    for (const auto& [coord, mask] : cover) {
        if (mask == 3) {
            qubit_index.emplace(coord, qubits.size());
            qubits.push_back(coord);
        }
    }
    if (qubits.empty())
        throw std::invalid_argument("build_planar_bb: regions produce an empty qubit set");

    auto place = [&](const std::vector<Coord>& sites, const std::vector<Coord>& offsets,
                     std::vector<Coord>& kept_sites) {
        std::vector<BitVector> rows;
        for (Coord s : sites) {
            BitVector row(qubits.size());
            bool nonzero = false;
            for (Coord o : offsets) {
                auto it = qubit_index.find(s + o);
                if (it != qubit_index.end()) {
                    row.set(it->second, true);
                    nonzero = true;
                }
            }
            if (nonzero) {   // stabilizers with empty support are dropped
                rows.push_back(row);
                kept_sites.push_back(s);
            }
        }
        return BitMatrix::from_rows(rows);
    };

    CssCode code;
    code.qubit_coords = qubits;
    code.h_x = place(xsites, spec.tmpl.x_offsets, code.xstab_coords);
    code.h_z = place(zsites, spec.tmpl.z_offsets, code.zstab_coords);
    if (code.h_x.rows() == 0 || code.h_z.rows() == 0)
        throw std::invalid_argument("build_planar_bb: a stabilizer type is entirely absent");

    if (check && !validate_css(code)) {
        for (std::size_t i = 0; i < code.h_x.rows(); ++i)
            for (std::size_t j = 0; j < code.h_z.rows(); ++j)
                if (code.h_x.row(i).dot(code.h_z.row(j)))
                    throw std::runtime_error(
                        "build_planar_bb: non-commuting stabilizers, X at (" +
                        std::to_string(code.xstab_coords[i].x) + "," +
                        std::to_string(code.xstab_coords[i].y) + ") vs Z at (" +
                        std::to_string(code.zstab_coords[j].x) + "," +
                        std::to_string(code.zstab_coords[j].y) + ")");
    }
    return code;
}

inline std::size_t logical_count(const CssCode& code) {
    return code.n() - rank(code.h_x) - rank(code.h_z);
}

namespace detail {

// Extract rows of `candidates` that are independent modulo rowspace(mod).
// Returns exactly `want` rows (throws if the quotient is too small).
inline BitMatrix quotient_basis(const BitMatrix& candidates, const BitMatrix& mod, std::size_t want) {
    std::vector<BitVector> picked;
    BitMatrix accum = mod;
    std::size_t base_rank = rank(mod);
    for (std::size_t r = 0; r < candidates.rows() && picked.size() < want; ++r) {
        BitMatrix trial = BitMatrix::vstack(accum, BitMatrix::from_rows({candidates.row(r)}));
        if (rank(trial) > base_rank + picked.size()) {
            picked.push_back(candidates.row(r));
            accum = trial;
        }
    }
    if (picked.size() != want)
        throw std::runtime_error("quotient_basis: candidate set spans too small a quotient");
    return BitMatrix::from_rows(picked);
}

} // namespace detail

// Any symplectic logical basis: k X logicals from ker(h_z)/rowsp(h_x),
// k Z logicals from ker(h_x)/rowsp(h_z), row-reduced so the pairing
// matrix j_x * j_z^T is exactly the identity.
inline LogicalBasis canonical_logicals(const CssCode& code) {
    std::size_t k = logical_count(code);
    if (k == 0) throw std::invalid_argument("canonical_logicals: no logical qubits");
    BitMatrix jx = detail::quotient_basis(kernel_basis(code.h_z), code.h_x, k);
    BitMatrix jz = detail::quotient_basis(kernel_basis(code.h_x), code.h_z, k);

    // Pairing matrix is invertible for any valid CSS quotient basis.
    BitMatrix pairing = jx.mul(jz.transpose());
    RrefResult rr = rref(pairing);
    if (rr.pivot_cols.size() != k)
        throw std::runtime_error("canonical_logicals: degenerate symplectic pairing");
    // rr.transform = pairing^{-1}; set j_z <- pairing^{-T} j_z so that
    // j_x (A j_z)^T = pairing A^T = identity.
    BitMatrix adjusted = rr.transform.transpose().mul(jz);
    return LogicalBasis{jx, adjusted};
}

} // namespace codecraft

#endif
