#include <doctest.h>

#include <algorithm>
#include <set>

#include "codecraft/bb.hpp"
#include "codecraft/craft.hpp"
#include "fixtures.hpp"

using namespace codecraft;

TEST_CASE("bundled configs build the advertised code parameters") {
    struct Expect { const char* name; std::size_t n, k; };
    for (Expect e : {Expect{"54", 54, 6}, Expect{"180", 180, 6}, Expect{"162", 162, 8}}) {
        CodeConfig cfg = fixtures::load_config(e.name);
        CssCode code = build_planar_bb(cfg.spec);
        CAPTURE(e.name);
        CHECK(code.n() == e.n);
        CHECK(logical_count(code) == e.k);
        CHECK(validate_css(code));
        // no all-zero stabilizers, and every qubit is covered by both types
        for (std::size_t r = 0; r < code.h_x.rows(); ++r) CHECK(code.h_x.row_any(r));
        for (std::size_t r = 0; r < code.h_z.rows(); ++r) CHECK(code.h_z.row_any(r));
        for (std::size_t c = 0; c < code.n(); ++c) {
            bool in_x = false, in_z = false;
            for (std::size_t r = 0; r < code.h_x.rows() && !in_x; ++r) in_x = code.h_x.get(r, c);
            for (std::size_t r = 0; r < code.h_z.rows() && !in_z; ++r) in_z = code.h_z.get(r, c);
            CHECK(in_x);
            CHECK(in_z);
        }
    }
}

TEST_CASE("validate_css flags a single flipped bit") {
    CodeConfig cfg = fixtures::load_config("54");
    CssCode code = build_planar_bb(cfg.spec);
    CHECK(validate_css(code));
    code.h_x.set(0, 0, !code.h_x.get(0, 0));   // any flip breaks some pair
    CHECK(!validate_css(code));
}

TEST_CASE("empty stabilizer sets are vacuously CSS") {
    CssCode c;
    c.h_x = BitMatrix(0, 4);
    c.h_z = BitMatrix(0, 4);
    CHECK(validate_css(c));
}

TEST_CASE("degenerate builds produce clear errors") {
    PlanarBBSpec s;
    s.name = "degenerate";
    s.tmpl.tile_size = 1;
    s.tmpl.x_offsets = {{1, 0}};
    s.tmpl.z_offsets = {{0, 1}};
    s.region_x = {0, 0, 1, 1};
    s.region_z = {0, 0, 1, 1};
    // single-offset templates over 1x1 regions share no qubit: empty set
    CHECK_THROWS_AS((void)build_planar_bb(s), std::invalid_argument);

    s.region_x = {0, 0, 0, 1};
    CHECK_THROWS_AS((void)build_planar_bb(s), std::invalid_argument);
}

TEST_CASE("non-commuting boundary stabilizers are reported by anchor") {
    // The surface-code X template against a shifted plaquette template
    // commutes in the bulk but not under this truncation.
    PlanarBBSpec s;
    s.name = "bad";
    s.tmpl.tile_size = 1;
    s.tmpl.x_offsets = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    s.tmpl.z_offsets = {{1, 0}, {0, 1}};  // half a plaquette: anticommutes at edges
    s.region_x = {0, 0, 3, 3};
    s.region_z = {0, 0, 3, 3};
    CHECK_THROWS_WITH_AS((void)build_planar_bb(s), doctest::Contains("non-commuting"),
                         std::runtime_error);
}

TEST_CASE("logical_count on fixtures") {
    CHECK(logical_count(fixtures::steane()) == 1);
    CssCode trivial;   // k = 0: two qubits, one X and one Z check
    trivial.h_x = BitMatrix(1, 2);
    trivial.h_x.set(0, 0, true);
    trivial.h_x.set(0, 1, true);
    trivial.h_z = trivial.h_x;
    CHECK(validate_css(trivial));
    CHECK(logical_count(trivial) == 0);
    CHECK_THROWS_AS((void)canonical_logicals(trivial), std::invalid_argument);
}

TEST_CASE("canonical_logicals gives a symplectic basis") {
    SUBCASE("bundled 54 code") {
        CodeConfig cfg = fixtures::load_config("54");
        CssCode code = build_planar_bb(cfg.spec);
        LogicalBasis basis = canonical_logicals(code);
        REQUIRE(basis.k() == 6);
        CHECK(basis.j_x.mul(basis.j_z.transpose()) == BitMatrix::identity(6));
        // every logical is in the right kernel and outside the stabilizers
        for (std::size_t a = 0; a < 6; ++a) {
            CHECK(!code.h_z.mul_vec(basis.j_x.row(a)).any());
            CHECK(!in_rowspace(code.h_x, basis.j_x.row(a)));
            CHECK(!code.h_x.mul_vec(basis.j_z.row(a)).any());
            CHECK(!in_rowspace(code.h_z, basis.j_z.row(a)));
        }
    }
    SUBCASE("steane code has weight-3 representatives") {
        CssCode code = fixtures::steane();
        LogicalBasis basis = canonical_logicals(code);
        REQUIRE(basis.k() == 1);
        CHECK(basis.j_x.mul(basis.j_z.transpose()) == BitMatrix::identity(1));
        // exhaustive oracle over the kernel/rowspace quotient: min weight 3
        std::size_t best_x = 99;
        for (int mask = 1; mask < 128; ++mask) {
            BitVector v(7);
            for (int b = 0; b < 7; ++b)
                if (mask >> b & 1) v.set(b, true);
            if (!code.h_z.mul_vec(v).any() && !in_rowspace(code.h_x, v))
                best_x = std::min(best_x, v.weight());
        }
        CHECK(best_x == 3);
        CHECK(basis.j_x.row(0).weight() >= 3);
    }
}

TEST_CASE("translation property: shifted regions relabel the same code") {
    CodeConfig cfg = fixtures::load_config("54");
    CssCode a = build_planar_bb(cfg.spec);
    PlanarBBSpec moved = cfg.spec;
    moved.region_x.x0 += 4; moved.region_x.y0 += 6;
    moved.region_z.x0 += 4; moved.region_z.y0 += 6;
    CssCode b = build_planar_bb(moved);
    REQUIRE(a.n() == b.n());
    // row-major coordinate ordering is translation covariant, so the
    // matrices must agree bit for bit
    CHECK(a.h_x == b.h_x);
    CHECK(a.h_z == b.h_z);
    for (std::size_t i = 0; i < a.n(); ++i) {
        CHECK(b.qubit_coords[i].x - a.qubit_coords[i].x == 4);
        CHECK(b.qubit_coords[i].y - a.qubit_coords[i].y == 6);
    }
}
