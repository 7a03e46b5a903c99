#include <doctest.h>

#include <algorithm>

#include "codecraft/craft.hpp"
#include "codecraft/distance.hpp"
#include "fixtures.hpp"

using namespace codecraft;

namespace {

BuiltCode built54() { return build_planar(fixtures::load_config("54").spec); }

} // namespace

TEST_CASE("stretch validates its inputs") {
    BuiltCode base = built54();
    CHECK_THROWS_AS((void)stretch(base, {Boundary::left, 0}), std::invalid_argument);
    // top/bottom are smooth for this config: the X region overhangs there
    CHECK_THROWS_WITH_AS((void)stretch(base, {Boundary::top, 2}), doctest::Contains("rough"),
                         std::invalid_argument);
    BuiltCode s = stretch(base, {Boundary::left, 4});
    CHECK(s.code.n() > base.code.n());
    CHECK(s.moved == Boundary::left);
}

TEST_CASE("z_cut needs a stretched code and a matching tile size") {
    BuiltCode base = built54();
    CHECK_THROWS_WITH_AS((void)z_cut(base, 3), doctest::Contains("moved boundary"),
                         std::invalid_argument);
    BuiltCode s = stretch(base, {Boundary::left, 4});
    CHECK_THROWS_AS((void)z_cut(s, 2), std::invalid_argument);
    BuiltCode cut = z_cut(s, 3);
    CHECK(logical_count(cut.code) == 0);   // the intermediate stores nothing
    CHECK(validate_css(cut.code));
}

TEST_CASE("intermediate ancilla sizes follow the 14 + 12t series") {
    BuiltCode base = built54();
    std::vector<std::size_t> anc;
    for (int t = 4; t <= 7; ++t)
        anc.push_back(make_intermediate(base, {Boundary::left, t}).ancilla_size());
    CHECK(anc == std::vector<std::size_t>{14, 26, 38, 50});
}

TEST_CASE("every base X logical has a channel in the intermediate") {
    BuiltCode base = built54();
    LogicalBasis basis = canonical_logicals(base.code);
    DeformedCode inter = make_intermediate(base, {Boundary::left, 4});
    CHECK(inter.ancilla_size() == 14);
    CHECK(inter.hbar_x.mul(inter.hbar_z.transpose()).is_zero());
    for (std::size_t a = 0; a < basis.k(); ++a) {
        auto ch = measurement_channel(inter, basis.j_x.row(a));
        REQUIRE(ch.has_value());
        // g * hbar_x reproduces (j, 0) exactly
        BitVector lhs = inter.hbar_x.mul_left(ch->g);
        BitVector expect = detail::embed_base_vector(basis.j_x.row(a), inter.n_total());
        CHECK(lhs == expect);
    }
    // a stabilizer product has a channel with the new rows unused
    auto ch = measurement_channel(inter, base.code.h_x.row(0));
    REQUIRE(ch.has_value());
    CHECK(!ch->g_n().any());
}

TEST_CASE("measurement_channel rejects vectors outside the kernel") {
    BuiltCode base = built54();
    DeformedCode inter = make_intermediate(base, {Boundary::left, 4});
    BitVector junk(base.code.n());
    junk.set(0, true);   // a single qubit anticommutes with some Z check
    CHECK_THROWS_AS((void)measurement_channel(inter, junk), std::invalid_argument);
}

TEST_CASE("cutting_rule is idempotent and prunes one-sided qubits") {
    SUBCASE("already closed code is unchanged") {
        CssCode code = built54().code;
        CssCode cut = cutting_rule(code);
        CHECK(cut.h_x == code.h_x);
        CHECK(cut.h_z == code.h_z);
    }
    SUBCASE("a qubit seen only by a Z check is removed") {
        CssCode c;
        c.h_x = BitMatrix(1, 3);
        c.h_x.set(0, 0, true);
        c.h_x.set(0, 1, true);
        c.h_z = BitMatrix(2, 3);
        c.h_z.set(0, 0, true);
        c.h_z.set(0, 1, true);
        c.h_z.set(1, 2, true);   // qubit 2 has no X support
        c.qubit_coords = {{1, 0}, {3, 0}, {5, 0}};
        c.xstab_coords = {{0, 0}};
        c.zstab_coords = {{2, 0}, {4, 0}};
        CssCode cut = cutting_rule(c);
        CHECK(cut.n() == 2);
        CHECK(cut.h_z.rows() == 1);   // the emptied Z check disappeared
        CHECK(cut.h_x.rows() == 1);
        CssCode again = cutting_rule(cut);
        CHECK(again.h_x == cut.h_x);
        CHECK(again.h_z == cut.h_z);
    }
}

TEST_CASE("x_cut produces a verified deformed code") {
    BuiltCode base = built54();
    LogicalBasis basis = canonical_logicals(base.code);
    DeformedCode inter = make_intermediate(base, {Boundary::left, 4});

    SUBCASE("single target") {
        DeformedCode def = x_cut(inter, basis.j_x.row(0), basis);
        CHECK(def.hbar_x.mul(def.hbar_z.transpose()).is_zero());
        CHECK(in_rowspace(def.hbar_x,
                          detail::embed_base_vector(basis.j_x.row(0), def.n_total())));
        REQUIRE(def.g_mask.has_value());
        CHECK(def.unmeasured.rows() == 5);
        // unmeasured logicals stay independent of the measured stabilizer group
        for (std::size_t a = 0; a < def.unmeasured.rows(); ++a)
            CHECK(!in_rowspace(def.hbar_x,
                               detail::embed_base_vector(def.unmeasured.row(a), def.n_total())));
        // base columns survive cutting untouched
        for (std::size_t i = 0; i < def.n_base(); ++i)
            CHECK(def.qubit_coords[i] == base.code.qubit_coords[i]);
    }
    SUBCASE("product target X0X1 measures the product") {
        BitVector prod = basis.j_x.row(0) ^ basis.j_x.row(1);
        DeformedCode def = x_cut(inter, prod, basis);
        CHECK(in_rowspace(def.hbar_x, detail::embed_base_vector(prod, def.n_total())));
        // neither factor alone is measured
        CHECK(!in_rowspace(def.hbar_x,
                           detail::embed_base_vector(basis.j_x.row(0), def.n_total())));
    }
    SUBCASE("target outside the basis span is rejected") {
        CHECK_THROWS_AS((void)x_cut(inter, base.code.h_x.row(0), basis), std::invalid_argument);
    }
}

TEST_CASE("z pipeline by duality") {
    BuiltCode base = built54();
    LogicalBasis basis = canonical_logicals(base.code);
    SUBCASE("ancilla series 15 + 9t and a measured Z target") {
        std::vector<std::size_t> anc;
        for (int t = 4; t <= 6; ++t)
            anc.push_back(z_intermediate_by_duality(base, {Boundary::bottom, t}).ancilla_size());
        CHECK(anc == std::vector<std::size_t>{15, 24, 33});
        DeformedCode inter = z_intermediate_by_duality(base, {Boundary::bottom, 4});
        CHECK(inter.measured == 'Z');
        DeformedCode def = x_cut(inter, basis.j_z.row(0), basis);
        CHECK(in_rowspace(def.hbar_z, detail::embed_base_vector(basis.j_z.row(0), def.n_total())));
    }
    SUBCASE("dualizing twice is the identity") {
        DeformedCode inter = make_intermediate(base, {Boundary::left, 4});
        DeformedCode twice = dualize(dualize(inter));
        CHECK(twice.hbar_x == inter.hbar_x);
        CHECK(twice.hbar_z == inter.hbar_z);
        CHECK(twice.measured == inter.measured);
        CHECK(twice.x_orig_rows == inter.x_orig_rows);
    }
}

TEST_CASE("two-block connection") {
    BuiltCode base = built54();
    SUBCASE("horizontal join at the bundled separation has ancilla 78") {
        DeformedCode hxx = joint_connect(base, base, JointOrientation::horizontal, 8);
        CHECK(hxx.ancilla_size() == 78);
        CHECK(hxx.n_base() == 108);
        CHECK(hxx.hbar_x.mul(hxx.hbar_z.transpose()).is_zero());
    }
    SUBCASE("vertical join has ancilla 54 and measures Z-type") {
        DeformedCode hzz = joint_connect(base, base, JointOrientation::vertical, 8);
        CHECK(hzz.ancilla_size() == 54);
        CHECK(hzz.measured == 'Z');
    }
    SUBCASE("invalid separations and families are rejected") {
        CHECK_THROWS_AS((void)joint_connect(base, base, JointOrientation::horizontal, 0),
                        std::invalid_argument);
        BuiltCode other = build_planar(fixtures::load_config("162").spec);
        CHECK_THROWS_WITH_AS((void)joint_connect(base, other, JointOrientation::horizontal, 8),
                             doctest::Contains("family"), std::invalid_argument);
    }
    SUBCASE("non-joint logicals have no channel in the joint intermediate") {
        DeformedCode hxx = joint_connect(base, base, JointOrientation::horizontal, 8);
        LogicalBasis basis = canonical_logicals(base.code);
        std::size_t n = base.code.n();
        // a single-block logical extended by zeros on the other block
        BitVector lone(2 * n);
        for (std::size_t i : basis.j_x.row(0).support()) lone.set(i, true);
        bool some_absent = !measurement_channel(hxx, lone).has_value();
        for (std::size_t a = 1; a < basis.k() && !some_absent; ++a) {
            BitVector v(2 * n);
            for (std::size_t i : basis.j_x.row(a).support()) v.set(i, true);
            some_absent = !measurement_channel(hxx, v).has_value();
        }
        CHECK(some_absent);
    }
}
