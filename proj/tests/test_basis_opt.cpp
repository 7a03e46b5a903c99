#include <doctest.h>

#include "codecraft/basis_opt.hpp"
#include "codecraft/json_io.hpp"
#include "fixtures.hpp"

using namespace codecraft;

TEST_CASE("joint intermediates carry the three-block structure") {
    CodeConfig cfg = fixtures::load_config("54");
    BuiltCode base = build_planar(cfg.spec);
    JointIntermediates ji = build_joint_intermediates(base, cfg.craft.s_xx, cfg.craft.s_zz);
    const std::size_t n = base.code.n();

    CHECK(ji.hxx.hbar_x.mul(ji.hxx.hbar_z.transpose()).is_zero());
    CHECK(ji.hzz.hbar_x.mul(ji.hzz.hbar_z.transpose()).is_zero());
    CHECK(ji.hxx.n_base() == 2 * n);
    CHECK(ji.hzz.n_base() == 2 * n);

    // new X rows of the horizontal join may straddle, new Z rows must not
    // touch either block (the zero blocks of the three-block form)
    for (std::size_t r = ji.hxx.z_orig_rows; r < ji.hxx.hbar_z.rows(); ++r)
        for (std::size_t c = 0; c < 2 * n; ++c)
            CHECK(!ji.hxx.hbar_z.get(r, c));
    // and symmetrically for the vertical join's new X rows
    for (std::size_t r = ji.hzz.x_orig_rows; r < ji.hzz.hbar_x.rows(); ++r)
        for (std::size_t c = 0; c < 2 * n; ++c)
            CHECK(!ji.hzz.hbar_x.get(r, c));

    CHECK_THROWS_AS((void)build_joint_intermediates(base, 0, cfg.craft.s_zz),
                    std::invalid_argument);
}

TEST_CASE("find_joint_x_pair returns a verified pair for the bundled separation") {
    CodeConfig cfg = fixtures::load_config("54");
    BuiltCode base = build_planar(cfg.spec);
    JointIntermediates ji = build_joint_intermediates(base, cfg.craft.s_xx, cfg.craft.s_zz);
    auto pair = find_joint_x_pair(ji, base.code);
    REQUIRE(pair.has_value());
    const std::size_t n = base.code.n();
    // independent re-verification of conditions (i)-(iii)
    CHECK(!base.code.h_z.mul_vec(pair->first).any());
    CHECK(!base.code.h_z.mul_vec(pair->second).any());
    BitMatrix stacked = BitMatrix::vstack(base.code.h_x,
                                          BitMatrix::from_rows({pair->first, pair->second}));
    CHECK(rank(stacked) == rank(base.code.h_x) + 2);
    BitVector joint(ji.hxx.n_total());
    for (std::size_t i : pair->first.support()) joint.set(i, true);
    for (std::size_t i : pair->second.support()) joint.set(n + i, true);
    CHECK(in_rowspace(ji.hxx.hbar_x, joint));
}

TEST_CASE("disconnected blocks admit no joint pair") {
    CodeConfig cfg = fixtures::load_config("54");
    BuiltCode base = build_planar(cfg.spec);
    const std::size_t n = base.code.n();
    // a fake intermediate whose X matrix is block diagonal: no straddle rows
    JointIntermediates ji;
    ji.hxx.base = union_code(base.code, base.code, {200, 0});
    ji.hxx.hbar_x = ji.hxx.base.h_x;
    ji.hxx.hbar_z = ji.hxx.base.h_z;
    ji.hxx.qubit_coords = ji.hxx.base.qubit_coords;
    ji.hxx.x_orig_rows = ji.hxx.hbar_x.rows();
    ji.hxx.z_orig_rows = ji.hxx.hbar_z.rows();
    CHECK(ji.hxx.n_total() == 2 * n);
    CHECK(!find_joint_x_pair(ji, base.code).has_value());
}

TEST_CASE("solve_pairing produces orthogonal independent Z logicals") {
    CodeConfig cfg = fixtures::load_config("54");
    BuiltCode base = build_planar(cfg.spec);
    JointIntermediates ji = build_joint_intermediates(base, cfg.craft.s_xx, cfg.craft.s_zz);
    auto pair = find_joint_x_pair(ji, base.code);
    REQUIRE(pair.has_value());
    PairingSolution sol = solve_pairing(ji, *pair, base.code);
    CHECK(sol.q.any());
    // the four orthogonality products vanish
    CHECK(!sol.j_z3.dot(sol.j_x1));
    CHECK(!sol.j_z3.dot(sol.j_x2));
    CHECK(!sol.j_z4.dot(sol.j_x1));
    CHECK(!sol.j_z4.dot(sol.j_x2));
    // qA_L, qA_R independent of the Z stabilizers
    BitMatrix stacked = BitMatrix::vstack(base.code.h_z,
                                          BitMatrix::from_rows({sol.j_z3, sol.j_z4}));
    CHECK(rank(stacked) == rank(base.code.h_z) + 2);
    // every A row lives in the rowspace of the vertical join's Z matrix
    const std::size_t n = base.code.n();
    for (std::size_t l = 0; l < sol.a_left.rows(); ++l) {
        BitVector full(ji.hzz.n_total());
        for (std::size_t i : sol.a_left.row(l).support()) full.set(i, true);
        for (std::size_t i : sol.a_right.row(l).support()) full.set(n + i, true);
        CHECK(in_rowspace(ji.hzz.hbar_z, full));
    }
}

TEST_CASE("optimize_basis yields the identity pairing with usable joint channels") {
    CodeConfig cfg = fixtures::load_config("54");
    BuiltCode base = build_planar(cfg.spec);
    LogicalBasis basis = optimize_basis(base, cfg.craft.s_xx, cfg.craft.s_zz);
    REQUIRE(basis.k() == 6);
    CHECK(basis.j_x.mul(basis.j_z.transpose()) == BitMatrix::identity(6));
    for (std::size_t a = 0; a < basis.k(); ++a) {
        CHECK(!base.code.h_z.mul_vec(basis.j_x.row(a)).any());
        CHECK(!in_rowspace(base.code.h_x, basis.j_x.row(a)));
        CHECK(!base.code.h_x.mul_vec(basis.j_z.row(a)).any());
        CHECK(!in_rowspace(base.code.h_z, basis.j_z.row(a)));
    }

    // joint measurability witnesses for X0 (x) X1 and Z2 (x) Z3
    JointIntermediates ji = build_joint_intermediates(base, cfg.craft.s_xx, cfg.craft.s_zz);
    const std::size_t n = base.code.n();
    BitVector jx(ji.hxx.n_total());
    for (std::size_t i : basis.j_x.row(0).support()) jx.set(i, true);
    for (std::size_t i : basis.j_x.row(1).support()) jx.set(n + i, true);
    CHECK(in_rowspace(ji.hxx.hbar_x, jx));
    BitVector jz(ji.hzz.n_total());
    for (std::size_t i : basis.j_z.row(2).support()) jz.set(i, true);
    for (std::size_t i : basis.j_z.row(3).support()) jz.set(n + i, true);
    CHECK(in_rowspace(ji.hzz.hbar_z, jz));
}

TEST_CASE("optimize_basis requires at least four logical qubits") {
    BuiltCode surface{build_planar_bb(fixtures::surface_spec(3)), fixtures::surface_spec(3), {}};
    CHECK_THROWS_AS((void)optimize_basis(surface, 2, 2), std::invalid_argument);
}
