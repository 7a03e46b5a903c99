#include <doctest.h>

#include <string>

#include "codecraft/json_io.hpp"
#include "codecraft/svg.hpp"
#include "fixtures.hpp"

using namespace codecraft;

namespace {

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = hay.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

} // namespace

TEST_CASE("built codes round-trip through JSON bit-identically") {
    CodeConfig cfg = fixtures::load_config("54");
    CssCode code = build_planar_bb(cfg.spec);
    json j = code_to_json(code, cfg.spec.name);
    CssCode back = code_from_json(j);
    CHECK(back.h_x == code.h_x);
    CHECK(back.h_z == code.h_z);
    CHECK(back.qubit_coords == code.qubit_coords);
    CHECK(back.xstab_coords == code.xstab_coords);
    CHECK(back.zstab_coords == code.zstab_coords);
}

TEST_CASE("config serialization round-trips") {
    CodeConfig cfg = fixtures::load_config("54");
    CodeConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.spec.name == cfg.spec.name);
    CHECK(back.spec.tmpl.x_offsets.size() == cfg.spec.tmpl.x_offsets.size());
    CHECK(back.craft.s_xx == cfg.craft.s_xx);
    CHECK(boundary_name(back.craft.x_direction) ==
          std::string(boundary_name(cfg.craft.x_direction)));
    CssCode a = build_planar_bb(cfg.spec);
    CssCode b = build_planar_bb(back.spec);
    CHECK(a.h_x == b.h_x);
    CHECK(a.h_z == b.h_z);
}

TEST_CASE("deformed codes round-trip through JSON") {
    CodeConfig cfg = fixtures::load_config("54");
    BuiltCode base = build_planar(cfg.spec);
    LogicalBasis basis = canonical_logicals(base.code);
    DeformedCode inter = make_intermediate(base, {cfg.craft.x_direction, 4});
    DeformedCode def = x_cut(inter, basis.j_x.row(0), basis);
    DeformedCode back = deformed_from_json(deformed_to_json(def, inter.ancilla_size()));
    CHECK(back.hbar_x == def.hbar_x);
    CHECK(back.hbar_z == def.hbar_z);
    CHECK(back.measured == def.measured);
    CHECK(back.x_orig_rows == def.x_orig_rows);
    CHECK(back.target == def.target);
    CHECK(back.unmeasured == def.unmeasured);
    REQUIRE(back.g_mask.has_value());
    CHECK(*back.g_mask == *def.g_mask);
}

TEST_CASE("basis round-trip preserves the pairing") {
    CodeConfig cfg = fixtures::load_config("54");
    BuiltCode base = build_planar(cfg.spec);
    LogicalBasis basis = canonical_logicals(base.code);
    LogicalBasis back = basis_from_json(basis_to_json(basis, 8, 8));
    CHECK(back.j_x == basis.j_x);
    CHECK(back.j_z == basis.j_z);
}

TEST_CASE("schema_version is mandatory") {
    json j = {{"name", "x"}};
    CHECK_THROWS_AS((void)config_from_json(j), std::invalid_argument);
    json c = code_to_json(fixtures::steane(), "steane");
    c.erase("schema_version");
    CHECK_THROWS_AS((void)code_from_json(c), std::invalid_argument);
}

TEST_CASE("network parsing and plan serialization") {
    json j = {{"schema_version", 1},
              {"blocks", {"a", "b"}},
              {"couplings", {{{"a", "a"}, {"b", "b"}, {"types", {"ZZ"}}, {"d_t", 3}}}}};
    LogicalNetwork net = network_from_json(j);
    REQUIRE(net.couplings.size() == 1);
    CHECK(net.couplings[0].zz);
    CHECK(!net.couplings[0].xx);
    CHECK(net.couplings[0].d_t == 3);
    Schedule s = plan_transfer(net, "a", "b");
    json sj = schedule_to_json(s);
    CHECK(sj["kind"] == "transfer");
    CHECK(sj["steps"].size() == 4);
    CHECK(sj["corrections"].size() == 2);
}

TEST_CASE("svg glyph counts equal the matrix dimensions") {
    CodeConfig cfg = fixtures::load_config("54");
    CssCode code = build_planar_bb(cfg.spec);
    std::string svg = render_svg(code);
    CHECK(count_occurrences(svg, "class=\"qubit\"") == code.n());
    CHECK(count_occurrences(svg, "class=\"xstab\"") == code.h_x.rows());
    CHECK(count_occurrences(svg, "class=\"zstab\"") == code.h_z.rows());
    CHECK(count_occurrences(svg, "class=\"unused\"") > 0);

    BuiltCode base = build_planar(cfg.spec);
    LogicalBasis basis = canonical_logicals(base.code);
    DeformedCode def = x_cut(make_intermediate(base, {cfg.craft.x_direction, 4}),
                             basis.j_x.row(0), basis);
    std::string dsvg = render_svg(def);
    CHECK(count_occurrences(dsvg, "class=\"qubit\"") == def.n_total());
    CHECK(count_occurrences(dsvg, "class=\"unused\"") > 0);

    CssCode empty;
    CHECK_THROWS_AS((void)render_svg(empty), std::invalid_argument);
}
