// Versioned JSON serialization for every artifact the pipeline produces:
// code configs, built codes, deformed codes, logical bases, paint reports,
// schedules and logical networks. Check matrices are stored as sparse
// row-support lists.

#ifndef CODECRAFT_JSON_IO_HPP
#define CODECRAFT_JSON_IO_HPP

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "codecraft/basis_opt.hpp"
#include "codecraft/bb.hpp"
#include "codecraft/craft.hpp"
#include "codecraft/paint.hpp"
#include "codecraft/schedule.hpp"

namespace codecraft {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Craft parameters bundled with a code config: which rough boundary each
// pipeline stretches and the two-block separations discovered for it.
struct CraftParams {
    Boundary x_direction = Boundary::right;
    Boundary z_direction = Boundary::top;
    int s_xx = 0, s_zz = 0;
};

struct CodeConfig {
    PlanarBBSpec spec;
    CraftParams craft;
};

namespace jsonio {

inline void check_version(const json& j, const std::string& what) {
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kSchemaVersion)
        throw std::invalid_argument(what + ": missing or unsupported schema_version");
}

inline json coords_to_json(const std::vector<Coord>& coords) {
    json arr = json::array();
    for (Coord c : coords) arr.push_back({c.x, c.y});
    return arr;
}

inline std::vector<Coord> coords_from_json(const json& arr) {
    std::vector<Coord> out;
    for (const auto& c : arr) out.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
    return out;
}

inline json matrix_to_json(const BitMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r).support());
    return json{{"cols", m.cols()}, {"rows", rows}};
}

inline BitMatrix matrix_from_json(const json& j) {
    std::size_t cols = j.at("cols").get<std::size_t>();
    const json& rows = j.at("rows");
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c : rows[r].get<std::vector<std::size_t>>()) m.set(r, c, true);
    return m;
}

inline json vector_to_json(const BitVector& v) {
    return json{{"len", v.size()}, {"support", v.support()}};
}

inline BitVector vector_from_json(const json& j) {
    return BitVector::from_support(j.at("len").get<std::size_t>(),
                                   j.at("support").get<std::vector<std::size_t>>());
}

inline json rect_to_json(const Rect& r) {
    return json{{"x0", r.x0}, {"y0", r.y0}, {"width", r.width}, {"height", r.height}};
}

inline Rect rect_from_json(const json& j) {
    return Rect{j.at("x0").get<int>(), j.at("y0").get<int>(),
                j.at("width").get<int>(), j.at("height").get<int>()};
}

} // namespace jsonio

// ---- code config -----------------------------------------------------------

inline CodeConfig config_from_json(const json& j) {
    jsonio::check_version(j, "code config");
    CodeConfig cfg;
    cfg.spec.name = j.at("name").get<std::string>();
    cfg.spec.tmpl.tile_size = j.at("tile_size").get<int>();
    for (const auto& o : j.at("x_offsets"))
        cfg.spec.tmpl.x_offsets.push_back({o.at(0).get<int>(), o.at(1).get<int>()});
    for (const auto& o : j.at("z_offsets"))
        cfg.spec.tmpl.z_offsets.push_back({o.at(0).get<int>(), o.at(1).get<int>()});
    cfg.spec.region_x = jsonio::rect_from_json(j.at("region_x"));
    cfg.spec.region_z = jsonio::rect_from_json(j.at("region_z"));
    cfg.spec.validate();
    if (j.contains("craft")) {
        const json& c = j["craft"];
        auto dir = [&](const char* key, Boundary fallback) {
            if (!c.contains(key)) return fallback;
            auto b = boundary_from_name(c[key].get<std::string>());
            if (!b) throw std::invalid_argument("code config: bad boundary name");
            return *b;
        };
        cfg.craft.x_direction = dir("x_direction", Boundary::right);
        cfg.craft.z_direction = dir("z_direction", Boundary::top);
        cfg.craft.s_xx = c.value("s_xx", 0);
        cfg.craft.s_zz = c.value("s_zz", 0);
    }
    return cfg;
}

inline json config_to_json(const CodeConfig& cfg) {
    json xoffs = json::array(), zoffs = json::array();
    for (Coord c : cfg.spec.tmpl.x_offsets) xoffs.push_back({c.x, c.y});
    for (Coord c : cfg.spec.tmpl.z_offsets) zoffs.push_back({c.x, c.y});
    return json{{"schema_version", kSchemaVersion},
                {"name", cfg.spec.name},
                {"tile_size", cfg.spec.tmpl.tile_size},
                {"x_offsets", xoffs},
                {"z_offsets", zoffs},
                {"region_x", jsonio::rect_to_json(cfg.spec.region_x)},
                {"region_z", jsonio::rect_to_json(cfg.spec.region_z)},
                {"craft",
                 {{"x_direction", boundary_name(cfg.craft.x_direction)},
                  {"z_direction", boundary_name(cfg.craft.z_direction)},
                  {"s_xx", cfg.craft.s_xx},
                  {"s_zz", cfg.craft.s_zz}}}};
}

// ---- built code ------------------------------------------------------------

inline json code_to_json(const CssCode& code, const std::string& name) {
    return json{{"schema_version", kSchemaVersion},
                {"name", name},
                {"n", code.n()},
                {"h_x", jsonio::matrix_to_json(code.h_x)},
                {"h_z", jsonio::matrix_to_json(code.h_z)},
                {"qubit_coords", jsonio::coords_to_json(code.qubit_coords)},
                {"xstab_coords", jsonio::coords_to_json(code.xstab_coords)},
                {"zstab_coords", jsonio::coords_to_json(code.zstab_coords)}};
}

inline CssCode code_from_json(const json& j) {
    jsonio::check_version(j, "code");
    CssCode code;
    code.h_x = jsonio::matrix_from_json(j.at("h_x"));
    code.h_z = jsonio::matrix_from_json(j.at("h_z"));
    code.qubit_coords = jsonio::coords_from_json(j.at("qubit_coords"));
    code.xstab_coords = jsonio::coords_from_json(j.at("xstab_coords"));
    code.zstab_coords = jsonio::coords_from_json(j.at("zstab_coords"));
    if (code.qubit_coords.size() != code.h_x.cols() || code.h_z.cols() != code.h_x.cols())
        throw std::invalid_argument("code: inconsistent dimensions");
    return code;
}

// ---- deformed code ---------------------------------------------------------

inline json deformed_to_json(const DeformedCode& def, std::size_t intermediate_ancilla) {
    json j{{"schema_version", kSchemaVersion},
           {"measured", std::string(1, def.measured)},
           {"n_base", def.n_base()},
           {"n_total", def.n_total()},
           {"ancilla_size", def.ancilla_size()},
           {"intermediate_ancilla", intermediate_ancilla},
           {"hbar_x", jsonio::matrix_to_json(def.hbar_x)},
           {"hbar_z", jsonio::matrix_to_json(def.hbar_z)},
           {"x_orig_rows", def.x_orig_rows},
           {"z_orig_rows", def.z_orig_rows},
           {"qubit_coords", jsonio::coords_to_json(def.qubit_coords)},
           {"xstab_coords", jsonio::coords_to_json(def.xstab_coords)},
           {"zstab_coords", jsonio::coords_to_json(def.zstab_coords)},
           {"base", code_to_json(def.base, "base")}};
    if (def.g_mask) j["g_mask"] = jsonio::vector_to_json(*def.g_mask);
    if (def.target.size() > 0) j["target"] = jsonio::vector_to_json(def.target);
    if (def.unmeasured.rows() > 0) j["unmeasured"] = jsonio::matrix_to_json(def.unmeasured);
    return j;
}

inline DeformedCode deformed_from_json(const json& j) {
    jsonio::check_version(j, "deformed code");
    DeformedCode def;
    def.measured = j.at("measured").get<std::string>().at(0);
    def.base = code_from_json(j.at("base"));
    def.hbar_x = jsonio::matrix_from_json(j.at("hbar_x"));
    def.hbar_z = jsonio::matrix_from_json(j.at("hbar_z"));
    def.x_orig_rows = j.at("x_orig_rows").get<std::size_t>();
    def.z_orig_rows = j.at("z_orig_rows").get<std::size_t>();
    def.qubit_coords = jsonio::coords_from_json(j.at("qubit_coords"));
    def.xstab_coords = jsonio::coords_from_json(j.at("xstab_coords"));
    def.zstab_coords = jsonio::coords_from_json(j.at("zstab_coords"));
    if (j.contains("g_mask")) def.g_mask = jsonio::vector_from_json(j["g_mask"]);
    if (j.contains("target")) def.target = jsonio::vector_from_json(j["target"]);
    if (j.contains("unmeasured")) def.unmeasured = jsonio::matrix_from_json(j["unmeasured"]);
    return def;
}

// ---- logical basis ---------------------------------------------------------

inline json basis_to_json(const LogicalBasis& basis, int s_xx, int s_zz) {
    return json{{"schema_version", kSchemaVersion},
                {"k", basis.k()},
                {"j_x", jsonio::matrix_to_json(basis.j_x)},
                {"j_z", jsonio::matrix_to_json(basis.j_z)},
                {"provenance", {{"s_xx", s_xx}, {"s_zz", s_zz}}}};
}

inline LogicalBasis basis_from_json(const json& j) {
    jsonio::check_version(j, "basis");
    return LogicalBasis{jsonio::matrix_from_json(j.at("j_x")),
                        jsonio::matrix_from_json(j.at("j_z"))};
}

// ---- distance report -------------------------------------------------------

inline json distance_report_to_json(const DistanceReport& r) {
    return json{{"value", r.value},
                {"exact", r.exact},
                {"side", std::string(1, r.side)},
                {"trials", r.trials},
                {"seed", r.seed}};
}

// ---- paint report ----------------------------------------------------------

inline json paint_report_to_json(const std::string& target_label, std::size_t intermediate_ancilla,
                                 const DistanceReport& pre, const DistanceReport& post,
                                 std::size_t d_th, const StorageSet& storages) {
    json st = json::array();
    for (const Storage& s : storages.storages)
        st.push_back({{"u", jsonio::vector_to_json(s.u)},
                      {"j_z", jsonio::vector_to_json(s.j_z)},
                      {"h_z", jsonio::vector_to_json(s.h_z)},
                      {"beta", jsonio::vector_to_json(s.beta)}});
    return json{{"schema_version", kSchemaVersion},
                {"target", target_label},
                {"ancilla_size", intermediate_ancilla},
                {"d_th", d_th},
                {"pre_paint_distance", distance_report_to_json(pre)},
                {"post_paint_distance", distance_report_to_json(post)},
                {"storages", st}};
}

// ---- schedules and networks -------------------------------------------------

inline json schedule_to_json(const Schedule& s) {
    json steps = json::array();
    for (const auto& st : s.steps) {
        const char* kind = st.kind == StepKind::init_plus ? "init"
                           : st.kind == StepKind::joint_measure ? "joint_measure"
                           : st.kind == StepKind::single_measure ? "single_measure"
                                                                 : "pauli_frame";
        steps.push_back({{"op", kind},
                         {"operands", st.operands},
                         {"basis", std::string(1, st.basis)},
                         {"rounds", st.rounds}});
    }
    json corr = json::array();
    for (const auto& c : s.corrections)
        corr.push_back({{"pauli", std::string(1, c.pauli)},
                        {"on", c.on},
                        {"outcome_of", c.outcome_of}});
    return json{{"schema_version", kSchemaVersion},
                {"kind", s.kind},
                {"steps", steps},
                {"corrections", corr}};
}

inline LogicalNetwork network_from_json(const json& j) {
    jsonio::check_version(j, "network");
    LogicalNetwork net;
    net.blocks = j.at("blocks").get<std::vector<std::string>>();
    for (const auto& c : j.at("couplings")) {
        LogicalNetwork::Coupling cp;
        cp.a = c.at("a").get<std::string>();
        cp.b = c.at("b").get<std::string>();
        for (const auto& t : c.at("types")) {
            std::string s = t.get<std::string>();
            if (s == "XX") cp.xx = true;
            else if (s == "ZZ") cp.zz = true;
            else throw std::invalid_argument("network: coupling type must be XX or ZZ");
        }
        cp.d_t = c.value("d_t", 1);
        net.couplings.push_back(cp);
    }
    return net;
}

// ---- file helpers ----------------------------------------------------------

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void save_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace codecraft

#endif
