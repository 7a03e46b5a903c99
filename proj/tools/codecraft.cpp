// codecraft: build planar BB codes, run the craft/paint/distance pipelines,
// optimize logical bases, plan logical-level schedules, render lattices.
//
// Exit codes: 0 success, 1 algorithmic failure (painting failure, missing
// channel, verification failure), 2 input/configuration error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "codecraft/basis_opt.hpp"
#include "codecraft/bb.hpp"
#include "codecraft/craft.hpp"
#include "codecraft/distance.hpp"
#include "codecraft/json_io.hpp"
#include "codecraft/paint.hpp"
#include "codecraft/schedule.hpp"
#include "codecraft/svg.hpp"

namespace {

using namespace codecraft;

struct TargetSpec {
    char type = 'X';
    std::vector<std::size_t> indices;
    bool joint = false;   // two-block measurement (one index per block)
};

TargetSpec parse_target(const std::string& s) {
    TargetSpec t;
    if (s.empty() || (s[0] != 'X' && s[0] != 'Z'))
        throw std::invalid_argument("target must look like X0, Z3, X0X1 or X0*X1");
    t.type = s[0];
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '*') {
            t.joint = true;
            ++i;
            continue;
        }
        if (s[i] != t.type)
            throw std::invalid_argument("target mixes X and Z factors: " + s);
        std::size_t j = i + 1, val = 0;
        if (j >= s.size() || !isdigit(s[j]))
            throw std::invalid_argument("target index missing in: " + s);
        while (j < s.size() && isdigit(s[j])) val = val * 10 + (s[j++] - '0');
        t.indices.push_back(val);
        i = j;
    }
    if (t.indices.empty()) throw std::invalid_argument("target has no indices: " + s);
    if (t.joint && t.indices.size() != 2)
        throw std::invalid_argument("joint target needs exactly two factors: " + s);
    return t;
}

LogicalBasis resolve_basis(const BuiltCode& built, const CodeConfig& cfg,
                           const std::string& basis_path) {
    if (!basis_path.empty()) return basis_from_json(load_json(basis_path));
    if (cfg.craft.s_xx > 0 && cfg.craft.s_zz > 0)
        return optimize_basis(built, cfg.craft.s_xx, cfg.craft.s_zz);
    return canonical_logicals(built.code);
}

struct CraftedTarget {
    DeformedCode def;
    std::size_t intermediate_ancilla = 0;
    std::string label;
};

// Build the deformed code measuring `target` with the requested
// intermediate ancilla size (single-block) or the configured separations
// (two-block joint measurements).
CraftedTarget craft_target(const BuiltCode& built, const CodeConfig& cfg,
                           const LogicalBasis& basis, const TargetSpec& t,
                           std::size_t ancilla, const std::string& direction) {
    CraftedTarget out;
    const BitMatrix& jmat = t.type == 'X' ? basis.j_x : basis.j_z;
    for (std::size_t idx : t.indices)
        if (idx >= jmat.rows())
            throw std::invalid_argument("target index exceeds logical count");
    if (t.joint) {
        int sep = t.type == 'X' ? cfg.craft.s_xx : cfg.craft.s_zz;
        if (sep <= 0) throw std::invalid_argument("config has no separation for joint targets");
        DeformedCode inter = joint_connect(built, built,
                                           t.type == 'X' ? JointOrientation::horizontal
                                                         : JointOrientation::vertical,
                                           sep);
        out.intermediate_ancilla = inter.ancilla_size();
        if (ancilla != 0 && ancilla != out.intermediate_ancilla)
            throw std::invalid_argument(
                "joint intermediate has ancilla size " + std::to_string(out.intermediate_ancilla) +
                ", not " + std::to_string(ancilla));
        std::size_t n = built.code.n();
        BitVector target(2 * n);
        for (std::size_t i : jmat.row(t.indices[0]).support()) target.set(i, true);
        for (std::size_t i : jmat.row(t.indices[1]).support()) target.set(n + i, true);
        out.def = x_cut(inter, target, union_basis(basis, basis));
        return out;
    }
    Boundary dir = t.type == 'X' ? cfg.craft.x_direction : cfg.craft.z_direction;
    if (!direction.empty()) {
        auto b = boundary_from_name(direction);
        if (!b) throw std::invalid_argument("unknown boundary: " + direction);
        dir = *b;
    }
    BitVector target(built.code.n());
    for (std::size_t idx : t.indices) target.xor_inplace(jmat.row(idx));
    // Map the requested ancilla size onto a stretch length. Short stretches
    // may not survive the Z cut; skip them.
    std::string seen;
    for (int tiles = 1; tiles <= 256; ++tiles) {
        DeformedCode inter;
        try {
            inter = t.type == 'X' ? make_intermediate(built, {dir, tiles})
                                  : z_intermediate_by_duality(built, {dir, tiles});
        } catch (const std::exception&) {
            continue;
        }
        if (inter.ancilla_size() == 0) continue;
        if (ancilla == 0 || inter.ancilla_size() == ancilla) {
            out.intermediate_ancilla = inter.ancilla_size();
            out.def = x_cut(inter, target, basis);
            return out;
        }
        if (inter.ancilla_size() > ancilla)
            throw std::invalid_argument("no stretch yields ancilla size " + std::to_string(ancilla) +
                                        " (nearby sizes: " + seen + std::to_string(inter.ancilla_size()) + ")");
        seen += std::to_string(inter.ancilla_size()) + " ";
    }
    throw std::invalid_argument("no stretch yields ancilla size " + std::to_string(ancilla));
}

void write_or_print(const json& j, const std::string& out) {
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        save_json(j, out);
}

void write_text(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::invalid_argument("cannot write " + out);
    f << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"code craft for planar bivariate-bicycle codes"};
    app.require_subcommand(1);

    std::string config_path, out_path, in_path, basis_path, target_str, format = "json";
    std::string kind, operands_str, pauli = "Z", network_path, direction;
    std::size_t ancilla = 0, dth = 1, limit = 5;
    std::uint64_t budget = 10000, seed = 1;
    int rounds = 0;
    bool verify = false;

    auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
        if (needs_config)
            cmd->add_option("--config", config_path, "code config JSON")->required();
        cmd->add_option("--out", out_path, "output path (default: stdout)");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--budget", budget, "randomized search rounds");
        cmd->add_option("--limit", limit, "exhaustive search weight cap");
    };

    auto* cbuild = app.add_subcommand("build", "construct a planar BB code");
    add_common(cbuild);
    cbuild->add_option("--format", format, "json or svg");

    auto* ccraft = app.add_subcommand("craft", "produce a deformed code for a logical target");
    add_common(ccraft);
    ccraft->add_option("--target", target_str, "X0, Z3, X0X1 or X0*X1")->required();
    ccraft->add_option("--ancilla", ancilla, "intermediate ancilla size");
    ccraft->add_option("--basis", basis_path, "logical basis JSON (default: optimized)");
    ccraft->add_option("--direction", direction, "stretch boundary override");

    auto* cpaint = app.add_subcommand("paint", "optimize storages to a target distance");
    add_common(cpaint);
    cpaint->add_option("--target", target_str, "logical target")->required();
    cpaint->add_option("--ancilla", ancilla, "intermediate ancilla size");
    cpaint->add_option("--dth", dth, "target dressed distance")->required();
    cpaint->add_option("--basis", basis_path, "logical basis JSON");
    cpaint->add_option("--direction", direction, "stretch boundary override");

    auto* cdist = app.add_subcommand("distance", "code distance of the base code");
    add_common(cdist);

    auto* cbasis = app.add_subcommand("basis", "optimize the logical basis (two-block channels)");
    add_common(cbasis);

    auto* cplan = app.add_subcommand("plan", "plan a logical-level schedule");
    cplan->add_option("--config", network_path, "logical network JSON")->required();
    cplan->add_option("--kind", kind, "cnot, transfer or measure")->required();
    cplan->add_option("--target", operands_str, "comma-separated logical ids")->required();
    cplan->add_option("--pauli", pauli, "basis for measure plans (X or Z)");
    cplan->add_option("--rounds", rounds, "rounds for measure plans");
    cplan->add_flag("--verify", verify, "check the schedule on the stabilizer simulator");
    cplan->add_option("--out", out_path, "output path");

    auto* crender = app.add_subcommand("render", "render a lattice as SVG");
    crender->add_option("--config", config_path, "code config JSON");
    crender->add_option("--in", in_path, "built code or deformed code JSON");
    crender->add_option("--out", out_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        SearchBudget search{limit, budget, seed, 0};

        if (cbuild->parsed()) {
            CodeConfig cfg = config_from_json(load_json(config_path));
            BuiltCode built = build_planar(cfg.spec);
            if (format == "svg") {
                write_text(render_svg(built.code), out_path);
            } else {
                json j = code_to_json(built.code, cfg.spec.name);
                j["k"] = logical_count(built.code);
                write_or_print(j, out_path);
            }
            std::fprintf(stderr, "%s: n=%zu k=%zu\n", cfg.spec.name.c_str(), built.code.n(),
                         logical_count(built.code));
        } else if (ccraft->parsed()) {
            CodeConfig cfg = config_from_json(load_json(config_path));
            BuiltCode built = build_planar(cfg.spec);
            LogicalBasis basis = resolve_basis(built, cfg, basis_path);
            TargetSpec t = parse_target(target_str);
            CraftedTarget crafted = craft_target(built, cfg, basis, t, ancilla, direction);
            write_or_print(deformed_to_json(crafted.def, crafted.intermediate_ancilla), out_path);
            std::fprintf(stderr, "%s %s: intermediate ancilla %zu, deformed columns %zu\n",
                         cfg.spec.name.c_str(), target_str.c_str(), crafted.intermediate_ancilla,
                         crafted.def.n_total());
        } else if (cpaint->parsed()) {
            CodeConfig cfg = config_from_json(load_json(config_path));
            BuiltCode built = build_planar(cfg.spec);
            LogicalBasis basis = resolve_basis(built, cfg, basis_path);
            TargetSpec t = parse_target(target_str);
            CraftedTarget crafted = craft_target(built, cfg, basis, t, ancilla, direction);
            LogicalBasis def_basis = t.joint ? union_basis(basis, basis) : basis;
            StorageSet init = constrained_kernel_basis(crafted.def);
            DistanceReport pre = dressed_distance(crafted.def, init, search);
            PaintConfig pc{dth, search};
            StorageSet painted = paint(crafted.def, init, pc);   // may throw PaintFailure
            DistanceReport post = dressed_distance(crafted.def, painted, search);
            StorageSet full = extract_storages(painted, crafted.def, def_basis);
            write_or_print(paint_report_to_json(target_str, crafted.intermediate_ancilla, pre,
                                                post, dth, full),
                           out_path);
            std::fprintf(stderr, "%s %s @%zu: pre %zu, post %zu (d_th %zu)\n",
                         cfg.spec.name.c_str(), target_str.c_str(), crafted.intermediate_ancilla,
                         pre.value, post.value, dth);
        } else if (cdist->parsed()) {
            CodeConfig cfg = config_from_json(load_json(config_path));
            BuiltCode built = build_planar(cfg.spec);
            if (budget > 0)
                std::fprintf(stderr, "searching: exhaustive to weight %zu, then %llu randomized rounds per side\n",
                             limit, static_cast<unsigned long long>(budget));
            auto [dx, dz] = css_distance_sides(built.code, search);
            DistanceReport overall = css_distance(built.code, search);
            json j = distance_report_to_json(overall);
            j["schema_version"] = kSchemaVersion;
            j["x_side"] = distance_report_to_json(dx);
            j["z_side"] = distance_report_to_json(dz);
            write_or_print(j, out_path);
            std::fprintf(stderr, "%s: d=%zu (%s)\n", cfg.spec.name.c_str(), overall.value,
                         overall.exact ? "exact" : "upper bound");
        } else if (cbasis->parsed()) {
            CodeConfig cfg = config_from_json(load_json(config_path));
            if (cfg.craft.s_xx <= 0 || cfg.craft.s_zz <= 0)
                throw std::invalid_argument("config lacks s_xx/s_zz separations");
            BuiltCode built = build_planar(cfg.spec);
            LogicalBasis basis = optimize_basis(built, cfg.craft.s_xx, cfg.craft.s_zz);
            write_or_print(basis_to_json(basis, cfg.craft.s_xx, cfg.craft.s_zz), out_path);
            std::fprintf(stderr, "%s: %zu logical pairs, pairing = identity\n",
                         cfg.spec.name.c_str(), basis.k());
        } else if (cplan->parsed()) {
            LogicalNetwork net = network_from_json(load_json(network_path));
            std::vector<std::string> ops;
            std::size_t pos = 0;
            while (pos <= operands_str.size()) {
                std::size_t comma = operands_str.find(',', pos);
                if (comma == std::string::npos) comma = operands_str.size();
                if (comma > pos) ops.push_back(operands_str.substr(pos, comma - pos));
                pos = comma + 1;
            }
            Schedule sched;
            if (kind == "cnot") {
                if (ops.size() != 3)
                    throw std::invalid_argument("cnot needs control,target,ancilla");
                sched = plan_cnot(net, ops[0], ops[1], ops[2]);
                if (verify) {
                    std::string why;
                    if (!verify_cnot_schedule(sched, ops[0], ops[1], ops[2], &why))
                        throw std::runtime_error("schedule verification failed: " + why);
                }
            } else if (kind == "transfer") {
                if (ops.size() != 2) throw std::invalid_argument("transfer needs source,destination");
                sched = plan_transfer(net, ops[0], ops[1]);
                if (verify) {
                    std::string why;
                    if (!verify_transfer_schedule(sched, ops[0], ops[1], &why))
                        throw std::runtime_error("schedule verification failed: " + why);
                }
            } else if (kind == "measure") {
                if (ops.size() != 1) throw std::invalid_argument("measure needs one logical id");
                sched = plan_measure(net, ops[0], pauli.at(0), rounds > 0 ? rounds : 1);
            } else {
                throw std::invalid_argument("plan kind must be cnot, transfer or measure");
            }
            write_or_print(schedule_to_json(sched), out_path);
        } else if (crender->parsed()) {
            std::string svg;
            if (!in_path.empty()) {
                json j = load_json(in_path);
                if (j.contains("hbar_x"))
                    svg = render_svg(deformed_from_json(j));
                else
                    svg = render_svg(code_from_json(j));
            } else if (!config_path.empty()) {
                CodeConfig cfg = config_from_json(load_json(config_path));
                svg = render_svg(build_planar_bb(cfg.spec));
            } else {
                throw std::invalid_argument("render needs --config or --in");
            }
            write_text(svg, out_path);
        }
        return 0;
    } catch (const PaintFailure& e) {
        std::fprintf(stderr, "painting failure: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
