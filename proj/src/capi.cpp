#include "sticktile.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "json.hpp"
#include "sticktile/ab.hpp"
#include "sticktile/geometry.hpp"
#include "sticktile/schematic.hpp"
#include "sticktile/state_compiler.hpp"
#include "sticktile/stick.hpp"
#include "sticktile/wang.hpp"

using nlohmann::json;
using namespace sticktile;

struct st_pipeline {
    std::size_t cap = 10000;
    int torus_w = 2, torus_h = 2;
    int window_rows = 0, window_cols = 0;
    bool toy = false;
    unsigned long long seed = 0;
    std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int code_of(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::verification_failure: return 2;
        case ErrorKind::cap_exceeded: return 3;
        default: return 4;
    }
}

json report_json(const std::vector<schematic::Violation>& violations) {
    json j;
    j["ok"] = violations.empty();
    j["violations"] = json::array();
    for (const auto& v : violations)
        j["violations"].push_back({{"what", v.what}, {"row", v.row}, {"col", v.col}});
    return j;
}

schematic::GapAssignment windowed(const st_pipeline& p, const schematic::GapAssignment& a) {
    if (!a.periodic) return a;
    int rows = p.window_rows > 0 ? p.window_rows : static_cast<int>(a.rows.size());
    int cols = p.window_cols > 0 ? p.window_cols
                                 : static_cast<int>(a.rows.empty() ? 0 : a.rows[0].gaps.size());
    return schematic::materialize_window(a, rows, cols);
}

stick::RuleSet load_rules(const json& in, int& n) {
    return stick::rules_from_json(in.at("rules").dump(), n);
}

json run_op(st_pipeline* p, const std::string& op, const json& in) {
    if (op == "wang_to_ab") {
        auto wanginst = wang::WangInstance::from_json(in.at("wang").dump());
        return json::parse(ab::compile_wang_to_ab(wanginst).to_json());
    }
    if (op == "solve_wang") {
        auto wanginst = wang::WangInstance::from_json(in.at("wang").dump());
        wang::SolveOptions opts{p->cap, in.value("wrap", true)};
        auto result = wang::solve_torus(wanginst, in.value("w", p->torus_w),
                                        in.value("h", p->torus_h), opts);
        if (result.cap_exceeded)
            fail(ErrorKind::cap_exceeded, "wang solver hit the solution cap");
        return json::parse(wang::tilings_to_json(result));
    }
    if (op == "solve_ab") {
        auto abinst = ab::ABInstance::from_json(in.at("ab").dump());
        auto result = ab::solve_torus(abinst, in.value("w", p->torus_w),
                                      in.value("h", p->torus_h), {p->cap});
        if (result.cap_exceeded) fail(ErrorKind::cap_exceeded, "ab solver hit the solution cap");
        return json::parse(ab::tilings_to_json(result));
    }
    if (op == "verify_bijection") {
        auto wanginst = wang::WangInstance::from_json(in.at("wang").dump());
        auto rep = ab::verify_wang_ab_bijection(wanginst, in.value("w", p->torus_w),
                                                in.value("h", p->torus_h), p->cap);
        if (rep.cap_exceeded) fail(ErrorKind::cap_exceeded, "bijection check hit the cap");
        if (!rep.ok)
            fail(ErrorKind::verification_failure,
                 "bijection check failed: " + (rep.issues.empty() ? "" : rep.issues.front()));
        return json::parse(rep.to_json());
    }
    if (op == "build_table") {
        auto abinst = ab::ABInstance::from_json(in.at("ab").dump());
        auto ct = statecomp::build_state_table(abinst);
        json out;
        out["table"] = json::parse(ct.table.to_json());
        out["layout"] = {{"t", ct.layout.t},   {"k", ct.layout.k},   {"d", ct.layout.d},
                         {"v", ct.layout.v},   {"s", ct.layout.s},   {"e1", ct.layout.e1},
                         {"e15", ct.layout.e15}, {"e2", ct.layout.e2}, {"e3", ct.layout.e3},
                         {"e35", ct.layout.e35}, {"e4", ct.layout.e4}};
        return out;
    }
    if (op == "solve_to_assignment") {
        auto abinst = ab::ABInstance::from_json(in.at("ab").dump());
        auto result = ab::solve_torus(abinst, in.value("w", p->torus_w),
                                      in.value("h", p->torus_h), {p->cap});
        if (result.cap_exceeded) fail(ErrorKind::cap_exceeded, "ab solver hit the solution cap");
        if (result.tilings.empty())
            fail(ErrorKind::verification_failure, "instance admits no torus tiling at this size");
        auto assign = statecomp::fill_assignment_from_ab(abinst, result.tilings.front());
        auto ct = statecomp::build_state_table(abinst);
        auto violations = schematic::check_gap_conditions(assign, ct.table);
        if (!violations.empty())
            fail(ErrorKind::verification_failure,
                 "filled assignment violates the gap conditions: " + violations.front().what);
        json out;
        out["assignment"] = json::parse(assign.to_json());
        json t;
        t["w"] = result.tilings.front().width;
        t["h"] = result.tilings.front().height;
        t["a"] = result.tilings.front().a;
        t["b"] = result.tilings.front().b;
        out["tiling"] = t;
        return out;
    }
    if (op == "fill_assignment" || op == "decode_assignment") {
        auto abinst = ab::ABInstance::from_json(in.at("ab").dump());
        if (op == "fill_assignment") {
            const json& jt = in.at("tiling");
            ab::ABTorusTiling tiling{jt.at("w").get<int>(), jt.at("h").get<int>(),
                                     jt.at("a").get<std::vector<int>>(),
                                     jt.at("b").get<std::vector<int>>()};
            auto assign = statecomp::fill_assignment_from_ab(abinst, tiling);
            return json::parse(assign.to_json());
        }
        auto assign = schematic::GapAssignment::from_json(in.at("assignment").dump());
        auto tiling = statecomp::decode_assignment_to_ab(abinst, assign);
        json t;
        t["w"] = tiling.width;
        t["h"] = tiling.height;
        t["a"] = tiling.a;
        t["b"] = tiling.b;
        return t;
    }
    if (op == "check_assignment") {
        auto table = schematic::StateTable::from_json(in.at("table").dump());
        auto assign = schematic::GapAssignment::from_json(in.at("assignment").dump());
        auto violations = schematic::check_gap_conditions(assign, table);
        if (!violations.empty())
            fail(ErrorKind::verification_failure,
                 "gap conditions violated: " + violations.front().what + " (row " +
                     std::to_string(violations.front().row) + ", col " +
                     std::to_string(violations.front().col) + ")");
        return report_json(violations);
    }
    if (op == "assignment_to_schematic") {
        auto table = schematic::StateTable::from_json(in.at("table").dump());
        auto assign = schematic::GapAssignment::from_json(in.at("assignment").dump());
        auto sch = schematic::assignment_to_schematic(windowed(*p, assign), table);
        return json::parse(sch.to_json());
    }
    if (op == "schematic_to_assignment") {
        auto table = schematic::StateTable::from_json(in.at("table").dump());
        auto sch = schematic::Schematic::from_json(in.at("schematic").dump());
        return json::parse(schematic::schematic_to_assignment(sch, table).to_json());
    }
    if (op == "validate_schematic") {
        auto table = schematic::StateTable::from_json(in.at("table").dump());
        auto sch = schematic::Schematic::from_json(in.at("schematic").dump());
        auto violations = schematic::validate_schematic(sch, table);
        if (!violations.empty())
            fail(ErrorKind::verification_failure,
                 "schematic invalid: " + violations.front().what);
        return report_json(violations);
    }
    if (op == "base_rules") {
        int n = in.at("n").get<int>();
        return json::parse(stick::rules_to_json(stick::Labels(n), stick::base_rules(n)));
    }
    if (op == "marking_rules") {
        auto table = schematic::StateTable::from_json(in.at("table").dump());
        auto layout = schematic::bucket_layout(table);
        int n = table.block_len() + 1;
        auto rules = stick::marking_rules(layout, n);
        if (in.value("include_base", true))
            for (auto pr : stick::base_rules(n)) rules.insert(pr);
        return json::parse(stick::rules_to_json(stick::Labels(n), rules));
    }
    if (op == "synthesize_weave") {
        auto table = schematic::StateTable::from_json(in.at("table").dump());
        auto sch = schematic::Schematic::from_json(in.at("schematic").dump());
        return json::parse(stick::patch_to_json(stick::synthesize_weave(sch, table)));
    }
    if (op == "check_patch") {
        int n = 0;
        auto rules = load_rules(in, n);
        auto patch = stick::patch_from_json(in.at("patch").dump());
        auto violations = stick::check_patch(n, patch, rules);
        if (!violations.empty())
            fail(ErrorKind::verification_failure, "patch invalid: " + violations.front().what);
        json out;
        out["ok"] = true;
        out["placements"] = patch.size();
        json census = json::array();
        for (int rot : stick::orientation_census(patch)) census.push_back(rot);
        out["orientations"] = census;
        return out;
    }
    if (op == "solve_stick") {
        int n = 0;
        auto rules = load_rules(in, n);
        std::vector<stick::Placement> seeds;
        if (in.contains("seeds")) seeds = stick::patch_from_json(in.at("seeds").dump());
        std::set<stick::Cell> region;
        if (in.at("region").contains("radius")) {
            region = stick::hex_region(in.at("region").at("radius").get<long long>());
        } else {
            for (const json& c : in.at("region").at("cells"))
                region.insert({c.at("q").get<long long>(), c.at("r").get<long long>()});
        }
        stick::TilerOptions opts;
        opts.max_solutions = p->cap;
        auto result = stick::backtracking_tiler(region, n, rules, seeds, opts);
        if (result.cap_exceeded || result.budget_exceeded)
            fail(ErrorKind::cap_exceeded, result.cap_exceeded
                                              ? "stick tiler hit the solution cap"
                                              : "stick tiler hit the node budget");
        json out;
        out["count"] = result.completions.size();
        out["completions"] = json::array();
        for (const auto& comp : result.completions)
            out["completions"].push_back(json::parse(stick::patch_to_json(comp)));
        return out;
    }
    if (op == "encode_check") {
        int n = 0;
        auto rules = load_rules(in, n);
        auto enc = geom::encode_spots(rules, n);
        stick::Labels labels(n);
        json matrix = json::array();
        bool consistent = true;
        for (int i = 1; i <= enc.edge_count; ++i) {
            json row = json::array();
            for (int j = 1; j <= enc.edge_count; ++j) {
                bool ok = geom::compatible(enc, i, j);
                row.push_back(ok);
                if (ok == stick::forbids(rules, i - 1, j - 1)) consistent = false;
            }
            matrix.push_back(row);
        }
        json out;
        out["edges"] = enc.edge_count;
        out["spots"] = enc.spot_count;
        out["compatible"] = matrix;
        out["matches_rules"] = consistent;
        if (!consistent)
            fail(ErrorKind::verification_failure,
                 "spot encoding disagrees with the matching rules");
        return out;
    }
    if (op == "build_geometry" || op == "verify_planar" || op == "emit_svg") {
        int n = 0;
        auto rules = load_rules(in, n);
        require(n <= 60, ErrorKind::unsupported,
                "geometry runs at desk scale only (stick length <= 60); use --toy tables");
        auto patch = stick::patch_from_json(in.at("patch").dump());
        auto enc = geom::encode_spots(rules, n);
        auto tiles = geom::build_polygons(n, enc);
        auto positioned = geom::instantiate_patch(patch, rules, tiles);
        if (op == "emit_svg") {
            geom::SvgOptions opts;
            opts.scale = in.value("scale", 40.0);
            json out;
            out["svg"] = geom::emit_svg(positioned, opts);
            return out;
        }
        auto rep = geom::verify_planar(positioned);
        if (op == "verify_planar" && !rep.ok)
            fail(ErrorKind::verification_failure,
                 "planarity check failed: " + rep.issues.front());
        if (op == "build_geometry") {
            json out = json::parse(geom::polygons_to_json(positioned.polys));
            out["sticks"] = positioned.stick_count;
            out["staples"] = positioned.staple_count;
            out["planar_ok"] = rep.ok;
            return out;
        }
        return json::parse(rep.to_json());
    }
    if (op == "staple_check") {
        auto rep = geom::staple_surround_check();
        if (rep.surroundable)
            fail(ErrorKind::verification_failure, "staple unexpectedly surrounds a vertex");
        return json::parse(rep.to_json());
    }
    fail(ErrorKind::unsupported, "unknown operation: " + op);
}

}  // namespace

extern "C" {

const char* st_version(void) { return "sticktile 1.0"; }

st_pipeline* st_pipeline_new(void) { return new st_pipeline(); }

void st_pipeline_free(st_pipeline* p) { delete p; }

int st_pipeline_set_option(st_pipeline* p, const char* key, const char* value) {
    if (!p || !key || !value) return 4;
    try {
        std::string k = key;
        if (k == "cap")
            p->cap = std::stoull(value);
        else if (k == "torus_w")
            p->torus_w = std::stoi(value);
        else if (k == "torus_h")
            p->torus_h = std::stoi(value);
        else if (k == "window_rows")
            p->window_rows = std::stoi(value);
        else if (k == "window_cols")
            p->window_cols = std::stoi(value);
        else if (k == "toy")
            p->toy = std::stoi(value) != 0;
        else if (k == "seed")
            p->seed = std::stoull(value);
        else {
            p->last_error = "unknown option: " + k;
            return 4;
        }
    } catch (const std::exception& e) {
        p->last_error = e.what();
        return 4;
    }
    return 0;
}

int st_op(st_pipeline* p, const char* op, const char* input_json, char** output_json) {
    if (!p || !op || !output_json) return 4;
    *output_json = nullptr;
    try {
        json in = (input_json && *input_json) ? json::parse(input_json) : json::object();
        json out = run_op(p, op, in);
        *output_json = dup_string(out.dump(2));
        p->last_error.clear();
        return 0;
    } catch (const Error& e) {
        p->last_error = e.what();
        return code_of(e.kind());
    } catch (const json::exception& e) {
        p->last_error = e.what();
        return 4;
    } catch (const std::exception& e) {
        p->last_error = e.what();
        return 1;
    }
}

const char* st_last_error(const st_pipeline* p) {
    return p ? p->last_error.c_str() : "null pipeline";
}

void st_string_free(char* s) { std::free(s); }

}  // extern "C"
