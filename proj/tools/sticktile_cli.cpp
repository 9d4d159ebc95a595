// Command-line driver for the sticktile pipeline. Talks to the shared
// library exclusively through the C interface.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sticktile.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct PipelineDeleter {
    void operator()(st_pipeline* p) const { st_pipeline_free(p); }
};
using Pipeline = std::unique_ptr<st_pipeline, PipelineDeleter>;

int g_exit = 0;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        std::exit(4);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        std::exit(4);
    }
    out << content;
    std::cout << "wrote " << path.string() << "\n";
}

// Runs one operation; on failure prints the diagnostic and exits with the
// library's code.
json run(st_pipeline* p, const std::string& op, const json& in) {
    char* out = nullptr;
    int rc = st_op(p, op.c_str(), in.dump().c_str(), &out);
    if (rc != 0) {
        std::cerr << "error (" << op << "): " << st_last_error(p) << "\n";
        std::exit(rc);
    }
    json result = json::parse(out);
    st_string_free(out);
    return result;
}

bool parse_torus(const std::string& spec, int& w, int& h) {
    auto x = spec.find('x');
    if (x == std::string::npos) return false;
    try {
        w = std::stoi(spec.substr(0, x));
        h = std::stoi(spec.substr(x + 1));
    } catch (...) {
        return false;
    }
    return w >= 1 && h >= 1;
}

const std::vector<std::string> kStages = {"wang",      "ab",    "table", "assignment",
                                          "schematic", "patch", "geometry"};

int stage_index(const std::string& name) {
    for (std::size_t i = 0; i < kStages.size(); ++i)
        if (kStages[i] == name) return static_cast<int>(i);
    return -1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sticktile: staged tiling reduction pipeline"};
    app.require_subcommand(1);

    Pipeline pipeline(st_pipeline_new());
    st_pipeline* p = pipeline.get();

    std::string in_path, out_dir = ".", torus = "2x2", window, from_stage = "wang",
                to_stage = "ab", rules_path, table_path, ab_path, seeds_path, region = "";
    unsigned long long cap = 10000, seed = 0;
    bool toy = false;

    auto* compile = app.add_subcommand("compile", "run pipeline stages");
    compile->add_option("--from", from_stage, "first stage (input format)");
    compile->add_option("--to", to_stage, "last stage to produce");
    compile->add_option("input", in_path, "input file for the first stage")->required();
    compile->add_option("--out", out_dir, "output directory");
    compile->add_option("--torus", torus, "torus size WxH for the oracles");
    compile->add_option("--cap", cap, "search cap");
    compile->add_option("--window", window, "assignment window RxC for schematics");
    compile->add_flag("--toy", toy, "allow the geometry stage (desk scale)");
    compile->add_option("--seed", seed, "seed for randomized corpora");

    auto* verify = app.add_subcommand("verify", "run a verifier");
    std::string what = "bijection";
    verify->add_option("--what", what,
                       "bijection|assignment|schematic|patch|planar|roundtrip");
    verify->add_option("input", in_path, "artifact to verify")->required();
    verify->add_option("--table", table_path, "state_table.json");
    verify->add_option("--ab", ab_path, "ab.json");
    verify->add_option("--rules", rules_path, "rules.json");
    verify->add_option("--torus", torus, "torus size WxH");
    verify->add_option("--cap", cap, "search cap");

    auto* solve = app.add_subcommand("solve", "run an oracle");
    std::string which = "wang";
    solve->add_option("kind", which, "wang|ab|stick")->required();
    solve->add_option("input", in_path, "instance file (wang/ab) or seeds (stick)");
    solve->add_option("--torus", torus, "torus size WxH");
    solve->add_option("--cap", cap, "search cap");
    solve->add_option("--rules", rules_path, "rules.json (stick)");
    solve->add_option("--region", region, "region, e.g. hex:radius=4 (stick)");
    solve->add_option("--seeds", seeds_path, "seed placements (stick)");
    solve->add_option("--out", out_dir, "output directory");

    auto* staple = app.add_subcommand("staple-check", "staple surroundability desk check");
    (void)staple;

    CLI11_PARSE(app, argc, argv);

    int w = 2, h = 2;
    if (!parse_torus(torus, w, h)) {
        std::cerr << "error: bad --torus, expected WxH\n";
        return 4;
    }
    st_pipeline_set_option(p, "cap", std::to_string(cap).c_str());
    st_pipeline_set_option(p, "torus_w", std::to_string(w).c_str());
    st_pipeline_set_option(p, "torus_h", std::to_string(h).c_str());
    st_pipeline_set_option(p, "seed", std::to_string(seed).c_str());
    st_pipeline_set_option(p, "toy", toy ? "1" : "0");
    if (!window.empty()) {
        int wr = 0, wc = 0;
        if (!parse_torus(window, wr, wc)) {
            std::cerr << "error: bad --window, expected RxC\n";
            return 4;
        }
        st_pipeline_set_option(p, "window_rows", std::to_string(wr).c_str());
        st_pipeline_set_option(p, "window_cols", std::to_string(wc).c_str());
    }

    if (compile->parsed()) {
        int from = stage_index(from_stage), to = stage_index(to_stage);
        if (from < 0 || to < 0 || from >= to) {
            std::cerr << "error: stages must form a forward run of wang..geometry\n";
            return 4;
        }
        if (to >= stage_index("geometry") && !toy) {
            std::cerr << "error: the geometry stage needs --toy (desk-scale tables only)\n";
            return 4;
        }
        fs::create_directories(out_dir);
        std::map<std::string, json> art;
        art[kStages[from]] = json::parse(read_file(in_path));

        for (int stage = from + 1; stage <= to; ++stage) {
            const std::string& name = kStages[stage];
            if (name == "ab") {
                art["ab"] = run(p, "wang_to_ab", {{"wang", art["wang"]}});
                write_file(fs::path(out_dir) / "ab.json", art["ab"].dump(2));
            } else if (name == "table") {
                json out = run(p, "build_table", {{"ab", art["ab"]}});
                art["table"] = out["table"];
                write_file(fs::path(out_dir) / "state_table.json", art["table"].dump(2));
            } else if (name == "assignment") {
                json out = run(p, "solve_to_assignment", {{"ab", art["ab"]}});
                art["assignment"] = out["assignment"];
                write_file(fs::path(out_dir) / "assignment.json", art["assignment"].dump(2));
                write_file(fs::path(out_dir) / "tiling.json", out["tiling"].dump(2));
                run(p, "check_assignment",
                    {{"table", art["table"]}, {"assignment", art["assignment"]}});
            } else if (name == "schematic") {
                art["schematic"] = run(p, "assignment_to_schematic",
                                       {{"table", art["table"]}, {"assignment", art["assignment"]}});
                write_file(fs::path(out_dir) / "schematic.json", art["schematic"].dump(2));
                run(p, "validate_schematic",
                    {{"table", art["table"]}, {"schematic", art["schematic"]}});
            } else if (name == "patch") {
                art["rules"] = run(p, "marking_rules", {{"table", art["table"]}});
                write_file(fs::path(out_dir) / "rules.json", art["rules"].dump(2));
                art["patch"] = run(p, "synthesize_weave",
                                   {{"table", art["table"]}, {"schematic", art["schematic"]}});
                write_file(fs::path(out_dir) / "patch.json", art["patch"].dump(2));
                run(p, "check_patch", {{"rules", art["rules"]}, {"patch", art["patch"]}});
            } else if (name == "geometry") {
                json out = run(p, "build_geometry",
                               {{"rules", art["rules"]}, {"patch", art["patch"]}});
                write_file(fs::path(out_dir) / "polygons.json", out.dump());
                json svg = run(p, "emit_svg", {{"rules", art["rules"]}, {"patch", art["patch"]}});
                write_file(fs::path(out_dir) / "patch.svg", svg["svg"].get<std::string>());
                json rep = run(p, "verify_planar",
                               {{"rules", art["rules"]}, {"patch", art["patch"]}});
                write_file(fs::path(out_dir) / "planar_report.json", rep.dump(2));
            }
        }
        std::cout << "pipeline ok\n";
        return 0;
    }

    if (verify->parsed()) {
        json input = json::parse(read_file(in_path));
        if (what == "bijection") {
            json rep = run(p, "verify_bijection", {{"wang", input}});
            std::cout << rep.dump(2) << "\n";
        } else if (what == "assignment") {
            json table = json::parse(read_file(table_path));
            std::cout << run(p, "check_assignment", {{"table", table}, {"assignment", input}})
                             .dump(2)
                      << "\n";
        } else if (what == "schematic") {
            json table = json::parse(read_file(table_path));
            std::cout << run(p, "validate_schematic", {{"table", table}, {"schematic", input}})
                             .dump(2)
                      << "\n";
        } else if (what == "patch") {
            json rules = json::parse(read_file(rules_path));
            std::cout << run(p, "check_patch", {{"rules", rules}, {"patch", input}}).dump(2)
                      << "\n";
        } else if (what == "planar") {
            json rules = json::parse(read_file(rules_path));
            std::cout << run(p, "verify_planar", {{"rules", rules}, {"patch", input}}).dump(2)
                      << "\n";
        } else if (what == "roundtrip") {
            json abinst = json::parse(read_file(ab_path));
            json tiling = run(p, "decode_assignment", {{"ab", abinst}, {"assignment", input}});
            json refill = run(p, "fill_assignment", {{"ab", abinst}, {"tiling", tiling}});
            json tiling2 = run(p, "decode_assignment", {{"ab", abinst}, {"assignment", refill}});
            if (tiling != tiling2) {
                std::cerr << "FAIL: decode/fill round trip diverged\n";
                return 2;
            }
            std::cout << "PASS: decode/fill round trip is stable\n";
        } else {
            std::cerr << "error: unknown verifier\n";
            return 4;
        }
        return 0;
    }

    if (solve->parsed()) {
        fs::create_directories(out_dir);
        if (which == "wang" || which == "ab") {
            json inst = json::parse(read_file(in_path));
            json out = run(p, which == "wang" ? "solve_wang" : "solve_ab",
                           {{which, inst}, {"w", w}, {"h", h}});
            write_file(fs::path(out_dir) / "tilings.json", out.dump(2));
            std::cout << "count " << out["count"] << "\n";
        } else if (which == "stick") {
            json req;
            req["rules"] = json::parse(read_file(rules_path));
            if (!seeds_path.empty()) req["seeds"] = json::parse(read_file(seeds_path));
            if (region.rfind("hex:radius=", 0) == 0)
                req["region"] = {{"radius", std::stoll(region.substr(11))}};
            else if (!in_path.empty())
                req["region"] = json::parse(read_file(in_path));
            else {
                std::cerr << "error: solve stick needs --region or a region file\n";
                return 4;
            }
            json out = run(p, "solve_stick", req);
            write_file(fs::path(out_dir) / "completions.json", out.dump(2));
            std::cout << "count " << out["count"] << "\n";
        } else {
            std::cerr << "error: unknown solver\n";
            return 4;
        }
        return 0;
    }

    if (staple->parsed()) {
        std::cout << run(p, "staple_check", json::object()).dump(2) << "\n";
        return 0;
    }
    return g_exit;
}
