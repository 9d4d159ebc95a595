#include "sticktile/ab.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "json.hpp"

namespace sticktile::ab {

using nlohmann::json;

void ABInstance::validate() const {
    require(t >= 1, ErrorKind::malformed_input, "ab: need t >= 1");
    require(static_cast<int>(a_tiles.size()) == t && static_cast<int>(b_tiles.size()) == t,
            ErrorKind::malformed_input, "ab: |A| and |B| must both equal t");
    require(colors >= 1, ErrorKind::malformed_input, "ab: colour count must be >= 1");
    auto check = [&](const ABTile& tile, const char* fam, int i) {
        for (int c : {tile.ul, tile.ur, tile.ll, tile.lr})
            require(c >= 0 && c < colors, ErrorKind::malformed_input,
                    std::string("ab: ") + fam + std::to_string(i + 1) + " colour out of range");
    };
    for (int i = 0; i < t; ++i) check(a_tiles[i], "A", i);
    for (int i = 0; i < t; ++i) check(b_tiles[i], "B", i);
}

std::string ABInstance::to_json() const {
    json j;
    j["t"] = t;
    j["colors"] = colors;
    auto dump_tiles = [](const std::vector<ABTile>& ts) {
        json arr = json::array();
        for (const ABTile& x : ts)
            arr.push_back({{"ul", x.ul}, {"ur", x.ur}, {"ll", x.ll}, {"lr", x.lr}});
        return arr;
    };
    j["a_tiles"] = dump_tiles(a_tiles);
    j["b_tiles"] = dump_tiles(b_tiles);
    return j.dump(2);
}

ABInstance ABInstance::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorKind::malformed_input, std::string("ab.json: ") + e.what());
    }
    ABInstance inst;
    try {
        inst.t = j.at("t").get<int>();
        inst.colors = j.at("colors").get<int>();
        auto load = [](const json& arr) {
            std::vector<ABTile> out;
            for (const json& x : arr)
                out.push_back({x.at("ul").get<int>(), x.at("ur").get<int>(), x.at("ll").get<int>(),
                               x.at("lr").get<int>()});
            return out;
        };
        inst.a_tiles = load(j.at("a_tiles"));
        inst.b_tiles = load(j.at("b_tiles"));
    } catch (const std::exception& e) {
        fail(ErrorKind::malformed_input, std::string("ab.json: ") + e.what());
    }
    inst.validate();
    return inst;
}

ABInstance compile_wang_to_ab(const wang::WangInstance& inst) {
    inst.validate();
    const int n = static_cast<int>(inst.tiles.size());
    const int k = inst.colors;
    ABInstance out;
    out.t = n;
    out.colors = n + k + 1;  // colour ids 0..n+k
    for (int i = 1; i <= n; ++i) {
        const wang::WangTile& w = inst.tiles[i - 1];
        // Wang colours: a = left, b = right, c = up, d = down.
        out.a_tiles.push_back({0, w.north, w.west, k + i});
        out.b_tiles.push_back({k + i, w.east, w.south, 0});
    }
    out.validate();
    return out;
}

namespace {

// The four vertical-edge constraints per A cell, with wrapping indices.
//   A(r,c).ur == B(r,c).ll      A(r,c).lr == B(r-1,c).ul
//   A(r,c).ul == B(r,c-1).lr    A(r,c).ll == B(r-1,c-1).ur
struct EdgeConstraint {
    int var1, var2;  // variable order indices
    int field1, field2;
};

constexpr int F_UL = 0, F_UR = 1, F_LL = 2, F_LR = 3;

int field_of(const ABTile& t, int f) {
    switch (f) {
        case F_UL: return t.ul;
        case F_UR: return t.ur;
        case F_LL: return t.ll;
        default: return t.lr;
    }
}

}  // namespace

SolveResult solve_torus(const ABInstance& inst, int width, int height, const SolveOptions& opts) {
    inst.validate();
    require(width >= 1 && height >= 1, ErrorKind::malformed_input, "ab: torus sides must be >= 1");
    const int cells = width * height;
    const int nvars = 2 * cells;  // interleaved a, b per cell, row-major

    auto a_var = [&](int r, int c) { return 2 * (r * width + c); };
    auto b_var = [&](int r, int c) { return 2 * (r * width + c) + 1; };
    auto wrap_r = [&](int r) { return (r % height + height) % height; };
    auto wrap_c = [&](int c) { return (c % width + width) % width; };

    std::vector<EdgeConstraint> constraints;
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) {
            int av = a_var(r, c);
            constraints.push_back({av, b_var(r, c), F_UR, F_LL});
            constraints.push_back({av, b_var(wrap_r(r - 1), c), F_LR, F_UL});
            constraints.push_back({av, b_var(r, wrap_c(c - 1)), F_UL, F_LR});
            constraints.push_back({av, b_var(wrap_r(r - 1), wrap_c(c - 1)), F_LL, F_UR});
        }

    // Assignment order: each b row directly after the a row above it, so the
    // shared-colour pairing prunes b domains immediately.
    std::vector<int> order;
    order.reserve(nvars);
    for (int c = 0; c < width; ++c) order.push_back(a_var(0, c));
    for (int r = 1; r < height; ++r)
        for (int c = 0; c < width; ++c) {
            order.push_back(a_var(r, c));
            order.push_back(b_var(r - 1, c));
        }
    for (int c = 0; c < width; ++c) order.push_back(b_var(height - 1, c));

    std::vector<int> pos_of(nvars);
    for (int i = 0; i < nvars; ++i) pos_of[order[i]] = i;
    // A constraint becomes checkable at the later of its two variables.
    std::vector<std::vector<EdgeConstraint>> by_pos(nvars);
    for (const EdgeConstraint& ec : constraints)
        by_pos[std::max(pos_of[ec.var1], pos_of[ec.var2])].push_back(ec);

    std::vector<int> vals(nvars, 0);
    auto tile_for = [&](int var, int idx) -> const ABTile& {
        return (var % 2 == 0) ? inst.a_tiles[idx - 1] : inst.b_tiles[idx - 1];
    };
    auto consistent = [&](int step) {
        for (const EdgeConstraint& ec : by_pos[step]) {
            if (field_of(tile_for(ec.var1, vals[ec.var1]), ec.field1) !=
                field_of(tile_for(ec.var2, vals[ec.var2]), ec.field2))
                return false;
        }
        return true;
    };

    SolveResult result;
    int step = 0;
    while (step >= 0) {
        int& cur = vals[order[step]];
        bool advanced = false;
        for (int v = cur + 1; v <= inst.t; ++v) {
            cur = v;
            if (consistent(step)) {
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            cur = 0;
            --step;
            continue;
        }
        if (step == nvars - 1) {
            if (result.tilings.size() >= opts.cap) {
                result.cap_exceeded = true;
                return result;
            }
            ABTorusTiling t{width, height, std::vector<int>(cells), std::vector<int>(cells)};
            for (int i = 0; i < cells; ++i) {
                t.a[i] = vals[2 * i];
                t.b[i] = vals[2 * i + 1];
            }
            result.tilings.push_back(std::move(t));
        } else {
            ++step;
        }
    }
    std::sort(result.tilings.begin(), result.tilings.end(),
              [](const ABTorusTiling& x, const ABTorusTiling& y) {
                  return std::tie(x.a, x.b) < std::tie(y.a, y.b);
              });
    return result;
}

std::vector<std::string> tiling_violations(const ABInstance& inst, const ABTorusTiling& t) {
    std::vector<std::string> out;
    if (t.width < 1 || t.height < 1 ||
        t.a.size() != static_cast<std::size_t>(t.width) * t.height || t.a.size() != t.b.size()) {
        out.push_back("bad tiling dimensions");
        return out;
    }
    for (int id : t.a)
        if (id < 1 || id > inst.t) return {"A tile index out of range"};
    for (int id : t.b)
        if (id < 1 || id > inst.t) return {"B tile index out of range"};
    auto wr = [&](int r) { return (r % t.height + t.height) % t.height; };
    auto wc = [&](int c) { return (c % t.width + t.width) % t.width; };
    for (int r = 0; r < t.height; ++r)
        for (int c = 0; c < t.width; ++c) {
            const ABTile& A = inst.a_tiles[t.a_at(r, c) - 1];
            auto B = [&](int rr, int cc) -> const ABTile& {
                return inst.b_tiles[t.b_at(wr(rr), wc(cc)) - 1];
            };
            auto complain = [&](const char* what) {
                out.push_back(std::string(what) + " at r=" + std::to_string(r) +
                              " c=" + std::to_string(c));
            };
            if (A.ur != B(r, c).ll) complain("A.ur/B.ll mismatch");
            if (A.lr != B(r - 1, c).ul) complain("A.lr/B.ul mismatch");
            if (A.ul != B(r, c - 1).lr) complain("A.ul/B.lr mismatch");
            if (A.ll != B(r - 1, c - 1).ur) complain("A.ll/B.ur mismatch");
        }
    return out;
}

ABTorusTiling wang_tiling_to_ab(const wang::WangInstance& inst, const wang::TorusTiling& t) {
    (void)inst;
    ABTorusTiling out{t.width, t.height, std::vector<int>(t.cells.size()),
                      std::vector<int>(t.cells.size())};
    for (int r = 0; r < t.height; ++r)
        for (int c = 0; c < t.width; ++c) {
            out.a[static_cast<std::size_t>(r) * t.width + c] = t.at(r, c);
            out.b[static_cast<std::size_t>(r) * t.width + c] = t.at((r + 1) % t.height, c);
        }
    return out;
}

BijectionReport verify_wang_ab_bijection(const wang::WangInstance& inst, int width, int height,
                                         std::size_t cap) {
    BijectionReport rep;
    wang::SolveResult ws = wang::solve_torus(inst, width, height, {cap, true});
    ABInstance abinst = compile_wang_to_ab(inst);
    SolveResult as = solve_torus(abinst, width, height, {cap});
    rep.wang_count = ws.tilings.size();
    rep.ab_count = as.tilings.size();
    rep.cap_exceeded = ws.cap_exceeded || as.cap_exceeded;
    if (rep.cap_exceeded) {
        rep.issues.push_back("cap exceeded; counts not comparable");
        return rep;
    }
    if (rep.wang_count != rep.ab_count) rep.issues.push_back("tiling counts differ");

    std::set<std::pair<std::vector<int>, std::vector<int>>> images;
    for (const wang::TorusTiling& wt : ws.tilings) {
        ABTorusTiling at = wang_tiling_to_ab(inst, wt);
        auto viol = tiling_violations(abinst, at);
        if (!viol.empty())
            rep.issues.push_back("mapped tiling invalid: " + viol.front());
        if (!images.insert({at.a, at.b}).second)
            rep.issues.push_back("mapped tilings collide (map not injective)");
        if (std::find(as.tilings.begin(), as.tilings.end(), at) == as.tilings.end())
            rep.issues.push_back("mapped tiling missing from AB oracle output");
    }
    rep.ok = rep.issues.empty();
    return rep;
}

std::string BijectionReport::to_json() const {
    json j;
    j["wang_count"] = wang_count;
    j["ab_count"] = ab_count;
    j["cap_exceeded"] = cap_exceeded;
    j["ok"] = ok;
    j["issues"] = issues;
    return j.dump(2);
}

std::string tilings_to_json(const SolveResult& result) {
    json j;
    j["count"] = result.tilings.size();
    j["cap_exceeded"] = result.cap_exceeded;
    j["tilings"] = json::array();
    for (const ABTorusTiling& t : result.tilings) {
        json ja = json::array(), jb = json::array();
        for (int r = 0; r < t.height; ++r) {
            json ra = json::array(), rb = json::array();
            for (int c = 0; c < t.width; ++c) {
                ra.push_back(t.a_at(r, c));
                rb.push_back(t.b_at(r, c));
            }
            ja.push_back(ra);
            jb.push_back(rb);
        }
        j["tilings"].push_back({{"w", t.width}, {"h", t.height}, {"a", ja}, {"b", jb}});
    }
    return j.dump(2);
}

}  // namespace sticktile::ab
