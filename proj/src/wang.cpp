#include "sticktile/wang.hpp"

#include <algorithm>

#include "json.hpp"

namespace sticktile::wang {

using nlohmann::json;

void WangInstance::validate() const {
    require(colors >= 1, ErrorKind::malformed_input, "wang: color count must be >= 1");
    require(!tiles.empty(), ErrorKind::malformed_input, "wang: need at least one tile");
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        const WangTile& t = tiles[i];
        for (int c : {t.north, t.east, t.south, t.west})
            require(c >= 1 && c <= colors, ErrorKind::malformed_input,
                    "wang: tile " + std::to_string(i + 1) + " uses color outside 1.." +
                        std::to_string(colors));
    }
}

std::string WangInstance::to_json() const {
    json j;
    j["colors"] = colors;
    j["tiles"] = json::array();
    for (const WangTile& t : tiles)
        j["tiles"].push_back({{"n", t.north}, {"e", t.east}, {"s", t.south}, {"w", t.west}});
    return j.dump(2);
}

WangInstance WangInstance::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorKind::malformed_input, std::string("wang.json: ") + e.what());
    }
    WangInstance inst;
    try {
        inst.colors = j.at("colors").get<int>();
        for (const json& t : j.at("tiles"))
            inst.tiles.push_back({t.at("n").get<int>(), t.at("e").get<int>(), t.at("s").get<int>(),
                                  t.at("w").get<int>()});
    } catch (const std::exception& e) {
        fail(ErrorKind::malformed_input, std::string("wang.json: ") + e.what());
    }
    inst.validate();
    return inst;
}

namespace {

// Checks the constraints touching cell (r, c) that are fully decided once the
// grid is filled row-major up to and including (r, c).
bool placement_ok(const WangInstance& inst, const std::vector<int>& cells, int width, int height,
                  bool wrap, int r, int c, int tile) {
    const WangTile& t = inst.tiles[tile - 1];
    auto tile_at = [&](int rr, int cc) -> const WangTile& {
        return inst.tiles[cells[static_cast<std::size_t>(rr) * width + cc] - 1];
    };
    if (c > 0 && t.west != tile_at(r, c - 1).east) return false;
    if (c == width - 1 && wrap) {
        int east_partner_west = (width == 1) ? t.west : tile_at(r, 0).west;
        if (t.east != east_partner_west) return false;
    }
    if (r > 0 && t.south != tile_at(r - 1, c).north) return false;
    if (r == height - 1 && wrap) {
        int north_partner_south = (height == 1) ? t.south : tile_at(0, c).south;
        if (t.north != north_partner_south) return false;
    }
    return true;
}

}  // namespace

SolveResult solve_torus(const WangInstance& inst, int width, int height, const SolveOptions& opts) {
    inst.validate();
    require(width >= 1 && height >= 1, ErrorKind::malformed_input, "wang: torus sides must be >= 1");
    const int n = static_cast<int>(inst.tiles.size());
    const int total = width * height;
    SolveResult result;
    std::vector<int> cells(total, 0);

    // Row-major DFS in ascending tile order gives the lexicographic output order.
    int pos = 0;
    while (pos >= 0) {
        int r = pos / width, c = pos % width;
        int& cur = cells[pos];
        bool advanced = false;
        for (int tile = cur + 1; tile <= n; ++tile) {
            if (placement_ok(inst, cells, width, height, opts.wrap, r, c, tile)) {
                cur = tile;
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            cur = 0;
            --pos;
            continue;
        }
        if (pos == total - 1) {
            if (result.tilings.size() >= opts.cap) {
                result.cap_exceeded = true;
                return result;
            }
            result.tilings.push_back(TorusTiling{width, height, cells});
        } else {
            ++pos;
        }
    }
    return result;
}

std::vector<std::string> tiling_violations(const WangInstance& inst, const TorusTiling& t,
                                           bool wrap) {
    std::vector<std::string> out;
    if (t.width < 1 || t.height < 1 ||
        t.cells.size() != static_cast<std::size_t>(t.width) * t.height) {
        out.push_back("bad tiling dimensions");
        return out;
    }
    for (int id : t.cells)
        if (id < 1 || id > static_cast<int>(inst.tiles.size())) {
            out.push_back("tile id out of range");
            return out;
        }
    for (int r = 0; r < t.height; ++r) {
        for (int c = 0; c < t.width; ++c) {
            const WangTile& here = inst.tiles[t.at(r, c) - 1];
            if (wrap || c + 1 < t.width) {
                const WangTile& right = inst.tiles[t.at(r, (c + 1) % t.width) - 1];
                if (here.east != right.west)
                    out.push_back("east/west mismatch at r=" + std::to_string(r) +
                                  " c=" + std::to_string(c));
            }
            if (wrap || r + 1 < t.height) {
                const WangTile& above = inst.tiles[t.at((r + 1) % t.height, c) - 1];
                if (here.north != above.south)
                    out.push_back("north/south mismatch at r=" + std::to_string(r) +
                                  " c=" + std::to_string(c));
            }
        }
    }
    return out;
}

TorusTiling shift_tiling(const TorusTiling& t, int dr, int dc) {
    TorusTiling s{t.width, t.height, std::vector<int>(t.cells.size())};
    for (int r = 0; r < t.height; ++r)
        for (int c = 0; c < t.width; ++c) {
            int rr = ((r + dr) % t.height + t.height) % t.height;
            int cc = ((c + dc) % t.width + t.width) % t.width;
            s.cells[static_cast<std::size_t>(r) * t.width + c] = t.at(rr, cc);
        }
    return s;
}

std::string tilings_to_json(const SolveResult& result) {
    json j;
    j["count"] = result.tilings.size();
    j["cap_exceeded"] = result.cap_exceeded;
    j["tilings"] = json::array();
    for (const TorusTiling& t : result.tilings) {
        json rows = json::array();
        for (int r = 0; r < t.height; ++r) {
            json row = json::array();
            for (int c = 0; c < t.width; ++c) row.push_back(t.at(r, c));
            rows.push_back(row);
        }
        j["tilings"].push_back({{"w", t.width}, {"h", t.height}, {"rows", rows}});
    }
    return j.dump(2);
}

}  // namespace sticktile::wang
