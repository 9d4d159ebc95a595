#include "sticktile/stick.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>

#include "json.hpp"

namespace sticktile::stick {

using nlohmann::json;

Cell dir_offset(int dir) {
    static constexpr Cell offsets[6] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
    return offsets[((dir % 6) + 6) % 6];
}

Cell cell_add(Cell c, Cell d) { return {c.q + d.q, c.r + d.r}; }
Cell cell_mul(Cell d, long long m) { return {d.q * m, d.r * m}; }

Labels::Labels(int n) : n_(n) {
    require(n >= 2, ErrorKind::malformed_input, "stick length must be >= 2");
}

std::string Labels::name(int id) const {
    require(id >= 0 && id < count(), ErrorKind::malformed_input, "label id out of range");
    if (id == y1()) return "y1";
    if (id == z1()) return "z1";
    if (id == x2()) return "x2";
    if (id == y2()) return "y2";
    if (id == z2()) return "z2";
    if (id == x1()) return "x1";
    if (id < x2()) {
        int i = id / 2;
        return std::string(id % 2 == 0 ? "a" : "b") + std::to_string(i);
    }
    int off = id - z2();
    return std::string(off % 2 == 1 ? "c" : "d") + std::to_string((off + 1) / 2);
}

int Labels::from_name(const std::string& s) const {
    require(!s.empty(), ErrorKind::malformed_input, "empty label name");
    if (s == "y1") return y1();
    if (s == "z1") return z1();
    if (s == "x2") return x2();
    if (s == "y2") return y2();
    if (s == "z2") return z2();
    if (s == "x1") return x1();
    int i = 0;
    try {
        i = std::stoi(s.substr(1));
    } catch (...) {
        fail(ErrorKind::malformed_input, "bad label name: " + s);
    }
    require(i >= 1 && i <= n_ - 1, ErrorKind::malformed_input, "label index out of range: " + s);
    switch (s[0]) {
        case 'a': return a(i);
        case 'b': return b(i);
        case 'c': return c(i);
        case 'd': return d(i);
    }
    fail(ErrorKind::malformed_input, "bad label name: " + s);
}

std::pair<int, int> Labels::base_edge(int id) const {
    // Unrotated stick: cells 0..n-1 eastward, arrow pointing down, so the
    // back side (z1 a b ... x2) runs along the top from the y1 end at cell
    // n-1 to the y2 end at cell 0.
    if (id == y1()) return {n_ - 1, 0};
    if (id == z1()) return {n_ - 1, 1};
    if (id == x2()) return {0, 2};
    if (id == y2()) return {0, 3};
    if (id == z2()) return {0, 4};
    if (id == x1()) return {n_ - 1, 5};
    if (id < x2()) {
        int i = id / 2;
        return (id % 2 == 0) ? std::pair<int, int>{n_ - i, 2} : std::pair<int, int>{n_ - 1 - i, 1};
    }
    int off = id - z2();  // c_i at odd offsets, d_i at even ones
    if (off % 2 == 1) {
        int i = (off + 1) / 2;
        return {i - 1, 5};
    }
    int i = off / 2;
    return {i, 4};
}

std::vector<Cell> cells_of(const Labels& labels, const Placement& p) {
    std::vector<Cell> out;
    out.reserve(labels.n());
    Cell step = dir_offset(p.rot);
    for (int m = 0; m < labels.n(); ++m) out.push_back(cell_add(p.anchor, cell_mul(step, m)));
    return out;
}

int label_at(const Labels& labels, const Placement& p, Cell cell, int dir) {
    Cell step = dir_offset(p.rot);
    long long m;
    if (step.q != 0)
        m = (cell.q - p.anchor.q) / step.q;
    else
        m = (cell.r - p.anchor.r) / step.r;
    if (m < 0 || m >= labels.n()) return -1;
    if (cell_add(p.anchor, cell_mul(step, m)) != cell) return -1;
    int base_dir = ((dir - p.rot) % 6 + 6) % 6;
    for (int id = 0; id < labels.count(); ++id) {
        auto [bm, bd] = labels.base_edge(id);
        if (bm == m && bd == base_dir) return id;
    }
    return -1;
}

void add_rule(RuleSet& rules, int a, int b) { rules.insert({std::min(a, b), std::max(a, b)}); }

bool forbids(const RuleSet& rules, int a, int b) {
    return rules.count({std::min(a, b), std::max(a, b)}) > 0;
}

RuleSet base_rules(int n) {
    require(n >= 5, ErrorKind::malformed_input, "base rules need stick length >= 5");
    Labels L(n);
    RuleSet r;
    for (int i : {L.y1(), L.y2()})
        for (int j : {L.y1(), L.y2()}) add_rule(r, i, j);                       // 1
    for (int i : {L.x1(), L.x2()})
        for (int j : {L.x1(), L.x2()}) add_rule(r, i, j);                       // 2
    for (int i : {L.z1(), L.z2()})
        for (int j : {L.z1(), L.z2()}) add_rule(r, i, j);                       // 2
    for (int i : {L.y1(), L.y2()})
        for (int j : {L.x1(), L.x2()}) add_rule(r, i, j);                       // 3
    for (int i : {L.x1(), L.x2()})
        for (int j : {L.z1(), L.z2()}) add_rule(r, i, j);                       // 4
    for (int i : {L.y1(), L.y2()}) {
        add_rule(r, i, L.a(1));                                                 // 5
        add_rule(r, i, L.c(1));                                                 // 5
        add_rule(r, i, L.z2());                                                 // 10
        add_rule(r, i, L.d(n - 1));                                             // 11
    }
    for (int i = 1; i <= n - 1; ++i) add_rule(r, L.x1(), L.c(i));               // 6
    for (int i = 1; i <= n - 2; ++i) add_rule(r, L.z2(), L.d(i));               // 7
    for (int i = 1; i <= n - 1; ++i) add_rule(r, L.x2(), L.a(i));               // 8
    for (int i = 1; i <= n - 1; ++i) add_rule(r, L.z1(), L.b(i));               // 9
    return r;
}

RuleSet marking_rules(const schematic::MarkingLayout& layout, int stick_n) {
    require(stick_n == layout.block_len + 1, ErrorKind::malformed_input,
            "marking rules: stick length must be the block length plus one");
    Labels L(stick_n);
    RuleSet r;
    const int n = stick_n;

    // A gap square above block square d realizes the downward cap of one
    // slanted stick pressing the a-edge at valley d: y2 caps face right, y1
    // caps face left.
    for (auto [d, dir] : layout.top_arrows) {
        require(d >= 1 && d <= n - 2, ErrorKind::malformed_input,
                "marking rules: top arrow square out of range");
        add_rule(r, L.a(n - d), dir == schematic::Dir::right ? L.y1() : L.y2());
    }
    // Below block square d, the upward cap of the gap stick presses the
    // c-edge of the block's bottom stick: y1 caps belong to right-pointing
    // sticks, y2 caps to left-pointing ones.
    for (auto [d, dir] : layout.bottom_arrows) {
        require(d >= 0 && d <= n - 2, ErrorKind::malformed_input,
                "marking rules: bottom arrow square out of range");
        add_rule(r, L.c(d + 1), dir == schematic::Dir::right ? L.y2() : L.y1());
    }
    // Block ends in the row above land on valleys: the right end presses
    // (a, x1), the left end presses (b, z2). Unmarked valleys forbid them.
    // The extreme valleys stay exempt: (a1, x1) occurs inside every
    // horizontal stack and (b_{n-1}, z2) inside every vertical one.
    for (int m = 1; m <= n - 2; ++m)
        if (!layout.right_triangle_at_valley(m)) add_rule(r, L.a(n - m), L.x1());
    for (int m = 2; m <= n - 1; ++m)
        if (!layout.left_triangle_at_valley(m)) add_rule(r, L.b(n - m), L.z2());
    return r;
}

namespace {

// label lookup tables per rotation: table[rot][m][dir] -> label id or -1
std::vector<std::array<std::array<int, 6>, 64>> build_label_tables(const Labels& L) {
    require(L.n() <= 64, ErrorKind::unsupported, "stick length above the table limit");
    std::vector<std::array<std::array<int, 6>, 64>> tables(6);
    for (int rot = 0; rot < 6; ++rot) {
        for (auto& row : tables[rot]) row.fill(-1);
        for (int id = 0; id < L.count(); ++id) {
            auto [m, bd] = L.base_edge(id);
            tables[rot][m][(bd + rot) % 6] = id;
        }
    }
    return tables;
}

}  // namespace

std::vector<PatchViolation> check_patch(int n, const std::vector<Placement>& placements,
                                        const RuleSet& rules) {
    Labels L(n);
    std::vector<PatchViolation> out;
    std::map<Cell, int> owner;
    for (std::size_t i = 0; i < placements.size(); ++i)
        for (Cell c : cells_of(L, placements[i])) {
            auto [it, inserted] = owner.insert({c, static_cast<int>(i)});
            if (!inserted) out.push_back({"cell overlap", c, 0, -1, -1});
        }

    for (std::size_t i = 0; i < placements.size(); ++i) {
        const Placement& p = placements[i];
        Cell step = dir_offset(p.rot);
        for (int id = 0; id < L.count(); ++id) {
            auto [m, bd] = L.base_edge(id);
            Cell cell = cell_add(p.anchor, cell_mul(step, m));
            int dir = (bd + p.rot) % 6;
            Cell other = cell_add(cell, dir_offset(dir));
            auto it = owner.find(other);
            if (it == owner.end() || it->second == static_cast<int>(i)) continue;
            if (it->second < static_cast<int>(i)) continue;  // count each pair once
            int other_label = label_at(L, placements[it->second], other, (dir + 3) % 6);
            if (other_label >= 0 && forbids(rules, id, other_label))
                out.push_back({"forbidden pair " + L.name(id) + "/" + L.name(other_label), cell,
                               dir, id, other_label});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Placement> synthesize_weave(const schematic::Schematic& schem,
                                        const schematic::StateTable& table) {
    auto violations = validate_schematic(schem, table);
    if (!violations.empty())
        fail(ErrorKind::verification_failure,
             "synthesize_weave: schematic invalid: " + violations.front().what);
    const long long N = table.block_len() + 1;
    std::vector<Placement> out;
    for (std::size_t i = 0; i < schem.rows.size(); ++i) {
        const schematic::SchematicRow& row = schem.rows[i];
        const long long rowq = static_cast<long long>(i) * N;
        const long long rowr = -static_cast<long long>(i) * N;
        for (long long start : row.block_starts)
            for (long long v = 0; v < N; ++v)
                out.push_back({{start + rowq - v, rowr + v}, 0});
        for (std::size_t g = 0; g < row.gaps.size(); ++g) {
            const long long gamma = row.block_starts[g] + table.block_len();
            const long long left = row.gaps[g].left;
            const long long span = left + row.gaps[g].right;
            require(left >= 2, ErrorKind::unsupported,
                    "synthesize_weave: gap needs left length >= 2 so that its first stick can "
                    "point right");
            for (long long u = gamma + 1; u <= gamma + span - 1; ++u) {
                if (u <= gamma + left - 1)
                    out.push_back({{u + rowq, rowr}, 2});
                else
                    out.push_back({{u + rowq - (N - 1), rowr + N - 1}, 5});
            }
        }
    }
    return out;
}

std::set<int> orientation_census(const std::vector<Placement>& placements) {
    std::set<int> out;
    for (const Placement& p : placements) out.insert(p.rot);
    return out;
}

TilerResult backtracking_tiler(const std::set<Cell>& region, int n, const RuleSet& rules,
                               const std::vector<Placement>& seeds, const TilerOptions& opts) {
    Labels L(n);
    auto tables = build_label_tables(L);
    TilerResult result;

    std::map<Cell, int> owner;      // cell -> index into `stack`
    std::vector<Placement> stack;   // seeds then search placements

    auto label_of = [&](const Placement& p, Cell cell, int dir) -> int {
        Cell step = dir_offset(p.rot);
        long long m = (step.q != 0) ? (cell.q - p.anchor.q) / step.q
                                    : (cell.r - p.anchor.r) / step.r;
        if (m < 0 || m >= n) return -1;
        if (cell_add(p.anchor, cell_mul(step, m)) != cell) return -1;
        return tables[p.rot][m][dir];
    };

    auto edges_ok = [&](const Placement& p) -> bool {
        Cell step = dir_offset(p.rot);
        for (int id = 0; id < L.count(); ++id) {
            auto [m, bd] = L.base_edge(id);
            Cell cell = cell_add(p.anchor, cell_mul(step, m));
            int dir = (bd + p.rot) % 6;
            Cell other = cell_add(cell, dir_offset(dir));
            auto it = owner.find(other);
            if (it == owner.end()) continue;
            int other_label = label_of(stack[it->second], other, (dir + 3) % 6);
            if (other_label >= 0 && forbids(rules, id, other_label)) return false;
        }
        return true;
    };

    auto place = [&](const Placement& p) {
        stack.push_back(p);
        int idx = static_cast<int>(stack.size()) - 1;
        for (Cell c : cells_of(L, p)) owner[c] = idx;
    };

    // Overlapping or rule-breaking seeds are a caller error.
    for (const Placement& s : seeds) {
        for (Cell c : cells_of(L, s))
            require(!owner.count(c), ErrorKind::malformed_input, "tiler: seed placements overlap");
        require(edges_ok(s), ErrorKind::malformed_input,
                "tiler: seed placements already violate the rules");
        place(s);
    }

    std::vector<Cell> cells(region.begin(), region.end());  // (r, q) order
    std::size_t nodes = 0;

    std::vector<Placement> current;
    std::function<void()> dfs = [&]() {
        if (result.cap_exceeded || result.budget_exceeded) return;
        if (++nodes > opts.node_budget) {
            result.budget_exceeded = true;
            return;
        }
        std::size_t next = cells.size();
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (!owner.count(cells[i])) {
                next = i;
                break;
            }
        if (next == cells.size()) {
            if (result.completions.size() >= opts.max_solutions) {
                result.cap_exceeded = true;
                return;
            }
            result.completions.push_back(current);
            return;
        }
        Cell target = cells[next];
        for (int rot = 0; rot < 6; ++rot) {
            Cell step = dir_offset(rot);
            for (int k = 0; k < n; ++k) {
                Placement cand{{target.q - step.q * k, target.r - step.r * k}, rot};
                bool fits = true;
                auto cand_cells = cells_of(L, cand);
                for (Cell c : cand_cells)
                    if (!region.count(c) || owner.count(c)) {
                        fits = false;
                        break;
                    }
                if (!fits || !edges_ok(cand)) continue;
                std::size_t mark = stack.size();
                place(cand);
                current.push_back(cand);
                dfs();
                current.pop_back();
                for (Cell c : cand_cells) owner.erase(c);
                stack.resize(mark);
                if (result.cap_exceeded || result.budget_exceeded) return;
            }
        }
    };
    dfs();
    return result;
}

std::set<Cell> hex_region(long long radius) {
    std::set<Cell> out;
    for (long long q = -radius; q <= radius; ++q)
        for (long long r = -radius; r <= radius; ++r)
            if (std::abs(q + r) <= radius) out.insert({q, r});
    return out;
}

std::string rules_to_json(const Labels& labels, const RuleSet& rules) {
    json j;
    j["n"] = labels.n();
    j["forbidden"] = json::array();
    for (auto [a, b] : rules) j["forbidden"].push_back({labels.name(a), labels.name(b)});
    return j.dump(2);
}

RuleSet rules_from_json(const std::string& text, int& n_out) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorKind::malformed_input, std::string("rules.json: ") + e.what());
    }
    RuleSet rules;
    try {
        n_out = j.at("n").get<int>();
        Labels L(n_out);
        for (const json& pair : j.at("forbidden"))
            add_rule(rules, L.from_name(pair.at(0).get<std::string>()),
                     L.from_name(pair.at(1).get<std::string>()));
    } catch (const json::exception& e) {
        fail(ErrorKind::malformed_input, std::string("rules.json: ") + e.what());
    }
    return rules;
}

std::string patch_to_json(const std::vector<Placement>& placements) {
    json j = json::array();
    for (const Placement& p : placements)
        j.push_back({{"q", p.anchor.q}, {"r", p.anchor.r}, {"rot", p.rot}});
    return j.dump(2);
}

std::vector<Placement> patch_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorKind::malformed_input, std::string("patch.json: ") + e.what());
    }
    std::vector<Placement> out;
    try {
        for (const json& p : j)
            out.push_back({{p.at("q").get<long long>(), p.at("r").get<long long>()},
                           p.at("rot").get<int>()});
    } catch (const json::exception& e) {
        fail(ErrorKind::malformed_input, std::string("patch.json: ") + e.what());
    }
    return out;
}

}  // namespace sticktile::stick
