#include "sticktile/schematic.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

namespace sticktile::schematic {

using nlohmann::json;

namespace {

int parity(long long g) { return static_cast<int>(((g % 2) + 2) % 2); }

// Local column of the below-left / below-right neighbour of a gap in global
// row g at local column j.
long long below_left_col(long long g, long long j) { return parity(g) == 1 ? j : j - 1; }
long long below_right_col(long long g, long long j) { return parity(g) == 1 ? j + 1 : j; }

struct DecodedGap {
    int state = 0, x = 0, y = 0;
};

// Side lengths carry (state, x, y): left = (2v-1)(sigma(state)-1) + x and
// right = (2v-1)(s-sigma(state)) + y.
std::optional<DecodedGap> decode_gap(const StateTable& table, long long left, long long right) {
    const int v = table.value_count, s = table.state_count;
    const long long step = 2 * v - 1;
    if (left < 1 || right < 1) return std::nullopt;
    long long jl = (left - 1) / step + 1;
    if (jl < 1 || jl > s) return std::nullopt;
    long long x = left - step * (jl - 1);
    if (x < 1 || x > v) return std::nullopt;
    long long back = (right - 1) / step;
    long long jr = s - back;
    if (jr < 1 || jr > s) return std::nullopt;
    long long y = right - step * (s - jr);
    if (y < 1 || y > v) return std::nullopt;
    if (jl != jr) return std::nullopt;
    DecodedGap d;
    d.state = table.sigma_inv(static_cast<int>(jl));
    d.x = static_cast<int>(x);
    d.y = static_cast<int>(y);
    return d;
}

long long left_len_of(const StateTable& table, int state, int x) {
    return static_cast<long long>(2 * table.value_count - 1) * (table.sigma(state) - 1) + x;
}

long long right_len_of(const StateTable& table, int state, int y) {
    return static_cast<long long>(2 * table.value_count - 1) *
               (table.state_count - table.sigma(state)) +
           y;
}

}  // namespace

std::string GapAssignment::to_json() const {
    json j;
    j["periodic"] = periodic;
    j["first_row"] = first_row;
    j["first_col"] = first_col;
    j["rows"] = json::array();
    for (const AssignRow& r : rows) {
        json gaps = json::array();
        for (const GapValues& g : r.gaps) gaps.push_back({g.left, g.right});
        j["rows"].push_back({{"state", r.state}, {"gaps", gaps}});
    }
    return j.dump(2);
}

GapAssignment GapAssignment::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorKind::malformed_input, std::string("assignment.json: ") + e.what());
    }
    GapAssignment a;
    try {
        a.periodic = j.value("periodic", false);
        a.first_row = j.value("first_row", 0LL);
        a.first_col = j.value("first_col", 0LL);
        for (const json& r : j.at("rows")) {
            AssignRow row;
            row.state = r.at("state").get<int>();
            for (const json& g : r.at("gaps"))
                row.gaps.push_back({g.at(0).get<int>(), g.at(1).get<int>()});
            a.rows.push_back(std::move(row));
        }
    } catch (const std::exception& e) {
        fail(ErrorKind::malformed_input, std::string("assignment.json: ") + e.what());
    }
    return a;
}

std::vector<Violation> check_gap_conditions(const GapAssignment& assign, const StateTable& table) {
    table.validate();
    std::vector<Violation> out;
    const long long nrows = static_cast<long long>(assign.rows.size());
    if (nrows == 0) return out;
    const long long ncols = static_cast<long long>(assign.rows[0].gaps.size());
    for (long long i = 0; i < nrows; ++i)
        if (static_cast<long long>(assign.rows[i].gaps.size()) != ncols) {
            out.push_back({"rows carry different gap counts", i, 0});
            return out;
        }
    if (ncols == 0) return out;
    if (assign.periodic && (nrows % 2 != 0))
        out.push_back({"periodic assignment needs an even row period", 0, 0});

    for (long long i = 0; i < nrows; ++i) {
        int st = assign.rows[i].state;
        if (st < 1 || st > table.state_count) {
            out.push_back({"state out of range", i, 0});
            return out;
        }
    }

    auto row_below = [&](long long i) -> long long {
        if (i + 1 < nrows) return i + 1;
        return assign.periodic ? 0 : -1;
    };
    auto wrap_col = [&](long long j) -> long long {
        if (j >= 0 && j < ncols) return j;
        return assign.periodic ? ((j % ncols) + ncols) % ncols : -1;
    };

    for (long long i = 0; i < nrows; ++i) {
        const AssignRow& row = assign.rows[i];
        const BucketSpec& bucket = table.bucket(row.state);
        for (long long j = 0; j < ncols; ++j) {
            const GapValues& g = row.gaps[j];
            if (!bucket.left_has(g.left))
                out.push_back({"left value not in L of its state", i, j});
            if (!bucket.right_has(g.right))
                out.push_back({"right value not in R of its state", i, j});
        }

        long long bi = row_below(i);
        if (bi < 0) continue;
        const AssignRow& below = assign.rows[bi];
        if (below.state != table.sigma(row.state))
            out.push_back({"row below is not in the successor state", i, 0});

        const long long g_global = assign.first_row + i;
        const BucketSpec& next_bucket = table.bucket(table.sigma(row.state));
        for (long long j = 0; j < ncols; ++j) {
            const GapValues& g = row.gaps[j];
            long long blj = wrap_col(below_left_col(g_global, j));
            long long brj = wrap_col(below_right_col(g_global, j));
            std::optional<int> xp, yp;
            if (blj >= 0) xp = below.gaps[blj].right;
            if (brj >= 0) yp = below.gaps[brj].left;
            if (xp && !next_bucket.diff_has(*xp - g.left))
                out.push_back({"x' - x outside I of the successor state", i, j});
            if (yp && !next_bucket.diff_has(g.right - *yp))
                out.push_back({"y - y' outside I of the successor state", i, j});
            if (xp && yp && g.left + g.right != *xp + *yp)
                out.push_back({"x + y != x' + y'", i, j});
        }
    }
    return out;
}

GapAssignment materialize_window(const GapAssignment& periodic, int rows, int cols) {
    require(periodic.periodic, ErrorKind::malformed_input, "materialize_window needs a periodic assignment");
    require(rows >= 1 && cols >= 1, ErrorKind::malformed_input, "window must be at least 1x1");
    const long long R = static_cast<long long>(periodic.rows.size());
    require(R > 0 && !periodic.rows[0].gaps.empty(), ErrorKind::malformed_input,
            "periodic assignment is empty");
    const long long C = static_cast<long long>(periodic.rows[0].gaps.size());
    GapAssignment out;
    out.periodic = false;
    out.first_row = periodic.first_row;
    out.first_col = periodic.first_col;
    for (long long i = 0; i < rows; ++i) {
        const AssignRow& src = periodic.rows[i % R];
        AssignRow row;
        row.state = src.state;
        for (long long j = 0; j < cols; ++j) row.gaps.push_back(src.gaps[j % C]);
        out.rows.push_back(std::move(row));
    }
    return out;
}

Schematic assignment_to_schematic(const GapAssignment& assign, const StateTable& table) {
    require(!assign.periodic, ErrorKind::unsupported,
            "assignment_to_schematic needs a finite window; materialize a periodic assignment first");
    require(!assign.rows.empty() && !assign.rows[0].gaps.empty(), ErrorKind::malformed_input,
            "window too small to anchor (need at least one row with one gap)");
    auto violations = check_gap_conditions(assign, table);
    if (!violations.empty())
        fail(ErrorKind::verification_failure,
             "assignment does not satisfy the gap conditions: " + violations.front().what +
                 " (row " + std::to_string(violations.front().row) + ", col " +
                 std::to_string(violations.front().col) + ")");

    const int v = table.value_count;
    const int lb = table.bucket_len();
    const long long nb = table.block_len();
    const long long nrows = static_cast<long long>(assign.rows.size());
    const long long ncols = static_cast<long long>(assign.rows[0].gaps.size());

    Schematic sch;
    sch.first_row = assign.first_row;
    sch.first_col = assign.first_col;
    sch.rows.resize(nrows);

    auto lay_out = [&](long long i, long long gamma0) {
        const AssignRow& row = assign.rows[i];
        SchematicRow& out = sch.rows[i];
        long long gamma = gamma0;
        out.block_starts.push_back(gamma0 - nb);
        for (long long j = 0; j < ncols; ++j) {
            long long ll = left_len_of(table, row.state, row.gaps[j].left);
            long long rl = right_len_of(table, row.state, row.gaps[j].right);
            out.gaps.push_back({ll, rl});
            gamma += ll + rl;
            out.block_starts.push_back(gamma);
            gamma += nb;
        }
    };

    lay_out(nrows - 1, 0);
    for (long long i = nrows - 2; i >= 0; --i) {
        const AssignRow& row = assign.rows[i];
        const SchematicRow& lower = sch.rows[i + 1];
        int j_bucket = table.sigma(row.state);
        long long gamma0;
        if (parity(assign.first_row + i) == 1) {
            // Below-left neighbour in the window: the gap's left end sits on
            // the right-facing triangle indexed by that neighbour's right value.
            int y_bl = assign.rows[i + 1].gaps[0].right;
            long long block_w = lower.block_starts[1];
            gamma0 = block_w + 1 + static_cast<long long>(j_bucket - 1) * lb + (v - y_bl);
        } else {
            int x_br = assign.rows[i + 1].gaps[0].left;
            long long block_w = lower.block_starts[0];
            long long right_end =
                block_w + 1 + static_cast<long long>(j_bucket - 1) * lb + (lb - v + x_br);
            long long span = left_len_of(table, row.state, row.gaps[0].left) +
                             right_len_of(table, row.state, row.gaps[0].right);
            gamma0 = right_end - span;
        }
        lay_out(i, gamma0);
    }
    return sch;
}

GapAssignment schematic_to_assignment(const Schematic& schem, const StateTable& table) {
    table.validate();
    require(!schem.rows.empty(), ErrorKind::malformed_input, "schematic has no rows");
    const long long nb = table.block_len();
    const long long ncols = static_cast<long long>(schem.rows[0].gaps.size());
    require(ncols >= 1, ErrorKind::malformed_input, "schematic row has no gaps");
    for (const SchematicRow& r : schem.rows)
        require(static_cast<long long>(r.gaps.size()) == ncols, ErrorKind::unsupported,
                "schematic_to_assignment needs a rectangular window (equal gap counts per row)");

    GapAssignment out;
    out.first_row = schem.first_row;
    out.first_col = schem.first_col;
    for (std::size_t i = 0; i < schem.rows.size(); ++i) {
        const SchematicRow& r = schem.rows[i];
        require(r.block_starts.size() == r.gaps.size() + 1, ErrorKind::malformed_input,
                "schematic row " + std::to_string(i) + ": block/gap counts inconsistent");
        AssignRow row;
        row.state = 0;
        for (std::size_t g = 0; g < r.gaps.size(); ++g) {
            auto dec = decode_gap(table, r.gaps[g].left, r.gaps[g].right);
            if (!dec)
                fail(ErrorKind::verification_failure,
                     "gap lengths are not of canonical form at row " + std::to_string(i) +
                         ", gap " + std::to_string(g) + " (left " + std::to_string(r.gaps[g].left) +
                         ", right " + std::to_string(r.gaps[g].right) + ")");
            if (g == 0)
                row.state = dec->state;
            else if (row.state != dec->state)
                fail(ErrorKind::verification_failure,
                     "gaps in row " + std::to_string(i) + " decode to different states");
            row.gaps.push_back({dec->x, dec->y});
        }
        out.rows.push_back(std::move(row));
    }

    for (std::size_t i = 0; i + 1 < out.rows.size(); ++i)
        if (out.rows[i + 1].state != table.sigma(out.rows[i].state))
            fail(ErrorKind::verification_failure,
                 "row " + std::to_string(i + 1) + " does not decode to the successor state");

    // The column lattice must line up: each gap's covering block below pins
    // whether the shared-column neighbour is below-left or below-right.
    for (std::size_t i = 0; i + 1 < schem.rows.size(); ++i) {
        const SchematicRow& upper = schem.rows[i];
        const SchematicRow& lower = schem.rows[i + 1];
        for (std::size_t g = 0; g < upper.gaps.size(); ++g) {
            long long gamma = upper.block_starts[g] + nb;
            long long span = upper.gaps[g].left + upper.gaps[g].right;
            // Find the lower block containing the gap.
            long long w = -1;
            for (std::size_t m = 0; m < lower.block_starts.size(); ++m)
                if (lower.block_starts[m] < gamma && gamma + span <= lower.block_starts[m] + nb)
                    w = static_cast<long long>(m);
            if (w < 0)
                fail(ErrorKind::verification_failure,
                     "gap at row " + std::to_string(i) + ", index " + std::to_string(g) +
                         " is not contained in a block below");
            long long expected = parity(schem.first_row + static_cast<long long>(i)) == 1
                                     ? static_cast<long long>(g) + 1
                                     : static_cast<long long>(g);
            if (w != expected)
                fail(ErrorKind::verification_failure,
                     "column lattice misaligned at row " + std::to_string(i) + ", gap " +
                         std::to_string(g));
        }
    }
    return out;
}

std::vector<Violation> validate_schematic(const Schematic& schem, const StateTable& table) {
    table.validate();
    MarkingLayout layout = bucket_layout(table);
    const long long nb = table.block_len();
    std::vector<Violation> out;

    for (std::size_t i = 0; i < schem.rows.size(); ++i) {
        const SchematicRow& r = schem.rows[i];
        if (r.block_starts.empty() || r.block_starts.size() != r.gaps.size() + 1) {
            out.push_back({"row structure: need one more block than gaps", (long long)i, 0});
            return out;
        }
        for (std::size_t g = 0; g < r.gaps.size(); ++g) {
            if (r.gaps[g].left < 1 || r.gaps[g].right < 1)
                out.push_back({"gap side lengths must be >= 1", (long long)i, (long long)g});
            long long expect = r.block_starts[g] + nb + r.gaps[g].left + r.gaps[g].right;
            if (r.block_starts[g + 1] != expect)
                out.push_back({"block spacing does not match gap lengths", (long long)i, (long long)g});
        }
    }
    if (!out.empty()) return out;

    auto top_arrow = [&](long long d) -> std::optional<Dir> {
        auto it = layout.top_arrows.find(static_cast<int>(d));
        if (it == layout.top_arrows.end()) return std::nullopt;
        return it->second;
    };
    auto bottom_arrow = [&](long long d) -> std::optional<Dir> {
        auto it = layout.bottom_arrows.find(static_cast<int>(d));
        if (it == layout.bottom_arrows.end()) return std::nullopt;
        return it->second;
    };

    for (std::size_t i = 0; i + 1 < schem.rows.size(); ++i) {
        const SchematicRow& upper = schem.rows[i];
        const SchematicRow& lower = schem.rows[i + 1];
        const long long lo_begin = lower.block_starts.front();
        const long long lo_end = lower.block_starts.back() + nb;
        const long long up_begin = upper.block_starts.front();
        const long long up_end = upper.block_starts.back() + nb;

        for (std::size_t g = 0; g < upper.gaps.size(); ++g) {
            long long gamma = upper.block_starts[g] + nb;
            long long span = upper.gaps[g].left + upper.gaps[g].right;
            if (gamma < lo_begin + 1 || gamma + span > lo_end - 1) continue;  // window edge
            long long w = -1;
            for (std::size_t m = 0; m < lower.block_starts.size(); ++m)
                if (lower.block_starts[m] + 1 <= gamma &&
                    gamma + span <= lower.block_starts[m] + nb - 1)
                    w = static_cast<long long>(m);
            if (w < 0) {
                out.push_back({"gap not contained inside one block below", (long long)i, (long long)g});
                continue;
            }
            long long base = lower.block_starts[w];
            if (!layout.right_triangles.count(static_cast<int>(gamma - base - 1)))
                out.push_back({"gap left end not over a right-facing triangle", (long long)i, (long long)g});
            if (!layout.left_triangles.count(static_cast<int>(gamma + span - base - 1)))
                out.push_back({"gap right end not over a left-facing triangle", (long long)i, (long long)g});
            long long change = gamma + upper.gaps[g].left;
            for (long long u = gamma; u < gamma + span; ++u) {
                auto mark = top_arrow(u - base);
                if (!mark) continue;
                Dir dir = (u < change) ? Dir::right : Dir::left;
                if (*mark != dir)
                    out.push_back({"gap square contradicts an arrow mark on the block below",
                                   (long long)i, (long long)g});
            }
        }

        for (std::size_t g = 0; g < lower.gaps.size(); ++g) {
            long long gamma = lower.block_starts[g] + nb;
            long long span = lower.gaps[g].left + lower.gaps[g].right;
            if (gamma < up_begin + 1 || gamma + span > up_end - 1) continue;  // window edge
            long long x = -1;
            for (std::size_t m = 0; m < upper.block_starts.size(); ++m)
                if (upper.block_starts[m] + 1 <= gamma &&
                    gamma + span <= upper.block_starts[m] + nb - 1)
                    x = static_cast<long long>(m);
            if (x < 0) {
                out.push_back({"gap not covered by one overlapping block above", (long long)(i + 1),
                               (long long)g});
                continue;
            }
            long long base = upper.block_starts[x];
            long long change = gamma + lower.gaps[g].left;
            for (long long u = gamma; u < gamma + span; ++u) {
                auto mark = bottom_arrow(u - base);
                if (!mark) continue;
                Dir dir = (u < change) ? Dir::right : Dir::left;
                if (*mark != dir)
                    out.push_back({"gap square contradicts an arrow mark on the block above",
                                   (long long)(i + 1), (long long)g});
            }
        }
    }
    return out;
}

std::string Schematic::to_json() const {
    json j;
    j["first_row"] = first_row;
    j["first_col"] = first_col;
    j["rows"] = json::array();
    for (const SchematicRow& r : rows) {
        json gaps = json::array();
        for (const GapSpec& g : r.gaps) gaps.push_back({{"left", g.left}, {"right", g.right}});
        j["rows"].push_back({{"block_starts", r.block_starts}, {"gaps", gaps}});
    }
    return j.dump(2);
}

Schematic Schematic::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorKind::malformed_input, std::string("schematic.json: ") + e.what());
    }
    Schematic s;
    try {
        s.first_row = j.value("first_row", 0LL);
        s.first_col = j.value("first_col", 0LL);
        for (const json& r : j.at("rows")) {
            SchematicRow row;
            row.block_starts = r.at("block_starts").get<std::vector<long long>>();
            for (const json& g : r.at("gaps"))
                row.gaps.push_back({g.at("left").get<long long>(), g.at("right").get<long long>()});
            s.rows.push_back(std::move(row));
        }
    } catch (const std::exception& e) {
        fail(ErrorKind::malformed_input, std::string("schematic.json: ") + e.what());
    }
    return s;
}

namespace {

// Triangle positions carry (bucket, value); recover them.
struct TriangleInfo {
    int bucket = 0, value = 0;
};

std::optional<TriangleInfo> right_triangle_info(const StateTable& t, int pos) {
    int lb = t.bucket_len();
    int bucket = pos / lb + 1;
    if (bucket < 1 || bucket > t.state_count) return std::nullopt;
    int value = t.value_count - (pos - (bucket - 1) * lb);
    if (value < 1 || value > t.value_count) return std::nullopt;
    return TriangleInfo{bucket, value};
}

std::optional<TriangleInfo> left_triangle_info(const StateTable& t, int pos) {
    int lb = t.bucket_len();
    int bucket = (pos - 1) / lb + 1;  // position i*lb belongs to bucket i
    if (bucket < 1 || bucket > t.state_count) return std::nullopt;
    int value = pos - (bucket - 1) * lb - (lb - t.value_count);
    if (value < 1 || value > t.value_count) return std::nullopt;
    return TriangleInfo{bucket, value};
}

}  // namespace

std::vector<WindowTuple> gap_condition_tuples(const StateTable& table) {
    std::vector<WindowTuple> out;
    for (int i = 1; i <= table.state_count; ++i) {
        const BucketSpec& here = table.bucket(i);
        const BucketSpec& next = table.bucket(table.sigma(i));
        for (int x : here.left_values)
            for (int y : here.right_values)
                for (int xp : next.right_values) {
                    int yp = x + y - xp;
                    if (yp < 1 || yp > table.value_count) continue;
                    if (!next.left_has(yp)) continue;
                    if (!next.diff_has(xp - x)) continue;
                    out.push_back({i, x, y, xp, yp});
                }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

EnumerateResult enumerate_windows(const StateTable& table, int gap_rows, int top_gaps,
                                  std::size_t cap) {
    table.validate();
    require(gap_rows == 2 && top_gaps == 1, ErrorKind::unsupported,
            "enumerate_windows: only 2 gap rows with 1 upper gap are implemented");
    MarkingLayout layout = bucket_layout(table);
    const int v = table.value_count;
    const int lb = table.bucket_len();
    const long long nb = table.block_len();
    const long long step = 2 * v - 1;

    EnumerateResult result;
    std::set<WindowTuple> tuples;
    std::map<WindowTuple, Schematic> samples;
    auto note = [&](const std::string& msg) {
        if (result.discrepancies.size() < 32) result.discrepancies.push_back(msg);
    };

    auto top_arrow = [&](long long d) -> std::optional<Dir> {
        auto it = layout.top_arrows.find(static_cast<int>(d));
        return it == layout.top_arrows.end() ? std::nullopt : std::optional<Dir>(it->second);
    };
    auto bottom_arrow = [&](long long d) -> std::optional<Dir> {
        auto it = layout.bottom_arrows.find(static_cast<int>(d));
        return it == layout.bottom_arrows.end() ? std::nullopt : std::optional<Dir>(it->second);
    };

    // Side gaps under a flanking block: spans consistent with the block's
    // bottom marks, with the facing pair pinned inside the gap. The covering
    // block's left edge sits at `block`; the gap's fixed end is at `fixed`
    // (its right end for the left-side gap, left end for the right-side one).
    struct SideGap {
        long long lead = 0, trail = 0;  // left/right side lengths
    };
    auto side_candidates = [&](long long block, long long fixed, bool fixed_is_right) {
        std::vector<SideGap> cands;
        for (long long span = 2; span <= nb - 2; ++span) {
            long long lo = fixed_is_right ? fixed - span : fixed;
            long long hi = lo + span;  // gap occupies [lo, hi]
            if (lo < block + 1 || hi > block + nb - 1) continue;
            for (long long change = lo + 1; change < hi; ++change) {
                bool ok = true;
                for (long long u = lo; u < hi && ok; ++u) {
                    auto mark = bottom_arrow(u - block);
                    if (mark && *mark != ((u < change) ? Dir::right : Dir::left)) ok = false;
                }
                if (!ok) continue;
                // The facing pair must pin the direction change.
                auto m1 = bottom_arrow(change - 1 - block);
                auto m2 = bottom_arrow(change - block);
                if (!(m1 && *m1 == Dir::right && m2 && *m2 == Dir::left)) continue;
                cands.push_back({change - lo, hi - change});
            }
        }
        return cands;
    };
    std::map<long long, std::vector<SideGap>> left_memo, right_memo;
    auto left_side_of = [&](long long gamma) -> const std::vector<SideGap>& {
        auto it = left_memo.find(gamma);
        if (it == left_memo.end())
            it = left_memo.emplace(gamma, side_candidates(gamma - nb, 0, true)).first;
        return it->second;
    };
    auto right_side_of = [&](long long end) -> const std::vector<SideGap>& {
        auto it = right_memo.find(end);
        if (it == right_memo.end())
            it = right_memo.emplace(end, side_candidates(end, nb, false)).first;
        return it->second;
    };

    for (int p_left : layout.right_triangles) {
        auto rt = right_triangle_info(table, p_left);
        if (!rt) continue;
        const long long gamma = p_left + 1;  // upper gap left end; W's left edge at 0
        for (int p_right : layout.left_triangles) {
            if (p_right <= p_left) continue;
            auto lt = left_triangle_info(table, p_right);
            if (!lt) continue;
            const long long end = p_right + 1;
            const long long span = end - gamma;
            if (span < 2) continue;
            for (long long change = gamma + 1; change < end; ++change) {
                bool ok = true;
                for (long long u = gamma; u < end && ok; ++u) {
                    auto mark = top_arrow(u);
                    if (mark && *mark != ((u < change) ? Dir::right : Dir::left)) ok = false;
                }
                if (!ok) continue;
                for (long long u_start = end - nb + 1; u_start <= gamma - 1; ++u_start) {
                    // Anchor block ends on triangles of the flanking blocks.
                    auto ul = left_triangle_info(
                        table, static_cast<int>(u_start - (gamma - nb) - 1));
                    if (!ul || !layout.left_triangles.count(
                                   static_cast<int>(u_start - (gamma - nb) - 1)))
                        continue;
                    auto ur = right_triangle_info(table, static_cast<int>(u_start + nb - end - 1));
                    if (!ur ||
                        !layout.right_triangles.count(static_cast<int>(u_start + nb - end - 1)))
                        continue;
                    // The anchor block's facing pair must pin the change point.
                    auto m1 = bottom_arrow(change - 1 - u_start);
                    auto m2 = bottom_arrow(change - u_start);
                    if (!(m1 && *m1 == Dir::right && m2 && *m2 == Dir::left)) continue;
                    bool marks_ok = true;
                    for (long long u = gamma; u < end && marks_ok; ++u) {
                        auto mark = bottom_arrow(u - u_start);
                        if (mark && *mark != ((u < change) ? Dir::right : Dir::left))
                            marks_ok = false;
                    }
                    if (!marks_ok) continue;

                    const auto& side_left = left_side_of(gamma);
                    const auto& side_right = right_side_of(end);
                    if (side_left.empty() || side_right.empty()) continue;

                    // Decode: lengths carry the canonical data.
                    long long lambda = change - gamma, rho = end - change;
                    long long jl = (lambda - 1) / step + 1;
                    long long x = lambda - step * (jl - 1);
                    long long jr = table.state_count - (rho - 1) / step;
                    long long y = rho - step * (table.state_count - jr);
                    if (jl != rt->bucket || jl != jr || x < 1 || x > v || y < 1 || y > v) {
                        note("marking-valid window with non-canonical upper gap lengths");
                        continue;
                    }
                    if (static_cast<int>(x) != ul->value || static_cast<int>(y) != ur->value ||
                        ul->bucket != ur->bucket ||
                        ul->bucket != table.sigma_inv(static_cast<int>(jl)))
                        note("anchor-block triangles disagree with decoded upper gap values");

                    std::set<std::pair<long long, long long>> left_vals, right_vals;
                    for (const SideGap& sg : side_left) {
                        long long jj = table.state_count - (sg.trail - 1) / step;
                        long long yy = sg.trail - step * (table.state_count - jj);
                        if (jj != table.sigma(static_cast<int>(jl)) || yy < 1 || yy > v ||
                            yy != rt->value) {
                            note("below-left gap pinned to a non-matching right length");
                            continue;
                        }
                        left_vals.insert({sg.lead, yy});
                    }
                    for (const SideGap& sg : side_right) {
                        long long jj = (sg.lead - 1) / step + 1;
                        long long xx = sg.lead - step * (jj - 1);
                        if (jj != table.sigma(static_cast<int>(jl)) || xx < 1 || xx > v ||
                            xx != lt->value) {
                            note("below-right gap pinned to a non-matching left length");
                            continue;
                        }
                        right_vals.insert({sg.trail, xx});
                    }
                    if (left_vals.empty() || right_vals.empty()) continue;

                    result.window_count += side_left.size() * side_right.size();
                    if (result.window_count > cap) {
                        result.cap_exceeded = true;
                        result.tuples.assign(tuples.begin(), tuples.end());
                        return result;
                    }

                    WindowTuple tup{table.sigma_inv(static_cast<int>(jl)), static_cast<int>(x),
                                    static_cast<int>(y), rt->value, lt->value};
                    if (tuples.insert(tup).second) {
                        // Keep one concrete window per tuple.
                        const SideGap& gl = side_left.front();
                        const SideGap& gr = side_right.front();
                        Schematic sample;
                        sample.first_row = 1;
                        sample.rows.resize(3);
                        sample.rows[0].block_starts = {u_start};
                        sample.rows[1].block_starts = {gamma - nb, end};
                        sample.rows[1].gaps = {{lambda, rho}};
                        long long g_span = gl.lead + gl.trail;
                        sample.rows[2].block_starts = {-g_span - nb, 0,
                                                       nb + gr.lead + gr.trail};
                        sample.rows[2].gaps = {{gl.lead, gl.trail}, {gr.lead, gr.trail}};
                        samples.emplace(tup, std::move(sample));
                    }
                }
            }
        }
    }
    result.tuples.assign(tuples.begin(), tuples.end());
    for (const WindowTuple& t : result.tuples) result.samples.push_back(samples.at(t));
    return result;
}

}  // namespace sticktile::schematic
