#include "sticktile/state_compiler.hpp"

#include <algorithm>
#include <functional>

namespace sticktile::statecomp {

using schematic::BucketSpec;
using schematic::GapAssignment;
using schematic::StateTable;

EncodingLayout EncodingLayout::make(int t, int k) {
    require(t >= 1, ErrorKind::malformed_input, "encoding layout: t must be >= 1");
    require(k >= 1, ErrorKind::malformed_input, "encoding layout: k must be >= 1");
    EncodingLayout L;
    L.t = t;
    L.k = k;
    L.d = 12 * k;
    L.v = (2 * t + 1) * L.d;
    L.s = 16 + 8 * (t - 1);
    L.e3 = 9 + 4 * (t - 1);
    L.e35 = L.e3 + 4;
    L.e4 = 17 + 4 * (t - 1);
    return L;
}

EncodingLayout EncodingLayout::for_instance(const ab::ABInstance& inst) {
    inst.validate();
    return make(inst.t, inst.colors);
}

namespace {

std::vector<int> full_range(int v) {
    std::vector<int> out(v);
    for (int i = 0; i < v; ++i) out[i] = i + 1;
    return out;
}

std::vector<int> encoding_values(const EncodingLayout& L) {
    std::vector<int> out;
    for (int i = 1; i <= 2 * L.t; ++i) out.push_back(L.d * i);
    return out;
}

void sort_unique(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

struct Builder {
    const EncodingLayout& L;
    StateTable table;
    std::vector<bool> has_lr, has_i;

    Builder(const EncodingLayout& layout) : L(layout) {
        table.state_count = L.s;
        table.value_count = L.v;
        table.buckets.resize(L.s);
        has_lr.assign(L.s + 1, false);
        has_i.assign(L.s + 1, false);
    }

    void set_lr(int state, std::vector<int> left, std::vector<int> right) {
        state = L.wrap(state);
        require(!has_lr[state], ErrorKind::verification_failure,
                "state table builder: state " + std::to_string(state) + " assigned L/R twice");
        has_lr[state] = true;
        sort_unique(left);
        sort_unique(right);
        table.buckets[state - 1].left_values = std::move(left);
        table.buckets[state - 1].right_values = std::move(right);
    }

    void set_i(int state, int lo, int hi) {
        state = L.wrap(state);
        require(!has_i[state], ErrorKind::verification_failure,
                "state table builder: state " + std::to_string(state) + " assigned I twice");
        has_i[state] = true;
        table.buckets[state - 1].diff_lo = lo;
        table.buckets[state - 1].diff_hi = hi;
    }
};

// c(j) runs over tile values 1..2t and reads one corner colour per family.
using ColorFn = std::function<int(int)>;

// One colour-matching gadget between consecutive encoding states E and E+4.
// The family carrying the 2k offset is the one whose rightward neighbour
// match gets enforced.
void build_color_segment(Builder& b, int E, bool two_k_is_a, const ColorFn& c) {
    const EncodingLayout& L = b.L;
    const int k = L.k, t = L.t;
    auto q = [&](int j) { return ((j <= t) == two_k_is_a) ? 2 : 4; };

    std::vector<int> r1, l2, r2, r3;
    for (int j = 1; j <= 2 * t; ++j) r1.push_back(12 * k * j + q(j) * k + c(j));
    for (int i = 1; i <= 2 * t; ++i) l2.push_back(12 * k * i);
    for (int j = 1; j <= 2 * t; ++j) {
        r2.push_back(12 * k * (2 * t + 1 - j) + 2 * k);
        for (int cc = -k + 1; cc <= k - 1; ++cc)
            r2.push_back(12 * k * (2 * t + 1 - j) - 2 * k + cc);
    }
    for (int i = 1; i <= 2 * t; ++i)
        for (int x = 0; x < 6 * k; ++x) r3.push_back(12 * k * i + x);

    b.set_lr(E + 1, full_range(L.v), std::move(r1));
    b.set_lr(E + 2, std::move(l2), std::move(r2));
    b.set_lr(E + 3, full_range(L.v), std::move(r3));
    for (int m = 1; m <= 4; ++m) b.set_i(E + m, 0, 6 * k);
}

// The vertical gadget between e2 and e3 holds low-range values fixed while
// letting high-range values wander through offset staircases.
struct VerticalTables {
    std::vector<std::vector<int>> odd_left;  // interior odd states, in order
    std::vector<std::pair<int, int>> even_i;
};

VerticalTables vertical_tables(const EncodingLayout& L, bool flipped) {
    const int t = L.t, d = L.d;
    VerticalTables vt;
    for (int m = 1; m <= 4 * (t - 1); ++m) {
        if (m % 2 == 1) {  // even state offset from an odd encoding state
            bool first_half = m <= 2 * (t - 1);
            std::pair<int, int> I = first_half ? std::make_pair(-d + 1, 1)
                                               : std::make_pair(-1, d - 1);
            if (flipped) I = {-I.second, -I.first};
            vt.even_i.push_back(I);
        } else if (m < 4 * (t - 1)) {
            int i = m / 2;
            std::vector<int> left;
            for (int l = 1; l <= t; ++l) left.push_back(d * l);
            if (i <= t - 1) {
                for (int l = t + 1; l <= 2 * t - i; ++l) left.push_back(d * l + i);
            }
            if (i > t - 1) {
                int ii = i - (t - 1);
                left.clear();
                for (int l = 1; l <= t; ++l) left.push_back(d * l);
                for (int l = t + 1; l <= t + 1 + ii; ++l) left.push_back(d * l + t - 1 - ii);
            }
            if (flipped)
                for (int& x : left) x = L.v - x;
            vt.odd_left.push_back(std::move(left));
        }
    }
    return vt;
}

void build_vertical_segment(Builder& b, int E, bool flipped) {
    const EncodingLayout& L = b.L;
    if (L.t == 1) return;  // the gadget is empty
    VerticalTables vt = vertical_tables(L, flipped);
    std::size_t odd_at = 0, even_at = 0;
    for (int m = 1; m <= 4 * (L.t - 1); ++m) {
        if (m % 2 == 1) {
            auto [lo, hi] = vt.even_i[even_at++];
            b.set_lr(E + m, full_range(L.v), full_range(L.v));
            b.set_i(E + m, lo, hi);
        } else if (m < 4 * (L.t - 1)) {
            b.set_lr(E + m, vt.odd_left[odd_at++], full_range(L.v));
            b.set_i(E + m, 0, 0);
        } else {
            b.set_i(E + m, 0, 0);  // arrival at the next encoding state
        }
    }
}

ColorFn color_fn(const ab::ABInstance& inst, int which) {
    return [&inst, which](int j) {
        bool is_a = j <= inst.t;
        const ab::ABTile& tile = is_a ? inst.a_tiles[j - 1] : inst.b_tiles[j - inst.t - 1];
        switch (which) {
            case 0: return is_a ? tile.ur : tile.ll;  // upper pass, rightward match
            case 1: return is_a ? tile.ul : tile.lr;  // upper pass, leftward match
            case 2: return is_a ? tile.lr : tile.ul;  // lower pass, rightward match
            default: return is_a ? tile.ll : tile.ur;  // lower pass, leftward match
        }
    };
}

}  // namespace

CompiledTable build_state_table(const ab::ABInstance& inst) {
    EncodingLayout L = EncodingLayout::for_instance(inst);
    Builder b(L);

    std::vector<int> enc = encoding_values(L);
    for (int e : {L.e1, L.e15, L.e2, L.e3, L.e35, L.wrap(L.e4)}) {
        int s = L.wrap(e);
        if (!b.has_lr[s]) b.set_lr(s, enc, enc);
    }

    build_color_segment(b, L.e1, true, color_fn(inst, 0));
    build_color_segment(b, L.e15, false, color_fn(inst, 1));
    build_color_segment(b, L.e3, true, color_fn(inst, 2));
    build_color_segment(b, L.e35, false, color_fn(inst, 3));
    build_vertical_segment(b, L.e2, false);
    build_vertical_segment(b, L.e4, true);

    for (int s = 1; s <= L.s; ++s) {
        require(b.has_lr[s], ErrorKind::verification_failure,
                "state table builder: state " + std::to_string(s) + " missing L/R");
        require(b.has_i[s], ErrorKind::verification_failure,
                "state table builder: state " + std::to_string(s) + " missing I");
    }
    b.table.validate();
    return {L, std::move(b.table)};
}

TileRef left_value_to_tile(const EncodingLayout& layout, int left_value) {
    require(left_value >= 1 && left_value % layout.d == 0,
            ErrorKind::verification_failure,
            "encoding value " + std::to_string(left_value) + " is not a multiple of d=" +
                std::to_string(layout.d));
    int i = left_value / layout.d;
    require(i >= 1 && i <= 2 * layout.t, ErrorKind::verification_failure,
            "encoding value " + std::to_string(left_value) + " outside the tile range");
    if (i <= layout.t) return {TileFamily::A, i};
    return {TileFamily::B, i - layout.t};
}

namespace {

struct Filler {
    const ab::ABInstance& inst;
    const CompiledTable& ct;
    const ab::ABTorusTiling& tiling;
    int cols;
    GapAssignment out;

    Filler(const ab::ABInstance& i, const CompiledTable& c, const ab::ABTorusTiling& t)
        : inst(i), ct(c), tiling(t), cols(2 * t.width) {
        out.periodic = true;
        out.first_row = 1;
        out.first_col = 0;
        out.rows.resize(static_cast<std::size_t>(ct.layout.s) * tiling.height);
        for (std::size_t g = 0; g < out.rows.size(); ++g) {
            out.rows[g].state = static_cast<int>(g % ct.layout.s) + 1;
            out.rows[g].gaps.resize(cols);
        }
    }

    schematic::AssignRow& row(long long global) {  // global rows start at 1
        long long n = static_cast<long long>(out.rows.size());
        return out.rows[((global - 1) % n + n) % n];
    }

    int wrap_col(int j) const { return (j % cols + cols) % cols; }

    void set_encoding_row(long long global, const std::vector<int>& u) {
        auto& r = row(global);
        for (int j = 0; j < cols; ++j)
            r.gaps[j] = {ct.layout.d * u[j], ct.layout.d * (2 * ct.layout.t + 1 - u[j])};
    }

    void fill_color_segment(long long E_row, const std::vector<int>& u, bool two_k_is_a,
                            const ColorFn& c) {
        const int k = ct.layout.k, t = ct.layout.t;
        auto q = [&](int j) { return ((u[j] <= t) == two_k_is_a) ? 2 : 4; };
        auto cc = [&](int j) { return c(u[j]); };
        const int base = 12 * k;
        const int top = base * (2 * t + 1);

        std::vector<int> xs(cols);
        xs[0] = 3 * k;
        for (int j = 1; j < cols; ++j)
            xs[j] = xs[j - 1] - (q(j) - q(j - 1)) * k - cc(j) + cc(j - 1);
        int wrap_back = xs[cols - 1] - (q(0) - q(cols - 1)) * k - cc(0) + cc(cols - 1);
        require(wrap_back == xs[0], ErrorKind::verification_failure,
                "colour segment fill: offsets fail to close around the period");
        for (int x : xs)
            require(x >= 0 && x < 6 * k, ErrorKind::verification_failure,
                    "colour segment fill: offset escapes [0, 6k)");

        auto& r1 = row(E_row + 1);
        auto& r2 = row(E_row + 2);
        auto& r3 = row(E_row + 3);
        for (int j = 0; j < cols; ++j) {
            int jm = wrap_col(j - 1), jp = wrap_col(j + 1);
            r1.gaps[j] = {top - base * u[jm] - q(jm) * k - cc(jm), base * u[j] + q(j) * k + cc(j)};
            r2.gaps[j] = {base * u[j],
                          top - base * u[j] + (q(jp) - q(j)) * k + cc(jp) - cc(j)};
            r3.gaps[j] = {top - base * u[jm] - xs[j], base * u[j] + xs[j]};
        }
    }

    // One column's left values through the interior odd states of a vertical
    // gadget, found by search over the allowed sets and difference intervals.
    std::vector<int> vertical_path(int E, int from, int to) {
        const int steps = 2 * (ct.layout.t - 1);
        std::vector<int> path(steps + 1);
        path[0] = from;
        std::function<bool(int)> go = [&](int i) -> bool {
            if (i == steps) return path[steps] == to;
            const BucketSpec& odd = ct.table.bucket(ct.layout.wrap(E + 2 * (i + 1)));
            const BucketSpec& even = ct.table.bucket(ct.layout.wrap(E + 2 * i + 1));
            for (int x : odd.left_values) {
                if (!even.diff_has(x - path[i])) continue;
                path[i + 1] = x;
                if (go(i + 1)) return true;
            }
            return false;
        };
        require(go(0), ErrorKind::verification_failure,
                "vertical gadget fill: no value path from " + std::to_string(from) + " to " +
                    std::to_string(to));
        return path;
    }

    void fill_vertical_segment(long long E_row, int E, const std::vector<int>& from,
                               const std::vector<int>& to) {
        if (ct.layout.t == 1) return;
        const int d = ct.layout.d, v = ct.layout.v, t = ct.layout.t;
        const int steps = 2 * (t - 1);
        std::vector<std::vector<int>> paths(cols);
        for (int j = 0; j < cols; ++j) paths[j] = vertical_path(E, d * from[j], d * to[j]);
        for (int i = 1; i < steps; ++i) {
            auto& r = row(E_row + 2 * i);
            for (int j = 0; j < cols; ++j) r.gaps[j] = {paths[j][i], v - paths[j][i]};
        }
        // Even rows shift the next odd row's values between the columns.
        for (int i = 1; i <= steps; ++i) {
            auto& r = row(E_row + 2 * i - 1);
            for (int j = 0; j < cols; ++j) {
                int left = v - paths[wrap_col(j - 1)][i];
                int right = paths[j][i];
                r.gaps[j] = {left, right};
            }
        }
    }

    void run() {
        const EncodingLayout& L = ct.layout;
        const int h = tiling.height, w = tiling.width, t = L.t;
        for (int m = 0; m < h; ++m) {
            int r_ab = (h - m) % h;
            int r_prev = (r_ab - 1 + h) % h;
            std::vector<int> u1(cols), u3(cols);
            for (int c = 0; c < w; ++c) {
                u1[2 * c] = tiling.a_at(r_ab, c);
                u1[2 * c + 1] = t + tiling.b_at(r_ab, c);
                u3[2 * c] = tiling.a_at(r_ab, c);
                u3[2 * c + 1] = t + tiling.b_at(r_prev, c);
            }
            std::vector<int> u1_next(cols);
            int r_next = (r_ab - 1 + h) % h;
            for (int c = 0; c < w; ++c) {
                u1_next[2 * c] = tiling.a_at(r_next, c);
                u1_next[2 * c + 1] = t + tiling.b_at(r_next, c);
            }

            long long base = static_cast<long long>(L.s) * m;
            set_encoding_row(base + L.e1, u1);
            fill_color_segment(base + L.e1, u1, true, color_fn(inst, 0));
            set_encoding_row(base + L.e15, u1);
            fill_color_segment(base + L.e15, u1, false, color_fn(inst, 1));
            set_encoding_row(base + L.e2, u1);
            fill_vertical_segment(base + L.e2, L.e2, u1, u3);
            set_encoding_row(base + L.e3, u3);
            fill_color_segment(base + L.e3, u3, true, color_fn(inst, 2));
            set_encoding_row(base + L.e35, u3);
            fill_color_segment(base + L.e35, u3, false, color_fn(inst, 3));
            if (L.e4 <= L.s) {
                set_encoding_row(base + L.e4, u3);
                fill_vertical_segment(base + L.e4, L.e4, u3, u1_next);
            }
        }
    }
};

}  // namespace

GapAssignment fill_assignment_from_ab(const ab::ABInstance& inst, const ab::ABTorusTiling& tiling) {
    inst.validate();
    auto violations = ab::tiling_violations(inst, tiling);
    require(violations.empty(), ErrorKind::malformed_input,
            "fill: input AB tiling is invalid: " + (violations.empty() ? "" : violations.front()));
    CompiledTable ct = build_state_table(inst);
    Filler filler(inst, ct, tiling);
    filler.run();
    return std::move(filler.out);
}

ab::ABTorusTiling decode_assignment_to_ab(const ab::ABInstance& inst,
                                          const GapAssignment& assign) {
    inst.validate();
    EncodingLayout L = EncodingLayout::for_instance(inst);
    require(assign.periodic, ErrorKind::malformed_input, "decode expects a periodic assignment");
    const long long R = static_cast<long long>(assign.rows.size());
    require(R >= L.s && R % L.s == 0, ErrorKind::malformed_input,
            "decode: row period must be a positive multiple of s");
    const int h = static_cast<int>(R / L.s);
    require(!assign.rows[0].gaps.empty(), ErrorKind::malformed_input, "decode: no columns");
    const int cols = static_cast<int>(assign.rows[0].gaps.size());
    require(cols % 2 == 0, ErrorKind::malformed_input, "decode: column period must be even");
    const int w = cols / 2;

    long long i0 = -1;
    for (long long i = 0; i < R; ++i)
        if (assign.rows[i].state == L.e1) {
            i0 = i;
            break;
        }
    require(i0 >= 0, ErrorKind::verification_failure, "decode: no row in the first encoding state");
    for (long long i = 0; i < R; ++i)
        require(assign.rows[(i0 + i) % R].state == L.wrap(L.e1 + static_cast<int>(i % L.s)),
                ErrorKind::verification_failure, "decode: row states do not cycle");

    // Tile indices per column of the anchor encoding row; columns must
    // alternate between the two families.
    std::vector<std::vector<int>> u(h, std::vector<int>(cols));
    for (int m = 0; m < h; ++m) {
        const auto& row = assign.rows[(i0 + static_cast<long long>(L.s) * m) % R];
        for (int j = 0; j < cols; ++j) {
            TileRef ref = left_value_to_tile(L, row.gaps[j].left);
            u[m][j] = ref.family == TileFamily::A ? ref.index : L.t + ref.index;
        }
    }
    int offset = u[0][0] <= L.t ? 0 : 1;
    for (int m = 0; m < h; ++m)
        for (int j = 0; j < cols; ++j) {
            bool want_a = ((j + offset) % 2) == 0;
            require((u[m][j] <= L.t) == want_a, ErrorKind::verification_failure,
                    "decode: adjacent encoding columns carry the same tile family at column " +
                        std::to_string(j));
        }

    ab::ABTorusTiling tiling;
    tiling.width = w;
    tiling.height = h;
    tiling.a.resize(static_cast<std::size_t>(w) * h);
    tiling.b.resize(static_cast<std::size_t>(w) * h);
    for (int m = 0; m < h; ++m) {
        int r_ab = (h - m) % h;
        for (int c = 0; c < w; ++c) {
            int ja = (2 * c + offset) % cols;
            int jb = (2 * c + 1 + offset) % cols;
            tiling.a[static_cast<std::size_t>(r_ab) * w + c] = u[m][ja];
            tiling.b[static_cast<std::size_t>(r_ab) * w + c] = u[m][jb] - L.t;
        }
    }
    auto violations = ab::tiling_violations(inst, tiling);
    if (!violations.empty())
        fail(ErrorKind::verification_failure,
             "decode: reconstructed placement violates the edge constraints: " +
                 violations.front());
    return tiling;
}

std::set<int> vertical_end_indices(const CompiledTable& ct, int start_index) {
    const EncodingLayout& L = ct.layout;
    require(start_index >= 1 && start_index <= 2 * L.t, ErrorKind::malformed_input,
            "vertical oracle: start index outside 1..2t");
    std::set<int> current{L.d * start_index};
    const int steps = 2 * (L.t - 1);
    for (int i = 0; i < steps; ++i) {
        const BucketSpec& odd = ct.table.bucket(L.wrap(L.e2 + 2 * (i + 1)));
        const BucketSpec& even = ct.table.bucket(L.wrap(L.e2 + 2 * i + 1));
        std::set<int> next;
        for (int x : current)
            for (int y : odd.left_values)
                if (even.diff_has(y - x)) next.insert(y);
        current = std::move(next);
    }
    std::set<int> out;
    for (int x : current) {
        require(x % L.d == 0, ErrorKind::verification_failure,
                "vertical oracle: arrival value is not an encoding value");
        out.insert(x / L.d);
    }
    return out;
}

BandResult horizontal_band(const CompiledTable& ct, const ab::ABInstance& inst, int v0, int r0,
                           int v1, int r1) {
    (void)inst;
    const EncodingLayout& L = ct.layout;
    BandResult result;
    const int v = L.v;

    auto bucket = [&](int state) -> const BucketSpec& { return ct.table.bucket(L.wrap(state)); };
    auto in_I = [&](int state, int diff) { return bucket(state).diff_has(diff); };
    auto in_range_values = [&](const std::vector<int>& set, int lo, int hi) {
        std::vector<int> out;
        auto it = std::lower_bound(set.begin(), set.end(), lo);
        for (; it != set.end() && *it <= hi; ++it) out.push_back(*it);
        return out;
    };

    // Row 0 is the encoding row; rows 1..4 are filled by search. Row indices
    // with even offset sit in odd lattice rows.
    int L00 = L.d * v0, R00 = L.d * (2 * L.t + 1 - r0);
    int L01 = L.d * v1, R01 = L.d * (2 * L.t + 1 - r1);

    const BucketSpec& b1 = bucket(L.e1 + 1);
    const BucketSpec& b2 = bucket(L.e1 + 2);
    const BucketSpec& b3 = bucket(L.e1 + 3);
    const BucketSpec& b4 = bucket(L.e15);

    for (int R10 : in_range_values(b1.right_values, L00 + b1.diff_lo, L00 + b1.diff_hi)) {
        int L11 = L00 + R00 - R10;
        if (L11 < 1 || L11 > v) continue;
        for (int R11 : in_range_values(b1.right_values, L01 + b1.diff_lo, L01 + b1.diff_hi)) {
            for (int L20 : in_range_values(b2.left_values, R10 - b2.diff_hi, R10 - b2.diff_lo)) {
                for (int R20 :
                     in_range_values(b2.right_values, L11 + b2.diff_lo, L11 + b2.diff_hi)) {
                    int L21 = L11 + R11 - R20;
                    if (L21 < 1 || L21 > v || !b2.left_has(L21)) continue;
                    for (int R30 :
                         in_range_values(b3.right_values, L20 + b3.diff_lo, L20 + b3.diff_hi)) {
                        int L31 = L20 + R20 - R30;
                        if (L31 < 1 || L31 > v) continue;
                        for (int R31 : in_range_values(b3.right_values, L21 + b3.diff_lo,
                                                       L21 + b3.diff_hi)) {
                            for (int L40 : in_range_values(b4.left_values, R30 - b4.diff_hi,
                                                           R30 - b4.diff_lo)) {
                                for (int R40 : in_range_values(
                                         b4.right_values, L31 + b4.diff_lo, L31 + b4.diff_hi)) {
                                    int L41 = L31 + R31 - R40;
                                    if (L41 < 1 || L41 > v || !b4.left_has(L41)) continue;
                                    result.feasible = true;
                                    result.end_left_values.insert({L40, L41});
                                    result.first_row_right_values.insert(R10);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return result;
}

}  // namespace sticktile::statecomp
