#include "sticktile/state_table.hpp"

#include <algorithm>

#include "json.hpp"

namespace sticktile::schematic {

using nlohmann::json;

bool BucketSpec::left_has(int x) const {
    return std::binary_search(left_values.begin(), left_values.end(), x);
}

bool BucketSpec::right_has(int y) const {
    return std::binary_search(right_values.begin(), right_values.end(), y);
}

void StateTable::validate() const {
    require(state_count >= 1, ErrorKind::malformed_input, "state table: s must be >= 1");
    require(value_count >= 1, ErrorKind::malformed_input, "state table: v must be >= 1");
    require(static_cast<int>(buckets.size()) == state_count, ErrorKind::malformed_input,
            "state table: bucket count must equal s");
    for (int i = 1; i <= state_count; ++i) {
        const BucketSpec& b = buckets[i - 1];
        std::string where = "bucket " + std::to_string(i) + ": ";
        require(!b.left_values.empty() && !b.right_values.empty(), ErrorKind::malformed_input,
                where + "L and R must be nonempty");
        require(std::is_sorted(b.left_values.begin(), b.left_values.end()) &&
                    std::is_sorted(b.right_values.begin(), b.right_values.end()),
                ErrorKind::malformed_input, where + "L and R must be sorted");
        for (int x : b.left_values)
            require(x >= 1 && x <= value_count, ErrorKind::malformed_input,
                    where + "left value outside 1..v");
        for (int y : b.right_values)
            require(y >= 1 && y <= value_count, ErrorKind::malformed_input,
                    where + "right value outside 1..v");
        require(b.diff_lo <= b.diff_hi, ErrorKind::malformed_input, where + "I must be nonempty");
        require(b.diff_lo >= -(value_count - 1) && b.diff_hi <= value_count - 1,
                ErrorKind::malformed_input, where + "I outside [-(v-1), v-1]");
    }
}

std::string StateTable::to_json() const {
    json j;
    j["s"] = state_count;
    j["v"] = value_count;
    j["buckets"] = json::array();
    for (const BucketSpec& b : buckets)
        j["buckets"].push_back(
            {{"L", b.left_values}, {"R", b.right_values}, {"I", {b.diff_lo, b.diff_hi}}});
    return j.dump(2);
}

StateTable StateTable::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorKind::malformed_input, std::string("state_table.json: ") + e.what());
    }
    StateTable t;
    try {
        t.state_count = j.at("s").get<int>();
        t.value_count = j.at("v").get<int>();
        for (const json& b : j.at("buckets")) {
            BucketSpec spec;
            spec.left_values = b.at("L").get<std::vector<int>>();
            spec.right_values = b.at("R").get<std::vector<int>>();
            spec.diff_lo = b.at("I").at(0).get<int>();
            spec.diff_hi = b.at("I").at(1).get<int>();
            std::sort(spec.left_values.begin(), spec.left_values.end());
            std::sort(spec.right_values.begin(), spec.right_values.end());
            t.buckets.push_back(std::move(spec));
        }
    } catch (const std::exception& e) {
        fail(ErrorKind::malformed_input, std::string("state_table.json: ") + e.what());
    }
    t.validate();
    return t;
}

MarkingLayout bucket_layout(const StateTable& table) {
    table.validate();
    MarkingLayout out;
    out.state_count = table.state_count;
    out.value_count = table.value_count;
    out.bucket_len = table.bucket_len();
    out.block_len = table.block_len();

    const int v = table.value_count;
    const int lb = out.bucket_len;
    const int two_v1 = 2 * v - 1;

    auto put_arrow = [&](std::map<int, Dir>& marks, int facing, Dir dir) {
        int square = (dir == Dir::right) ? facing : facing + 1;
        require(square >= 0 && square < out.block_len, ErrorKind::malformed_input,
                "bucket layout: arrow square out of block range");
        auto [it, inserted] = marks.insert({square, dir});
        require(inserted || it->second == dir, ErrorKind::malformed_input,
                "bucket layout: conflicting arrow marks on one square");
    };

    for (int i = 1; i <= table.state_count; ++i) {
        const BucketSpec& b = table.bucket(i);
        const int base = (i - 1) * lb;

        // Back-to-back boundary arrows at the bucket edges.
        put_arrow(out.top_arrows, base + 1, Dir::right);
        put_arrow(out.top_arrows, i * lb - 1, Dir::left);

        for (int y : b.right_values) out.right_triangles.insert(base + v - y);
        for (int x : b.left_values) out.left_triangles.insert(base + lb - v + x);

        // The direction-change window for gaps above this bucket.
        put_arrow(out.top_arrows, base + two_v1 * (i - 1) + v - b.diff_hi, Dir::right);
        put_arrow(out.top_arrows, base + two_v1 * (i - 1) + v - b.diff_lo, Dir::left);

        // The facing-pair under bucket i pins gaps of state s-i+1 below.
        int mirrored = table.sigma(table.state_count - i + 1);
        int pair_pos = base + two_v1 * (mirrored - 1) + v;
        put_arrow(out.bottom_arrows, pair_pos, Dir::right);
        put_arrow(out.bottom_arrows, pair_pos, Dir::left);
    }
    return out;
}

}  // namespace sticktile::schematic
