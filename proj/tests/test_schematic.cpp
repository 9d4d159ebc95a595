#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "sticktile/schematic.hpp"

using namespace sticktile;
using namespace sticktile::schematic;

namespace {

StateTable full_table(int s, int v) {
    StateTable t;
    t.state_count = s;
    t.value_count = v;
    for (int i = 0; i < s; ++i) {
        BucketSpec b;
        for (int x = 1; x <= v; ++x) {
            b.left_values.push_back(x);
            b.right_values.push_back(x);
        }
        b.diff_lo = -(v - 1);
        b.diff_hi = v - 1;
        t.buckets.push_back(b);
    }
    return t;
}

GapAssignment constant_assignment(const StateTable& t, int rows, int cols, int x, int y) {
    GapAssignment a;
    a.first_row = 1;
    for (int i = 0; i < rows; ++i) {
        AssignRow r;
        r.state = (i % t.state_count) + 1;
        r.gaps.assign(cols, {x, y});
        a.rows.push_back(r);
    }
    return a;
}

}  // namespace

TEST_CASE("bucket length and block length formulas") {
    auto t = full_table(3, 3);
    CHECK(t.bucket_len() == 16);
    CHECK(t.block_len() == 50);
    auto t1 = full_table(1, 4);
    CHECK(t1.bucket_len() == 8);  // degenerate single state: 2v
    CHECK(t1.sigma(1) == 1);
}

TEST_CASE("bucket layout marks for the 3x3 full table") {
    auto t = full_table(3, 3);
    auto layout = bucket_layout(t);

    // Bucket 2 right triangles at absolute positions 16..18, left at 30..32.
    for (int p : {16, 17, 18}) CHECK(layout.right_triangles.count(p));
    CHECK_FALSE(layout.right_triangles.count(19));
    for (int p : {30, 31, 32}) CHECK(layout.left_triangles.count(p));
    CHECK_FALSE(layout.left_triangles.count(29));

    // Bucket 2 direction-change arrows at relative positions 6 and 10: a
    // right arrow occupies the square left of its target, a left arrow the
    // square right of it.
    CHECK(layout.top_arrows.at(16 + 6) == Dir::right);
    CHECK(layout.top_arrows.at(16 + 10 + 1) == Dir::left);

    // Facing pair below bucket 2 at relative position 13.
    CHECK(layout.bottom_arrows.at(16 + 13) == Dir::right);
    CHECK(layout.bottom_arrows.at(16 + 13 + 1) == Dir::left);

    // Back-to-back arrows around each internal bucket boundary.
    CHECK(layout.top_arrows.at(16) == Dir::left);
    CHECK(layout.top_arrows.at(17) == Dir::right);
}

TEST_CASE("rejects empty L at construction") {
    auto t = full_table(2, 2);
    t.buckets[0].left_values.clear();
    CHECK_THROWS_AS(t.validate(), Error);
}

TEST_CASE("gap conditions on small windows") {
    auto t = full_table(3, 3);

    GapAssignment empty;
    CHECK(check_gap_conditions(empty, t).empty());

    auto good = constant_assignment(t, 3, 2, 2, 2);
    CHECK(check_gap_conditions(good, t).empty());

    auto bad = good;
    bad.rows[1].gaps[0].left = 4;  // outside 1..v
    CHECK_FALSE(check_gap_conditions(bad, t).empty());
}

TEST_CASE("gap lengths follow the state and values") {
    auto t = full_table(3, 3);
    auto a = constant_assignment(t, 2, 2, 2, 2);
    a.rows[0].gaps[0] = {2, 1};
    a.rows[0].gaps[1] = {2, 1};
    a.rows[1].gaps[0] = {2, 1};
    a.rows[1].gaps[1] = {2, 1};
    // state 1, values (2|1): left length 5*1+2 = 7, right length 5*1+1 = 6.
    auto sch = assignment_to_schematic(a, t);
    CHECK(sch.rows[0].gaps[0].left == 7);
    CHECK(sch.rows[0].gaps[0].right == 6);
}

TEST_CASE("constant (v|v) assignment gives gaps of total length lb") {
    auto t = full_table(3, 3);
    auto a = constant_assignment(t, 3, 2, 3, 3);
    auto sch = assignment_to_schematic(a, t);
    for (const auto& row : sch.rows)
        for (const auto& g : row.gaps) CHECK(g.left + g.right == t.bucket_len());
}

TEST_CASE("constructed schematics validate and round trip") {
    auto t = full_table(3, 3);
    auto a = constant_assignment(t, 3, 3, 2, 2);
    auto sch = assignment_to_schematic(a, t);
    CHECK(validate_schematic(sch, t).empty());
    auto back = schematic_to_assignment(sch, t);
    CHECK(back == a);
}

TEST_CASE("decoding rejects non-canonical lengths") {
    auto t = full_table(3, 3);
    auto a = constant_assignment(t, 2, 2, 2, 2);
    auto sch = assignment_to_schematic(a, t);
    // Left length 4 would need a value of 4 > v in bucket 1.
    sch.rows[0].gaps[0].left = 4;
    CHECK_THROWS_AS(schematic_to_assignment(sch, t), Error);
}

TEST_CASE("validator spots a gap straddling a bucket boundary") {
    auto t = full_table(3, 3);
    const long long nb = t.block_len();
    Schematic sch;
    sch.first_row = 1;
    sch.rows.resize(2);
    // Lower row: one block at 0. Upper row: a gap from coordinate 3 to 31,
    // crossing the boundary between buckets 1 and 2 (position 16).
    sch.rows[1].block_starts = {0};
    sch.rows[0].block_starts = {3 - nb, 31};
    sch.rows[0].gaps = {{14, 14}};
    auto violations = validate_schematic(sch, t);
    REQUIRE(!violations.empty());
    bool arrow = false;
    for (const auto& v : violations) arrow |= v.what.find("arrow mark") != std::string::npos;
    CHECK(arrow);
}

TEST_CASE("validator requires triangles under block ends") {
    auto t = full_table(3, 3);
    const long long nb = t.block_len();
    Schematic sch;
    sch.first_row = 1;
    sch.rows.resize(2);
    sch.rows[1].block_starts = {0};
    // Gap from coordinate 4 (position 3: no right triangle in bucket 1, which
    // has them at 0..2) to 17 (position 16: a left triangle).
    sch.rows[0].block_starts = {4 - nb, 17};
    sch.rows[0].gaps = {{6, 7}};
    auto violations = validate_schematic(sch, t);
    bool tri = false;
    for (const auto& v : violations)
        tri |= v.what.find("right-facing triangle") != std::string::npos;
    CHECK(tri);
}

TEST_CASE("window enumeration matches the gap conditions exactly") {
    auto t = full_table(3, 3);
    auto expected = gap_condition_tuples(t);
    auto result = enumerate_windows(t, 2, 1, 2'000'000);
    CHECK(result.discrepancies.empty());
    CHECK_FALSE(result.cap_exceeded);
    CHECK(result.tuples == expected);
    CHECK(result.tuples.size() == 57);  // 3 states x 19 value combinations
    for (const auto& sample : result.samples) CHECK(validate_schematic(sample, t).empty());
}

TEST_CASE("window enumeration on a constrained table") {
    StateTable t;
    t.state_count = 2;
    t.value_count = 2;
    t.buckets = {BucketSpec{{1}, {1, 2}, -1, 0}, BucketSpec{{1, 2}, {2}, 0, 1}};
    auto expected = gap_condition_tuples(t);
    auto result = enumerate_windows(t, 2, 1, 2'000'000);
    CHECK(result.discrepancies.empty());
    CHECK(result.tuples == expected);
    CHECK_FALSE(expected.empty());
}

TEST_CASE("identity-interval tables force constant columns") {
    StateTable t;
    t.state_count = 4;
    t.value_count = 2;
    for (int i = 0; i < 4; ++i) t.buckets.push_back(BucketSpec{{1, 2}, {1, 2}, 0, 0});
    auto result = enumerate_windows(t, 2, 1, 2'000'000);
    CHECK(result.discrepancies.empty());
    CHECK_FALSE(result.tuples.empty());
    for (const auto& tup : result.tuples) {
        CHECK(tup.xp == tup.x);
        CHECK(tup.yp == tup.y);
    }
}

TEST_CASE("periodic assignments can be materialized and checked") {
    auto t = full_table(2, 2);
    GapAssignment a = constant_assignment(t, 2, 2, 2, 2);
    a.periodic = true;
    CHECK(check_gap_conditions(a, t).empty());
    auto window = materialize_window(a, 4, 5);
    CHECK(window.rows.size() == 4);
    CHECK(window.rows[0].gaps.size() == 5);
    CHECK(check_gap_conditions(window, t).empty());
}

TEST_CASE("assignment json round trip") {
    auto t = full_table(2, 2);
    auto a = constant_assignment(t, 2, 3, 1, 2);
    a.periodic = true;
    auto back = GapAssignment::from_json(a.to_json());
    CHECK(back == a);
    auto sch = assignment_to_schematic(materialize_window(a, 2, 2), t);
    auto sch_back = Schematic::from_json(sch.to_json());
    CHECK(sch_back == sch);
}
