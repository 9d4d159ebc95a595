#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sticktile/state_compiler.hpp"

using namespace sticktile;
using namespace sticktile::statecomp;

namespace {

ab::ABInstance uniform_instance() {  // t = 1, one colour
    ab::ABInstance inst;
    inst.t = 1;
    inst.colors = 1;
    inst.a_tiles = {{0, 0, 0, 0}};
    inst.b_tiles = {{0, 0, 0, 0}};
    return inst;
}

wang::WangInstance checkerboard() {
    wang::WangInstance inst;
    inst.colors = 2;
    inst.tiles = {{1, 1, 1, 2}, {1, 2, 1, 1}};
    return inst;
}

// t = 2, two colours, with corner colours that vary per tile so the
// colour-matching gadgets bite.
ab::ABInstance two_colour_pairs() {
    ab::ABInstance inst;
    inst.t = 2;
    inst.colors = 2;
    inst.a_tiles = {{0, 0, 1, 0}, {1, 1, 0, 1}};
    inst.b_tiles = {{0, 1, 0, 0}, {1, 0, 1, 1}};
    return inst;
}

}  // namespace

TEST_CASE("encoding layout sizes") {
    auto l1 = EncodingLayout::make(1, 1);
    CHECK(l1.s == 16);
    CHECK(l1.d == 12);
    CHECK(l1.v == 36);
    CHECK(l1.e1 == 1);
    CHECK(l1.e15 == 5);
    CHECK(l1.e2 == 9);
    CHECK(l1.e3 == 9);
    CHECK(l1.e4 == 17);
    CHECK(l1.wrap(l1.e4) == 1);

    auto l2 = EncodingLayout::make(3, 2);
    CHECK(l2.s == 32);
    CHECK(l2.d == 24);
    CHECK(l2.v == 168);
    CHECK(l2.e3 == 17);
    CHECK(l2.e35 == 21);
    CHECK(l2.e4 == 25);
}

TEST_CASE("encoding states carry multiples of d") {
    ab::ABInstance inst = two_colour_pairs();
    inst.colors = 1;  // d = 12 for the example numbers
    for (auto& tiles : {&inst.a_tiles, &inst.b_tiles})
        for (auto& t : *tiles) t = {0, 0, 0, 0};
    auto ct = build_state_table(inst);
    const auto& e2 = ct.table.bucket(ct.layout.e2);
    CHECK(e2.left_values == std::vector<int>{12, 24, 36, 48});
    CHECK(e2.right_values == std::vector<int>{12, 24, 36, 48});
}

TEST_CASE("left values name tiles") {
    auto l = EncodingLayout::make(2, 1);  // d = 12
    CHECK(left_value_to_tile(l, 12) == TileRef{TileFamily::A, 1});
    CHECK(left_value_to_tile(l, 36) == TileRef{TileFamily::B, 1});
    CHECK_THROWS_AS(left_value_to_tile(l, 13), Error);
    CHECK_THROWS_AS(left_value_to_tile(l, 60), Error);
}

TEST_CASE("compiled tables pass their own validation") {
    CHECK_NOTHROW(build_state_table(uniform_instance()));
    CHECK_NOTHROW(build_state_table(two_colour_pairs()));
    CHECK_NOTHROW(build_state_table(ab::compile_wang_to_ab(checkerboard())));
}

TEST_CASE("fill produces a valid assignment and decodes back (t = 1)") {
    auto inst = uniform_instance();
    auto sols = ab::solve_torus(inst, 1, 1);
    REQUIRE(sols.tilings.size() == 1);
    auto assign = fill_assignment_from_ab(inst, sols.tilings[0]);
    auto ct = build_state_table(inst);
    CHECK(schematic::check_gap_conditions(assign, ct.table).empty());
    CHECK(assign.rows.size() == 16);
    auto back = decode_assignment_to_ab(inst, assign);
    CHECK(back == sols.tilings[0]);
}

TEST_CASE("fill encodes tile indices at the first encoding row") {
    auto inst = ab::compile_wang_to_ab(checkerboard());
    auto sols = ab::solve_torus(inst, 2, 1);
    REQUIRE(!sols.tilings.empty());
    const auto& tiling = sols.tilings[0];
    auto assign = fill_assignment_from_ab(inst, tiling);
    auto ct = build_state_table(inst);
    REQUIRE(schematic::check_gap_conditions(assign, ct.table).empty());
    // Row of state e1 for cycle 0 is stored first; column 2c carries d*a.
    for (int c = 0; c < 2; ++c) {
        CHECK(assign.rows[0].gaps[2 * c].left == ct.layout.d * tiling.a_at(0, c));
        CHECK(assign.rows[0].gaps[2 * c].right ==
              ct.layout.d * (2 * ct.layout.t + 1 - tiling.a_at(0, c)));
        CHECK(assign.rows[0].gaps[2 * c + 1].left ==
              ct.layout.d * (ct.layout.t + tiling.b_at(0, c)));
    }
}

TEST_CASE("round trips hold across the compiled corpus") {
    auto inst = ab::compile_wang_to_ab(checkerboard());
    for (auto [w, h] : {std::pair{2, 1}, std::pair{2, 2}}) {
        auto sols = ab::solve_torus(inst, w, h);
        REQUIRE(!sols.tilings.empty());
        for (const auto& tiling : sols.tilings) {
            auto assign = fill_assignment_from_ab(inst, tiling);
            auto ct = build_state_table(inst);
            CHECK(schematic::check_gap_conditions(assign, ct.table).empty());
            CHECK(decode_assignment_to_ab(inst, assign) == tiling);
        }
    }
}

TEST_CASE("decode rejects same-family neighbours") {
    auto inst = uniform_instance();
    auto sols = ab::solve_torus(inst, 1, 1);
    auto assign = fill_assignment_from_ab(inst, sols.tilings[0]);
    // Corrupt the encoding rows: both columns A-type.
    auto ct = build_state_table(inst);
    for (auto& row : assign.rows)
        if (row.state == ct.layout.e1) row.gaps[1] = row.gaps[0];
    CHECK_THROWS_WITH_AS(decode_assignment_to_ab(inst, assign),
                         doctest::Contains("same tile family"), Error);
}

TEST_CASE("vertical gadget keeps A fixed and lets B wander") {
    for (int t : {2, 3}) {
        ab::ABInstance inst;
        inst.t = t;
        inst.colors = 1;
        inst.a_tiles.assign(t, {0, 0, 0, 0});
        inst.b_tiles.assign(t, {0, 0, 0, 0});
        auto ct = build_state_table(inst);
        for (int u = 1; u <= t; ++u)
            CHECK(vertical_end_indices(ct, u) == std::set<int>{u});
        std::set<int> all_b;
        for (int u = t + 1; u <= 2 * t; ++u) all_b.insert(u);
        for (int u = t + 1; u <= 2 * t; ++u)
            CHECK(vertical_end_indices(ct, u) == all_b);
    }
}

TEST_CASE("horizontal gadget enforces alternation and colour match") {
    auto inst = two_colour_pairs();
    auto ct = build_state_table(inst);
    auto c_upper_right = [&](int j) {
        return j <= inst.t ? inst.a_tiles[j - 1].ur : inst.b_tiles[j - inst.t - 1].ll;
    };
    for (int v0 = 1; v0 <= 4; ++v0)
        for (int v1 = 1; v1 <= 4; ++v1) {
            auto band = horizontal_band(ct, inst, v0, 1, v1, 3);
            bool alternating = (v0 <= 2) != (v1 <= 2);
            bool expected = alternating;
            if (alternating && v0 <= 2) expected = c_upper_right(v0) == c_upper_right(v1);
            CHECK(band.feasible == expected);
            for (auto [l0, l1] : band.end_left_values) {
                CHECK(l0 == ct.layout.d * v0);
                CHECK(l1 == ct.layout.d * v1);
            }
        }
}
