#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sticktile/wang.hpp"

using namespace sticktile;
using namespace sticktile::wang;

namespace {

WangInstance one_tile_all_equal() {
    WangInstance inst;
    inst.colors = 1;
    inst.tiles = {{1, 1, 1, 1}};
    return inst;
}

WangInstance one_tile_mismatch() {
    WangInstance inst;
    inst.colors = 2;
    inst.tiles = {{1, 1, 1, 2}};  // east 1, west 2
    return inst;
}

WangInstance checkerboard() {
    // Two tiles that alternate horizontally: east/west colours 1|2 and 2|1.
    WangInstance inst;
    inst.colors = 2;
    inst.tiles = {{1, 1, 1, 2}, {1, 2, 1, 1}};
    return inst;
}

}  // namespace

TEST_CASE("single tile with matching colours tiles the 1x1 torus once") {
    auto result = solve_torus(one_tile_all_equal(), 1, 1);
    REQUIRE(result.tilings.size() == 1);
    CHECK_FALSE(result.cap_exceeded);
    CHECK(tiling_violations(one_tile_all_equal(), result.tilings[0]).empty());
}

TEST_CASE("single tile with east/west mismatch has no torus tiling") {
    auto result = solve_torus(one_tile_mismatch(), 1, 1);
    CHECK(result.tilings.empty());
    CHECK_FALSE(result.cap_exceeded);
}

TEST_CASE("checkerboard pair has exactly two 2x1 tilings") {
    auto result = solve_torus(checkerboard(), 2, 1);
    REQUIRE(result.tilings.size() == 2);
    CHECK(result.tilings[0].cells == std::vector<int>{1, 2});
    CHECK(result.tilings[1].cells == std::vector<int>{2, 1});
}

TEST_CASE("every returned tiling passes the independent recheck") {
    auto inst = checkerboard();
    for (int w = 1; w <= 3; ++w)
        for (int h = 1; h <= 3; ++h)
            for (const auto& t : solve_torus(inst, w, h).tilings)
                CHECK(tiling_violations(inst, t).empty());
}

TEST_CASE("solution set is closed under cyclic shifts") {
    auto inst = checkerboard();
    auto result = solve_torus(inst, 2, 2);
    for (const auto& t : result.tilings)
        for (int dr = 0; dr < t.height; ++dr)
            for (int dc = 0; dc < t.width; ++dc) {
                auto shifted = shift_tiling(t, dr, dc);
                CHECK(std::find(result.tilings.begin(), result.tilings.end(), shifted) !=
                      result.tilings.end());
            }
}

TEST_CASE("two runs return identical lists") {
    auto inst = checkerboard();
    auto a = solve_torus(inst, 3, 2);
    auto b = solve_torus(inst, 3, 2);
    CHECK(a.tilings == b.tilings);
}

TEST_CASE("cap exceeded is reported, not silently truncated") {
    auto inst = one_tile_all_equal();
    inst.tiles.push_back({1, 1, 1, 1});  // two interchangeable tiles
    auto result = solve_torus(inst, 2, 2, {5, true});
    CHECK(result.cap_exceeded);
    CHECK(result.tilings.size() == 5);
}

TEST_CASE("patch mode drops the wrap constraints") {
    // The mismatched tile fails on a torus but tiles an open 1x1 patch.
    auto inst = one_tile_mismatch();
    auto patch = solve_torus(inst, 1, 1, {10000, false});
    CHECK(patch.tilings.size() == 1);
}

TEST_CASE("json round trip") {
    auto inst = checkerboard();
    auto back = WangInstance::from_json(inst.to_json());
    CHECK(back.colors == inst.colors);
    REQUIRE(back.tiles.size() == inst.tiles.size());
    CHECK(back.tiles[1].east == 2);
    CHECK_THROWS_AS(WangInstance::from_json("{\"colors\":0,\"tiles\":[]}"), Error);
}
