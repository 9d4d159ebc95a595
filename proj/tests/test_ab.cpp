#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sticktile/ab.hpp"

using namespace sticktile;

namespace {

wang::WangInstance wang_example_tile() {
    // left a=1, right b=2, up c=1, down d=2, with k=2 colours.
    wang::WangInstance inst;
    inst.colors = 2;
    inst.tiles = {{1, 2, 2, 1}};  // north=c=1, east=b=2, south=d=2, west=a=1
    return inst;
}

wang::WangInstance checkerboard() {
    wang::WangInstance inst;
    inst.colors = 2;
    inst.tiles = {{1, 1, 1, 2}, {1, 2, 1, 1}};
    return inst;
}

}  // namespace

TEST_CASE("wang-to-ab mapping places colours on the documented corners") {
    auto abinst = ab::compile_wang_to_ab(wang_example_tile());
    REQUIRE(abinst.t == 1);
    // A_1 = (ul 0, ur c, ll a, lr k+i) = (0, 1, 1, 3)
    CHECK(abinst.a_tiles[0].ul == 0);
    CHECK(abinst.a_tiles[0].ur == 1);
    CHECK(abinst.a_tiles[0].ll == 1);
    CHECK(abinst.a_tiles[0].lr == 3);
    // B_1 = (ul k+i, ur b, ll d, lr 0) = (3, 2, 2, 0)
    CHECK(abinst.b_tiles[0].ul == 3);
    CHECK(abinst.b_tiles[0].ur == 2);
    CHECK(abinst.b_tiles[0].ll == 2);
    CHECK(abinst.b_tiles[0].lr == 0);
}

TEST_CASE("all-ones single tile compiles by direct substitution") {
    wang::WangInstance inst;
    inst.colors = 1;
    inst.tiles = {{1, 1, 1, 1}};
    auto abinst = ab::compile_wang_to_ab(inst);
    CHECK(abinst.a_tiles[0].ul == 0);
    CHECK(abinst.a_tiles[0].ur == 1);
    CHECK(abinst.a_tiles[0].ll == 1);
    CHECK(abinst.a_tiles[0].lr == 2);
    CHECK(abinst.b_tiles[0].ul == 2);
    CHECK(abinst.b_tiles[0].ur == 1);
    CHECK(abinst.b_tiles[0].ll == 1);
    CHECK(abinst.b_tiles[0].lr == 0);
}

TEST_CASE("compiled colour universe is 0..n+k") {
    auto abinst = ab::compile_wang_to_ab(checkerboard());
    CHECK(abinst.colors == 2 + 2 + 1);
    int hi = 0;
    for (const auto& t : abinst.a_tiles) hi = std::max({hi, t.ul, t.ur, t.ll, t.lr});
    for (const auto& t : abinst.b_tiles) hi = std::max({hi, t.ul, t.ur, t.ll, t.lr});
    CHECK(hi == 4);
}

TEST_CASE("uniform instance tiles any torus exactly once") {
    ab::ABInstance inst;
    inst.t = 1;
    inst.colors = 1;
    inst.a_tiles = {{0, 0, 0, 0}};
    inst.b_tiles = {{0, 0, 0, 0}};
    for (int w = 1; w <= 2; ++w)
        for (int h = 1; h <= 2; ++h)
            CHECK(ab::solve_torus(inst, w, h).tilings.size() == 1);
}

TEST_CASE("compiled mismatching instance has no tilings") {
    wang::WangInstance inst;
    inst.colors = 2;
    inst.tiles = {{1, 1, 1, 2}};
    CHECK(wang::solve_torus(inst, 2, 2).tilings.empty());
    auto abinst = ab::compile_wang_to_ab(inst);
    CHECK(ab::solve_torus(abinst, 2, 2).tilings.empty());
}

TEST_CASE("checkerboard compiles to two 2x1 AB tilings") {
    auto abinst = ab::compile_wang_to_ab(checkerboard());
    CHECK(ab::solve_torus(abinst, 2, 1).tilings.size() == 2);
}

TEST_CASE("bijection report on the example corpus") {
    auto rep1 = ab::verify_wang_ab_bijection(checkerboard(), 2, 2);
    CHECK(rep1.ok);
    CHECK(rep1.wang_count == rep1.ab_count);

    wang::WangInstance all1;
    all1.colors = 1;
    all1.tiles = {{1, 1, 1, 1}};
    auto rep2 = ab::verify_wang_ab_bijection(all1, 1, 1);
    CHECK(rep2.ok);
    CHECK(rep2.wang_count == 1);
    CHECK(rep2.ab_count == 1);

    wang::WangInstance bad;
    bad.colors = 2;
    bad.tiles = {{1, 1, 1, 2}};
    auto rep3 = ab::verify_wang_ab_bijection(bad, 2, 2);
    CHECK(rep3.ok);
    CHECK(rep3.wang_count == 0);
    CHECK(rep3.ab_count == 0);
}

TEST_CASE("tetromino pairing is forced across the shared colour") {
    // In any valid tiling of a compiled instance, the B tile sharing an A
    // tile's k+i edge carries the same index.
    auto abinst = ab::compile_wang_to_ab(checkerboard());
    auto sols = ab::solve_torus(abinst, 2, 2);
    REQUIRE(!sols.tilings.empty());
    for (const auto& t : sols.tilings)
        for (int r = 0; r < t.height; ++r)
            for (int c = 0; c < t.width; ++c)
                CHECK(t.a_at(r, c) == t.b_at((r - 1 + t.height) % t.height, c));
}

TEST_CASE("ab json round trip") {
    auto abinst = ab::compile_wang_to_ab(checkerboard());
    auto back = ab::ABInstance::from_json(abinst.to_json());
    CHECK(back.t == abinst.t);
    CHECK(back.colors == abinst.colors);
    CHECK(back.a_tiles[1].lr == abinst.a_tiles[1].lr);
}
