#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "sticktile/geometry.hpp"

using namespace sticktile;
using namespace sticktile::geom;

namespace {

// The three-edge toy with prohibited pairs (1,3), (2,2), (3,3).
SpotEncoding toy_encoding() {
    SpotEncoding enc;
    enc.edge_count = 3;
    enc.spot_count = 6;
    enc.bumps.assign(3, std::vector<bool>(6, false));
    auto bump = [&](int e, int s) { enc.bumps[e - 1][s - 1] = true; };
    bump(1, 1);
    bump(2, 2);
    bump(3, 3);
    bump(1, 6 - 3 + 1);  // (1,3)
    bump(3, 6 - 1 + 1);
    bump(2, 6 - 2 + 1);  // (2,2)
    bump(3, 6 - 3 + 1);  // (3,3)
    return enc;
}

}  // namespace

TEST_CASE("exact arithmetic basics") {
    Rat a(1, 3), b(1, 6);
    CHECK(a + b == Rat(1, 2));
    Ext s3 = Ext::sqrt3();
    CHECK((s3 * s3) == Ext(Rat(3)));
    CHECK((s3 - Ext(Rat(1))).sign() == 1);   // sqrt3 > 1
    CHECK((s3 - Ext(Rat(2))).sign() == -1);  // sqrt3 < 2
    CHECK(dir24({Ext(Rat(1)), Ext(Rat(0))}) == 0);
    CHECK(dir24({Ext(Rat(0)), Ext(Rat(5))}) == 6);
    CHECK(dir24({Ext(Rat(1)), Ext(Rat(2), Rat(-1))}) == 1);  // 15 degrees
}

TEST_CASE("toy spot encoding reproduces the worked example") {
    auto enc = toy_encoding();
    CHECK(compatible(enc, 1, 1));
    CHECK(compatible(enc, 1, 2));
    CHECK(compatible(enc, 2, 3));
    CHECK_FALSE(compatible(enc, 1, 3));
    CHECK_FALSE(compatible(enc, 2, 2));
    CHECK_FALSE(compatible(enc, 3, 3));
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) CHECK(compatible(enc, i, j) == compatible(enc, j, i));
}

TEST_CASE("empty rule set gives one bump per edge") {
    auto enc = encode_spots({}, 5);
    for (int e = 1; e <= enc.edge_count; ++e) {
        int bumps = 0;
        for (int s = 1; s <= enc.spot_count; ++s) bumps += enc.bump(e, s);
        CHECK(bumps == 1);
        CHECK(enc.bump(e, e));
    }
}

TEST_CASE("encoding agrees with the rules it encodes") {
    const int n = 5;
    auto rules = stick::base_rules(n);
    auto enc = encode_spots(rules, n);
    for (int i = 1; i <= enc.edge_count; ++i)
        for (int j = 1; j <= enc.edge_count; ++j)
            CHECK(compatible(enc, i, j) == !stick::forbids(rules, i - 1, j - 1));
}

TEST_CASE("unmodified stick outline for n=6") {
    auto poly = base_stick_outline(6);
    CHECK(poly.ring.size() == 26);
    for (std::size_t i = 0; i < poly.ring.size(); ++i) {
        const Pt& prev = poly.ring[(i + 25) % 26];
        const Pt& v = poly.ring[i];
        const Pt& next = poly.ring[(i + 1) % 26];
        int units = interior_angle_units(prev, v, next);
        CHECK((units == 8 || units == 16));  // 120 or 240 degrees
    }
}

TEST_CASE("modified polygons use only the six permitted corner angles") {
    const int n = 5;
    auto enc = encode_spots(stick::base_rules(n), n);
    auto tiles = build_polygons(n, enc);

    REQUIRE(tiles.staple.ring.size() == 12);
    for (std::size_t i = 0; i < 12; ++i) {
        int units = interior_angle_units(tiles.staple.ring[(i + 11) % 12], tiles.staple.ring[i],
                                         tiles.staple.ring[(i + 1) % 12]);
        CHECK(units == 10);  // 150 degrees
    }

    std::set<int> seen;
    const auto& ring = tiles.stick.ring;
    for (std::size_t i = 0; i < ring.size(); ++i)
        seen.insert(interior_angle_units(ring[(i + ring.size() - 1) % ring.size()], ring[i],
                                         ring[(i + 1) % ring.size()]));
    for (int u : seen) CHECK((u == 8 || u == 16 || u == 10 || u == 14 || u == 7 || u == 17));

    // Staple circumdiameter strictly below the spot pitch.
    Rat diameter = tiles.staple_radius * Rat(2);
    CHECK((tiles.spot_len - diameter).sign() > 0);
}

TEST_CASE("two stacked sticks instantiate with staples and conserve area") {
    const int n = 5;
    auto rules = stick::base_rules(n);
    auto enc = encode_spots(rules, n);
    auto tiles = build_polygons(n, enc);
    std::vector<stick::Placement> pair = {{{0, 0}, 0}, {{-1, 1}, 0}};
    auto patch = instantiate_patch(pair, rules, tiles);
    CHECK(patch.stick_count == 2);
    CHECK(patch.staple_count > 0);
    auto rep = verify_planar(patch);
    for (const auto& issue : rep.issues) MESSAGE(issue);
    CHECK(rep.ok);
}

TEST_CASE("incompatible edges collide") {
    const int n = 5;
    auto rules = stick::base_rules(n);
    auto enc = encode_spots(rules, n);
    auto tiles = build_polygons(n, enc);
    // Two horizontal sticks side by side press y2 against y1 (rule 1), so
    // instantiation refuses, and without the rule the bumps overlap.
    std::vector<stick::Placement> bad = {{{0, 0}, 0}, {{n, 0}, 0}};
    CHECK_THROWS_AS(instantiate_patch(bad, rules, tiles), Error);
    stick::RuleSet none;
    auto enc2 = encode_spots(rules, n);  // bumps still encode the rules
    auto tiles2 = build_polygons(n, enc2);
    auto patch = instantiate_patch(bad, none, tiles2);
    auto rep = verify_planar(patch);
    CHECK_FALSE(rep.ok);
}

TEST_CASE("svg output") {
    std::vector<PlacedPolygon> empty;
    auto svg = emit_svg(empty);
    CHECK(svg.find("<svg") != std::string::npos);

    const int n = 5;
    auto enc = encode_spots({}, n);
    auto tiles = build_polygons(n, enc);
    PlacedPolygon staple;
    staple.kind = TileKind::staple;
    staple.ring = tiles.staple.ring;
    auto one = emit_svg(std::vector<PlacedPolygon>{staple});
    std::size_t count = 0;
    for (char ch : one) count += ch == 'L';
    CHECK(count == 11);
}

TEST_CASE("staples cannot close a vertex") {
    auto rep = staple_surround_check();
    CHECK_FALSE(rep.surroundable);
    CHECK(!rep.notes.empty());
}
