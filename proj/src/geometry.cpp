#include "sticktile/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace sticktile::geom {

using nlohmann::json;
using stick::Cell;
using stick::Labels;
using stick::Placement;

SpotEncoding encode_spots(const stick::RuleSet& rules, int n) {
    Labels L(n);
    SpotEncoding enc;
    enc.edge_count = L.count();
    enc.spot_count = 2 * L.count();
    enc.bumps.assign(enc.edge_count, std::vector<bool>(enc.spot_count, false));
    for (int i = 1; i <= enc.edge_count; ++i) enc.bumps[i - 1][i - 1] = true;
    for (auto [a, b] : rules) {
        require(a >= 0 && a < enc.edge_count && b >= 0 && b < enc.edge_count,
                ErrorKind::malformed_input, "spot encoding: rule label out of range");
        // Edge i gets a bump at spot 8n+4-j+1 for each forbidden partner j.
        enc.bumps[a][enc.spot_count - (b + 1)] = true;
        enc.bumps[b][enc.spot_count - (a + 1)] = true;
    }
    return enc;
}

bool compatible(const SpotEncoding& enc, int i, int j) {
    for (int p = 1; p <= enc.spot_count; ++p)
        if (enc.bump(i, p) && enc.bump(j, enc.spot_count - p + 1)) return false;
    return true;
}

namespace {

const Pt& hex_corner(int k) {
    // Pointy-top unit-edge hexagon corners at angles 30 + 60k degrees.
    static const std::vector<Pt> corners = [] {
        std::vector<Pt> c(6);
        Ext half{Rat(1, 2), Rat(0)};
        Ext root3_half{Rat(0), Rat(1, 2)};
        c[0] = {root3_half, half};
        c[1] = {Ext(Rat(0)), Ext(Rat(1))};
        c[2] = {-root3_half, half};
        c[3] = {-root3_half, -half};
        c[4] = {Ext(Rat(0)), Ext(Rat(-1))};
        c[5] = {root3_half, -half};
        return c;
    }();
    return corners[((k % 6) + 6) % 6];
}

struct CosSin {
    Ext c, s;
};

// cos/sin of 30-degree multiples, exact.
CosSin unit30(int k) {
    Pt p = rotate30({Ext(Rat(1)), Ext(Rat(0))}, k);
    return {p.x, p.y};
}

Pt scale(const Pt& p, const Rat& f) {
    Ext fe{f, Rat(0)};
    return {p.x * fe, p.y * fe};
}

}  // namespace

Pt hex_center(Cell cell) {
    // x = sqrt(3) (q + r/2), y = 3r/2.
    return {Ext::sqrt3(Rat(2 * cell.q + cell.r, 2)), Ext(Rat(3 * cell.r, 2))};
}

Polygon base_stick_outline(int n) {
    Labels L(n);
    Polygon poly;
    poly.kind = TileKind::stick;
    for (int id = 0; id < L.count(); ++id) {
        auto [m, dir] = L.base_edge(id);
        Pt start = hex_center({m, 0}) + hex_corner((dir + 5) % 6);
        poly.ring.push_back(start);
    }
    return poly;
}

TileSet build_polygons(int n, const SpotEncoding& enc) {
    Labels L(n);
    require(enc.edge_count == L.count() && enc.spot_count == 2 * L.count(),
            ErrorKind::malformed_input, "build_polygons: encoding size mismatch");
    TileSet tiles;
    tiles.n = n;
    tiles.enc = enc;
    const int S = enc.spot_count;
    tiles.spot_len = Rat(1, S);
    tiles.staple_radius = Rat(1, 4LL * S);

    // Staple: regular 12-gon, two vertices on every 30-degree axis, so all
    // staples in a patch are translates of this one polygon.
    tiles.staple.kind = TileKind::staple;
    for (int k = 0; k < 12; ++k) {
        CosSin cs = unit30(k);
        tiles.staple.ring.push_back(scale({cs.c, cs.s}, tiles.staple_radius));
    }

    // The stick outline with each unit edge subdivided into spots carrying a
    // half-dodecagon notch (dent) or the complementary protrusion (bump).
    tiles.stick.kind = TileKind::stick;
    const Rat R = tiles.staple_radius;
    for (int id = 0; id < L.count(); ++id) {
        auto [m, dir] = L.base_edge(id);
        Pt start = hex_center({m, 0}) + hex_corner((dir + 5) % 6);
        Pt end = hex_center({m, 0}) + hex_corner(dir);
        Pt tangent = end - start;                                     // unit length
        Pt normal{-tangent.y, tangent.x};                             // interior side
        tiles.stick.ring.push_back(start);
        for (int p = 1; p <= S; ++p) {
            Pt mid = start + scale(tangent, Rat(2 * p - 1, 2LL * S));
            bool is_bump = enc.bump(id + 1, p);
            // Half-dodecagon vertices from angle 180 down to 0 in the
            // (tangent, normal) frame; dents recede, bumps protrude.
            for (int k = 6; k >= 0; --k) {
                CosSin cs = unit30(k);
                Ext along = cs.c, across = is_bump ? -cs.s : cs.s;
                Pt offset{tangent.x * along + normal.x * across,
                          tangent.y * along + normal.y * across};
                tiles.stick.ring.push_back(mid + scale(offset, R));
            }
        }
    }
    return tiles;
}

namespace {

Pt transform(const Pt& p, int rot, const Pt& translate) {
    return rotate30(p, 2 * rot) + translate;
}

Ext shoelace_twice(const std::vector<Pt>& ring) {
    Ext sum;
    Pt o = ring.front();
    for (std::size_t i = 1; i + 1 < ring.size(); ++i) sum = sum + cross(o, ring[i], ring[i + 1]);
    return sum;
}

}  // namespace

PositionedPatch instantiate_patch(const std::vector<Placement>& placements,
                                  const stick::RuleSet& rules, const TileSet& tiles) {
    const int n = tiles.n;
    Labels L(n);
    auto violations = stick::check_patch(n, placements, rules);
    if (!violations.empty())
        fail(ErrorKind::verification_failure,
             "instantiate_patch: placements are combinatorially invalid: " +
                 violations.front().what);

    PositionedPatch patch;
    patch.n = n;
    patch.stick_count = placements.size();

    std::map<Cell, std::pair<int, int>> owner;  // cell -> (placement, unused)
    for (std::size_t i = 0; i < placements.size(); ++i)
        for (Cell c : stick::cells_of(L, placements[i])) {
            owner[c] = {static_cast<int>(i), 0};
            patch.cells.push_back(c);
        }
    std::sort(patch.cells.begin(), patch.cells.end());

    for (const Placement& p : placements) {
        PlacedPolygon poly;
        poly.kind = TileKind::stick;
        Pt shift = hex_center(p.anchor);
        poly.ring.reserve(tiles.stick.ring.size());
        for (const Pt& q : tiles.stick.ring) poly.ring.push_back(transform(q, p.rot, shift));
        patch.polys.push_back(std::move(poly));
    }

    // Expected covered area: the hex cells, plus what boundary bumps add and
    // boundary dents remove. Interior coincident edges cancel exactly once
    // dent-dent holes are filled by staples.
    const int S = tiles.enc.spot_count;
    Ext half_staple_area{Rat(3, 2) * tiles.staple_radius * tiles.staple_radius, Rat(0)};
    Ext hex_area{Rat(0), Rat(3, 2)};  // 3*sqrt(3)/2 per unit-edge hexagon
    patch.expected_area = hex_area * Ext(Rat(static_cast<long long>(patch.cells.size())));

    long long boundary_balance = 0;  // bumps minus dents over patch-boundary edges
    for (std::size_t i = 0; i < placements.size(); ++i) {
        const Placement& p = placements[i];
        Cell step = stick::dir_offset(p.rot);
        for (int id = 0; id < L.count(); ++id) {
            auto [m, bd] = L.base_edge(id);
            Cell cell = stick::cell_add(p.anchor, stick::cell_mul(step, m));
            int dir = (bd + p.rot) % 6;
            Cell other = stick::cell_add(cell, stick::dir_offset(dir));
            auto it = owner.find(other);
            if (it != owner.end()) {
                // Interior coincident edge: insert staples once per pair.
                if (it->second.first <= static_cast<int>(i)) continue;
                const Placement& q = placements[it->second.first];
                int other_label = stick::label_at(L, q, other, (dir + 3) % 6);
                require(other_label >= 0, ErrorKind::verification_failure,
                        "instantiate_patch: missing partner label on an interior edge");
                Pt start = transform(hex_center({m, 0}) + hex_corner((bd + 5) % 6), p.rot,
                                     hex_center(p.anchor));
                Pt end = transform(hex_center({m, 0}) + hex_corner(bd), p.rot,
                                   hex_center(p.anchor));
                Pt tangent = end - start;
                for (int spot = 1; spot <= S; ++spot) {
                    bool dent_here = !tiles.enc.bump(id + 1, spot);
                    bool dent_there = !tiles.enc.bump(other_label + 1, S - spot + 1);
                    if (dent_here && dent_there) {
                        Pt mid = start + scale(tangent, Rat(2 * spot - 1, 2LL * S));
                        PlacedPolygon staple;
                        staple.kind = TileKind::staple;
                        for (const Pt& q2 : tiles.staple.ring) staple.ring.push_back(q2 + mid);
                        patch.polys.push_back(std::move(staple));
                        ++patch.staple_count;
                    }
                }
            } else {
                int bumps = 0;
                for (int spot = 1; spot <= S; ++spot)
                    if (tiles.enc.bump(id + 1, spot)) ++bumps;
                boundary_balance += 2LL * bumps - S;
            }
        }
    }
    patch.expected_area =
        patch.expected_area + half_staple_area * Ext(Rat(boundary_balance));
    return patch;
}

namespace {

struct SegRef {
    int poly;
    int idx;
};

struct HashGrid {
    double cell = 1.0;
    std::unordered_map<long long, std::vector<SegRef>> buckets;

    static long long key(long long x, long long y) { return x * 2000003LL + y; }

    void insert(double x0, double y0, double x1, double y1, SegRef ref) {
        for (long long x = llround(std::floor(std::min(x0, x1) / cell));
             x <= llround(std::floor(std::max(x0, x1) / cell)); ++x)
            for (long long y = llround(std::floor(std::min(y0, y1) / cell));
                 y <= llround(std::floor(std::max(y0, y1) / cell)); ++y)
                buckets[key(x, y)].push_back(ref);
    }
};

bool point_in_polygon_strict(const Pt& p, const std::vector<Pt>& ring) {
    bool inside = false;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Pt& a = ring[i];
        const Pt& b = ring[(i + 1) % ring.size()];
        if (point_on_segment(p, a, b)) return false;
        int sa = (a.y - p.y).sign(), sb = (b.y - p.y).sign();
        if ((sa > 0) == (sb > 0)) continue;
        // Upward crossing of the horizontal ray through p.
        int orient = cross(a, b, p).sign();
        if (sb > sa) {  // b above a
            if (orient > 0) inside = !inside;
        } else {
            if (orient < 0) inside = !inside;
        }
    }
    return inside;
}

}  // namespace

PlanarReport verify_planar(const PositionedPatch& patch) {
    PlanarReport rep;
    auto complain = [&](const std::string& s) {
        if (rep.issues.size() < 24) rep.issues.push_back(s);
    };

    // Exact area conservation.
    Ext total;
    for (const PlacedPolygon& poly : patch.polys) total = total + shoelace_twice(poly.ring);
    Ext two_expected = patch.expected_area * Ext(Rat(2));
    if (!((total - two_expected).is_zero()))
        complain("total polygon area differs from the covered region area");

    // No proper boundary crossings anywhere (also guards self-intersection).
    // Bucket size tracks the spot pitch so each bucket stays tiny.
    HashGrid grid;
    grid.cell = 4.0 / (8.0 * patch.n + 4.0);
    std::vector<const std::vector<Pt>*> rings;
    for (const PlacedPolygon& poly : patch.polys) rings.push_back(&poly.ring);
    for (int pi = 0; pi < static_cast<int>(rings.size()); ++pi) {
        const auto& ring = *rings[pi];
        for (int si = 0; si < static_cast<int>(ring.size()); ++si) {
            const Pt& a = ring[si];
            const Pt& b = ring[(si + 1) % ring.size()];
            grid.insert(a.x.to_double(), a.y.to_double(), b.x.to_double(), b.y.to_double(),
                        {pi, si});
        }
    }
    auto cross_d = [](const Pt& o, const Pt& a, const Pt& b) {
        double ox = o.x.to_double(), oy = o.y.to_double();
        return (a.x.to_double() - ox) * (b.y.to_double() - oy) -
               (a.y.to_double() - oy) * (b.x.to_double() - ox);
    };
    std::size_t crossings = 0;
    for (const auto& [key, segs] : grid.buckets) {
        for (std::size_t u = 0; u < segs.size() && crossings == 0; ++u)
            for (std::size_t w = u + 1; w < segs.size(); ++w) {
                SegRef s1 = segs[u], s2 = segs[w];
                if (s1.poly == s2.poly && std::abs(s1.idx - s2.idx) <= 1) continue;
                const auto& r1 = *rings[s1.poly];
                const auto& r2 = *rings[s2.poly];
                const Pt& a = r1[s1.idx];
                const Pt& b = r1[(s1.idx + 1) % r1.size()];
                const Pt& c = r2[s2.idx];
                const Pt& d = r2[(s2.idx + 1) % r2.size()];
                // Segments meeting at an exact endpoint cannot cross properly;
                // this covers the ubiquitous coincident-boundary pairs.
                if (a == c || a == d || b == c || b == d) continue;
                // Clear float separation rules out a crossing; anything
                // ambiguous goes to the exact predicate.
                constexpr double eps = 1e-12;
                double d1 = cross_d(a, b, c), d2 = cross_d(a, b, d);
                if ((d1 > eps && d2 > eps) || (d1 < -eps && d2 < -eps)) continue;
                double d3 = cross_d(c, d, a), d4 = cross_d(c, d, b);
                if ((d3 > eps && d4 > eps) || (d3 < -eps && d4 < -eps)) continue;
                if (segments_cross_properly(a, b, c, d)) {
                    complain("polygon boundaries cross properly (interior overlap)");
                    ++crossings;
                    break;
                }
            }
        if (crossings > 0) break;
    }

    // Interior cells: those whose whole neighbourhood is covered.
    std::set<Cell> cellset(patch.cells.begin(), patch.cells.end());
    auto cell_is_interior = [&](Cell c) {
        for (int d = 0; d < 6; ++d)
            if (!cellset.count(stick::cell_add(c, stick::dir_offset(d)))) return false;
        return cellset.count(c) > 0;
    };
    auto locate_cell = [&](const Pt& p) -> Cell {
        double x = p.x.to_double(), y = p.y.to_double();
        double r = y / 1.5;
        double q = x / std::sqrt(3.0) - r / 2.0;
        // cube rounding
        double cx = q, cz = r, cy = -cx - cz;
        double rx = std::round(cx), ry = std::round(cy), rz = std::round(cz);
        double dx = std::abs(rx - cx), dy = std::abs(ry - cy), dz = std::abs(rz - cz);
        if (dx > dy && dx > dz)
            rx = -ry - rz;
        else if (dy <= dz)
            rz = -rx - ry;
        return {static_cast<long long>(rx), static_cast<long long>(rz)};
    };

    // Vertex angle closure: group all polygon corners by exact position;
    // interior corners must close to 2pi, or to pi against a flat edge.
    // Buckets are keyed by quantized doubles and disambiguated exactly.
    struct VertexGroup {
        Pt pt;
        int sum = 0;
    };
    std::unordered_map<long long, std::vector<VertexGroup>> vertex_buckets;
    auto quantize = [](double v) { return static_cast<long long>(std::llround(v * 1048576.0)); };
    auto bucket_key = [&](long long qx, long long qy) { return qx * 0x9e3779b9LL + qy; };
    auto add_angle = [&](const Pt& v, int units) {
        double xd = v.x.to_double(), yd = v.y.to_double();
        long long qx = quantize(xd), qy = quantize(yd);
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = vertex_buckets.find(bucket_key(qx + dx, qy + dy));
                if (it == vertex_buckets.end()) continue;
                for (VertexGroup& g : it->second)
                    if (g.pt == v) {
                        g.sum += units;
                        return;
                    }
            }
        vertex_buckets[bucket_key(qx, qy)].push_back({v, units});
    };
    for (const PlacedPolygon& poly : patch.polys) {
        const auto& ring = poly.ring;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const Pt& prev = ring[(i + ring.size() - 1) % ring.size()];
            const Pt& v = ring[i];
            const Pt& next = ring[(i + 1) % ring.size()];
            add_angle(v, interior_angle_units(prev, v, next));
        }
    }
    std::vector<std::pair<Pt, int>> angle_sums;
    for (const auto& [key, groups] : vertex_buckets)
        for (const VertexGroup& g : groups) angle_sums.push_back({g.pt, g.sum});
    for (const auto& [pt, sum] : angle_sums) {
        Cell c = locate_cell(pt);
        if (!cell_is_interior(c)) continue;
        ++rep.interior_vertices;
        if (sum == 24) continue;
        if (sum == 12) {
            // A flat edge of some other polygon must run through this point.
            bool found = false;
            double px = pt.x.to_double(), py = pt.y.to_double();
            long long gx = llround(std::floor(px / grid.cell));
            long long gy = llround(std::floor(py / grid.cell));
            for (long long xx = gx - 1; xx <= gx + 1 && !found; ++xx)
                for (long long yy = gy - 1; yy <= gy + 1 && !found; ++yy) {
                    auto it = grid.buckets.find(HashGrid::key(xx, yy));
                    if (it == grid.buckets.end()) continue;
                    for (SegRef s : it->second) {
                        const auto& ring = *rings[s.poly];
                        const Pt& a = ring[s.idx];
                        const Pt& b = ring[(s.idx + 1) % ring.size()];
                        if (a == pt || b == pt) continue;
                        if (point_on_segment(pt, a, b)) {
                            found = true;
                            break;
                        }
                    }
                }
            if (found) continue;
            complain("half-turn vertex without a flat edge through it");
        } else {
            complain("interior vertex angles sum to " + std::to_string(sum * 15) + " degrees");
        }
    }

    // Probe coverage: every interior cell centre lies in exactly one polygon.
    for (Cell c : patch.cells) {
        if (!cell_is_interior(c)) continue;
        ++rep.probes;
        Pt centre = hex_center(c);
        int hits = 0;
        for (const PlacedPolygon& poly : patch.polys)
            if (poly.kind == TileKind::stick && point_in_polygon_strict(centre, poly.ring)) ++hits;
        if (hits != 1) complain("cell centre covered " + std::to_string(hits) + " times");
    }

    rep.ok = rep.issues.empty();
    return rep;
}

std::string PlanarReport::to_json() const {
    json j;
    j["ok"] = ok;
    j["issues"] = issues;
    j["interior_vertices"] = interior_vertices;
    j["probes"] = probes;
    return j.dump(2);
}

std::string emit_svg(const std::vector<PlacedPolygon>& polys, const SvgOptions& opts) {
    double minx = 0, miny = 0, maxx = 0, maxy = 0;
    bool first = true;
    for (const PlacedPolygon& poly : polys)
        for (const Pt& p : poly.ring) {
            double x = p.x.to_double(), y = -p.y.to_double();
            if (first) {
                minx = maxx = x;
                miny = maxy = y;
                first = false;
            }
            minx = std::min(minx, x);
            maxx = std::max(maxx, x);
            miny = std::min(miny, y);
            maxy = std::max(maxy, y);
        }
    double pad = 0.5;
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(opts.precision);
    double s = opts.scale;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (minx - pad) * s << " "
        << (miny - pad) * s << " " << (maxx - minx + 2 * pad) * s << " "
        << (maxy - miny + 2 * pad) * s << "\">\n";
    auto emit_layer = [&](TileKind kind, const char* fill, const char* stroke) {
        for (const PlacedPolygon& poly : polys) {
            if (poly.kind != kind) continue;
            out << "  <path fill=\"" << fill << "\" stroke=\"" << stroke
                << "\" stroke-width=\"0.5\" d=\"";
            for (std::size_t i = 0; i < poly.ring.size(); ++i) {
                const Pt& p = poly.ring[i];
                out << (i == 0 ? 'M' : 'L') << p.x.to_double() * s << ' '
                    << -p.y.to_double() * s << ' ';
            }
            out << "Z\"/>\n";
        }
    };
    emit_layer(TileKind::stick, "#cfd8dc", "#37474f");
    emit_layer(TileKind::staple, "#ffb74d", "#e65100");
    out << "</svg>\n";
    return out.str();
}

std::string emit_svg(const PositionedPatch& patch, const SvgOptions& opts) {
    return emit_svg(patch.polys, opts);
}

StapleReport staple_surround_check() {
    StapleReport rep;
    rep.surroundable = false;
    // Angles available around a staple vertex: 150 degrees per staple corner
    // and 180 degrees per staple edge passing flat through the point. A full
    // vertex needs 360; a vertex resting on a flat edge needs 180 from one
    // side. Enumerate all multisets with at least one corner.
    rep.notes.push_back("150 + 150 = 300, not 360");
    rep.notes.push_back("180 + 150 = 330, not 360");
    for (int corners = 1; corners <= 4; ++corners)
        for (int flats = 0; flats <= 2; ++flats) {
            int sum = 150 * corners + 180 * flats;
            if (sum == 360) rep.surroundable = true;
            if (sum == 180 && corners >= 1) rep.surroundable = true;  // rests on a flat edge
        }
    if (!rep.surroundable)
        rep.notes.push_back("no multiset of staple corners and flat edges closes a vertex");
    return rep;
}

std::string StapleReport::to_json() const {
    json j;
    j["surroundable"] = surroundable;
    j["notes"] = notes;
    return j.dump(2);
}

std::string polygons_to_json(const std::vector<PlacedPolygon>& polys) {
    json arr = json::array();
    for (const PlacedPolygon& poly : polys) {
        json ring = json::array();
        for (const Pt& p : poly.ring)
            ring.push_back({json::array({p.x.a.num, p.x.a.den, p.x.b.num, p.x.b.den}),
                            json::array({p.y.a.num, p.y.a.den, p.y.b.num, p.y.b.den})});
        arr.push_back(
            {{"kind", poly.kind == TileKind::stick ? "stick" : "staple"}, {"ring", ring}});
    }
    json j;
    j["polygons"] = arr;
    return j.dump();
}

}  // namespace sticktile::geom
