#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sticktile/exact.hpp"
#include "sticktile/stick.hpp"

namespace sticktile::geom {

// Bump/dent assignment on the 8n+4 spots of each of the 4n+2 edges. Edges
// and spots are 1-based; edge i is the stick label with ring id i-1.
struct SpotEncoding {
    int edge_count = 0;
    int spot_count = 0;
    std::vector<std::vector<bool>> bumps;

    bool bump(int edge, int spot) const { return bumps[edge - 1][spot - 1]; }
};

SpotEncoding encode_spots(const stick::RuleSet& rules, int n);

// True when edges i and j may be placed against each other: no two bumps in
// mirrored spots.
bool compatible(const SpotEncoding& enc, int i, int j);

enum class TileKind { stick, staple };

struct Polygon {
    TileKind kind = TileKind::stick;
    std::vector<Pt> ring;  // counterclockwise
};

struct TileSet {
    int n = 0;
    SpotEncoding enc;
    Polygon stick;       // modified outline, cell 0 centred at the origin
    Polygon staple;      // regular 12-gon centred at the origin
    Rat spot_len;        // edge_length / (8n+4)
    Rat staple_radius;   // circumradius, half a spot
};

Pt hex_center(stick::Cell cell);
Polygon base_stick_outline(int n);  // unmodified, 4n+2 unit edges
TileSet build_polygons(int n, const SpotEncoding& enc);

struct PlacedPolygon {
    TileKind kind = TileKind::stick;
    std::vector<Pt> ring;
};

struct PositionedPatch {
    int n = 0;
    std::vector<PlacedPolygon> polys;
    std::size_t stick_count = 0;
    std::size_t staple_count = 0;
    std::vector<stick::Cell> cells;
    Ext expected_area;  // hex cells plus boundary bump/dent corrections
};

// Places stick polygons for combinatorially valid placements and fills every
// dent-dent hole along interior coincident edges with a staple.
PositionedPatch instantiate_patch(const std::vector<stick::Placement>& placements,
                                  const stick::RuleSet& rules, const TileSet& tiles);

struct PlanarReport {
    bool ok = false;
    std::vector<std::string> issues;
    std::size_t interior_vertices = 0;
    std::size_t probes = 0;
    std::string to_json() const;
};

// Exact planarity verification on the patch interior: no boundary crossings,
// exact area conservation, full vertex-angle closure and probe coverage.
PlanarReport verify_planar(const PositionedPatch& patch);

struct SvgOptions {
    double scale = 40.0;
    int precision = 4;
};

std::string emit_svg(const PositionedPatch& patch, const SvgOptions& = {});
std::string emit_svg(const std::vector<PlacedPolygon>& polys, const SvgOptions& = {});

struct StapleReport {
    bool surroundable = false;
    std::vector<std::string> notes;
    std::string to_json() const;
};

// Bounded check that copies of the staple alone can never complete the
// angle around any staple vertex.
StapleReport staple_surround_check();

std::string polygons_to_json(const std::vector<PlacedPolygon>& polys);

}  // namespace sticktile::geom
