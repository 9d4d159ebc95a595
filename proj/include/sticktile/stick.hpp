#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sticktile/schematic.hpp"

namespace sticktile::stick {

// Axial hex coordinates, pointy-top, r increasing upward. Direction ids:
// 0 E, 1 NE, 2 NW, 3 W, 4 SW, 5 SE; dir k is dir 0 rotated k*60 degrees ccw.
struct Cell {
    long long q = 0, r = 0;
    friend auto operator<=>(const Cell& a, const Cell& b) {
        return std::pair(a.r, a.q) <=> std::pair(b.r, b.q);
    }
    friend bool operator==(const Cell&, const Cell&) = default;
};

Cell dir_offset(int dir);
Cell cell_add(Cell c, Cell d);
Cell cell_mul(Cell d, long long m);

// The 4n+2 boundary edge labels of a stick of n hexagons, numbered in ring
// order y1 z1 a1 b1 ... a_{n-1} b_{n-1} x2 y2 z2 c1 d1 ... c_{n-1} d_{n-1} x1.
class Labels {
public:
    explicit Labels(int n);
    int n() const { return n_; }
    int count() const { return 4 * n_ + 2; }

    int y1() const { return 0; }
    int z1() const { return 1; }
    int a(int i) const { return 2 * i; }
    int b(int i) const { return 2 * i + 1; }
    int x2() const { return 2 * n_; }
    int y2() const { return 2 * n_ + 1; }
    int z2() const { return 2 * n_ + 2; }
    int c(int i) const { return 2 * n_ + 1 + 2 * i; }
    int d(int i) const { return 2 * n_ + 2 + 2 * i; }
    int x1() const { return 4 * n_ + 1; }

    std::string name(int id) const;
    int from_name(const std::string& name) const;

    // Cell index along the stick and outward edge direction of a label on
    // the unrotated stick (horizontal, arrow down).
    std::pair<int, int> base_edge(int id) const;

private:
    int n_;
};

struct Placement {
    Cell anchor;        // cell 0; the stick occupies anchor + m*dir(rot)
    int rot = 0;        // 0..5
    friend auto operator<=>(const Placement&, const Placement&) = default;
};

std::vector<Cell> cells_of(const Labels& labels, const Placement& p);

// Label on the edge of `cell` facing `dir`, or -1 when that edge is not on
// the placement's boundary.
int label_at(const Labels& labels, const Placement& p, Cell cell, int dir);

// Unordered forbidden label pairs.
using RuleSet = std::set<std::pair<int, int>>;

void add_rule(RuleSet& rules, int a, int b);
bool forbids(const RuleSet& rules, int a, int b);

RuleSet base_rules(int n);

// Extra pairs compiled from a block's marking layout; stick_n must equal the
// layout's block length plus one.
RuleSet marking_rules(const schematic::MarkingLayout& layout, int stick_n);

struct PatchViolation {
    std::string what;
    Cell cell;
    int dir = 0;
    int label_a = -1, label_b = -1;
    friend auto operator<=>(const PatchViolation&, const PatchViolation&) = default;
};

std::vector<PatchViolation> check_patch(int n, const std::vector<Placement>& placements,
                                        const RuleSet& rules);

// Stick placements realizing a schematic: one height-n stack per block, one
// slanted stick per interior gap unit (left part pointing right, right part
// pointing left).
std::vector<Placement> synthesize_weave(const schematic::Schematic& schem,
                                        const schematic::StateTable& table);

std::set<int> orientation_census(const std::vector<Placement>& placements);

struct TilerOptions {
    std::size_t max_solutions = 64;
    std::size_t node_budget = 4'000'000;
};

struct TilerResult {
    std::vector<std::vector<Placement>> completions;  // new placements only
    bool cap_exceeded = false;
    bool budget_exceeded = false;
};

// All rule-consistent ways to cover `region` exactly, given fixed seed
// placements (which may extend outside the region).
TilerResult backtracking_tiler(const std::set<Cell>& region, int n, const RuleSet& rules,
                               const std::vector<Placement>& seeds, const TilerOptions& = {});

std::set<Cell> hex_region(long long radius);

std::string rules_to_json(const Labels& labels, const RuleSet& rules);
RuleSet rules_from_json(const std::string& text, int& n_out);
std::string patch_to_json(const std::vector<Placement>& placements);
std::vector<Placement> patch_from_json(const std::string& text);

}  // namespace sticktile::stick
