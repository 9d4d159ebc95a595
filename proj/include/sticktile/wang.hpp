#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sticktile/common.hpp"

namespace sticktile::wang {

struct WangTile {
    int north = 1, east = 1, south = 1, west = 1;
};

struct WangInstance {
    int colors = 1;
    std::vector<WangTile> tiles;  // 1-based tile ids in all outputs

    void validate() const;
    std::string to_json() const;
    static WangInstance from_json(const std::string& text);
};

// Assignment on a width x height grid, rows counted upward: the neighbour
// above (r, c) is (r + 1, c). Cell values are 1-based tile ids.
struct TorusTiling {
    int width = 0, height = 0;
    std::vector<int> cells;  // row-major

    int at(int r, int c) const { return cells[static_cast<std::size_t>(r) * width + c]; }
    bool operator==(const TorusTiling&) const = default;
};

struct SolveOptions {
    std::size_t cap = 10000;
    bool wrap = true;  // torus when true, open patch when false
};

struct SolveResult {
    std::vector<TorusTiling> tilings;  // lexicographic in the cell vector
    bool cap_exceeded = false;
};

SolveResult solve_torus(const WangInstance& inst, int width, int height,
                        const SolveOptions& opts = {});

// Full-edge recheck, independent of the search path.
std::vector<std::string> tiling_violations(const WangInstance& inst, const TorusTiling& t,
                                           bool wrap = true);

TorusTiling shift_tiling(const TorusTiling& t, int dr, int dc);

std::string tilings_to_json(const SolveResult& result);

}  // namespace sticktile::wang
