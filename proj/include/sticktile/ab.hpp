#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sticktile/wang.hpp"

namespace sticktile::ab {

// Colours on the two long (left/right) edges of a 1x2 vertical tile.
struct ABTile {
    int ul = 0, ur = 0, ll = 0, lr = 0;
};

struct ABInstance {
    int t = 0;       // |A| = |B|
    int colors = 1;  // colour ids run 0..colors-1
    std::vector<ABTile> a_tiles;
    std::vector<ABTile> b_tiles;

    void validate() const;
    std::string to_json() const;
    static ABInstance from_json(const std::string& text);
};

// Placement with period 2w x 2h. a[r*w+c] is the A tile whose lower-left
// corner is (2c, 2r); b[r*w+c] has lower-left corner (2c+1, 2r+1). Indices
// are 1-based.
struct ABTorusTiling {
    int width = 0, height = 0;  // w, h
    std::vector<int> a, b;

    int a_at(int r, int c) const { return a[static_cast<std::size_t>(r) * width + c]; }
    int b_at(int r, int c) const { return b[static_cast<std::size_t>(r) * width + c]; }
    bool operator==(const ABTorusTiling&) const = default;
};

struct SolveOptions {
    std::size_t cap = 10000;
};

struct SolveResult {
    std::vector<ABTorusTiling> tilings;  // lexicographic in (a00,b00,a01,b01,...)
    bool cap_exceeded = false;
};

ABInstance compile_wang_to_ab(const wang::WangInstance& inst);

SolveResult solve_torus(const ABInstance& inst, int width, int height, const SolveOptions& = {});

std::vector<std::string> tiling_violations(const ABInstance& inst, const ABTorusTiling& t);

// The tetromino substitution: Wang tile i at (r, c) becomes A_i at (2c, 2r)
// paired with B_i diagonally across the shared k+i colour.
ABTorusTiling wang_tiling_to_ab(const wang::WangInstance& inst, const wang::TorusTiling& t);

struct BijectionReport {
    std::size_t wang_count = 0;
    std::size_t ab_count = 0;
    bool cap_exceeded = false;
    bool ok = false;
    std::vector<std::string> issues;
    std::string to_json() const;
};

BijectionReport verify_wang_ab_bijection(const wang::WangInstance& inst, int width, int height,
                                         std::size_t cap = 10000);

std::string tilings_to_json(const SolveResult& result);

}  // namespace sticktile::ab
