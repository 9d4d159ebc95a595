#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sticktile/common.hpp"

namespace sticktile::schematic {

enum class Dir { right, left };

// Per-bucket parameters: allowed left values L, allowed right values R, and
// the contiguous difference interval I.
struct BucketSpec {
    std::vector<int> left_values;   // sorted ascending
    std::vector<int> right_values;  // sorted ascending
    int diff_lo = 0, diff_hi = 0;   // I = [diff_lo, diff_hi]

    bool left_has(int x) const;
    bool right_has(int y) const;
    bool diff_has(int d) const { return d >= diff_lo && d <= diff_hi; }
};

struct StateTable {
    int state_count = 0;  // s
    int value_count = 0;  // v
    std::vector<BucketSpec> buckets;  // buckets[i-1] is state/bucket i

    int bucket_len() const { return (2 * value_count - 1) * (state_count - 1) + 2 * value_count; }
    int block_len() const { return state_count * bucket_len() + 2; }
    int sigma(int state) const { return state == state_count ? 1 : state + 1; }
    int sigma_inv(int state) const { return state == 1 ? state_count : state - 1; }
    const BucketSpec& bucket(int state) const { return buckets[state - 1]; }

    void validate() const;
    std::string to_json() const;
    static StateTable from_json(const std::string& text);
};

// The block's marking layout. Point coordinates ("positions") put position p
// at distance 1+p from the block's left side; buckets span positions
// [(i-1)*lb, i*lb]. Arrow marks live on unit squares: square d covers the
// block's x-range [d, d+1] measured from the left side, so a right arrow
// facing position p sits on square p and a left arrow facing p on square p+1.
struct MarkingLayout {
    int state_count = 0;
    int value_count = 0;
    int bucket_len = 0;
    int block_len = 0;

    std::set<int> right_triangles;  // positions
    std::set<int> left_triangles;   // positions
    std::map<int, Dir> top_arrows;     // square -> direction
    std::map<int, Dir> bottom_arrows;  // square -> direction

    // End valleys: the gap end at position p lands on stick valley p+1.
    bool right_triangle_at_valley(int m) const { return right_triangles.count(m - 1) > 0; }
    bool left_triangle_at_valley(int m) const { return left_triangles.count(m - 1) > 0; }
};

MarkingLayout bucket_layout(const StateTable& table);

}  // namespace sticktile::schematic
