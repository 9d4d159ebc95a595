#pragma once

#include <set>
#include <utility>
#include <vector>

#include "sticktile/ab.hpp"
#include "sticktile/schematic.hpp"

namespace sticktile::statecomp {

// Sizes and encoding-state indices for an AB instance with t tile pairs and
// k colours: d = 12k, v = (2t+1)d, s = 16 + 8(t-1). States e1=1, e1.5=5,
// e2=9, e3=9+4(t-1), e3.5=e3+4 and e4=17+4(t-1); e4 wraps onto e1 when t=1.
struct EncodingLayout {
    int t = 0, k = 0, d = 0, v = 0, s = 0;
    int e1 = 1, e15 = 5, e2 = 9, e3 = 0, e35 = 0, e4 = 0;

    static EncodingLayout make(int t, int k);
    static EncodingLayout for_instance(const ab::ABInstance& inst);
    int wrap(int state) const { return (state - 1) % s + 1; }
};

struct CompiledTable {
    EncodingLayout layout;
    schematic::StateTable table;
};

CompiledTable build_state_table(const ab::ABInstance& inst);

enum class TileFamily { A, B };
struct TileRef {
    TileFamily family = TileFamily::A;
    int index = 0;  // 1-based within its family
    bool operator==(const TileRef&) const = default;
};

// In encoding states a left value of d*i names A_i (i <= t) or B_{i-t}.
TileRef left_value_to_tile(const EncodingLayout& layout, int left_value);

schematic::GapAssignment fill_assignment_from_ab(const ab::ABInstance& inst,
                                                 const ab::ABTorusTiling& tiling);

ab::ABTorusTiling decode_assignment_to_ab(const ab::ABInstance& inst,
                                          const schematic::GapAssignment& assign);

// Oracle for the vertical gadget: all left values reachable at e3 from a
// start value of d*u at e2 along a single column.
std::set<int> vertical_end_indices(const CompiledTable& ct, int start_index);

// Oracle for the colour gadget: exhaustive fill of two adjacent columns from
// e1 to e1.5 given encoding values (d*v0 | d*(2t+1-r0)) and (d*v1 | ...).
struct BandResult {
    bool feasible = false;
    std::set<std::pair<int, int>> end_left_values;   // (column 0, column 1)
    std::set<int> first_row_right_values;            // R of (e1+1, col 0)
};
BandResult horizontal_band(const CompiledTable& ct, const ab::ABInstance& inst, int v0, int r0,
                           int v1, int r1);

}  // namespace sticktile::statecomp
