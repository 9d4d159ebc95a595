#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sticktile/state_table.hpp"

namespace sticktile::schematic {

struct GapValues {
    int left = 0, right = 0;
    bool operator==(const GapValues&) const = default;
};

struct AssignRow {
    int state = 0;
    std::vector<GapValues> gaps;
    bool operator==(const AssignRow&) const = default;
};

// States and values on a window of the diagonal gap lattice. Row indices grow
// downward. The below-left neighbour of a gap in an odd row shares its
// column; in an even row the below-right neighbour does.
struct GapAssignment {
    bool periodic = false;
    long long first_row = 0;
    long long first_col = 0;
    std::vector<AssignRow> rows;

    bool operator==(const GapAssignment&) const = default;
    std::string to_json() const;
    static GapAssignment from_json(const std::string& text);
};

struct Violation {
    std::string what;
    long long row = 0, col = 0;
};

std::vector<Violation> check_gap_conditions(const GapAssignment& assign, const StateTable& table);

// One period of a periodic assignment laid out as a finite window.
GapAssignment materialize_window(const GapAssignment& periodic, int rows, int cols);

struct GapSpec {
    long long left = 0, right = 0;  // side lengths; total span = left + right
    bool operator==(const GapSpec&) const = default;
};

struct SchematicRow {
    std::vector<long long> block_starts;  // ascending, one more than gaps
    std::vector<GapSpec> gaps;
    bool operator==(const SchematicRow&) const = default;
};

struct Schematic {
    long long first_row = 0;
    long long first_col = 0;
    std::vector<SchematicRow> rows;

    bool operator==(const Schematic&) const = default;
    std::string to_json() const;
    static Schematic from_json(const std::string& text);
};

Schematic assignment_to_schematic(const GapAssignment& assign, const StateTable& table);
GapAssignment schematic_to_assignment(const Schematic& schem, const StateTable& table);

std::vector<Violation> validate_schematic(const Schematic& schem, const StateTable& table);

// Decoded content of a two-gap-row window: the upper gap's state and values
// plus the right value of its below-left gap and the left value of its
// below-right gap.
struct WindowTuple {
    int state = 0, x = 0, y = 0, xp = 0, yp = 0;
    auto operator<=>(const WindowTuple&) const = default;
};

struct EnumerateResult {
    std::vector<WindowTuple> tuples;  // sorted, deduplicated
    std::size_t window_count = 0;
    bool cap_exceeded = false;
    std::vector<std::string> discrepancies;  // decode/marking disagreements, expected empty
    std::vector<Schematic> samples;          // one schematic window per tuple
};

// Exhaustively enumerates marking-valid windows with `top_gaps` gaps in the
// upper gap row (plus the anchor block above and the row of gaps below),
// modulo horizontal translation. Only gap_rows == 2 and top_gaps == 1 are
// supported.
EnumerateResult enumerate_windows(const StateTable& table, int gap_rows, int top_gaps,
                                  std::size_t cap);

// The same window contents enumerated straight from the gap conditions.
std::vector<WindowTuple> gap_condition_tuples(const StateTable& table);

}  // namespace sticktile::schematic
