// place.hpp - placement file (.place subset)
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minifab/arch.hpp"
#include "minifab/netlist.hpp"
#include "minifab/packed.hpp"

namespace minifab {

// Output pads are placed under this prefix so a port can share its net's name.
constexpr const char *kOutPadPrefix = "out:";

struct Placement {
    int declared_rows = kGridRows;
    int declared_cols = kGridCols;

    struct Entry {
        std::string name;
        int x = 0; // column
        int y = 0; // row
        int subblock = 0;
    };
    std::vector<Entry> entries;

    const Entry *find(const std::string &name) const;
};

Placement parse_place(const std::string &text);
std::string print_place(const Placement &place);

// Site legality: packed blocks on CLB sites, ports on GPIO sites, everything
// placed exactly once and nothing extra.
void validate_placement(const Placement &place, const PackedNetlist &packed,
                        const LogicNetlist &netlist);

} // namespace minifab
