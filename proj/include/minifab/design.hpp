// design.hpp - the four VTR-flow artifacts as one cross-checked bundle
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "minifab/netlist.hpp"
#include "minifab/packed.hpp"
#include "minifab/place.hpp"
#include "minifab/route.hpp"

namespace minifab {

struct Design {
    LogicNetlist netlist;
    PackedNetlist packed;
    Placement placement;
    RouteForest routes;
};

// One connection the routes must realize: `net` tapped at block/pad input
// (row, col, pin). Pads use pin 0.
struct RoutedSink {
    std::string net;
    int row = 0;
    int col = 0;
    int pin = 0;

    auto operator<=>(const RoutedSink &) const = default;
};

// Site of the net's driver: the CLB holding its LUT/latch, or the input pad
// of the same name. Returns (row, col).
std::pair<int, int> net_source_site(const Design &d, const std::string &net);

// Every tap the design demands, sorted. Covers bound CLB input pins and
// output pads; the intra-block LUT->latch hop and clocks are not routed.
std::vector<RoutedSink> required_sinks(const Design &d);

// Full coherence gate: atom/block cross-validation, placement coverage, and
// route completeness (each required sink reached by its net's route, sources
// at the right sites, no stray nets or taps).
void validate_design(const Design &d, const FabricArch &arch);

} // namespace minifab
