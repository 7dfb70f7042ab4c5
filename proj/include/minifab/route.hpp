// route.hpp - per-net routing trees (.route subset)
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minifab/arch.hpp"

namespace minifab {

enum class RouteNodeKind : uint8_t { Source, Opin, Chanx, Chany, Ipin, Sink };

const char *to_string(RouteNodeKind k);

// CLB output pin in route files; input pins are 0-5, pads use pin 0.
constexpr int kClbOutputPin = 6;

struct RouteNode {
    RouteNodeKind kind = RouteNodeKind::Source;
    int x = 0; // column
    int y = 0; // row
    int pin = -1;
    int track = -1;

    auto operator<=>(const RouteNode &) const = default;

    bool is_chan() const { return kind == RouteNodeKind::Chanx || kind == RouteNodeKind::Chany; }
    std::string str() const;
};

struct NetRoute {
    std::string name;
    std::vector<RouteNode> nodes;
    std::vector<int> parent; // parent[i] < i, -1 for the root
};

struct RouteForest {
    std::vector<NetRoute> nets;

    const NetRoute *find(const std::string &name) const;
};

// Geometry of a channel-to-channel hop: the switch block between the two
// segments and the sides they enter it on. Topology-independent; empty when
// the segments do not meet at a switch block.
struct SbHop {
    int row;
    int col;
    Side from_side;
    Side to_side;
};
std::optional<SbHop> chan_hop(const RouteNode &from, const RouteNode &to);

// Signal-flow adjacency under the fabric's geometry: drives, taps, pad
// couplings and switch points of the given topology.
bool route_nodes_adjacent(const FabricArch &arch, const RouteNode &from, const RouteNode &to);

RouteForest parse_route(const std::string &text, const FabricArch &arch);
std::string print_route(const RouteForest &forest);

// Structural + adjacency + track-exclusivity validation. parse_route runs
// this; router output goes through the same gate.
void validate_route_forest(const RouteForest &forest, const FabricArch &arch);

} // namespace minifab
