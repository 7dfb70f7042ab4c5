#include "minifab/design.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace minifab {

std::pair<int, int> net_source_site(const Design &d, const std::string &net) {
    if (const PackedBlock *blk = d.packed.driver_block(net)) {
        const Placement::Entry *e = d.placement.find(blk->name);
        if (!e)
            throw Error("block '" + blk->name + "' is not placed");
        return {e->y, e->x};
    }
    const NetInfo *info = nullptr;
    for (const NetInfo &n : d.netlist.nets)
        if (n.name == net) {
            info = &n;
            break;
        }
    if (!info || info->driver != NetDriverKind::PrimaryInput)
        throw Error("net '" + net + "' has no packed driver");
    const Placement::Entry *e = d.placement.find(net);
    if (!e)
        throw Error("input pad '" + net + "' is not placed");
    return {e->y, e->x};
}

std::vector<RoutedSink> required_sinks(const Design &d) {
    std::vector<RoutedSink> out;
    for (const PackedBlock &blk : d.packed.blocks) {
        const Placement::Entry *e = d.placement.find(blk.name);
        if (!e)
            throw Error("block '" + blk.name + "' is not placed");
        for (const auto &[net, pin] : blk.pin_bindings)
            out.push_back({net, e->y, e->x, pin});
    }
    for (const std::string &o : d.netlist.outputs) {
        const Placement::Entry *e = d.placement.find(kOutPadPrefix + o);
        if (!e)
            throw Error("output pad for '" + o + "' is not placed");
        out.push_back({o, e->y, e->x, 0});
    }
    std::sort(out.begin(), out.end());
    return out;
}

void validate_design(const Design &d, const FabricArch &arch) {
    cross_validate(d.packed, d.netlist);
    validate_placement(d.placement, d.packed, d.netlist);
    validate_route_forest(d.routes, arch);

    // Group the demanded taps by net.
    std::map<std::string, std::set<RoutedSink>> want;
    for (const RoutedSink &s : required_sinks(d))
        want[s.net].insert(s);

    std::set<std::string> routed;
    for (const NetRoute &net : d.routes.nets) {
        if (!routed.insert(net.name).second)
            throw Error("net '" + net.name + "' routed twice");
        auto it = want.find(net.name);
        if (it == want.end())
            throw Error("route for net '" + net.name + "' which taps nothing in the design");

        auto [src_row, src_col] = net_source_site(d, net.name);
        const RouteNode &root = net.nodes[0];
        if (root.y != src_row || root.x != src_col)
            throw Error("net '" + net.name + "' routed from (" + std::to_string(root.y) + "," +
                        std::to_string(root.x) + ") but its driver sits at (" +
                        std::to_string(src_row) + "," + std::to_string(src_col) + ")");

        std::set<RoutedSink> got;
        for (const RouteNode &n : net.nodes)
            if (n.kind == RouteNodeKind::Ipin)
                got.insert({net.name, n.y, n.x, n.pin});
        if (got != it->second) {
            for (const RoutedSink &s : it->second)
                if (!got.count(s))
                    throw Error("net '" + net.name + "' misses its tap at (" +
                                std::to_string(s.row) + "," + std::to_string(s.col) + ") pin " +
                                std::to_string(s.pin));
            for (const RoutedSink &s : got)
                if (!it->second.count(s))
                    throw Error("net '" + net.name + "' taps (" + std::to_string(s.row) + "," +
                                std::to_string(s.col) + ") pin " + std::to_string(s.pin) +
                                " which the design does not ask for");
        }
    }
    for (const auto &[net, sinks] : want)
        if (!routed.count(net))
            throw Error("net '" + net + "' is unrouted");
}

} // namespace minifab
