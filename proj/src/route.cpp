#include "minifab/route.hpp"

#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace minifab {

const char *to_string(RouteNodeKind k) {
    switch (k) {
    case RouteNodeKind::Source:
        return "SOURCE";
    case RouteNodeKind::Opin:
        return "OPIN";
    case RouteNodeKind::Chanx:
        return "CHANX";
    case RouteNodeKind::Chany:
        return "CHANY";
    case RouteNodeKind::Ipin:
        return "IPIN";
    case RouteNodeKind::Sink:
        return "SINK";
    }
    return "?";
}

std::string RouteNode::str() const {
    std::ostringstream ss;
    ss << to_string(kind) << " (" << x << "," << y << ")";
    if (is_chan())
        ss << " Track: " << track;
    else if (kind == RouteNodeKind::Opin || kind == RouteNodeKind::Ipin)
        ss << " Pin: " << pin;
    return ss.str();
}

const NetRoute *RouteForest::find(const std::string &name) const {
    for (const NetRoute &n : nets)
        if (n.name == name)
            return &n;
    return nullptr;
}

namespace {

// Pads sit on border cells that carry a channel end segment; the coupled
// segment is the co-located one.
bool pad_segment(const RouteNode &pad, RouteNodeKind &kind_out) {
    if (is_chanx_site(pad.y, pad.x)) {
        kind_out = RouteNodeKind::Chanx;
        return true;
    }
    if (is_chany_site(pad.y, pad.x)) {
        kind_out = RouteNodeKind::Chany;
        return true;
    }
    return false;
}

} // namespace

std::optional<SbHop> chan_hop(const RouteNode &a, const RouteNode &b) {
    if (!a.is_chan() || !b.is_chan())
        return std::nullopt;
    SbHop hop;
    if (a.kind == RouteNodeKind::Chanx && b.kind == RouteNodeKind::Chanx) {
        if (a.y != b.y || std::abs(a.x - b.x) != 2)
            return std::nullopt;
        hop.row = a.y;
        hop.col = (a.x + b.x) / 2;
        hop.from_side = a.x < b.x ? Side::West : Side::East;
        hop.to_side = a.x < b.x ? Side::East : Side::West;
    } else if (a.kind == RouteNodeKind::Chany && b.kind == RouteNodeKind::Chany) {
        if (a.x != b.x || std::abs(a.y - b.y) != 2)
            return std::nullopt;
        hop.col = a.x;
        hop.row = (a.y + b.y) / 2;
        hop.from_side = a.y < b.y ? Side::North : Side::South;
        hop.to_side = a.y < b.y ? Side::South : Side::North;
    } else {
        const RouteNode &cx = a.kind == RouteNodeKind::Chanx ? a : b;
        const RouteNode &cy = a.kind == RouteNodeKind::Chanx ? b : a;
        if (std::abs(cx.x - cy.x) != 1 || std::abs(cx.y - cy.y) != 1)
            return std::nullopt;
        hop.row = cx.y;
        hop.col = cy.x;
        Side sx = cx.x < cy.x ? Side::West : Side::East;
        Side sy = cy.y < cx.y ? Side::North : Side::South;
        bool a_is_x = a.kind == RouteNodeKind::Chanx;
        hop.from_side = a_is_x ? sx : sy;
        hop.to_side = a_is_x ? sy : sx;
    }
    if (block_kind_at(hop.row, hop.col) != BlockKind::SwitchBlock)
        return std::nullopt;
    return hop;
}

bool route_nodes_adjacent(const FabricArch &arch, const RouteNode &from, const RouteNode &to) {
    int w = arch.channel_width;
    auto track_ok = [&](const RouteNode &n) { return n.track >= 0 && n.track < w; };

    switch (from.kind) {
    case RouteNodeKind::Source:
        if (to.kind != RouteNodeKind::Opin || to.x != from.x || to.y != from.y)
            return false;
        if (is_clb_site(from.y, from.x))
            return to.pin == kClbOutputPin;
        if (is_io_site(from.y, from.x))
            return to.pin == 0;
        return false;

    case RouteNodeKind::Opin: {
        if (!to.is_chan() || !track_ok(to))
            return false;
        if (is_clb_site(from.y, from.x)) {
            if (from.pin != kClbOutputPin)
                return false;
            // drive onto the channel above (via its HCB) or to the left (VCB)
            if (to.kind == RouteNodeKind::Chanx)
                return to.x == from.x && to.y == from.y - 1;
            return to.y == from.y && to.x == from.x - 1;
        }
        if (is_io_site(from.y, from.x)) {
            RouteNodeKind seg;
            if (!pad_segment(from, seg))
                return false;
            return to.kind == seg && to.x == from.x && to.y == from.y;
        }
        return false;
    }

    case RouteNodeKind::Chanx:
    case RouteNodeKind::Chany: {
        if (!track_ok(from))
            return false;
        if (from.kind == RouteNodeKind::Chanx && !is_chanx_site(from.y, from.x))
            return false;
        if (from.kind == RouteNodeKind::Chany && !is_chany_site(from.y, from.x))
            return false;
        if (to.is_chan()) {
            if (!track_ok(to))
                return false;
            if (to.kind == RouteNodeKind::Chanx && !is_chanx_site(to.y, to.x))
                return false;
            if (to.kind == RouteNodeKind::Chany && !is_chany_site(to.y, to.x))
                return false;
            auto hop = chan_hop(from, to);
            if (!hop)
                return false;
            return sb_find_switch(arch.topology, hop->from_side, from.track, hop->to_side,
                                  to.track, arch.channel_width)
                .has_value();
        }
        if (to.kind != RouteNodeKind::Ipin || !track_ok(from))
            return false;
        if (is_clb_site(to.y, to.x)) {
            if (from.kind == RouteNodeKind::Chanx)
                // the HCB above the CLB taps pins 0-2
                return to.pin >= 0 && to.pin <= 2 && from.x == to.x && from.y == to.y - 1;
            return to.pin >= 3 && to.pin <= 5 && from.y == to.y && from.x == to.x - 1;
        }
        if (is_io_site(to.y, to.x)) {
            RouteNodeKind seg;
            if (!pad_segment(to, seg))
                return false;
            return to.pin == 0 && from.kind == seg && from.x == to.x && from.y == to.y;
        }
        return false;
    }

    case RouteNodeKind::Ipin:
        return to.kind == RouteNodeKind::Sink && to.x == from.x && to.y == from.y;

    case RouteNodeKind::Sink:
        return false;
    }
    return false;
}

RouteForest parse_route(const std::string &text, const FabricArch &arch) {
    RouteForest forest;
    NetRoute *cur = nullptr;
    int pos = -1; // index of the current tree position within cur->nodes
    int lineno = 0;
    std::set<std::string> net_names;

    auto parse_node = [&](const std::vector<std::string> &tok) -> RouteNode {
        // Node: <id> <KIND> (<x>,<y>) [Track: <t> | Pin: <p> | Class: <c>]
        if (tok.size() < 4)
            throw ParseError("truncated node line", lineno);
        RouteNode n;
        const std::string &kind = tok[2];
        if (kind == "SOURCE")
            n.kind = RouteNodeKind::Source;
        else if (kind == "OPIN")
            n.kind = RouteNodeKind::Opin;
        else if (kind == "CHANX")
            n.kind = RouteNodeKind::Chanx;
        else if (kind == "CHANY")
            n.kind = RouteNodeKind::Chany;
        else if (kind == "IPIN")
            n.kind = RouteNodeKind::Ipin;
        else if (kind == "SINK")
            n.kind = RouteNodeKind::Sink;
        else
            throw ParseError("unknown node kind '" + kind + "'", lineno);
        const std::string &coord = tok[3];
        if (coord.size() < 5 || coord.front() != '(' || coord.back() != ')')
            throw ParseError("expected (<x>,<y>)", lineno);
        auto comma = coord.find(',');
        try {
            n.x = std::stoi(coord.substr(1, comma - 1));
            n.y = std::stoi(coord.substr(comma + 1, coord.size() - comma - 2));
        } catch (const std::exception &) {
            throw ParseError("bad coordinate '" + coord + "'", lineno);
        }
        if (n.x < 0 || n.x >= kGridCols || n.y < 0 || n.y >= kGridRows)
            throw ParseError("coordinate outside the grid", lineno);
        if (tok.size() >= 6) {
            int val;
            try {
                val = std::stoi(tok[5]);
            } catch (const std::exception &) {
                throw ParseError("bad attribute value", lineno);
            }
            if (tok[4] == "Track:") {
                if (!n.is_chan())
                    throw ParseError("Track: on a non-channel node", lineno);
                if (val < 0 || val >= arch.channel_width)
                    throw ParseError("track index " + std::to_string(val) + " >= W", lineno);
                n.track = val;
            } else if (tok[4] == "Pin:") {
                n.pin = val;
            } else if (tok[4] != "Class:") {
                throw ParseError("unknown node attribute '" + tok[4] + "'", lineno);
            }
        }
        if (n.is_chan() && n.track < 0)
            throw ParseError("channel node missing Track:", lineno);
        if ((n.kind == RouteNodeKind::Opin || n.kind == RouteNodeKind::Ipin) && n.pin < 0)
            throw ParseError("pin node missing Pin:", lineno);
        return n;
    };

    auto finish_net = [&]() {
        if (!cur)
            return;
        if (cur->nodes.empty())
            throw ParseError("net '" + cur->name + "' has no nodes", lineno);
        cur = nullptr;
        pos = -1;
    };

    for (const std::string &raw : split_on(text, '\n')) {
        lineno++;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> tok = split_ws(line);
        if (tok[0] == "Net") {
            finish_net();
            if (tok.size() != 3 || tok[2].size() < 3 || tok[2].front() != '(' ||
                tok[2].back() != ')')
                throw ParseError("expected 'Net <k> (<name>)'", lineno);
            std::string name = tok[2].substr(1, tok[2].size() - 2);
            if (!net_names.insert(name).second)
                throw ParseError("duplicate net '" + name + "'", lineno);
            forest.nets.push_back(NetRoute{name, {}, {}});
            cur = &forest.nets.back();
            continue;
        }
        if (tok[0] != "Node:")
            throw ParseError("expected 'Net' or 'Node:' line", lineno);
        if (!cur)
            throw ParseError("node line outside a net", lineno);
        RouteNode n = parse_node(tok);

        // A line repeating an earlier node rewinds the position to branch there.
        int existing = -1;
        for (size_t i = 0; i < cur->nodes.size(); i++)
            if (cur->nodes[i] == n) {
                existing = (int)i;
                break;
            }
        if (existing >= 0) {
            pos = existing;
            continue;
        }
        if (cur->nodes.empty()) {
            if (n.kind != RouteNodeKind::Source)
                throw ParseError("net '" + cur->name + "' must begin with SOURCE", lineno);
        } else {
            const RouteNode &parent = cur->nodes[pos];
            if (parent.kind == RouteNodeKind::Sink)
                throw ParseError("SINK must be a leaf", lineno);
            if (n.kind == RouteNodeKind::Source)
                throw ParseError("SOURCE may appear only at the root", lineno);
            if (!route_nodes_adjacent(arch, parent, n))
                throw ParseError("nodes not adjacent: " + parent.str() + " -> " + n.str(),
                                 lineno);
        }
        cur->nodes.push_back(n);
        cur->parent.push_back(pos);
        pos = (int)cur->nodes.size() - 1;
    }
    finish_net();
    validate_route_forest(forest, arch);
    return forest;
}

void validate_route_forest(const RouteForest &forest, const FabricArch &arch) {
    std::map<RouteNode, std::string> chan_owner; // (segment, track) -> net
    std::map<RouteNode, std::string> ipin_owner;

    for (const NetRoute &net : forest.nets) {
        if (net.nodes.empty())
            throw Error("net '" + net.name + "' has no nodes");
        if (net.nodes.size() != net.parent.size())
            throw Error("net '" + net.name + "' has inconsistent tree arrays");
        if (net.nodes[0].kind != RouteNodeKind::Source || net.parent[0] != -1)
            throw Error("net '" + net.name + "' must be rooted at SOURCE");

        std::set<RouteNode> seen;
        std::vector<bool> has_child(net.nodes.size(), false);
        for (size_t i = 0; i < net.nodes.size(); i++) {
            const RouteNode &n = net.nodes[i];
            if (!seen.insert(n).second)
                throw Error("net '" + net.name + "' visits " + n.str() + " twice");
            if (i > 0) {
                int p = net.parent[i];
                if (p < 0 || p >= (int)i)
                    throw Error("net '" + net.name + "' has a bad parent link");
                has_child[p] = true;
                if (net.nodes[p].kind == RouteNodeKind::Sink)
                    throw Error("net '" + net.name + "': SINK must be a leaf");
                if (n.kind == RouteNodeKind::Source)
                    throw Error("net '" + net.name + "': SOURCE may appear only at the root");
                if (!route_nodes_adjacent(arch, net.nodes[p], n))
                    throw Error("net '" + net.name + "': nodes not adjacent: " +
                                net.nodes[p].str() + " -> " + n.str());
            }
            if (n.is_chan()) {
                auto [it, fresh] = chan_owner.emplace(n, net.name);
                if (!fresh && it->second != net.name)
                    throw Error("track conflict at " + n.str() + " between nets '" + it->second +
                                "' and '" + net.name + "'");
            }
            if (n.kind == RouteNodeKind::Ipin) {
                auto [it, fresh] = ipin_owner.emplace(n, net.name);
                if (!fresh && it->second != net.name)
                    throw Error("input pin conflict at " + n.str() + " between nets '" +
                                it->second + "' and '" + net.name + "'");
            }
        }
        bool any_sink = false;
        for (size_t i = 0; i < net.nodes.size(); i++) {
            bool leaf = !has_child[i];
            bool sink = net.nodes[i].kind == RouteNodeKind::Sink;
            if (sink)
                any_sink = true;
            if (leaf && !sink)
                throw Error("net '" + net.name + "' has a dangling branch at " +
                            net.nodes[i].str());
        }
        if (!any_sink)
            throw Error("net '" + net.name + "' has no SINK");
    }
}

std::string print_route(const RouteForest &forest) {
    std::ostringstream ss;
    int k = 0;
    for (const NetRoute &net : forest.nets) {
        ss << "Net " << k++ << " (" << net.name << ")\n";
        auto emit = [&](int i) {
            const RouteNode &n = net.nodes[i];
            ss << "Node: " << i << " " << to_string(n.kind) << " (" << n.x << "," << n.y << ")";
            if (n.is_chan())
                ss << " Track: " << n.track;
            else if (n.kind == RouteNodeKind::Opin || n.kind == RouteNodeKind::Ipin)
                ss << " Pin: " << n.pin;
            else
                ss << " Class: 0";
            ss << "\n";
        };
        for (size_t i = 0; i < net.nodes.size(); i++) {
            if (i > 0 && net.parent[i] != (int)i - 1)
                emit(net.parent[i]); // rewind to the branch point
            emit((int)i);
        }
        ss << "\n";
    }
    return ss.str();
}

} // namespace minifab
