#include "minifab/packed.hpp"

#include "minifab/arch.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace minifab {

int PackedBlock::pin_of(const std::string &net) const {
    for (const auto &[n, p] : pin_bindings)
        if (n == net)
            return p;
    return -1;
}

const PackedBlock *PackedNetlist::find_block(const std::string &name) const {
    for (const PackedBlock &b : blocks)
        if (b.name == name)
            return &b;
    return nullptr;
}

const PackedBlock *PackedNetlist::driver_block(const std::string &net) const {
    for (const PackedBlock &b : blocks)
        if (block_output_net(b) == net)
            return &b;
    return nullptr;
}

std::string block_output_net(const PackedBlock &block) {
    if (block.latch)
        return *block.latch;
    if (block.lut)
        return *block.lut;
    return "";
}

static std::vector<std::pair<std::string, int>> parse_pins(const std::string &spec, int lineno) {
    std::vector<std::pair<std::string, int>> out;
    std::set<int> used_pins;
    std::set<std::string> used_nets;
    for (const std::string &item : split_on(spec, ',')) {
        auto colon = item.rfind(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 >= item.size())
            throw ParseError("pin binding must be <net>:<pin>", lineno);
        std::string net = item.substr(0, colon);
        int pin;
        try {
            pin = std::stoi(item.substr(colon + 1));
        } catch (const std::exception &) {
            throw ParseError("bad pin index in '" + item + "'", lineno);
        }
        if (pin < 0 || pin >= kClbInputPins)
            throw ParseError("pin index outside 0-5: " + std::to_string(pin), lineno);
        if (!used_pins.insert(pin).second)
            throw ParseError("pin " + std::to_string(pin) + " bound twice", lineno);
        if (!used_nets.insert(net).second)
            throw ParseError("net '" + net + "' bound to two pins", lineno);
        out.emplace_back(net, pin);
    }
    return out;
}

PackedNetlist parse_net(const std::string &text) {
    PackedNetlist packed;
    PackedBlock *cur = nullptr;
    std::set<std::string> names;
    int lineno = 0;
    for (const std::string &raw : split_on(text, '\n')) {
        lineno++;
        std::string line = trim(raw);
        if (line.empty()) {
            cur = nullptr;
            continue;
        }
        if (line[0] == '#')
            continue;
        std::vector<std::string> tok = split_ws(line);
        if (tok[0] == "block") {
            if (tok.size() != 3 || tok[2] != "at_clb")
                throw ParseError("expected 'block <name> at_clb'", lineno);
            if (!names.insert(tok[1]).second)
                throw ParseError("duplicate block '" + tok[1] + "'", lineno);
            packed.blocks.push_back(PackedBlock{tok[1], {}, {}, {}});
            cur = &packed.blocks.back();
        } else if (tok[0] == "lut") {
            if (!cur)
                throw ParseError("'lut' outside a block", lineno);
            if (cur->lut)
                throw ParseError("block '" + cur->name + "' contains two LUTs", lineno);
            if (tok.size() != 2 && !(tok.size() == 4 && tok[2] == "pins"))
                throw ParseError("expected 'lut <atom> [pins <net>:<pin>,...]'", lineno);
            cur->lut = tok[1];
            if (tok.size() == 4) {
                auto pins = parse_pins(tok[3], lineno);
                for (auto &pb : pins) {
                    for (auto &existing : cur->pin_bindings)
                        if (existing.second == pb.second || existing.first == pb.first)
                            throw ParseError("pin binding conflicts inside block '" + cur->name +
                                                 "'",
                                             lineno);
                    cur->pin_bindings.push_back(pb);
                }
            }
        } else if (tok[0] == "latch") {
            if (!cur)
                throw ParseError("'latch' outside a block", lineno);
            if (cur->latch)
                throw ParseError("block '" + cur->name + "' contains two latches", lineno);
            if (tok.size() != 2 && !(tok.size() == 4 && tok[2] == "pins"))
                throw ParseError("expected 'latch <atom> [pins <net>:<pin>]'", lineno);
            cur->latch = tok[1];
            if (tok.size() == 4) {
                auto pins = parse_pins(tok[3], lineno);
                for (auto &pb : pins) {
                    for (auto &existing : cur->pin_bindings)
                        if (existing.second == pb.second || existing.first == pb.first)
                            throw ParseError("pin binding conflicts inside block '" + cur->name +
                                                 "'",
                                             lineno);
                    cur->pin_bindings.push_back(pb);
                }
            }
        } else {
            throw ParseError("unknown packed-netlist line '" + tok[0] + "'", lineno);
        }
    }
    for (const PackedBlock &b : packed.blocks)
        if (!b.lut && !b.latch)
            throw ParseError("block '" + b.name + "' is empty");
    return packed;
}

std::string print_net(const PackedNetlist &packed) {
    std::ostringstream ss;
    bool first = true;
    for (const PackedBlock &b : packed.blocks) {
        if (!first)
            ss << "\n";
        first = false;
        ss << "block " << b.name << " at_clb\n";
        auto pins_for = [&](const std::string &atom, bool is_lut) {
            std::ostringstream ps;
            bool any = false;
            (void)atom;
            (void)is_lut;
            for (const auto &[net, pin] : b.pin_bindings) {
                if (any)
                    ps << ",";
                ps << net << ":" << pin;
                any = true;
            }
            return ps.str();
        };
        if (b.lut) {
            ss << "  lut " << *b.lut;
            std::string pins = pins_for(*b.lut, true);
            if (!pins.empty())
                ss << " pins " << pins;
            ss << "\n";
            if (b.latch)
                ss << "  latch " << *b.latch << "\n";
        } else if (b.latch) {
            ss << "  latch " << *b.latch;
            std::string pins = pins_for(*b.latch, false);
            if (!pins.empty())
                ss << " pins " << pins;
            ss << "\n";
        }
    }
    return ss.str();
}

void cross_validate(const PackedNetlist &packed, const LogicNetlist &netlist) {
    std::set<std::string> packed_luts, packed_latches;
    for (const PackedBlock &b : packed.blocks) {
        if (b.lut) {
            const Lut *lut = netlist.find_lut(*b.lut);
            if (!lut)
                throw Error("block '" + b.name + "' references unknown LUT atom '" + *b.lut + "'");
            if (!packed_luts.insert(*b.lut).second)
                throw Error("LUT atom '" + *b.lut + "' packed twice");
            // every LUT input must be bound to a pin
            for (const std::string &in : lut->inputs)
                if (b.pin_of(in) < 0)
                    throw Error("block '" + b.name + "': LUT input '" + in + "' has no pin");
        }
        if (b.latch) {
            const Latch *latch = netlist.find_latch(*b.latch);
            if (!latch)
                throw Error("block '" + b.name + "' references unknown latch atom '" + *b.latch +
                            "'");
            if (!packed_latches.insert(*b.latch).second)
                throw Error("latch atom '" + *b.latch + "' packed twice");
            if (b.lut) {
                if (latch->data != *b.lut)
                    throw Error("block '" + b.name + "': latch data '" + latch->data +
                                "' is not the co-packed LUT output");
            } else {
                // lone latch: its data net must be pin-bound so the LUT can buffer it
                if (b.pin_of(latch->data) < 0)
                    throw Error("block '" + b.name + "': lone latch data '" + latch->data +
                                "' has no pin");
            }
        }
        for (const auto &[net, pin] : b.pin_bindings) {
            (void)pin;
            if (netlist.net_id(net) < 0)
                throw Error("block '" + b.name + "' binds unknown net '" + net + "'");
            if (netlist.is_clock_net(net))
                throw Error("block '" + b.name + "' binds clock net '" + net + "' to a pin");
        }
    }
    // every netlist atom must be packed exactly once
    for (const Lut &l : netlist.luts)
        if (!packed_luts.count(l.output))
            throw Error("LUT atom '" + l.output + "' is not packed");
    for (const Latch &l : netlist.latches)
        if (!packed_latches.count(l.output))
            throw Error("latch atom '" + l.output + "' is not packed");
}

} // namespace minifab
