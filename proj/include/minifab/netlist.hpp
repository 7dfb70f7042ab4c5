// netlist.hpp - technology-mapped logic netlist (BLIF subset)
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minifab/util.hpp"

namespace minifab {

enum class NetDriverKind : uint8_t { None, PrimaryInput, LutOutput, LatchOutput };

struct Lut {
    std::string output;
    std::vector<std::string> inputs; // ordered, <= 6
    uint64_t table = 0;              // 64-entry truth table, input j = bit j of the entry index
};

struct Latch {
    std::string data;
    std::string output;
    std::string clock; // empty = implicit global clock
    int init = 0;
};

struct NetInfo {
    std::string name;
    NetDriverKind driver = NetDriverKind::None;
    int driver_index = -1; // index into inputs/luts/latches per driver kind
};

struct LogicNetlist {
    std::string name;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<Lut> luts;
    std::vector<Latch> latches;
    std::vector<std::string> clocks; // nets used only as latch clocks, not routed

    std::vector<NetInfo> nets; // interned, in first-seen order
    std::map<std::string, int> net_ids;

    int net_id(const std::string &name) const;
    bool is_clock_net(const std::string &name) const;
    const Lut *find_lut(const std::string &output) const;
    const Latch *find_latch(const std::string &output) const;
};

// Evaluate a 64-entry table at an input vector (bit j of `index` = input j).
inline bool lut_eval(uint64_t table, unsigned index) { return (table >> (index & 63)) & 1; }

// One cube of a .names cover: per-input literals '0' '1' '-'.
struct CoverCube {
    std::string literals;
};

// Expand an on-set cover over k ordered inputs into the 64-entry table.
// Entries addressed by unused inputs replicate the cover value.
uint64_t expand_cover(const std::vector<CoverCube> &cubes, int arity);

} // namespace minifab
