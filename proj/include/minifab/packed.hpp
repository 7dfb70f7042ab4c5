// packed.hpp - packed netlist (.net subset): one CLB = one LUT + optional latch
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minifab/netlist.hpp"

namespace minifab {

struct PackedBlock {
    std::string name;
    std::optional<std::string> lut;   // atom = LUT output net
    std::optional<std::string> latch; // atom = latch output net
    // logical net -> physical CLB input pin, injective per block
    std::vector<std::pair<std::string, int>> pin_bindings;

    int pin_of(const std::string &net) const;
};

struct PackedNetlist {
    std::vector<PackedBlock> blocks;

    const PackedBlock *find_block(const std::string &name) const;
    // block that drives `net` at its output (sync output for latch blocks)
    const PackedBlock *driver_block(const std::string &net) const;
};

PackedNetlist parse_net(const std::string &text);
std::string print_net(const PackedNetlist &packed);

// Every referenced atom must exist, latch data must equal the co-packed LUT
// output, bindings must cover the LUT's inputs.
void cross_validate(const PackedNetlist &packed, const LogicNetlist &netlist);

// Net driven at the block output: latch output when present, else LUT output.
std::string block_output_net(const PackedBlock &block);

} // namespace minifab
