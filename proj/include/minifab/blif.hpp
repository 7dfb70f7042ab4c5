// blif.hpp - BLIF reader/writer for the .model/.inputs/.outputs/.names/.latch/.end subset
#pragma once

#include <string>

#include "minifab/netlist.hpp"

namespace minifab {

// Parse a single-model BLIF file. Covers are on-set only; latches are
// rising-edge with init 0 or 1 (default 0). Validates that every non-clock
// net has exactly one driver and nothing dangles.
LogicNetlist parse_blif(const std::string &text);

// Canonical form: one minterm cube per on-set entry, declaration order
// preserved. parse_blif(print_blif(n)) reproduces n.
std::string print_blif(const LogicNetlist &netlist);

} // namespace minifab
