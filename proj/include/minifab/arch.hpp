// arch.hpp - fabric architecture model
//
// The fabric is a fixed 19x19 block grid. Rows and columns 1..17 form the
// interior: switch blocks sit at (odd,odd), CLBs at (even,even), horizontal
// connection blocks at (odd row, even col) and vertical ones at (even row,
// odd col). The border ring hosts 16 GPIO blocks at documented sites plus
// unused filler blocks. Every block owns 9 locally addressed 8-bit words of
// configuration SRAM.
//
// Routing channels: a horizontal channel runs along each odd row with one
// track-segment bundle per even column (border columns 0 and 18 carry the
// channel end segments that GPIO blocks couple into); vertical channels are
// the transpose. Each segment bundle carries `channel_width` tracks.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minifab/util.hpp"

namespace minifab {

constexpr int kGridRows = 19;
constexpr int kGridCols = 19;
constexpr int kWordsPerBlock = 9;
constexpr int kBitsPerWord = 8;
constexpr int kBlockCount = kGridRows * kGridCols;          // 361
constexpr int kPayloadBytes = kBlockCount * kWordsPerBlock; // 3249
constexpr int kCapacityBits = kPayloadBytes * kBitsPerWord; // 25992
constexpr int kClbCount = 64;
constexpr int kGpioCount = 16;
constexpr int kClbInputPins = 6;
constexpr int kLutEntries = 64;
constexpr int kMinChannelWidth = 2;  // a Wilton twist needs at least two tracks
constexpr int kMaxChannelWidth = 12; // 6W switch enables must fit in 72 bits

enum class SbTopology : uint8_t { Disjoint = 0, Universal = 1, Wilton = 2 };

enum class Side : uint8_t { North = 0, East = 1, South = 2, West = 3 };

enum class BlockKind : uint8_t { Clb, SwitchBlock, HConnBlock, VConnBlock, IoBlock, Unused };

const char *to_string(SbTopology t);
const char *to_string(Side s);
const char *to_string(BlockKind k);
SbTopology topology_from_string(const std::string &s);

// One bit of configuration SRAM, addressed the way the bus decoders see it.
struct ConfigAddress {
    uint8_t row = 0;  // 0..18
    uint8_t col = 0;  // 0..18
    uint8_t word = 0; // 0..8
    uint8_t bit = 0;  // 0..7

    auto operator<=>(const ConfigAddress &) const = default;

    int byte_index() const { return (row * kGridCols + col) * kWordsPerBlock + word; }
    int bit_index() const { return byte_index() * kBitsPerWord + bit; }
    static ConfigAddress from_bit_index(int idx);
    std::string str() const;
};

struct FabricArch {
    int channel_width = 8;
    SbTopology topology = SbTopology::Wilton;

    FabricArch() = default;
    FabricArch(int w, SbTopology topo);

    bool operator==(const FabricArch &) const = default;
};

BlockKind block_kind_at(int row, int col);

// GPIO ring: 4 pads per side, each co-located with a channel end segment.
const std::array<std::pair<int, int>, kGpioCount> &io_sites();
bool is_io_site(int row, int col);
bool is_clb_site(int row, int col);

// Channel segment sites. A CHANX segment lives at (odd row, even col) including
// the border columns; CHANY is the transpose.
bool is_chanx_site(int row, int col);
bool is_chany_site(int row, int col);

// ---------------------------------------------------------------------------
// Switch block topology maps
// ---------------------------------------------------------------------------

// Each switch block wires its four incident segment bundles through six
// bidirectional pair groups. Enable bit k*W+t controls group k's switch on
// the first side's track t.
enum class SbGroup : uint8_t { WE = 0, NS = 1, WN = 2, NE = 3, ES = 4, SW = 5 };
constexpr int kSbGroupCount = 6;

Side sb_group_first(SbGroup g);
Side sb_group_second(SbGroup g);

// Track on the group's second side that pairs with track t on its first side.
int sb_group_map(SbTopology topo, SbGroup g, int t, int w);

// The three endpoints reachable from (side, track). Symmetric by construction.
std::vector<std::pair<Side, int>> sb_connections(SbTopology topo, Side side, int track, int w);

// Endpoints of the switch controlled by group g, track index t.
struct SwitchPoint {
    Side side_a;
    int track_a;
    Side side_b;
    int track_b;
};
SwitchPoint sb_switch_point(SbTopology topo, SbGroup g, int t, int w);

// Locate the enable bit joining (side_a, track_a) to (side_b, track_b), if the
// topology provides one.
std::optional<std::pair<SbGroup, int>> sb_find_switch(SbTopology topo, Side side_a, int track_a,
                                                      Side side_b, int track_b, int w);

// ---------------------------------------------------------------------------
// Per-block configuration bit layout
// ---------------------------------------------------------------------------

// CLB: words 0-7 hold the 64 LUT bits (entry 8w+b; input pin 0 is the LSB of
// the entry index). Word 8 is the mode byte: bit 0 selects the registered
// output, bits 1-6 unmask input pins 0-5, bit 7 is spare.
ConfigAddress clb_lut_bit_addr(int row, int col, int entry);
ConfigAddress clb_sync_addr(int row, int col);
ConfigAddress clb_mask_addr(int row, int col, int pin);

// SB: 6 groups x W bits packed from word 0 bit 0.
ConfigAddress sb_enable_addr(int row, int col, SbGroup g, int t, int w);

// CB: one tap word per served pin then the drive word. Pins get 16-bit strides
// when W exceeds a byte.
ConfigAddress cb_tap_addr(int row, int col, int pin_slot, int track, int w);
ConfigAddress cb_drive_addr(int row, int col, int track, int w);

// IO: word 0 bit 0 = direction (1 = output), track-coupling enables fill
// word 0 bits 1-7 then word 1.
ConfigAddress io_dir_addr(int row, int col);
ConfigAddress io_couple_addr(int row, int col, int track);

// The CLB a connection block serves: an HCB serves the CLB directly below it
// (its pins 0-2), a VCB serves the CLB to its right (pins 3-5). CBs on the far
// interior edge serve nothing and stay all-spare.
struct CbService {
    int clb_row;
    int clb_col;
    int pin_base; // 0 for HCB, 3 for VCB
};
std::optional<CbService> cb_served_clb(int row, int col);

struct CbEnable {
    int clb_pin; // -1 for the output drive
    int track;
    ConfigAddress addr;
};
std::vector<CbEnable> cb_connections(const FabricArch &arch, int row, int col);

// ---------------------------------------------------------------------------
// Whole-fabric memory map
// ---------------------------------------------------------------------------

struct ResourceBit {
    std::string name;
    ConfigAddress addr;
};

struct MemoryMap {
    std::vector<ResourceBit> assigned;  // sorted by address
    std::vector<ConfigAddress> spare;   // sorted, complements `assigned`
};

// Injective map from every configurable resource to its SRAM bit; the image
// plus the spare list tiles all 25,992 addresses.
MemoryMap enumerate_config_bits(const FabricArch &arch);

std::string memory_map_csv(const MemoryMap &map);

// key=value architecture config. Grid size is fixed; only channel_width and
// sb_topology may be overridden.
FabricArch parse_arch_config(const std::string &text);

} // namespace minifab
