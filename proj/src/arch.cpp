#include "minifab/arch.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace minifab {

const char *to_string(SbTopology t) {
    switch (t) {
    case SbTopology::Disjoint:
        return "disjoint";
    case SbTopology::Universal:
        return "universal";
    case SbTopology::Wilton:
        return "wilton";
    }
    return "?";
}

const char *to_string(Side s) {
    switch (s) {
    case Side::North:
        return "N";
    case Side::East:
        return "E";
    case Side::South:
        return "S";
    case Side::West:
        return "W";
    }
    return "?";
}

const char *to_string(BlockKind k) {
    switch (k) {
    case BlockKind::Clb:
        return "clb";
    case BlockKind::SwitchBlock:
        return "sb";
    case BlockKind::HConnBlock:
        return "hcb";
    case BlockKind::VConnBlock:
        return "vcb";
    case BlockKind::IoBlock:
        return "io";
    case BlockKind::Unused:
        return "unused";
    }
    return "?";
}

SbTopology topology_from_string(const std::string &s) {
    if (s == "disjoint")
        return SbTopology::Disjoint;
    if (s == "universal")
        return SbTopology::Universal;
    if (s == "wilton")
        return SbTopology::Wilton;
    throw Error("unknown switch-block topology: " + s);
}

ConfigAddress ConfigAddress::from_bit_index(int idx) {
    if (idx < 0 || idx >= kCapacityBits)
        throw Error("bit index out of range: " + std::to_string(idx));
    ConfigAddress a;
    a.bit = (uint8_t)(idx % kBitsPerWord);
    int byte = idx / kBitsPerWord;
    a.word = (uint8_t)(byte % kWordsPerBlock);
    int block = byte / kWordsPerBlock;
    a.col = (uint8_t)(block % kGridCols);
    a.row = (uint8_t)(block / kGridCols);
    return a;
}

std::string ConfigAddress::str() const {
    std::ostringstream ss;
    ss << "(" << (int)row << "," << (int)col << "," << (int)word << "," << (int)bit << ")";
    return ss.str();
}

FabricArch::FabricArch(int w, SbTopology topo) : channel_width(w), topology(topo) {
    if (w < kMinChannelWidth || w > kMaxChannelWidth)
        throw Error("channel width out of range 2-12: " + std::to_string(w));
}

static void check_coord(int row, int col) {
    if (row < 0 || row >= kGridRows || col < 0 || col >= kGridCols)
        throw Error("grid coordinate out of range: (" + std::to_string(row) + "," +
                    std::to_string(col) + ")");
}

BlockKind block_kind_at(int row, int col) {
    check_coord(row, col);
    bool border = row == 0 || row == kGridRows - 1 || col == 0 || col == kGridCols - 1;
    if (border)
        return is_io_site(row, col) ? BlockKind::IoBlock : BlockKind::Unused;
    bool row_odd = row % 2 == 1;
    bool col_odd = col % 2 == 1;
    if (row_odd && col_odd)
        return BlockKind::SwitchBlock;
    if (!row_odd && !col_odd)
        return BlockKind::Clb;
    if (row_odd)
        return BlockKind::HConnBlock;
    return BlockKind::VConnBlock;
}

const std::array<std::pair<int, int>, kGpioCount> &io_sites() {
    // 4 per side, sitting on channel end segments.
    static const std::array<std::pair<int, int>, kGpioCount> sites = {{
        {0, 3},  {0, 7},  {0, 11},  {0, 15},  // north
        {3, 0},  {7, 0},  {11, 0},  {15, 0},  // west
        {3, 18}, {7, 18}, {11, 18}, {15, 18}, // east
        {18, 3}, {18, 7}, {18, 11}, {18, 15}, // south
    }};
    return sites;
}

bool is_io_site(int row, int col) {
    for (auto [r, c] : io_sites())
        if (r == row && c == col)
            return true;
    return false;
}

bool is_clb_site(int row, int col) {
    return row >= 1 && row <= 17 && col >= 1 && col <= 17 && row % 2 == 0 && col % 2 == 0;
}

bool is_chanx_site(int row, int col) {
    return row >= 1 && row <= 17 && row % 2 == 1 && col >= 0 && col <= 18 && col % 2 == 0;
}

bool is_chany_site(int row, int col) {
    return col >= 1 && col <= 17 && col % 2 == 1 && row >= 0 && row <= 18 && row % 2 == 0;
}

// ---------------------------------------------------------------------------
// Switch block topology maps
// ---------------------------------------------------------------------------

Side sb_group_first(SbGroup g) {
    switch (g) {
    case SbGroup::WE:
        return Side::West;
    case SbGroup::NS:
        return Side::North;
    case SbGroup::WN:
        return Side::West;
    case SbGroup::NE:
        return Side::North;
    case SbGroup::ES:
        return Side::East;
    case SbGroup::SW:
        return Side::South;
    }
    return Side::North;
}

Side sb_group_second(SbGroup g) {
    switch (g) {
    case SbGroup::WE:
        return Side::East;
    case SbGroup::NS:
        return Side::South;
    case SbGroup::WN:
        return Side::North;
    case SbGroup::NE:
        return Side::East;
    case SbGroup::ES:
        return Side::South;
    case SbGroup::SW:
        return Side::West;
    }
    return Side::North;
}

static void check_track(int t, int w) {
    if (w < kMinChannelWidth || w > kMaxChannelWidth)
        throw Error("channel width out of range 2-12: " + std::to_string(w));
    if (t < 0 || t >= w)
        throw Error("track index " + std::to_string(t) + " out of range for W=" + std::to_string(w));
}

int sb_group_map(SbTopology topo, SbGroup g, int t, int w) {
    check_track(t, w);
    // Straight connections keep the track index in every topology.
    if (g == SbGroup::WE || g == SbGroup::NS)
        return t;
    switch (topo) {
    case SbTopology::Disjoint:
        return t;
    case SbTopology::Universal:
        return w - 1 - t;
    case SbTopology::Wilton:
        switch (g) {
        case SbGroup::WN:
            return (w - t) % w;
        case SbGroup::NE:
            return (t + 1) % w;
        case SbGroup::ES:
            return (2 * w - 2 - t) % w;
        case SbGroup::SW:
            return (t + 1) % w;
        default:
            break;
        }
    }
    throw Error("bad switch group");
}

// Inverse of sb_group_map on the track axis.
static int sb_group_unmap(SbTopology topo, SbGroup g, int t, int w) {
    check_track(t, w);
    if (g == SbGroup::WE || g == SbGroup::NS || topo == SbTopology::Disjoint)
        return t;
    if (topo == SbTopology::Universal)
        return w - 1 - t;
    switch (g) {
    case SbGroup::WN:
        return (w - t) % w; // involution
    case SbGroup::NE:
        return (t - 1 + w) % w;
    case SbGroup::ES:
        return (2 * w - 2 - t) % w; // involution
    case SbGroup::SW:
        return (t - 1 + w) % w;
    default:
        break;
    }
    throw Error("bad switch group");
}

static const SbGroup kAllGroups[kSbGroupCount] = {SbGroup::WE, SbGroup::NS, SbGroup::WN,
                                                  SbGroup::NE, SbGroup::ES, SbGroup::SW};

std::vector<std::pair<Side, int>> sb_connections(SbTopology topo, Side side, int track, int w) {
    check_track(track, w);
    std::vector<std::pair<Side, int>> out;
    for (SbGroup g : kAllGroups) {
        if (sb_group_first(g) == side)
            out.emplace_back(sb_group_second(g), sb_group_map(topo, g, track, w));
        else if (sb_group_second(g) == side)
            out.emplace_back(sb_group_first(g), sb_group_unmap(topo, g, track, w));
    }
    return out;
}

SwitchPoint sb_switch_point(SbTopology topo, SbGroup g, int t, int w) {
    return SwitchPoint{sb_group_first(g), t, sb_group_second(g), sb_group_map(topo, g, t, w)};
}

std::optional<std::pair<SbGroup, int>> sb_find_switch(SbTopology topo, Side side_a, int track_a,
                                                      Side side_b, int track_b, int w) {
    for (SbGroup g : kAllGroups) {
        Side f = sb_group_first(g), s = sb_group_second(g);
        if (f == side_a && s == side_b) {
            if (sb_group_map(topo, g, track_a, w) == track_b)
                return std::make_pair(g, track_a);
            return std::nullopt;
        }
        if (f == side_b && s == side_a) {
            if (sb_group_map(topo, g, track_b, w) == track_a)
                return std::make_pair(g, track_b);
            return std::nullopt;
        }
    }
    return std::nullopt; // same side twice
}

// ---------------------------------------------------------------------------
// Per-block bit layout
// ---------------------------------------------------------------------------

ConfigAddress clb_lut_bit_addr(int row, int col, int entry) {
    check_coord(row, col);
    if (entry < 0 || entry >= kLutEntries)
        throw Error("LUT entry out of range");
    return ConfigAddress{(uint8_t)row, (uint8_t)col, (uint8_t)(entry / 8), (uint8_t)(entry % 8)};
}

ConfigAddress clb_sync_addr(int row, int col) {
    check_coord(row, col);
    return ConfigAddress{(uint8_t)row, (uint8_t)col, 8, 0};
}

ConfigAddress clb_mask_addr(int row, int col, int pin) {
    check_coord(row, col);
    if (pin < 0 || pin >= kClbInputPins)
        throw Error("CLB pin out of range");
    return ConfigAddress{(uint8_t)row, (uint8_t)col, 8, (uint8_t)(1 + pin)};
}

ConfigAddress sb_enable_addr(int row, int col, SbGroup g, int t, int w) {
    check_coord(row, col);
    check_track(t, w);
    int pos = (int)g * w + t;
    return ConfigAddress{(uint8_t)row, (uint8_t)col, (uint8_t)(pos / 8), (uint8_t)(pos % 8)};
}

static int cb_pin_stride(int w) { return w <= 8 ? 8 : 16; }

ConfigAddress cb_tap_addr(int row, int col, int pin_slot, int track, int w) {
    check_coord(row, col);
    check_track(track, w);
    if (pin_slot < 0 || pin_slot > 2)
        throw Error("CB pin slot out of range");
    int pos = pin_slot * cb_pin_stride(w) + track;
    return ConfigAddress{(uint8_t)row, (uint8_t)col, (uint8_t)(pos / 8), (uint8_t)(pos % 8)};
}

ConfigAddress cb_drive_addr(int row, int col, int track, int w) {
    check_coord(row, col);
    check_track(track, w);
    int pos = 3 * cb_pin_stride(w) + track;
    return ConfigAddress{(uint8_t)row, (uint8_t)col, (uint8_t)(pos / 8), (uint8_t)(pos % 8)};
}

ConfigAddress io_dir_addr(int row, int col) {
    check_coord(row, col);
    return ConfigAddress{(uint8_t)row, (uint8_t)col, 0, 0};
}

ConfigAddress io_couple_addr(int row, int col, int track) {
    check_coord(row, col);
    if (track < 0 || track >= kMaxChannelWidth + 3)
        throw Error("IO coupling track out of range");
    int pos = 1 + track;
    return ConfigAddress{(uint8_t)row, (uint8_t)col, (uint8_t)(pos / 8), (uint8_t)(pos % 8)};
}

std::optional<CbService> cb_served_clb(int row, int col) {
    BlockKind k = block_kind_at(row, col);
    if (k == BlockKind::HConnBlock) {
        if (row + 1 <= 16)
            return CbService{row + 1, col, 0};
        return std::nullopt; // bottom channel row, no CLB below
    }
    if (k == BlockKind::VConnBlock) {
        if (col + 1 <= 16)
            return CbService{row, col + 1, 3};
        return std::nullopt; // rightmost channel column
    }
    throw Error("not a connection block site: (" + std::to_string(row) + "," +
                std::to_string(col) + ")");
}

std::vector<CbEnable> cb_connections(const FabricArch &arch, int row, int col) {
    std::vector<CbEnable> out;
    auto svc = cb_served_clb(row, col);
    if (!svc)
        return out;
    int w = arch.channel_width;
    for (int p = 0; p < 3; p++)
        for (int t = 0; t < w; t++)
            out.push_back(CbEnable{svc->pin_base + p, t, cb_tap_addr(row, col, p, t, w)});
    for (int t = 0; t < w; t++)
        out.push_back(CbEnable{-1, t, cb_drive_addr(row, col, t, w)});
    return out;
}

// ---------------------------------------------------------------------------
// Memory map enumeration
// ---------------------------------------------------------------------------

MemoryMap enumerate_config_bits(const FabricArch &arch) {
    MemoryMap map;
    int w = arch.channel_width;
    auto add = [&](std::string name, ConfigAddress a) {
        map.assigned.push_back(ResourceBit{std::move(name), a});
    };

    for (int row = 0; row < kGridRows; row++) {
        for (int col = 0; col < kGridCols; col++) {
            std::string rc = "[" + std::to_string(row) + "][" + std::to_string(col) + "]";
            switch (block_kind_at(row, col)) {
            case BlockKind::Clb:
                for (int e = 0; e < kLutEntries; e++)
                    add("clb" + rc + ".lut[" + std::to_string(e) + "]",
                        clb_lut_bit_addr(row, col, e));
                add("clb" + rc + ".sync", clb_sync_addr(row, col));
                for (int p = 0; p < kClbInputPins; p++)
                    add("clb" + rc + ".mask[" + std::to_string(p) + "]",
                        clb_mask_addr(row, col, p));
                break;
            case BlockKind::SwitchBlock:
                for (SbGroup g : kAllGroups) {
                    static const char *gname[] = {"we", "ns", "wn", "ne", "es", "sw"};
                    for (int t = 0; t < w; t++)
                        add("sb" + rc + "." + gname[(int)g] + "[" + std::to_string(t) + "]",
                            sb_enable_addr(row, col, g, t, w));
                }
                break;
            case BlockKind::HConnBlock:
            case BlockKind::VConnBlock:
                for (const CbEnable &e : cb_connections(arch, row, col)) {
                    if (e.clb_pin < 0)
                        add("cb" + rc + ".drive[" + std::to_string(e.track) + "]", e.addr);
                    else
                        add("cb" + rc + ".tap[" + std::to_string(e.clb_pin) + "][" +
                                std::to_string(e.track) + "]",
                            e.addr);
                }
                break;
            case BlockKind::IoBlock:
                add("io" + rc + ".dir", io_dir_addr(row, col));
                for (int t = 0; t < w; t++)
                    add("io" + rc + ".couple[" + std::to_string(t) + "]",
                        io_couple_addr(row, col, t));
                break;
            case BlockKind::Unused:
                break;
            }
        }
    }

    std::sort(map.assigned.begin(), map.assigned.end(),
              [](const ResourceBit &a, const ResourceBit &b) { return a.addr < b.addr; });
    for (size_t i = 1; i < map.assigned.size(); i++)
        if (map.assigned[i].addr == map.assigned[i - 1].addr)
            throw Error("memory map overlap at " + map.assigned[i].addr.str() + " between " +
                        map.assigned[i - 1].name + " and " + map.assigned[i].name);

    // Per-block budget: the layout above may not spill past 72 bits.
    for (const ResourceBit &rb : map.assigned)
        if (rb.addr.word >= kWordsPerBlock)
            throw Error("bit layout overflow at " + rb.name);

    size_t next = 0;
    for (int idx = 0; idx < kCapacityBits; idx++) {
        ConfigAddress a = ConfigAddress::from_bit_index(idx);
        if (next < map.assigned.size() && map.assigned[next].addr == a)
            next++;
        else
            map.spare.push_back(a);
    }
    return map;
}

std::string memory_map_csv(const MemoryMap &map) {
    std::ostringstream ss;
    ss << "resource,row,col,word,bit\n";
    size_t ai = 0, si = 0;
    for (int idx = 0; idx < kCapacityBits; idx++) {
        ConfigAddress a = ConfigAddress::from_bit_index(idx);
        const std::string *name = nullptr;
        if (ai < map.assigned.size() && map.assigned[ai].addr == a)
            name = &map.assigned[ai++].name;
        else if (si < map.spare.size() && map.spare[si] == a)
            si++;
        ss << (name ? *name : "spare") << "," << (int)a.row << "," << (int)a.col << ","
           << (int)a.word << "," << (int)a.bit << "\n";
    }
    return ss.str();
}

FabricArch parse_arch_config(const std::string &text) {
    FabricArch arch;
    int lineno = 0;
    for (const std::string &raw : split_on(text, '\n')) {
        lineno++;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value in arch config", lineno);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "channel_width") {
            int w = std::stoi(val);
            if (w < kMinChannelWidth || w > kMaxChannelWidth)
                throw ParseError("channel_width out of range 2-12", lineno);
            arch.channel_width = w;
        } else if (key == "sb_topology") {
            arch.topology = topology_from_string(val);
        } else if (key == "grid_rows") {
            if (std::stoi(val) != kGridRows)
                throw ParseError("grid is fixed at 19x19", lineno);
        } else if (key == "grid_cols") {
            if (std::stoi(val) != kGridCols)
                throw ParseError("grid is fixed at 19x19", lineno);
        } else {
            throw ParseError("unknown arch config key: " + key, lineno);
        }
    }
    return arch;
}

} // namespace minifab
