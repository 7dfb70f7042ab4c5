// Architecture model: grid census, addressing, switch topologies, memory map.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "minifab/arch.hpp"

using namespace minifab;

TEST_CASE("capacity constants") {
    CHECK(kBlockCount == 361);
    CHECK(kPayloadBytes == 3249);
    CHECK(kCapacityBits == 25992);
    CHECK(kMinChannelWidth == 2);
    CHECK(kMaxChannelWidth == 12);
}

TEST_CASE("grid census") {
    std::map<BlockKind, int> census;
    for (int r = 0; r < kGridRows; r++)
        for (int c = 0; c < kGridCols; c++)
            census[block_kind_at(r, c)]++;
    CHECK(census[BlockKind::SwitchBlock] == 81);
    CHECK(census[BlockKind::Clb] == 64);
    CHECK(census[BlockKind::HConnBlock] == 72);
    CHECK(census[BlockKind::VConnBlock] == 72);
    CHECK(census[BlockKind::IoBlock] == 16);
    CHECK(census[BlockKind::Unused] == 56);

    // Structural spot checks.
    CHECK(block_kind_at(1, 1) == BlockKind::SwitchBlock);
    CHECK(block_kind_at(2, 2) == BlockKind::Clb);
    CHECK(block_kind_at(1, 2) == BlockKind::HConnBlock);
    CHECK(block_kind_at(2, 1) == BlockKind::VConnBlock);
    CHECK(block_kind_at(0, 0) == BlockKind::Unused);
    CHECK(block_kind_at(0, 3) == BlockKind::IoBlock);
    CHECK_THROWS_AS(block_kind_at(19, 0), Error);
    CHECK_THROWS_AS(block_kind_at(0, -1), Error);
}

TEST_CASE("io ring sites") {
    const auto &sites = io_sites();
    REQUIRE(sites.size() == 16);
    // Fixed pad order: north, west, east, south, each scanning ascending.
    const std::pair<int, int> expect[16] = {
        {0, 3},  {0, 7},  {0, 11},  {0, 15},  {3, 0},  {7, 0},  {11, 0},  {15, 0},
        {3, 18}, {7, 18}, {11, 18}, {15, 18}, {18, 3}, {18, 7}, {18, 11}, {18, 15},
    };
    for (int i = 0; i < 16; i++)
        CHECK(sites[i] == expect[i]);

    int hits = 0;
    for (int r = 0; r < kGridRows; r++)
        for (int c = 0; c < kGridCols; c++)
            if (is_io_site(r, c)) {
                hits++;
                CHECK(block_kind_at(r, c) == BlockKind::IoBlock);
            }
    CHECK(hits == 16);

    // Every pad is co-located with exactly one channel end segment.
    for (auto [r, c] : sites)
        CHECK((is_chanx_site(r, c) ^ is_chany_site(r, c)));
}

TEST_CASE("channel segment sites") {
    int nx = 0, ny = 0;
    for (int r = 0; r < kGridRows; r++)
        for (int c = 0; c < kGridCols; c++) {
            nx += is_chanx_site(r, c);
            ny += is_chany_site(r, c);
            CHECK(!(is_chanx_site(r, c) && is_chany_site(r, c)));
        }
    CHECK(nx == 90); // 9 odd rows x 10 even cols
    CHECK(ny == 90);
    CHECK(is_chanx_site(1, 0));
    CHECK(is_chanx_site(17, 18));
    CHECK(!is_chanx_site(0, 2));
    CHECK(is_chany_site(0, 1));
    CHECK(is_chany_site(18, 17));
    CHECK(!is_chany_site(2, 0));
}

TEST_CASE("config address round trip") {
    for (int idx = 0; idx < kCapacityBits; idx++) {
        ConfigAddress a = ConfigAddress::from_bit_index(idx);
        CHECK(a.bit_index() == idx);
    }
    // Row-major byte layout, 9 words per block.
    ConfigAddress a{2, 4, 8, 1};
    CHECK(a.byte_index() == (2 * 19 + 4) * 9 + 8);
    CHECK(a.bit_index() == 3089);
    CHECK(a.str() == "(2,4,8,1)");
    CHECK_THROWS_AS(ConfigAddress::from_bit_index(-1), Error);
    CHECK_THROWS_AS(ConfigAddress::from_bit_index(kCapacityBits), Error);
}

static const SbTopology kTopos[3] = {SbTopology::Disjoint, SbTopology::Universal,
                                     SbTopology::Wilton};
static const SbGroup kGroups[6] = {SbGroup::WE, SbGroup::NS, SbGroup::WN,
                                   SbGroup::NE, SbGroup::ES, SbGroup::SW};
static const Side kSides[4] = {Side::North, Side::East, Side::South, Side::West};

TEST_CASE("switch block group laws") {
    for (SbTopology topo : kTopos) {
        for (int w = kMinChannelWidth; w <= kMaxChannelWidth; w++) {
            for (SbGroup g : kGroups) {
                // Each group's track map is a permutation.
                std::set<int> image;
                for (int t = 0; t < w; t++) {
                    int m = sb_group_map(topo, g, t, w);
                    CHECK(m >= 0);
                    CHECK(m < w);
                    image.insert(m);
                }
                CHECK((int)image.size() == w);
                // Straight groups never twist.
                if (g == SbGroup::WE || g == SbGroup::NS)
                    for (int t = 0; t < w; t++)
                        CHECK(sb_group_map(topo, g, t, w) == t);
            }

            // Every (side, track) reaches the three other sides exactly once,
            // and reachability is symmetric.
            for (Side s : kSides) {
                for (int t = 0; t < w; t++) {
                    auto conns = sb_connections(topo, s, t, w);
                    REQUIRE(conns.size() == 3);
                    std::set<Side> seen;
                    for (auto [s2, t2] : conns) {
                        CHECK(s2 != s);
                        seen.insert(s2);
                        auto back = sb_connections(topo, s2, t2, w);
                        bool found = false;
                        for (auto [s3, t3] : back)
                            found |= s3 == s && t3 == t;
                        CHECK(found);
                        // The enable bit for the pair exists and round-trips.
                        auto sw = sb_find_switch(topo, s, t, s2, t2, w);
                        REQUIRE(sw.has_value());
                        SwitchPoint pt = sb_switch_point(topo, sw->first, sw->second, w);
                        bool fwd = pt.side_a == s && pt.track_a == t && pt.side_b == s2 &&
                                   pt.track_b == t2;
                        bool rev = pt.side_a == s2 && pt.track_a == t2 && pt.side_b == s &&
                                   pt.track_b == t;
                        CHECK((fwd || rev));
                    }
                    CHECK(seen.size() == 3);
                }
            }
            CHECK(!sb_find_switch(topo, Side::North, 0, Side::North, 0, w).has_value());
        }
    }
    CHECK_THROWS_AS(sb_group_map(SbTopology::Wilton, SbGroup::WE, 8, 8), Error);
    CHECK_THROWS_AS(sb_group_map(SbTopology::Wilton, SbGroup::WE, 0, 13), Error);
}

TEST_CASE("disjoint keeps track index") {
    for (int w = kMinChannelWidth; w <= kMaxChannelWidth; w++)
        for (SbGroup g : kGroups)
            for (int t = 0; t < w; t++)
                CHECK(sb_group_map(SbTopology::Disjoint, g, t, w) == t);
}

TEST_CASE("universal reflects diagonal turns") {
    for (int w = kMinChannelWidth; w <= kMaxChannelWidth; w++)
        for (SbGroup g : {SbGroup::WN, SbGroup::NE, SbGroup::ES, SbGroup::SW})
            for (int t = 0; t < w; t++)
                CHECK(sb_group_map(SbTopology::Universal, g, t, w) == w - 1 - t);
}

TEST_CASE("wilton twist table") {
    // Full turn table at W=4, worked by hand from the per-group formulas.
    const int w = 4;
    const int wn[4] = {0, 3, 2, 1}; // (W - t) % W
    const int ne[4] = {1, 2, 3, 0}; // (t + 1) % W
    const int es[4] = {2, 1, 0, 3}; // (2W - 2 - t) % W
    const int sw[4] = {1, 2, 3, 0}; // (t + 1) % W
    for (int t = 0; t < w; t++) {
        CHECK(sb_group_map(SbTopology::Wilton, SbGroup::WN, t, w) == wn[t]);
        CHECK(sb_group_map(SbTopology::Wilton, SbGroup::NE, t, w) == ne[t]);
        CHECK(sb_group_map(SbTopology::Wilton, SbGroup::ES, t, w) == es[t]);
        CHECK(sb_group_map(SbTopology::Wilton, SbGroup::SW, t, w) == sw[t]);
    }
    // The signature Wilton property: unlike disjoint, a turning path changes
    // track, so repeated turns sweep the whole channel instead of staying in
    // one plane. Four left turns around a block advance the track index.
    int t = 0;
    t = sb_group_map(SbTopology::Wilton, SbGroup::NE, t, w);
    t = sb_group_map(SbTopology::Wilton, SbGroup::ES, t, w);
    t = sb_group_map(SbTopology::Wilton, SbGroup::SW, t, w);
    t = sb_group_map(SbTopology::Wilton, SbGroup::WN, t, w);
    CHECK(t != 0);
}

TEST_CASE("clb bit layout") {
    for (int e = 0; e < kLutEntries; e++) {
        ConfigAddress a = clb_lut_bit_addr(2, 2, e);
        CHECK(a.row == 2);
        CHECK(a.col == 2);
        CHECK(a.word == e / 8);
        CHECK(a.bit == e % 8);
    }
    CHECK(clb_sync_addr(4, 6) == ConfigAddress{4, 6, 8, 0});
    for (int p = 0; p < kClbInputPins; p++)
        CHECK(clb_mask_addr(4, 6, p) == ConfigAddress{4, 6, 8, (uint8_t)(1 + p)});
    CHECK_THROWS_AS(clb_lut_bit_addr(2, 2, 64), Error);
    CHECK_THROWS_AS(clb_mask_addr(2, 2, 6), Error);
}

TEST_CASE("sb bit packing") {
    // Groups pack back to back: bit position = group * W + track.
    CHECK(sb_enable_addr(1, 1, SbGroup::WE, 0, 8) == ConfigAddress{1, 1, 0, 0});
    CHECK(sb_enable_addr(1, 1, SbGroup::NS, 0, 8) == ConfigAddress{1, 1, 1, 0});
    CHECK(sb_enable_addr(1, 1, SbGroup::SW, 7, 8) == ConfigAddress{1, 1, 5, 7});
    // W=12 fills the block exactly: 6 * 12 = 72 bits.
    CHECK(sb_enable_addr(3, 5, SbGroup::ES, 7, 12) == ConfigAddress{3, 5, 6, 7});
    CHECK(sb_enable_addr(3, 5, SbGroup::SW, 11, 12) == ConfigAddress{3, 5, 8, 7});
}

TEST_CASE("cb bit packing strides") {
    // W <= 8: one word per pin slot, drive in word 3.
    CHECK(cb_tap_addr(1, 2, 0, 0, 8) == ConfigAddress{1, 2, 0, 0});
    CHECK(cb_tap_addr(1, 2, 1, 3, 8) == ConfigAddress{1, 2, 1, 3});
    CHECK(cb_tap_addr(1, 2, 2, 7, 8) == ConfigAddress{1, 2, 2, 7});
    CHECK(cb_drive_addr(1, 2, 5, 8) == ConfigAddress{1, 2, 3, 5});
    // W > 8: 16-bit strides, drive from bit 48.
    CHECK(cb_tap_addr(1, 2, 1, 0, 12) == ConfigAddress{1, 2, 2, 0});
    CHECK(cb_tap_addr(1, 2, 2, 11, 12) == ConfigAddress{1, 2, 5, 3});
    CHECK(cb_drive_addr(1, 2, 11, 12) == ConfigAddress{1, 2, 7, 3});
    CHECK_THROWS_AS(cb_tap_addr(1, 2, 3, 0, 8), Error);
}

TEST_CASE("io bit packing") {
    CHECK(io_dir_addr(0, 3) == ConfigAddress{0, 3, 0, 0});
    CHECK(io_couple_addr(0, 3, 0) == ConfigAddress{0, 3, 0, 1});
    CHECK(io_couple_addr(0, 3, 6) == ConfigAddress{0, 3, 0, 7});
    CHECK(io_couple_addr(0, 3, 7) == ConfigAddress{0, 3, 1, 0}); // spills into word 1
    CHECK(io_couple_addr(0, 3, 11) == ConfigAddress{0, 3, 1, 4});
}

TEST_CASE("cb service map") {
    auto h = cb_served_clb(3, 4);
    REQUIRE(h.has_value());
    CHECK(h->clb_row == 4);
    CHECK(h->clb_col == 4);
    CHECK(h->pin_base == 0);

    auto v = cb_served_clb(4, 3);
    REQUIRE(v.has_value());
    CHECK(v->clb_row == 4);
    CHECK(v->clb_col == 4);
    CHECK(v->pin_base == 3);

    // The far interior edge has no CLB to serve.
    CHECK(!cb_served_clb(17, 4).has_value());
    CHECK(!cb_served_clb(4, 17).has_value());
    CHECK_THROWS_AS(cb_served_clb(2, 2), Error);

    // Every CLB is served by exactly one HCB and one VCB, covering all six pins.
    std::map<std::pair<int, int>, std::set<int>> pins;
    for (int r = 1; r <= 17; r++)
        for (int c = 1; c <= 17; c++) {
            BlockKind k = block_kind_at(r, c);
            if (k != BlockKind::HConnBlock && k != BlockKind::VConnBlock)
                continue;
            if (auto svc = cb_served_clb(r, c))
                for (int p = 0; p < 3; p++)
                    pins[{svc->clb_row, svc->clb_col}].insert(svc->pin_base + p);
        }
    CHECK(pins.size() == 64);
    for (const auto &[site, got] : pins)
        CHECK(got == std::set<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("cb connection list") {
    FabricArch arch(4, SbTopology::Wilton);
    auto conns = cb_connections(arch, 3, 4);
    REQUIRE(conns.size() == 16); // 3 pins x 4 tracks + 4 drives
    int drives = 0;
    for (const CbEnable &e : conns) {
        if (e.clb_pin < 0)
            drives++;
        else
            CHECK((e.clb_pin >= 0 && e.clb_pin <= 2)); // HCB serves pins 0-2
    }
    CHECK(drives == 4);
    auto vconns = cb_connections(arch, 4, 3);
    for (const CbEnable &e : vconns)
        if (e.clb_pin >= 0)
            CHECK((e.clb_pin >= 3 && e.clb_pin <= 5)); // VCB serves pins 3-5
    CHECK(cb_connections(arch, 17, 4).empty());
}

// Assigned-bit totals per width, worked out from the per-block layouts:
//   CLB 71 x 64; SB 6W x 81; CB (3 taps + drive) x W x 128 serving blocks;
//   IO (1 + W) x 16.
static int expected_assigned(int w) { return 71 * 64 + 6 * w * 81 + 4 * w * 128 + (1 + w) * 16; }

TEST_CASE("memory map tiles the address space") {
    for (int w : {2, 8, 12}) {
        FabricArch arch(w, SbTopology::Wilton);
        MemoryMap map = enumerate_config_bits(arch);
        CHECK((int)map.assigned.size() == expected_assigned(w));
        CHECK((int)(map.assigned.size() + map.spare.size()) == kCapacityBits);

        // Both lists sorted; together they cover every address exactly once.
        std::set<int> seen;
        for (const ResourceBit &rb : map.assigned)
            seen.insert(rb.addr.bit_index());
        for (const ConfigAddress &a : map.spare)
            seen.insert(a.bit_index());
        CHECK((int)seen.size() == kCapacityBits);
        for (size_t i = 1; i < map.assigned.size(); i++)
            CHECK(map.assigned[i - 1].addr < map.assigned[i].addr);
        for (size_t i = 1; i < map.spare.size(); i++)
            CHECK(map.spare[i - 1] < map.spare[i]);
    }
}

TEST_CASE("memory map hand-checked entries") {
    FabricArch arch; // W=8 wilton
    MemoryMap map = enumerate_config_bits(arch);
    CHECK((int)map.assigned.size() == 12672);
    CHECK((int)map.spare.size() == 13320);

    std::map<std::string, ConfigAddress> byname;
    for (const ResourceBit &rb : map.assigned)
        byname[rb.name] = rb.addr;
    CHECK(byname.at("clb[2][2].lut[0]") == ConfigAddress{2, 2, 0, 0});
    CHECK(byname.at("clb[2][2].lut[63]") == ConfigAddress{2, 2, 7, 7});
    CHECK(byname.at("clb[16][16].sync") == ConfigAddress{16, 16, 8, 0});
    CHECK(byname.at("clb[16][16].mask[5]") == ConfigAddress{16, 16, 8, 6});
    CHECK(byname.at("sb[1][1].we[0]") == ConfigAddress{1, 1, 0, 0});
    CHECK(byname.at("sb[17][17].sw[7]") == ConfigAddress{17, 17, 5, 7});
    CHECK(byname.at("cb[1][2].tap[0][0]") == ConfigAddress{1, 2, 0, 0});
    CHECK(byname.at("cb[2][1].tap[3][0]") == ConfigAddress{2, 1, 0, 0});
    CHECK(byname.at("cb[2][1].drive[7]") == ConfigAddress{2, 1, 3, 7});
    CHECK(byname.at("io[0][3].dir") == ConfigAddress{0, 3, 0, 0});
    CHECK(byname.at("io[18][15].couple[7]") == ConfigAddress{18, 15, 1, 0});
    // Far-edge CBs stay all-spare: nothing named for them.
    CHECK(byname.find("cb[17][4].tap[0][0]") == byname.end());
}

TEST_CASE("memory map csv") {
    FabricArch arch(2, SbTopology::Disjoint);
    std::string csv = memory_map_csv(enumerate_config_bits(arch));
    CHECK(csv.rfind("resource,row,col,word,bit\n", 0) == 0);
    size_t lines = 0;
    for (char ch : csv)
        lines += ch == '\n';
    CHECK((int)lines == kCapacityBits + 1);
    // Corner block (0,0) is filler: its first bit reads as spare.
    CHECK(csv.find("\nspare,0,0,0,0\n") != std::string::npos);
    CHECK(csv.find("io[0][3].dir,0,3,0,0\n") != std::string::npos);
}

TEST_CASE("arch config parsing") {
    FabricArch a = parse_arch_config("# comment\n\nchannel_width = 6\nsb_topology = universal\n"
                                     "grid_rows = 19\ngrid_cols = 19\n");
    CHECK(a.channel_width == 6);
    CHECK(a.topology == SbTopology::Universal);

    CHECK(parse_arch_config("").channel_width == 8); // defaults
    CHECK(parse_arch_config("").topology == SbTopology::Wilton);

    CHECK_THROWS_AS(parse_arch_config("channel_width = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_arch_config("channel_width = 13\n"), ParseError);
    CHECK_THROWS_AS(parse_arch_config("grid_rows = 20\n"), ParseError);
    CHECK_THROWS_AS(parse_arch_config("sb_topology = torus\n"), Error);
    CHECK_THROWS_AS(parse_arch_config("lut_size = 6\n"), ParseError);
    CHECK_THROWS_AS(parse_arch_config("nonsense\n"), ParseError);
}

TEST_CASE("width limits and names") {
    CHECK_THROWS_AS(FabricArch(1, SbTopology::Wilton), Error);
    CHECK_THROWS_AS(FabricArch(13, SbTopology::Wilton), Error);
    CHECK(FabricArch(2, SbTopology::Disjoint).channel_width == 2);

    for (SbTopology t : kTopos)
        CHECK(topology_from_string(to_string(t)) == t);
    CHECK(std::string(to_string(Side::North)) == "N");
    CHECK(std::string(to_string(BlockKind::Clb)) == "clb");
}
