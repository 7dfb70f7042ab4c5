// Bitstream generation, the file container, and the decoder.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>

#include "minifab/bitstream.hpp"
#include "minifab/blif.hpp"

using namespace minifab;

static std::string fixture(const std::string &name) {
    return read_text_file(std::string(MINIFAB_FIXTURES) + "/" + name);
}

static Design counter_design(const FabricArch &arch) {
    Design d;
    d.netlist = parse_blif(fixture("counter4.blif"));
    d.packed = parse_net(fixture("counter4.net"));
    d.placement = parse_place(fixture("counter4.place"));
    d.routes = parse_route(fixture("counter4.route"), arch);
    return d;
}

TEST_CASE("rotate_lut permutes input axes") {
    // Identity map leaves any table alone.
    CHECK(rotate_lut(0x0123456789ABCDEFull, std::vector<int>{0, 1, 2, 3, 4, 5}) ==
          0x0123456789ABCDEFull);
    // Swapping the pins of a symmetric function changes nothing.
    uint64_t and2 = 0x8888888888888888ull;
    CHECK(rotate_lut(and2, std::vector<int>{1, 0}) == and2);
    // Buffer moved from pin 0 to pin 3 reads entry bit 3.
    CHECK(rotate_lut(0xAAAAAAAAAAAAAAAAull, std::vector<int>{3}) == 0xFF00FF00FF00FF00ull);
    // f = a AND NOT b with a->pin2, b->pin4, worked out entry by entry.
    uint64_t a_not_b = 0x2222222222222222ull;
    CHECK(rotate_lut(a_not_b, std::vector<int>{2, 4}) == 0x0000F0F00000F0F0ull);
    // ...and the swapped map computes pin4 AND NOT pin2 instead.
    CHECK(rotate_lut(a_not_b, std::vector<int>{4, 2}) == 0x0F0F00000F0F0000ull);
}

TEST_CASE("rotate_lut semantics: rotated(v) = original(v in logical order)") {
    uint64_t table = 0x7878787878787878ull; // c2 xor (c0 and c1)
    std::vector<int> phys = {5, 1, 3};
    uint64_t rot = rotate_lut(table, phys);
    for (int e = 0; e < 64; e++) {
        unsigned logical = 0;
        for (size_t i = 0; i < phys.size(); i++)
            logical |= ((e >> phys[i]) & 1u) << i;
        CHECK(lut_eval(rot, e) == lut_eval(table, logical));
    }
    // Entries that differ only in unmapped pins replicate: masked inputs are
    // provably don't-care.
    unsigned mapped = (1u << 5) | (1u << 1) | (1u << 3);
    for (int e = 0; e < 64; e++)
        CHECK(lut_eval(rot, e) == lut_eval(rot, e & mapped));
}

TEST_CASE("rotate_lut composes like a group action") {
    Rng rng(7);
    for (int trial = 0; trial < 50; trial++) {
        uint64_t table = rng.next();
        std::array<int, 6> p{}, q{}, qp{};
        for (int i = 0; i < 6; i++)
            p[i] = q[i] = i;
        for (int i = 5; i > 0; i--) {
            std::swap(p[i], p[rng.below(i + 1)]);
            std::swap(q[i], q[rng.below(i + 1)]);
        }
        for (int i = 0; i < 6; i++)
            qp[i] = q[p[i]];
        CHECK(rotate_lut(rotate_lut(table, p), q) == rotate_lut(table, qp));
    }
}

TEST_CASE("rotate_lut rejects bad maps") {
    CHECK_THROWS_AS(rotate_lut(0, std::vector<int>{0, 1, 2, 3, 4, 5, 0}), Error);
    CHECK_THROWS_AS(rotate_lut(0, std::vector<int>{6}), Error);
    CHECK_THROWS_AS(rotate_lut(0, std::vector<int>{-1}), Error);
    CHECK_THROWS_AS(rotate_lut(0, std::vector<int>{2, 2}), Error);
}

TEST_CASE("empty design generates an all-zero image") {
    FabricArch arch(4, SbTopology::Wilton);
    Design d;
    d.netlist = parse_blif(".model empty\n.inputs\n.outputs\n.end\n");
    d.placement = parse_place("Array size: 19 x 19 logic blocks\n");
    ConfigImage img = generate_bitstream(arch, d);
    for (uint8_t b : img.bytes)
        CHECK(b == 0);
}

TEST_CASE("single async buffer configures one CLB") {
    // y = a with a on pin 0 of CLB(2,2): LUT words must read 0xAA (entry bit 0
    // = pin 0), the mode byte masks in pin 0 only, sync stays 0.
    FabricArch arch(4, SbTopology::Wilton);
    Design d;
    d.netlist = parse_blif(".model buf\n.inputs a\n.outputs y\n.names a y\n1 1\n.end\n");
    d.packed = parse_net("block u0 at_clb\n  lut y pins a:0\n");
    d.placement = parse_place("Array size: 19 x 19 logic blocks\n"
                              "u0 2 2 0 #0\na 3 0 0 #1\nout:y 7 0 0 #2\n");
    d.routes = parse_route("Net 0 (a)\n"
                           "Node: 0 SOURCE (3,0) Class: 0\n"
                           "Node: 1 OPIN (3,0) Pin: 0\n"
                           "Node: 2 CHANY (3,0) Track: 0\n"
                           "Node: 3 CHANX (2,1) Track: 0\n"
                           "Node: 4 IPIN (2,2) Pin: 0\n"
                           "Node: 5 SINK (2,2) Class: 0\n"
                           "\n"
                           "Net 1 (y)\n"
                           "Node: 0 SOURCE (2,2) Class: 0\n"
                           "Node: 1 OPIN (2,2) Pin: 6\n"
                           "Node: 2 CHANX (2,1) Track: 1\n"
                           "Node: 3 CHANX (4,1) Track: 1\n"
                           "Node: 4 CHANX (6,1) Track: 1\n"
                           "Node: 5 CHANY (7,0) Track: 3\n"
                           "Node: 6 IPIN (7,0) Pin: 0\n"
                           "Node: 7 SINK (7,0) Class: 0\n",
                           arch);
    ConfigImage img = generate_bitstream(arch, d);
    for (int w = 0; w < 8; w++)
        CHECK(img.word(2, 2, w) == 0xAA);
    CHECK(img.word(2, 2, 8) == 0x02); // mask[0] set, sync clear, rest spare

    // Pads: 'a' stays an input (dir=0) and couples track 0; 'out:y' flips to
    // output and couples track 3.
    CHECK(!img.get(io_dir_addr(0, 3)));
    CHECK(img.get(io_couple_addr(0, 3, 0)));
    CHECK(img.get(io_dir_addr(0, 7)));
    CHECK(img.get(io_couple_addr(0, 7, 3)));

    // Exactly the wilton WN switch for the turn to the output pad.
    CHECK(img.get(sb_enable_addr(1, 7, SbGroup::WN, 1, 4)));
}

TEST_CASE("counter image decodes to the audited configuration") {
    FabricArch arch(4, SbTopology::Wilton);
    ConfigImage img = generate_bitstream(arch, counter_design(arch));

    DecodedConfig dec = decode(img);
    CHECK(dec.spare_warnings.empty());
    CHECK(dec.driver_conflicts.empty());

    int clbs = 0, pads = 0;
    for (const std::string &name : dec.enabled) {
        clbs += name.find(".sync") != std::string::npos;
        pads += name.find(".dir") != std::string::npos;
    }
    CHECK(clbs == 4); // the counter occupies exactly 4 CLBs
    CHECK(pads == 4);

    int bits = 0;
    for (uint8_t b : img.bytes)
        bits += std::popcount(b);
    CHECK(bits == (int)dec.enabled.size());

    // Pinned rendering of the whole configuration.
    CHECK(decode_text(img) ==
          "io[0][3]: dir=out couple[0]\n"
          "io[0][7]: dir=out couple[3]\n"
          "io[0][11]: dir=out couple[2]\n"
          "io[0][15]: dir=out couple[1]\n"
          "cb[1][2]: tap[0][0] drive[0]\n"
          "sb[1][3]: we[0] wn[0]\n"
          "cb[1][4]: tap[0][0] tap[1][1] drive[1]\n"
          "sb[1][5]: we[0] we[1]\n"
          "cb[1][6]: tap[0][0] tap[1][1] tap[2][2] drive[2]\n"
          "sb[1][7]: we[0] we[1] we[2] wn[1]\n"
          "cb[1][8]: tap[0][0] tap[1][1] tap[2][2] drive[3]\n"
          "sb[1][9]: we[2] we[3]\n"
          "sb[1][11]: we[3] wn[2]\n"
          "sb[1][13]: we[3]\n"
          "sb[1][15]: wn[3]\n"
          "clb[2][2]: lut=0x5555555555555555 pins=0 sync=1\n"
          "clb[2][4]: lut=0x6666666666666666 pins=0,1 sync=1\n"
          "clb[2][6]: lut=0x7878787878787878 pins=0,1,2 sync=1\n"
          "cb[2][7]: tap[3][0] drive[0]\n"
          "clb[2][8]: lut=0x7f807f807f807f80 pins=0,1,2,3 sync=1\n");
}

TEST_CASE("configured tables are invariant under masked-pin flips") {
    FabricArch arch(4, SbTopology::Wilton);
    ConfigImage img = generate_bitstream(arch, counter_design(arch));
    for (auto [row, col] : {std::pair{2, 2}, {2, 4}, {2, 6}, {2, 8}}) {
        uint64_t table = 0;
        for (int w = 0; w < 8; w++)
            table |= (uint64_t)img.word(row, col, w) << (8 * w);
        for (int pin = 0; pin < kClbInputPins; pin++) {
            if (img.get(clb_mask_addr(row, col, pin)))
                continue;
            for (int e = 0; e < kLutEntries; e++)
                CHECK(lut_eval(table, e) == lut_eval(table, e ^ (1 << pin)));
        }
    }
}

TEST_CASE("generation rejections") {
    FabricArch arch(4, SbTopology::Wilton);
    Design d = counter_design(arch);

    Design init1 = d;
    init1.netlist.latches[0].init = 1; // registers reset to 0; init 1 unsupported
    CHECK_THROWS_AS(generate_bitstream(arch, init1), Error);

    Design unplaced = d;
    unplaced.placement.entries.pop_back();
    CHECK_THROWS_AS(generate_bitstream(arch, unplaced), Error);

    Design unrouted = d;
    unrouted.routes.nets.pop_back();
    CHECK_THROWS_AS(generate_bitstream(arch, unrouted), Error);
}

TEST_CASE("file header and size") {
    FabricArch arch(5, SbTopology::Universal);
    ConfigImage img;
    img.arch = arch;
    std::vector<uint8_t> bytes = serialize(img);
    REQUIRE((int)bytes.size() == kBitstreamFileBytes);
    CHECK(kBitstreamFileBytes == 3263);
    CHECK(bytes[0] == 'F');
    CHECK(bytes[1] == 'P');
    CHECK(bytes[2] == 'G');
    CHECK(bytes[3] == 'A');
    CHECK(bytes[4] == kBitstreamVersion);
    CHECK(bytes[5] == 19);
    CHECK(bytes[6] == 19);
    CHECK(bytes[7] == 9);
    CHECK(bytes[8] == 5);
    CHECK(bytes[9] == (uint8_t)SbTopology::Universal);
    for (int i = 0; i < kPayloadBytes; i++)
        CHECK(bytes[kBitstreamHeaderBytes + i] == 0);
}

TEST_CASE("random image round trips") {
    Rng rng(11);
    const SbTopology topos[3] = {SbTopology::Disjoint, SbTopology::Universal, SbTopology::Wilton};
    for (int trial = 0; trial < 1000; trial++) {
        ConfigImage img;
        img.arch = FabricArch(2 + (int)rng.below(11), topos[rng.below(3)]);
        for (auto &b : img.bytes)
            b = (uint8_t)rng.below(256);
        ConfigImage back = deserialize(serialize(img));
        CHECK(back == img);
        CHECK(back.arch == img.arch);
    }
}

TEST_CASE("container rejects damage") {
    ConfigImage img;
    img.arch = FabricArch(8, SbTopology::Wilton);
    img.set_word(2, 2, 0, 0xAA);
    std::vector<uint8_t> good = serialize(img);

    auto bad = [](std::vector<uint8_t> bytes) {
        CHECK_THROWS_AS(deserialize(bytes), Error);
    };
    bad({});                               // empty
    bad({'F', 'P', 'G'});                  // shorter than the header
    bad(std::vector<uint8_t>(good.begin(), good.begin() + 100)); // truncated payload

    std::vector<uint8_t> t = good;
    t[0] = 'X';
    bad(t); // magic

    t = good;
    t[4] = 2;
    bad(t); // version

    t = good;
    t[5] = 20;
    bad(t); // grid mismatch

    t = good;
    t[8] = 13;
    bad(t); // channel width out of range

    t = good;
    t[9] = 9;
    bad(t); // topology code

    t = good;
    t.insert(t.end() - 4, 0); // payload length off by one
    bad(t);

    t = good;
    t[kBitstreamHeaderBytes + 100] ^= 0x10; // payload corruption
    bad(t);

    t = good;
    t.back() ^= 1; // checksum corruption
    bad(t);

    CHECK(deserialize(good) == img);
}

TEST_CASE("decode flags spare bits with their address") {
    ConfigImage img;
    img.arch = FabricArch(8, SbTopology::Wilton);
    DecodedConfig clean = decode(img);
    CHECK(clean.enabled.empty());
    CHECK(clean.spare_warnings.empty());
    CHECK(decode_text(img) == "no resources configured\n");

    img.set(ConfigAddress{2, 2, 8, 7}, true); // CLB mode byte's spare bit
    img.set(ConfigAddress{0, 0, 0, 0}, true); // filler block
    DecodedConfig dec = decode(img);
    CHECK(dec.enabled.empty());
    REQUIRE(dec.spare_warnings.size() == 2);
    CHECK(dec.spare_warnings[0] == ConfigAddress{0, 0, 0, 0});
    CHECK(dec.spare_warnings[1] == ConfigAddress{2, 2, 8, 7});
}

TEST_CASE("decode inverts generate") {
    // Every enabled resource of the counter reappears; flipping any single
    // assigned bit changes the decoded resource list.
    FabricArch arch(4, SbTopology::Wilton);
    ConfigImage img = generate_bitstream(arch, counter_design(arch));
    DecodedConfig dec = decode(img);

    std::set<std::string> names(dec.enabled.begin(), dec.enabled.end());
    CHECK(names.size() == dec.enabled.size());
    CHECK(names.count("clb[2][2].sync") == 1);
    CHECK(names.count("clb[2][2].mask[0]") == 1);
    CHECK(names.count("cb[1][2].tap[0][0]") == 1);
    CHECK(names.count("cb[2][7].tap[3][0]") == 1); // VCB taps use absolute pins
    CHECK(names.count("io[0][3].dir") == 1);
    CHECK(names.count("sb[1][3].we[0]") == 1);
}
