#include "minifab/bitstream.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>
#include <tuple>

#include <zlib.h>

namespace minifab {

uint64_t rotate_lut(uint64_t table, const std::vector<int> &phys_pin) {
    if ((int)phys_pin.size() > kClbInputPins)
        throw Error("pin map wider than the LUT");
    for (size_t i = 0; i < phys_pin.size(); i++) {
        if (phys_pin[i] < 0 || phys_pin[i] >= kClbInputPins)
            throw Error("pin map entry " + std::to_string(phys_pin[i]) + " out of range");
        for (size_t j = i + 1; j < phys_pin.size(); j++)
            if (phys_pin[i] == phys_pin[j])
                throw Error("pin map is not injective");
    }
    uint64_t out = 0;
    for (int v = 0; v < kLutEntries; v++) {
        unsigned u = 0;
        for (size_t i = 0; i < phys_pin.size(); i++)
            u |= ((unsigned)(v >> phys_pin[i]) & 1u) << i;
        if (lut_eval(table, u))
            out |= 1ull << v;
    }
    return out;
}

uint64_t rotate_lut(uint64_t table, const std::array<int, 6> &perm) {
    return rotate_lut(table, std::vector<int>(perm.begin(), perm.end()));
}

namespace {

// identity on pin 0 of the entry index; feeds a lone latch from its data pin
constexpr uint64_t kIdentityLut = 0xAAAAAAAAAAAAAAAAull;

} // namespace

ConfigImage generate_bitstream(const FabricArch &arch, const Design &design) {
    validate_design(design, arch);
    ConfigImage img;
    img.arch = arch;
    const int w = arch.channel_width;

    for (const PackedBlock &blk : design.packed.blocks) {
        const Placement::Entry *site = design.placement.find(blk.name);
        int row = site->y, col = site->x;

        uint64_t table;
        std::vector<std::string> logical;
        if (blk.lut) {
            const Lut *lut = design.netlist.find_lut(*blk.lut);
            table = lut->table;
            logical = lut->inputs;
        } else {
            table = kIdentityLut;
            logical = {design.netlist.find_latch(*blk.latch)->data};
        }
        std::vector<int> phys(logical.size());
        for (size_t i = 0; i < logical.size(); i++) {
            phys[i] = blk.pin_of(logical[i]);
            if (phys[i] < 0)
                throw Error("net '" + logical[i] + "' is not bound to a pin of block '" +
                            blk.name + "'");
        }
        uint64_t rotated = rotate_lut(table, phys);
        for (int e = 0; e < kLutEntries; e++)
            if (rotated >> e & 1)
                img.set(clb_lut_bit_addr(row, col, e), true);

        if (blk.latch) {
            const Latch *latch = design.netlist.find_latch(*blk.latch);
            if (latch->init != 0)
                throw Error("latch '" + latch->output +
                            "' wants initial value 1; the fabric's registers reset to 0");
            img.set(clb_sync_addr(row, col), true);
        }
        for (int p : phys)
            img.set(clb_mask_addr(row, col, p), true);
    }

    // Conflicts cannot survive route validation, but hand-built forests go
    // through the same gate, so keep the check hot.
    std::map<ConfigAddress, std::string> claimed;
    auto claim = [&](ConfigAddress a, const std::string &net, const char *what) {
        auto [it, fresh] = claimed.emplace(a, net);
        if (!fresh && it->second != net)
            throw Error(std::string("driver conflict: nets '") + it->second + "' and '" + net +
                        "' both enable the " + what + " at " + a.str());
        img.set(a, true);
    };

    for (const NetRoute &net : design.routes.nets) {
        for (size_t i = 1; i < net.nodes.size(); i++) {
            const RouteNode &from = net.nodes[net.parent[i]];
            const RouteNode &to = net.nodes[i];

            if (from.kind == RouteNodeKind::Opin && to.is_chan()) {
                if (is_clb_site(from.y, from.x))
                    // the CB co-located with the segment owns the drive slot
                    claim(cb_drive_addr(to.y, to.x, to.track, w), net.name, "drive");
                else
                    claim(io_couple_addr(from.y, from.x, to.track), net.name, "pad coupling");
                continue;
            }
            if (from.is_chan() && to.is_chan()) {
                auto hop = chan_hop(from, to);
                std::optional<std::pair<SbGroup, int>> sw;
                if (hop)
                    sw = sb_find_switch(arch.topology, hop->from_side, from.track, hop->to_side,
                                        to.track, w);
                if (!sw)
                    throw Error("unroutable reference: net '" + net.name + "' needs a switch " +
                                from.str() + " <-> " + to.str() + " that " +
                                to_string(arch.topology) + " does not provide");
                img.set(sb_enable_addr(hop->row, hop->col, sw->first, sw->second, w), true);
                continue;
            }
            if (to.kind == RouteNodeKind::Ipin) {
                if (is_clb_site(to.y, to.x)) {
                    if (from.kind == RouteNodeKind::Chanx)
                        img.set(cb_tap_addr(to.y - 1, to.x, to.pin, from.track, w), true);
                    else
                        img.set(cb_tap_addr(to.y, to.x - 1, to.pin - 3, from.track, w), true);
                } else {
                    img.set(io_dir_addr(to.y, to.x), true);
                    claim(io_couple_addr(to.y, to.x, from.track), net.name, "pad coupling");
                }
            }
        }
    }
    return img;
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

std::vector<uint8_t> serialize(const ConfigImage &image) {
    std::vector<uint8_t> out;
    out.reserve(kBitstreamFileBytes);
    out.insert(out.end(), {'F', 'P', 'G', 'A'});
    out.push_back(kBitstreamVersion);
    out.push_back(kGridRows);
    out.push_back(kGridCols);
    out.push_back(kWordsPerBlock);
    out.push_back((uint8_t)image.arch.channel_width);
    out.push_back((uint8_t)image.arch.topology);
    out.insert(out.end(), image.bytes.begin(), image.bytes.end());
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, out.data(), (uInt)out.size());
    for (int i = 0; i < 4; i++)
        out.push_back((uint8_t)(crc >> (8 * i)));
    return out;
}

ConfigImage deserialize(const std::vector<uint8_t> &data) {
    if (data.size() < kBitstreamHeaderBytes)
        throw Error("bitstream header truncated (" + std::to_string(data.size()) + " bytes)");
    if (data[0] != 'F' || data[1] != 'P' || data[2] != 'G' || data[3] != 'A')
        throw Error("bad magic: not a bitstream file");
    if (data[4] != kBitstreamVersion)
        throw Error("unsupported bitstream version " + std::to_string(data[4]));
    if (data[5] != kGridRows || data[6] != kGridCols || data[7] != kWordsPerBlock)
        throw Error("bitstream describes a different fabric (" + std::to_string(data[5]) + "x" +
                    std::to_string(data[6]) + ", " + std::to_string(data[7]) + " words)");
    if (data[9] > 2)
        throw Error("unknown topology code " + std::to_string(data[9]));
    if ((int)data.size() != kBitstreamFileBytes)
        throw Error("payload length mismatch: file is " + std::to_string(data.size()) +
                    " bytes, expected " + std::to_string(kBitstreamFileBytes));

    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, data.data(), (uInt)(kBitstreamHeaderBytes + kPayloadBytes));
    uint32_t stored = 0;
    for (int i = 0; i < 4; i++)
        stored |= (uint32_t)data[kBitstreamHeaderBytes + kPayloadBytes + i] << (8 * i);
    if ((uint32_t)crc != stored)
        throw Error("checksum mismatch");

    ConfigImage img;
    img.arch = FabricArch(data[8], (SbTopology)data[9]);
    std::copy_n(data.begin() + kBitstreamHeaderBytes, kPayloadBytes, img.bytes.begin());
    return img;
}

// ---------------------------------------------------------------------------
// Decode
// ---------------------------------------------------------------------------

DecodedConfig decode(const ConfigImage &image) {
    DecodedConfig dec;
    dec.arch = image.arch;
    MemoryMap map = enumerate_config_bits(image.arch);
    for (const ResourceBit &rb : map.assigned)
        if (image.get(rb.addr))
            dec.enabled.push_back(rb.name);
    for (const ConfigAddress &a : map.spare)
        if (image.get(a))
            dec.spare_warnings.push_back(a);

    // Single-driver scan: each (segment, track) may have at most one enabled
    // drive source — a CB drive slot or a coupled input-direction pad.
    std::map<std::tuple<int, int, int>, std::vector<std::string>> drivers;
    int w = image.arch.channel_width;
    for (int row = 0; row < kGridRows; row++)
        for (int col = 0; col < kGridCols; col++) {
            BlockKind k = block_kind_at(row, col);
            if (k == BlockKind::HConnBlock || k == BlockKind::VConnBlock) {
                if (!cb_served_clb(row, col))
                    continue;
                std::string rc = "[" + std::to_string(row) + "][" + std::to_string(col) + "]";
                for (int t = 0; t < w; t++)
                    if (image.get(cb_drive_addr(row, col, t, w)))
                        drivers[{row, col, t}].push_back("cb" + rc + ".drive");
            } else if (k == BlockKind::IoBlock) {
                if (image.get(io_dir_addr(row, col)))
                    continue; // output pad: couplings read the segment
                std::string rc = "[" + std::to_string(row) + "][" + std::to_string(col) + "]";
                for (int t = 0; t < w; t++)
                    if (image.get(io_couple_addr(row, col, t)))
                        drivers[{row, col, t}].push_back("io" + rc);
            }
        }
    for (const auto &[seg, who] : drivers)
        if (who.size() > 1) {
            auto [row, col, t] = seg;
            std::string msg = std::string(is_chanx_site(row, col) ? "chanx" : "chany") + "(" +
                              std::to_string(row) + "," + std::to_string(col) + ") track " +
                              std::to_string(t) + " driven by";
            for (const std::string &d : who)
                msg += " " + d;
            dec.driver_conflicts.push_back(msg);
        }
    return dec;
}

std::string decode_text(const ConfigImage &image) {
    DecodedConfig dec = decode(image);
    const FabricArch &arch = image.arch;
    int w = arch.channel_width;
    std::ostringstream ss;

    for (int row = 0; row < kGridRows; row++) {
        for (int col = 0; col < kGridCols; col++) {
            bool any = false;
            for (int word = 0; word < kWordsPerBlock && !any; word++)
                any = image.word(row, col, word) != 0;
            if (!any)
                continue;
            std::string rc = "[" + std::to_string(row) + "][" + std::to_string(col) + "]";
            switch (block_kind_at(row, col)) {
            case BlockKind::Clb: {
                uint64_t table = 0;
                for (int word = 0; word < 8; word++)
                    table |= (uint64_t)image.word(row, col, word) << (8 * word);
                ss << "clb" << rc << ": lut=0x" << std::hex << std::setw(16)
                   << std::setfill('0') << table << std::dec << std::setfill(' ') << " pins=";
                bool first = true;
                for (int p = 0; p < kClbInputPins; p++)
                    if (image.get(clb_mask_addr(row, col, p))) {
                        ss << (first ? "" : ",") << p;
                        first = false;
                    }
                if (first)
                    ss << "-";
                ss << " sync=" << (image.get(clb_sync_addr(row, col)) ? 1 : 0) << "\n";
                break;
            }
            case BlockKind::SwitchBlock: {
                static const char *gname[] = {"we", "ns", "wn", "ne", "es", "sw"};
                ss << "sb" << rc << ":";
                for (int g = 0; g < kSbGroupCount; g++)
                    for (int t = 0; t < w; t++)
                        if (image.get(sb_enable_addr(row, col, (SbGroup)g, t, w)))
                            ss << " " << gname[g] << "[" << t << "]";
                ss << "\n";
                break;
            }
            case BlockKind::HConnBlock:
            case BlockKind::VConnBlock: {
                ss << "cb" << rc << ":";
                for (const CbEnable &e : cb_connections(arch, row, col))
                    if (image.get(e.addr)) {
                        if (e.clb_pin < 0)
                            ss << " drive[" << e.track << "]";
                        else
                            ss << " tap[" << e.clb_pin << "][" << e.track << "]";
                    }
                ss << "\n";
                break;
            }
            case BlockKind::IoBlock: {
                ss << "io" << rc << ": dir="
                   << (image.get(io_dir_addr(row, col)) ? "out" : "in");
                for (int t = 0; t < w; t++)
                    if (image.get(io_couple_addr(row, col, t)))
                        ss << " couple[" << t << "]";
                ss << "\n";
                break;
            }
            case BlockKind::Unused:
                // nonzero words here surface below as spare warnings
                break;
            }
        }
    }
    for (const ConfigAddress &a : dec.spare_warnings)
        ss << "warning: spare bit set at " << a.str() << "\n";
    for (const std::string &c : dec.driver_conflicts)
        ss << "conflict: " << c << "\n";

    std::string out = ss.str();
    if (out.empty())
        return "no resources configured\n";
    return out;
}

} // namespace minifab
