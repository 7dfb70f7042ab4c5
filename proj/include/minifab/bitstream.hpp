// bitstream.hpp - configuration image: generation, file format, decode
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "minifab/design.hpp"

namespace minifab {

constexpr uint8_t kBitstreamVersion = 0x01;
constexpr int kBitstreamHeaderBytes = 10; // "FPGA" ver rows cols wpb W topo
constexpr int kBitstreamFileBytes = kBitstreamHeaderBytes + kPayloadBytes + 4;

struct ConfigImage {
    FabricArch arch;
    std::array<uint8_t, kPayloadBytes> bytes{};

    bool get(ConfigAddress a) const { return bytes[a.byte_index()] >> a.bit & 1; }
    void set(ConfigAddress a, bool v) {
        uint8_t &b = bytes[a.byte_index()];
        b = v ? b | (1 << a.bit) : b & ~(1 << a.bit);
    }
    uint8_t word(int row, int col, int w) const {
        return bytes[ConfigAddress{(uint8_t)row, (uint8_t)col, (uint8_t)w, 0}.byte_index()];
    }
    void set_word(int row, int col, int w, uint8_t v) {
        bytes[ConfigAddress{(uint8_t)row, (uint8_t)col, (uint8_t)w, 0}.byte_index()] = v;
    }

    bool operator==(const ConfigImage &) const = default;
};

// Remap a truth table from logical input order onto bound physical pins.
// phys_pin[i] is the CLB pin carrying logical input i; entries that differ
// only in unmapped pins replicate the cofactor at 0, so masked inputs are
// provably don't-care. Throws on a non-injective map.
uint64_t rotate_lut(uint64_t table, const std::vector<int> &phys_pin);

// Compose-friendly form over all six pins (perm[i] = physical pin of pin i).
uint64_t rotate_lut(uint64_t table, const std::array<int, 6> &perm);

ConfigImage generate_bitstream(const FabricArch &arch, const Design &design);

std::vector<uint8_t> serialize(const ConfigImage &image);
ConfigImage deserialize(const std::vector<uint8_t> &data);

// Every enabled resource by its memory-map name, sorted by address; set bits
// at spare addresses come back as warnings, never silently dropped. Track
// segments with more than one enabled drive source are flagged too.
struct DecodedConfig {
    FabricArch arch;
    std::vector<std::string> enabled;
    std::vector<ConfigAddress> spare_warnings;
    std::vector<std::string> driver_conflicts;
};

DecodedConfig decode(const ConfigImage &image);

// Deterministic per-block rendering for audits and golden files.
std::string decode_text(const ConfigImage &image);

} // namespace minifab
