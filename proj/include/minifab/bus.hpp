// bus.hpp - transaction-level model of the parallel configuration bus
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "minifab/bitstream.hpp"

namespace minifab {

enum class BusOp : uint8_t { Write, Read };

// One DRAM-like strobe: row/col select a block, word selects its local byte.
struct BusTransaction {
    BusOp op = BusOp::Write;
    uint8_t row = 0;
    uint8_t col = 0;
    uint8_t word = 0;
    uint8_t data = 0; // Write only

    bool operator==(const BusTransaction &) const = default;
};

// Device-side SRAM array plus injected stuck-at faults. Faults shadow the
// raw cells: a stuck bit reads its stuck value no matter what was written.
struct DeviceState {
    std::array<uint8_t, kPayloadBytes> sram{};
    std::map<ConfigAddress, bool> faults;

    void inject(ConfigAddress addr, bool stuck_value) { faults[addr] = stuck_value; }
    void clear_faults() { faults.clear(); }

    // Byte as readback sees it, fault overrides applied.
    uint8_t observed(int row, int col, int word) const;
};

// Write stores the byte (stuck bits win on read); Read returns the observed
// byte. Out-of-range addresses are rejected with the device untouched.
uint8_t apply(DeviceState &dev, const BusTransaction &txn);

// 3,249 writes in row-major (row, col, word) order.
std::vector<BusTransaction> image_to_transactions(const ConfigImage &image);

void load_image(DeviceState &dev, const ConfigImage &image);

struct Mismatch {
    ConfigAddress addr;
    bool expected = false;
    bool observed = false;

    auto operator<=>(const Mismatch &) const = default;
};

// Read back every word and report each bit that disagrees with the image.
std::vector<Mismatch> readback_verify(DeviceState &dev, const ConfigImage &image);

// CSV: header row,col,word,bit,expected,observed
std::string mismatch_csv(const std::vector<Mismatch> &report);

// Trace files: `W <row> <col> <word> 0xHH` / `R <row> <col> <word>`.
std::vector<BusTransaction> parse_trace(const std::string &text);
std::string print_trace(const std::vector<BusTransaction> &txns);

// Fault spec files: `stuck <row> <col> <word> <bit> <0|1>` per line.
struct StuckBit {
    ConfigAddress addr;
    bool value = false;
};
std::vector<StuckBit> parse_faults(const std::string &text);

// Single stuck-at fault sweep: every bit address, both polarities, one fault
// per trial. A trial passes when readback flags exactly the injected fault
// if it disagrees with the image and stays silent otherwise.
struct FaultSweepResult {
    long trials = 0;
    long detectable = 0; // stuck value differs from the image bit
    long detected = 0;
    std::vector<std::string> failures; // mis-reported trials, deterministic order

    bool clean() const { return failures.empty() && detected == detectable; }
    bool operator==(const FaultSweepResult &) const = default;
};

FaultSweepResult fault_sweep(const ConfigImage &image);          // serial reference
FaultSweepResult fault_sweep_parallel(const ConfigImage &image); // OpenMP twin

} // namespace minifab
