#include "minifab/bus.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace minifab {

uint8_t DeviceState::observed(int row, int col, int word) const {
    ConfigAddress base{(uint8_t)row, (uint8_t)col, (uint8_t)word, 0};
    uint8_t v = sram[base.byte_index()];
    // the common case has no faults in this byte; scan the map range once
    auto it = faults.lower_bound(base);
    for (; it != faults.end() && it->first.byte_index() == base.byte_index(); ++it) {
        uint8_t m = 1 << it->first.bit;
        v = it->second ? v | m : v & ~m;
    }
    return v;
}

uint8_t apply(DeviceState &dev, const BusTransaction &txn) {
    if (txn.row >= kGridRows || txn.col >= kGridCols || txn.word >= kWordsPerBlock)
        throw Error("bus address out of range: (" + std::to_string(txn.row) + "," +
                    std::to_string(txn.col) + "," + std::to_string(txn.word) + ")");
    if (txn.op == BusOp::Write) {
        ConfigAddress base{txn.row, txn.col, txn.word, 0};
        dev.sram[base.byte_index()] = txn.data;
        return 0;
    }
    return dev.observed(txn.row, txn.col, txn.word);
}

std::vector<BusTransaction> image_to_transactions(const ConfigImage &image) {
    std::vector<BusTransaction> txns;
    txns.reserve(kPayloadBytes);
    for (int row = 0; row < kGridRows; row++)
        for (int col = 0; col < kGridCols; col++)
            for (int word = 0; word < kWordsPerBlock; word++)
                txns.push_back(BusTransaction{BusOp::Write, (uint8_t)row, (uint8_t)col,
                                              (uint8_t)word, image.word(row, col, word)});
    return txns;
}

void load_image(DeviceState &dev, const ConfigImage &image) {
    for (const BusTransaction &txn : image_to_transactions(image))
        apply(dev, txn);
}

std::vector<Mismatch> readback_verify(DeviceState &dev, const ConfigImage &image) {
    std::vector<Mismatch> report;
    for (int row = 0; row < kGridRows; row++)
        for (int col = 0; col < kGridCols; col++)
            for (int word = 0; word < kWordsPerBlock; word++) {
                uint8_t got =
                    apply(dev, BusTransaction{BusOp::Read, (uint8_t)row, (uint8_t)col,
                                              (uint8_t)word, 0});
                uint8_t want = image.word(row, col, word);
                if (got == want)
                    continue;
                for (int bit = 0; bit < kBitsPerWord; bit++)
                    if (((got ^ want) >> bit) & 1)
                        report.push_back(Mismatch{ConfigAddress{(uint8_t)row, (uint8_t)col,
                                                                (uint8_t)word, (uint8_t)bit},
                                                  (bool)(want >> bit & 1),
                                                  (bool)(got >> bit & 1)});
            }
    return report;
}

std::string mismatch_csv(const std::vector<Mismatch> &report) {
    std::ostringstream ss;
    ss << "row,col,word,bit,expected,observed\n";
    for (const Mismatch &m : report)
        ss << (int)m.addr.row << "," << (int)m.addr.col << "," << (int)m.addr.word << ","
           << (int)m.addr.bit << "," << (int)m.expected << "," << (int)m.observed << "\n";
    return ss.str();
}

// ---------------------------------------------------------------------------
// Trace and fault files
// ---------------------------------------------------------------------------

namespace {

int parse_field(const std::string &tok, int limit, const char *what, int lineno) {
    int v;
    try {
        v = std::stoi(tok);
    } catch (const std::exception &) {
        throw ParseError(std::string("bad ") + what + " '" + tok + "'", lineno);
    }
    if (v < 0 || v >= limit)
        throw ParseError(std::string(what) + " " + tok + " out of range", lineno);
    return v;
}

} // namespace

std::vector<BusTransaction> parse_trace(const std::string &text) {
    std::vector<BusTransaction> txns;
    int lineno = 0;
    for (const std::string &raw : split_on(text, '\n')) {
        lineno++;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> tok = split_ws(line);
        BusTransaction txn;
        if (tok[0] == "W" && tok.size() == 5) {
            txn.op = BusOp::Write;
            if (tok[4].size() < 3 || tok[4][0] != '0' || (tok[4][1] != 'x' && tok[4][1] != 'X'))
                throw ParseError("write data must be 0xHH", lineno);
            unsigned long v;
            try {
                v = std::stoul(tok[4].substr(2), nullptr, 16);
            } catch (const std::exception &) {
                throw ParseError("bad write data '" + tok[4] + "'", lineno);
            }
            if (v > 0xFF)
                throw ParseError("write data exceeds a byte", lineno);
            txn.data = (uint8_t)v;
        } else if (tok[0] == "R" && tok.size() == 4) {
            txn.op = BusOp::Read;
        } else {
            throw ParseError("expected 'W <row> <col> <word> 0xHH' or 'R <row> <col> <word>'",
                             lineno);
        }
        txn.row = (uint8_t)parse_field(tok[1], kGridRows, "row", lineno);
        txn.col = (uint8_t)parse_field(tok[2], kGridCols, "col", lineno);
        txn.word = (uint8_t)parse_field(tok[3], kWordsPerBlock, "word", lineno);
        txns.push_back(txn);
    }
    return txns;
}

std::string print_trace(const std::vector<BusTransaction> &txns) {
    std::ostringstream ss;
    char buf[8];
    for (const BusTransaction &t : txns) {
        if (t.op == BusOp::Write) {
            std::snprintf(buf, sizeof buf, "0x%02X", t.data);
            ss << "W " << (int)t.row << " " << (int)t.col << " " << (int)t.word << " " << buf
               << "\n";
        } else {
            ss << "R " << (int)t.row << " " << (int)t.col << " " << (int)t.word << "\n";
        }
    }
    return ss.str();
}

std::vector<StuckBit> parse_faults(const std::string &text) {
    std::vector<StuckBit> out;
    int lineno = 0;
    for (const std::string &raw : split_on(text, '\n')) {
        lineno++;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> tok = split_ws(line);
        if (tok.size() != 6 || tok[0] != "stuck")
            throw ParseError("expected 'stuck <row> <col> <word> <bit> <0|1>'", lineno);
        StuckBit sb;
        sb.addr.row = (uint8_t)parse_field(tok[1], kGridRows, "row", lineno);
        sb.addr.col = (uint8_t)parse_field(tok[2], kGridCols, "col", lineno);
        sb.addr.word = (uint8_t)parse_field(tok[3], kWordsPerBlock, "word", lineno);
        sb.addr.bit = (uint8_t)parse_field(tok[4], kBitsPerWord, "bit", lineno);
        if (tok[5] != "0" && tok[5] != "1")
            throw ParseError("stuck value must be 0 or 1", lineno);
        sb.value = tok[5] == "1";
        out.push_back(sb);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fault sweep
// ---------------------------------------------------------------------------

namespace {

// One trial; returns an empty string when readback behaved exactly right.
std::string sweep_trial(const ConfigImage &image, ConfigAddress addr, bool stuck) {
    DeviceState dev;
    dev.inject(addr, stuck);
    // equivalent to load_image: writes store raw bytes, faults shadow reads
    dev.sram = image.bytes;
    std::vector<Mismatch> report = readback_verify(dev, image);
    bool expect_hit = image.get(addr) != stuck;
    if (!expect_hit) {
        if (report.empty())
            return {};
        return "stuck-at-" + std::to_string(stuck) + " at " + addr.str() + ": " +
               std::to_string(report.size()) + " false positive(s)";
    }
    if (report.size() == 1 && report[0].addr == addr && report[0].observed == stuck &&
        report[0].expected == !stuck)
        return {};
    return "stuck-at-" + std::to_string(stuck) + " at " + addr.str() + ": expected exactly one " +
           "mismatch at that address, got " + std::to_string(report.size());
}

FaultSweepResult collect(const std::vector<std::string> &per_trial, const ConfigImage &image) {
    FaultSweepResult res;
    res.trials = (long)per_trial.size();
    for (int idx = 0; idx < (int)per_trial.size(); idx++) {
        ConfigAddress addr = ConfigAddress::from_bit_index(idx / 2);
        bool stuck = idx % 2;
        bool detectable = image.get(addr) != stuck;
        if (detectable)
            res.detectable++;
        if (detectable && per_trial[idx].empty())
            res.detected++;
        if (!per_trial[idx].empty())
            res.failures.push_back(per_trial[idx]);
    }
    return res;
}

} // namespace

FaultSweepResult fault_sweep(const ConfigImage &image) {
    std::vector<std::string> per_trial(2 * kCapacityBits);
    for (int idx = 0; idx < 2 * kCapacityBits; idx++)
        per_trial[idx] = sweep_trial(image, ConfigAddress::from_bit_index(idx / 2), idx % 2);
    return collect(per_trial, image);
}

FaultSweepResult fault_sweep_parallel(const ConfigImage &image) {
    std::vector<std::string> per_trial(2 * kCapacityBits);
#pragma omp parallel for schedule(static)
    for (int idx = 0; idx < 2 * kCapacityBits; idx++)
        per_trial[idx] = sweep_trial(image, ConfigAddress::from_bit_index(idx / 2), idx % 2);
    return collect(per_trial, image);
}

} // namespace minifab
