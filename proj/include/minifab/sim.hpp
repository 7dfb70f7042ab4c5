// sim.hpp - functional model of the configured fabric + reference oracle
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minifab/bitstream.hpp"
#include "minifab/design.hpp"

namespace minifab {

// External drive level on an input pad. Z releases the pad so the coupled
// track net falls back to its half-latched value.
enum class PadLevel : int8_t { Zero = 0, One = 1, Z = 2 };

// Immutable connectivity/logic extracted from a ConfigImage. Transmission
// gates (SB switches, pad couplings) merge track segments into nets via
// union-find; CB taps/drives are directed edges into/out of CLBs.
struct ConfiguredFabric {
    FabricArch arch;

    struct SegRef {
        int row = 0, col = 0, track = -1; // track -1 = pad node
    };
    std::vector<SegRef> nodes;
    std::array<int, kGpioCount> pad_node{}; // io_sites() order
    std::vector<int> net_of;                // node id -> dense net id
    int net_count = 0;

    struct Driver {
        bool is_pad = false;
        int index = -1; // CLB index or pad slot

        bool operator==(const Driver &) const = default;
    };
    std::vector<std::optional<Driver>> net_driver; // per net; contention rejected earlier

    struct Clb {
        int row = 0, col = 0;
        uint64_t table = 0;
        uint8_t mask = 0; // bit p = pin p active
        bool sync = false;
        std::array<int, kClbInputPins> pin_net{-1, -1, -1, -1, -1, -1};
    };
    std::vector<Clb> clbs;        // all 64, row-major
    std::vector<int> async_order; // topological order of async CLB indices

    struct Pad {
        int row = 0, col = 0;
        bool dir_out = false;
        bool coupled = false;
        int net = -1;
    };
    std::array<Pad, kGpioCount> pads{};
    std::vector<int> input_slots;  // coupled input pads, io_sites() order
    std::vector<int> output_slots; // output-direction pads, io_sites() order

    int clb_index(int row, int col) const;
    std::string node_name(int node) const;
};

// Builds the graph and statically rejects contention (>=2 drivers on one
// merged net), double-tapped input pins, and combinational cycles.
ConfiguredFabric configure(const ConfigImage &image);

// Per-run mutable state. Fresh state = the hardware reset convention:
// DFFs 0, every half-latch 0, cycle 0.
struct FabricState {
    std::vector<uint8_t> half_latch; // per net, last driven value
    std::array<uint8_t, kClbCount> dff{};
    long cycle = 0;
};

FabricState initial_state(const ConfiguredFabric &fabric);

// One clock cycle: zero-delay settle in topological order (masked pins read
// 0), sample output pads, then a single global rising edge. `inputs` has one
// level per configured input pad, in fabric.input_slots order.
std::vector<bool> step(const ConfiguredFabric &fabric, FabricState &state,
                       const std::vector<PadLevel> &inputs);

// ---------------------------------------------------------------------------
// Reference netlist oracle (independent of the fabric model)
// ---------------------------------------------------------------------------

class NetlistSimulator {
  public:
    explicit NetlistSimulator(const LogicNetlist &nl); // throws on comb. cycle

    void reset();
    // inputs in .inputs order; returns outputs in .outputs order, sampled
    // before the clock edge — the same protocol as step().
    std::vector<bool> step(const std::vector<bool> &inputs);

  private:
    const LogicNetlist &nl_;
    std::vector<int> lut_order_;       // topological
    std::vector<uint8_t> lut_value_;   // per LUT
    std::vector<uint8_t> latch_state_; // per latch
    bool value_of(const std::string &net, const std::vector<bool> &inputs) const;
};

// ---------------------------------------------------------------------------
// Test vectors
// ---------------------------------------------------------------------------

// `<input bits> [-> <expected output bits>]`, one line per cycle; inputs in
// .inputs order, outputs in .outputs order. Pure-output designs write
// `-> <bits>`.
struct VectorLine {
    std::vector<bool> inputs;
    std::optional<std::vector<bool>> expected;
};
std::vector<VectorLine> parse_vectors(const std::string &text);
std::string print_vectors(const std::vector<VectorLine> &lines);

// Minimal VCD rendering of per-cycle waveforms.
struct Wave {
    std::string name;
    std::vector<bool> values;
};
std::string vcd_text(const std::vector<Wave> &waves);

// ---------------------------------------------------------------------------
// Equivalence
// ---------------------------------------------------------------------------

// Which pad slot (io_sites order) carries each netlist port.
struct PadMap {
    std::map<std::string, int> inputs;
    std::map<std::string, int> outputs;
};
PadMap pad_map_from_design(const Design &d);

struct EquivalenceOptions {
    enum class Strategy { Auto, Exhaustive, Random };
    Strategy strategy = Strategy::Auto;
    int exhaustive_limit = 12; // max primary inputs for Auto-exhaustive
    int runs = 16;             // random mode: independent resets
    int cycles = 64;           // cycles per run / per exhaustive vector
    uint64_t seed = 0;
};

struct EquivalenceVerdict {
    bool equivalent = true;
    long vectors = 0;   // distinct input vectors applied
    std::string reason; // first divergence, with a replayable witness
};

// Dual simulation against the oracle plus a structural audit of every CLB:
// a masked pin must be a provable don't-care of its truth table, so any
// single-bit corruption of a LUT with spare pins is caught even when the
// flipped entry is behaviorally unreachable.
EquivalenceVerdict equivalence_check(const LogicNetlist &nl, const ConfigImage &image,
                                     const PadMap &map, const EquivalenceOptions &opt);

// Flip every LUT bit of every CLB (64 x 64) one at a time; each flip must
// make equivalence_check report a divergence.
struct MutationSweepResult {
    int flips = 0;
    int detected = 0;
    std::vector<std::string> missed; // deterministic order

    bool operator==(const MutationSweepResult &) const = default;
};

MutationSweepResult lut_mutation_sweep(const LogicNetlist &nl, const ConfigImage &image,
                                       const PadMap &map, const EquivalenceOptions &opt);
MutationSweepResult lut_mutation_sweep_parallel(const LogicNetlist &nl, const ConfigImage &image,
                                                const PadMap &map,
                                                const EquivalenceOptions &opt); // OpenMP twin

} // namespace minifab
