#include "minifab/sim.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace minifab {

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) {
        for (int i = 0; i < n; i++)
            p[i] = i;
    }
    int find(int a) {
        while (p[a] != a)
            a = p[a] = p[p[a]];
        return a;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

std::pair<int, int> sb_side_seg(int row, int col, Side s) {
    switch (s) {
    case Side::North:
        return {row - 1, col};
    case Side::South:
        return {row + 1, col};
    case Side::West:
        return {row, col - 1};
    case Side::East:
        return {row, col + 1};
    }
    return {row, col};
}

std::string site_str(int row, int col) {
    return "(" + std::to_string(row) + "," + std::to_string(col) + ")";
}

} // namespace

int ConfiguredFabric::clb_index(int row, int col) const {
    if (!is_clb_site(row, col))
        return -1;
    return (row / 2 - 1) * 8 + (col / 2 - 1);
}

std::string ConfiguredFabric::node_name(int node) const {
    const SegRef &s = nodes[node];
    if (s.track < 0)
        return "pad" + site_str(s.row, s.col);
    const char *kind = is_chanx_site(s.row, s.col) ? "chanx" : "chany";
    return kind + site_str(s.row, s.col) + " track " + std::to_string(s.track);
}

ConfiguredFabric configure(const ConfigImage &image) {
    ConfiguredFabric f;
    f.arch = image.arch;
    const int w = f.arch.channel_width;

    std::map<std::pair<int, int>, int> seg_base;
    for (int row = 0; row < kGridRows; row++)
        for (int col = 0; col < kGridCols; col++)
            if (is_chanx_site(row, col) || is_chany_site(row, col)) {
                seg_base[{row, col}] = (int)f.nodes.size();
                for (int t = 0; t < w; t++)
                    f.nodes.push_back({row, col, t});
            }
    const auto &sites = io_sites();
    for (int s = 0; s < kGpioCount; s++) {
        f.pad_node[s] = (int)f.nodes.size();
        f.nodes.push_back({sites[s].first, sites[s].second, -1});
    }
    auto seg_node = [&](int row, int col, int t) { return seg_base.at({row, col}) + t; };

    // Transmission-gate merges: SB switches and pad couplings.
    Dsu dsu((int)f.nodes.size());
    for (int row = 1; row < kGridRows; row += 2)
        for (int col = 1; col < kGridCols; col += 2)
            for (int g = 0; g < kSbGroupCount; g++)
                for (int t = 0; t < w; t++) {
                    if (!image.get(sb_enable_addr(row, col, (SbGroup)g, t, w)))
                        continue;
                    SwitchPoint sp = sb_switch_point(f.arch.topology, (SbGroup)g, t, w);
                    auto [ar, ac] = sb_side_seg(row, col, sp.side_a);
                    auto [br, bc] = sb_side_seg(row, col, sp.side_b);
                    dsu.unite(seg_node(ar, ac, sp.track_a), seg_node(br, bc, sp.track_b));
                }
    for (int s = 0; s < kGpioCount; s++) {
        auto [row, col] = sites[s];
        for (int t = 0; t < w; t++)
            if (image.get(io_couple_addr(row, col, t)))
                dsu.unite(f.pad_node[s], seg_node(row, col, t));
    }

    f.net_of.assign(f.nodes.size(), -1);
    std::map<int, int> root_net;
    for (int n = 0; n < (int)f.nodes.size(); n++) {
        auto [it, fresh] = root_net.emplace(dsu.find(n), f.net_count);
        if (fresh)
            f.net_count++;
        f.net_of[n] = it->second;
    }
    f.net_driver.assign(f.net_count, std::nullopt);

    f.clbs.resize(kClbCount);
    for (int row = 2; row <= 16; row += 2)
        for (int col = 2; col <= 16; col += 2) {
            ConfiguredFabric::Clb &c = f.clbs[f.clb_index(row, col)];
            c.row = row;
            c.col = col;
            for (int word = 0; word < 8; word++)
                c.table |= (uint64_t)image.word(row, col, word) << (8 * word);
            uint8_t mode = image.word(row, col, 8);
            c.sync = mode & 1;
            c.mask = (mode >> 1) & 0x3F;
        }

    auto driver_name = [&](const ConfiguredFabric::Driver &d) {
        if (d.is_pad)
            return "pad" + site_str(f.pads[d.index].row, f.pads[d.index].col);
        return "clb" + site_str(f.clbs[d.index].row, f.clbs[d.index].col);
    };
    auto attach_driver = [&](int net, ConfiguredFabric::Driver d, int rep_node) {
        auto &slot = f.net_driver[net];
        if (!slot) {
            slot = d;
            return;
        }
        if (*slot == d)
            return;
        throw Error("contention: " + driver_name(*slot) + " and " + driver_name(d) +
                    " both drive the net of " + f.node_name(rep_node));
    };

    for (int row = 0; row < kGridRows; row++)
        for (int col = 0; col < kGridCols; col++) {
            BlockKind k = block_kind_at(row, col);
            if (k != BlockKind::HConnBlock && k != BlockKind::VConnBlock)
                continue;
            auto svc = cb_served_clb(row, col);
            if (!svc)
                continue;
            int clb = f.clb_index(svc->clb_row, svc->clb_col);
            for (int s = 0; s < 3; s++)
                for (int t = 0; t < w; t++) {
                    if (!image.get(cb_tap_addr(row, col, s, t, w)))
                        continue;
                    int pin = svc->pin_base + s;
                    if (f.clbs[clb].pin_net[pin] != -1)
                        throw Error("input pin tapped twice: clb" +
                                    site_str(svc->clb_row, svc->clb_col) + " pin " +
                                    std::to_string(pin));
                    f.clbs[clb].pin_net[pin] = f.net_of[seg_node(row, col, t)];
                }
            for (int t = 0; t < w; t++)
                if (image.get(cb_drive_addr(row, col, t, w))) {
                    int node = seg_node(row, col, t);
                    attach_driver(f.net_of[node], {false, clb}, node);
                }
        }

    for (int s = 0; s < kGpioCount; s++) {
        auto [row, col] = sites[s];
        ConfiguredFabric::Pad &p = f.pads[s];
        p.row = row;
        p.col = col;
        p.dir_out = image.get(io_dir_addr(row, col));
        for (int t = 0; t < w && !p.coupled; t++)
            p.coupled = image.get(io_couple_addr(row, col, t));
        p.net = f.net_of[f.pad_node[s]];
        if (!p.dir_out && p.coupled)
            attach_driver(p.net, {true, s}, f.pad_node[s]);
        if (p.dir_out)
            f.output_slots.push_back(s);
        else if (p.coupled)
            f.input_slots.push_back(s);
    }

    // Combinational order over async CLBs; a cycle with no register in it is
    // a configuration error, not an oscillator.
    std::vector<std::vector<int>> succ(kClbCount);
    std::vector<int> indeg(kClbCount, 0);
    int async_total = 0;
    for (int b = 0; b < kClbCount; b++) {
        const auto &clb = f.clbs[b];
        if (clb.sync)
            continue;
        async_total++;
        for (int p = 0; p < kClbInputPins; p++) {
            if (!((clb.mask >> p) & 1) || clb.pin_net[p] < 0)
                continue;
            const auto &drv = f.net_driver[clb.pin_net[p]];
            if (!drv || drv->is_pad || f.clbs[drv->index].sync)
                continue;
            succ[drv->index].push_back(b);
            indeg[b]++;
        }
    }
    std::queue<int> q;
    for (int b = 0; b < kClbCount; b++)
        if (!f.clbs[b].sync && indeg[b] == 0)
            q.push(b);
    while (!q.empty()) {
        int b = q.front();
        q.pop();
        f.async_order.push_back(b);
        for (int nxt : succ[b])
            if (--indeg[nxt] == 0)
                q.push(nxt);
    }
    if ((int)f.async_order.size() != async_total) {
        std::string members;
        for (int b = 0; b < kClbCount; b++)
            if (!f.clbs[b].sync && indeg[b] > 0)
                members += (members.empty() ? "" : ", ") + ("clb" + site_str(f.clbs[b].row,
                                                                             f.clbs[b].col));
        throw Error("combinational cycle through " + members);
    }
    return f;
}

FabricState initial_state(const ConfiguredFabric &fabric) {
    FabricState s;
    s.half_latch.assign(fabric.net_count, 0);
    return s;
}

std::vector<bool> step(const ConfiguredFabric &f, FabricState &state,
                       const std::vector<PadLevel> &inputs) {
    if (inputs.size() != f.input_slots.size())
        throw Error("vector width mismatch: fabric has " + std::to_string(f.input_slots.size()) +
                    " input pads, got " + std::to_string(inputs.size()) + " levels");
    if ((int)state.half_latch.size() != f.net_count)
        throw Error("fabric state does not belong to this fabric");

    std::array<int8_t, kGpioCount> pad_in;
    pad_in.fill(-1); // released
    for (size_t j = 0; j < inputs.size(); j++)
        if (inputs[j] != PadLevel::Z)
            pad_in[f.input_slots[j]] = inputs[j] == PadLevel::One;

    std::array<uint8_t, kClbCount> lut_out{};
    auto driver_value = [&](int net) -> std::optional<bool> {
        const auto &drv = f.net_driver[net];
        if (!drv)
            return std::nullopt;
        if (drv->is_pad) {
            int8_t v = pad_in[drv->index];
            if (v < 0)
                return std::nullopt;
            return v != 0;
        }
        const ConfiguredFabric::Clb &clb = f.clbs[drv->index];
        if (clb.sync)
            return state.dff[drv->index] != 0;
        return lut_out[drv->index] != 0;
    };
    auto eval_clb = [&](int b) {
        const ConfiguredFabric::Clb &clb = f.clbs[b];
        unsigned idx = 0;
        for (int p = 0; p < kClbInputPins; p++) {
            if (!((clb.mask >> p) & 1) || clb.pin_net[p] < 0)
                continue; // masked or untapped pins read 0
            int net = clb.pin_net[p];
            auto dv = driver_value(net);
            bool v = dv ? *dv : state.half_latch[net] != 0;
            idx |= (unsigned)v << p;
        }
        lut_out[b] = lut_eval(clb.table, idx);
    };

    for (int b : f.async_order)
        eval_clb(b);
    for (int b = 0; b < kClbCount; b++)
        if (f.clbs[b].sync)
            eval_clb(b);

    // driven nets latch their settled value; undriven ones hold
    for (int net = 0; net < f.net_count; net++)
        if (auto dv = driver_value(net))
            state.half_latch[net] = *dv;

    std::vector<bool> out;
    out.reserve(f.output_slots.size());
    for (int slot : f.output_slots)
        out.push_back(state.half_latch[f.pads[slot].net] != 0);

    for (int b = 0; b < kClbCount; b++)
        state.dff[b] = lut_out[b];
    state.cycle++;
    return out;
}

// ---------------------------------------------------------------------------
// Reference oracle
// ---------------------------------------------------------------------------

NetlistSimulator::NetlistSimulator(const LogicNetlist &nl) : nl_(nl) {
    int n = (int)nl.luts.size();
    std::map<std::string, int> lut_of;
    for (int i = 0; i < n; i++)
        lut_of[nl.luts[i].output] = i;
    std::vector<std::vector<int>> succ(n);
    std::vector<int> indeg(n, 0);
    for (int b = 0; b < n; b++)
        for (const std::string &in : nl.luts[b].inputs)
            if (auto it = lut_of.find(in); it != lut_of.end()) {
                succ[it->second].push_back(b);
                indeg[b]++;
            }
    std::queue<int> q;
    for (int i = 0; i < n; i++)
        if (!indeg[i])
            q.push(i);
    while (!q.empty()) {
        int b = q.front();
        q.pop();
        lut_order_.push_back(b);
        for (int nxt : succ[b])
            if (--indeg[nxt] == 0)
                q.push(nxt);
    }
    if ((int)lut_order_.size() != n)
        throw Error("combinational cycle in netlist '" + nl.name + "'");
    lut_value_.assign(n, 0);
    latch_state_.assign(nl.latches.size(), 0);
    reset();
}

void NetlistSimulator::reset() {
    std::fill(lut_value_.begin(), lut_value_.end(), 0);
    for (size_t i = 0; i < nl_.latches.size(); i++)
        latch_state_[i] = (uint8_t)nl_.latches[i].init;
}

bool NetlistSimulator::value_of(const std::string &net, const std::vector<bool> &inputs) const {
    const NetInfo &info = nl_.nets[nl_.net_id(net)];
    switch (info.driver) {
    case NetDriverKind::PrimaryInput:
        return inputs[info.driver_index];
    case NetDriverKind::LutOutput:
        return lut_value_[info.driver_index];
    case NetDriverKind::LatchOutput:
        return latch_state_[info.driver_index];
    case NetDriverKind::None:
        break;
    }
    throw Error("net '" + net + "' has no driver");
}

std::vector<bool> NetlistSimulator::step(const std::vector<bool> &inputs) {
    if (inputs.size() != nl_.inputs.size())
        throw Error("vector width mismatch: netlist has " + std::to_string(nl_.inputs.size()) +
                    " inputs, got " + std::to_string(inputs.size()));
    for (int i : lut_order_) {
        const Lut &lut = nl_.luts[i];
        unsigned idx = 0;
        for (size_t j = 0; j < lut.inputs.size(); j++)
            idx |= (unsigned)value_of(lut.inputs[j], inputs) << j;
        lut_value_[i] = lut_eval(lut.table, idx);
    }
    std::vector<bool> out;
    out.reserve(nl_.outputs.size());
    for (const std::string &o : nl_.outputs)
        out.push_back(value_of(o, inputs));
    std::vector<uint8_t> next(latch_state_.size());
    for (size_t i = 0; i < nl_.latches.size(); i++)
        next[i] = value_of(nl_.latches[i].data, inputs);
    latch_state_ = std::move(next);
    return out;
}

// ---------------------------------------------------------------------------
// Vectors and waveforms
// ---------------------------------------------------------------------------

namespace {

std::vector<bool> parse_bits(const std::string &tok, int lineno) {
    std::vector<bool> bits;
    for (char c : tok) {
        if (c != '0' && c != '1')
            throw ParseError(std::string("bad bit '") + c + "'", lineno);
        bits.push_back(c == '1');
    }
    return bits;
}

} // namespace

std::vector<VectorLine> parse_vectors(const std::string &text) {
    std::vector<VectorLine> out;
    int lineno = 0;
    for (const std::string &raw : split_on(text, '\n')) {
        lineno++;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> tok = split_ws(line);
        VectorLine vl;
        size_t i = 0;
        if (tok[0] != "->")
            vl.inputs = parse_bits(tok[i++], lineno);
        if (i < tok.size()) {
            if (tok[i] != "->" || i + 1 >= tok.size())
                throw ParseError("expected '-> <bits>'", lineno);
            vl.expected = parse_bits(tok[i + 1], lineno);
            if (i + 2 != tok.size())
                throw ParseError("trailing tokens after expected bits", lineno);
        }
        out.push_back(std::move(vl));
    }
    return out;
}

std::string print_vectors(const std::vector<VectorLine> &lines) {
    std::ostringstream ss;
    for (const VectorLine &vl : lines) {
        for (bool b : vl.inputs)
            ss << (b ? '1' : '0');
        if (vl.expected) {
            if (!vl.inputs.empty())
                ss << " ";
            ss << "-> ";
            for (bool b : *vl.expected)
                ss << (b ? '1' : '0');
        }
        ss << "\n";
    }
    return ss.str();
}

std::string vcd_text(const std::vector<Wave> &waves) {
    std::ostringstream ss;
    ss << "$timescale 1 ns $end\n$scope module fabric $end\n";
    for (size_t i = 0; i < waves.size(); i++)
        ss << "$var wire 1 " << (char)('!' + i) << " " << waves[i].name << " $end\n";
    ss << "$upscope $end\n$enddefinitions $end\n";
    size_t cycles = 0;
    for (const Wave &w : waves)
        cycles = std::max(cycles, w.values.size());
    for (size_t c = 0; c < cycles; c++) {
        ss << "#" << c << "\n";
        for (size_t i = 0; i < waves.size(); i++) {
            if (c >= waves[i].values.size())
                continue;
            bool v = waves[i].values[c];
            if (c == 0 || v != (bool)waves[i].values[c - 1])
                ss << (v ? '1' : '0') << (char)('!' + i) << "\n";
        }
    }
    return ss.str();
}

// ---------------------------------------------------------------------------
// Equivalence
// ---------------------------------------------------------------------------

PadMap pad_map_from_design(const Design &d) {
    PadMap m;
    const auto &sites = io_sites();
    auto slot_of = [&](const std::string &pad) {
        const Placement::Entry *e = d.placement.find(pad);
        if (!e)
            throw Error("pad '" + pad + "' is not placed");
        for (int s = 0; s < kGpioCount; s++)
            if (sites[s].first == e->y && sites[s].second == e->x)
                return s;
        throw Error("pad '" + pad + "' sits at " + site_str(e->y, e->x) +
                    " which is not a GPIO site");
    };
    for (const std::string &in : d.netlist.inputs)
        m.inputs[in] = slot_of(in);
    for (const std::string &out : d.netlist.outputs)
        m.outputs[out] = slot_of(kOutPadPrefix + out);
    return m;
}

namespace {

// The generation contract makes every masked pin a structural don't-care of
// the truth table. Checking it directly catches LUT corruption that no input
// vector can reach through the masking AND gates.
std::optional<std::string> mask_audit(const ConfigImage &image) {
    for (int row = 2; row <= 16; row += 2)
        for (int col = 2; col <= 16; col += 2) {
            uint64_t table = 0;
            for (int word = 0; word < 8; word++)
                table |= (uint64_t)image.word(row, col, word) << (8 * word);
            uint8_t mask = (image.word(row, col, 8) >> 1) & 0x3F;
            for (int p = 0; p < kClbInputPins; p++) {
                if ((mask >> p) & 1)
                    continue;
                for (int v = 0; v < kLutEntries; v++) {
                    if (!((v >> p) & 1))
                        continue;
                    if (lut_eval(table, v) != lut_eval(table, v & ~(1u << p)))
                        return "configuration audit: clb" + site_str(row, col) + " lut entry " +
                               std::to_string(v) + " is not invariant under masked pin " +
                               std::to_string(p) + " (bit at " +
                               clb_lut_bit_addr(row, col, v).str() + ")";
                }
            }
        }
    return std::nullopt;
}

} // namespace

EquivalenceVerdict equivalence_check(const LogicNetlist &nl, const ConfigImage &image,
                                     const PadMap &map, const EquivalenceOptions &opt) {
    EquivalenceVerdict verdict;
    if (auto audit = mask_audit(image)) {
        verdict.equivalent = false;
        verdict.reason = *audit;
        return verdict;
    }

    ConfiguredFabric fabric = configure(image);
    NetlistSimulator oracle(nl);

    if (fabric.input_slots.size() != nl.inputs.size())
        throw Error("fabric exposes " + std::to_string(fabric.input_slots.size()) +
                    " input pads but the netlist has " + std::to_string(nl.inputs.size()) +
                    " inputs");
    if (fabric.output_slots.size() != nl.outputs.size())
        throw Error("fabric exposes " + std::to_string(fabric.output_slots.size()) +
                    " output pads but the netlist has " + std::to_string(nl.outputs.size()) +
                    " outputs");
    std::vector<int> in_port(fabric.input_slots.size());
    for (size_t i = 0; i < nl.inputs.size(); i++) {
        auto it = map.inputs.find(nl.inputs[i]);
        if (it == map.inputs.end())
            throw Error("input '" + nl.inputs[i] + "' missing from the pad map");
        auto pos = std::find(fabric.input_slots.begin(), fabric.input_slots.end(), it->second);
        if (pos == fabric.input_slots.end())
            throw Error("pad slot for input '" + nl.inputs[i] +
                        "' is not a configured input pad");
        in_port[pos - fabric.input_slots.begin()] = (int)i;
    }
    std::vector<int> out_port(fabric.output_slots.size());
    for (size_t i = 0; i < nl.outputs.size(); i++) {
        auto it = map.outputs.find(nl.outputs[i]);
        if (it == map.outputs.end())
            throw Error("output '" + nl.outputs[i] + "' missing from the pad map");
        auto pos = std::find(fabric.output_slots.begin(), fabric.output_slots.end(), it->second);
        if (pos == fabric.output_slots.end())
            throw Error("pad slot for output '" + nl.outputs[i] + "' is not an output pad");
        out_port[pos - fabric.output_slots.begin()] = (int)i;
    }

    const int npi = (int)nl.inputs.size();
    auto compare_run = [&](auto next_inputs, int cycles, const std::string &label) {
        oracle.reset();
        FabricState st = initial_state(fabric);
        for (int c = 0; c < cycles; c++) {
            std::vector<bool> bits = next_inputs();
            std::vector<PadLevel> fin(fabric.input_slots.size());
            for (size_t j = 0; j < fin.size(); j++)
                fin[j] = bits[in_port[j]] ? PadLevel::One : PadLevel::Zero;
            std::vector<bool> fab = step(fabric, st, fin);
            std::vector<bool> ora = oracle.step(bits);
            for (size_t k = 0; k < fab.size(); k++) {
                bool want = ora[out_port[k]];
                if (fab[k] == want)
                    continue;
                std::string in_str;
                for (bool b : bits)
                    in_str += b ? '1' : '0';
                verdict.equivalent = false;
                verdict.reason = "divergence at " + label + " cycle " + std::to_string(c) +
                                 ": inputs=" + (in_str.empty() ? "-" : in_str) + " output '" +
                                 nl.outputs[out_port[k]] + "' netlist=" + (want ? "1" : "0") +
                                 " fabric=" + (fab[k] ? "1" : "0");
                return false;
            }
        }
        return true;
    };

    bool exhaustive = opt.strategy == EquivalenceOptions::Strategy::Exhaustive ||
                      (opt.strategy == EquivalenceOptions::Strategy::Auto &&
                       npi <= opt.exhaustive_limit);
    if (exhaustive) {
        if (npi > 20)
            throw Error("too many inputs for exhaustive equivalence (" + std::to_string(npi) +
                        ")");
        int cycles = nl.latches.empty() ? 1 : opt.cycles;
        for (uint64_t v = 0; v < (1ull << npi); v++) {
            std::vector<bool> bits(npi);
            for (int i = 0; i < npi; i++)
                bits[i] = (v >> i) & 1;
            verdict.vectors++;
            if (!compare_run([&] { return bits; }, cycles, "vector " + std::to_string(v)))
                return verdict;
        }
    } else {
        Rng rng(opt.seed);
        for (int r = 0; r < opt.runs; r++) {
            bool ok = compare_run(
                [&] {
                    std::vector<bool> bits(npi);
                    for (int i = 0; i < npi; i++)
                        bits[i] = rng.coin();
                    verdict.vectors++;
                    return bits;
                },
                opt.cycles, "run " + std::to_string(r) + " (seed " + std::to_string(opt.seed) +
                                ")");
            if (!ok)
                return verdict;
        }
    }
    return verdict;
}

// ---------------------------------------------------------------------------
// Mutation sweep
// ---------------------------------------------------------------------------

namespace {

std::string mutation_trial(const LogicNetlist &nl, const ConfigImage &base, const PadMap &map,
                           const EquivalenceOptions &opt, int flip_index) {
    int clb = flip_index / kLutEntries;
    int entry = flip_index % kLutEntries;
    int row = (clb / 8 + 1) * 2;
    int col = (clb % 8 + 1) * 2;
    ConfigImage img = base;
    ConfigAddress a = clb_lut_bit_addr(row, col, entry);
    img.set(a, !img.get(a));
    try {
        EquivalenceVerdict v = equivalence_check(nl, img, map, opt);
        if (v.equivalent)
            return "flip of lut bit " + a.str() + " (clb" + site_str(row, col) + " entry " +
                   std::to_string(entry) + ") went undetected";
    } catch (const Error &) {
        // a flip that breaks configuration outright counts as detected
    }
    return {};
}

MutationSweepResult collect_sweep(const std::vector<std::string> &per_trial) {
    MutationSweepResult res;
    res.flips = (int)per_trial.size();
    for (const std::string &s : per_trial) {
        if (s.empty())
            res.detected++;
        else
            res.missed.push_back(s);
    }
    return res;
}

} // namespace

MutationSweepResult lut_mutation_sweep(const LogicNetlist &nl, const ConfigImage &image,
                                       const PadMap &map, const EquivalenceOptions &opt) {
    std::vector<std::string> per_trial(kClbCount * kLutEntries);
    for (int i = 0; i < kClbCount * kLutEntries; i++)
        per_trial[i] = mutation_trial(nl, image, map, opt, i);
    return collect_sweep(per_trial);
}

MutationSweepResult lut_mutation_sweep_parallel(const LogicNetlist &nl, const ConfigImage &image,
                                                const PadMap &map,
                                                const EquivalenceOptions &opt) {
    std::vector<std::string> per_trial(kClbCount * kLutEntries);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < kClbCount * kLutEntries; i++)
        per_trial[i] = mutation_trial(nl, image, map, opt, i);
    return collect_sweep(per_trial);
}

} // namespace minifab
