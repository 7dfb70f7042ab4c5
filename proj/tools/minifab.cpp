// minifab - command-line front end: bitstream generation, decode, simulation,
// equivalence, config-bus replay, routing experiments, fabric stats.
//
// Exit codes: 0 success, 1 input/usage error, 2 verification failure.
#include <CLI11.hpp>
#include <json.hpp>

#include <bit>
#include <functional>
#include <iostream>

#include "minifab/blif.hpp"
#include "minifab/bus.hpp"
#include "minifab/router.hpp"
#include "minifab/sim.hpp"

using namespace minifab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitVerify = 2;

FabricArch arch_from(const std::string &path) {
    return path.empty() ? FabricArch{} : parse_arch_config(read_text_file(path));
}

struct DesignPaths {
    std::string blif, net, place, route;
};

Design load_design(const DesignPaths &p, const FabricArch &arch) {
    Design d;
    d.netlist = parse_blif(read_text_file(p.blif));
    d.packed = parse_net(read_text_file(p.net));
    d.placement = parse_place(read_text_file(p.place));
    d.routes = parse_route(read_text_file(p.route), arch);
    return d;
}

void add_design_options(CLI::App *cmd, DesignPaths &p) {
    cmd->add_option("--blif", p.blif, "logic netlist (.blif)")->required();
    cmd->add_option("--net", p.net, "packed netlist (.net)")->required();
    cmd->add_option("--place", p.place, "placement (.place)")->required();
    cmd->add_option("--route", p.route, "routing (.route)")->required();
}

std::string bits(const std::vector<bool> &v) {
    std::string s;
    for (bool b : v)
        s += b ? '1' : '0';
    return s;
}

int cmd_genbits(const DesignPaths &paths, const std::string &arch_path, const std::string &out,
                bool human) {
    FabricArch arch = arch_from(arch_path);
    Design d = load_design(paths, arch);
    ConfigImage image = generate_bitstream(arch, d);
    write_binary_file(out, serialize(image));

    DecodedConfig dec = decode(image);
    int clbs = (int)d.packed.blocks.size();
    int ios = (int)(d.netlist.inputs.size() + d.netlist.outputs.size());
    if (human) {
        std::cout << clbs << "/" << kClbCount << " CLBs used\n"
                  << ios << "/" << kGpioCount << " GPIO used\n"
                  << d.routes.nets.size() << " nets routed\n"
                  << dec.enabled.size() << " config bits set, " << dec.spare_warnings.size()
                  << " spare bits set\n"
                  << "wrote " << out << " (" << kBitstreamFileBytes << " bytes)\n";
    } else {
        json j{{"clbs_used", clbs},
               {"clb_total", kClbCount},
               {"gpio_used", ios},
               {"gpio_total", kGpioCount},
               {"nets_routed", d.routes.nets.size()},
               {"bits_set", dec.enabled.size()},
               {"spare_bits_set", dec.spare_warnings.size()},
               {"file_bytes", kBitstreamFileBytes},
               {"out", out}};
        std::cout << j.dump() << "\n";
    }
    return kExitOk;
}

int cmd_decode(const std::string &bits_path, const std::string &out) {
    ConfigImage image = deserialize(read_binary_file(bits_path));
    std::string text = decode_text(image);
    if (out.empty())
        std::cout << text;
    else
        write_text_file(out, text);
    return kExitOk;
}

int cmd_sim(const std::string &bits_path, const std::string &vectors_path,
            const std::string &vcd_path, bool human) {
    ConfigImage image = deserialize(read_binary_file(bits_path));
    ConfiguredFabric fabric = configure(image);
    std::vector<VectorLine> lines = parse_vectors(read_text_file(vectors_path));

    std::vector<Wave> waves(fabric.input_slots.size() + fabric.output_slots.size());
    for (size_t i = 0; i < fabric.input_slots.size(); i++)
        waves[i].name = "in" + std::to_string(i);
    for (size_t i = 0; i < fabric.output_slots.size(); i++)
        waves[fabric.input_slots.size() + i].name = "out" + std::to_string(i);

    FabricState st = initial_state(fabric);
    long failures = 0;
    for (size_t cyc = 0; cyc < lines.size(); cyc++) {
        const VectorLine &vl = lines[cyc];
        if (vl.inputs.size() != fabric.input_slots.size())
            throw ParseError("cycle " + std::to_string(cyc) + ": vector has " +
                             std::to_string(vl.inputs.size()) + " input bits, fabric has " +
                             std::to_string(fabric.input_slots.size()) + " input pads");
        std::vector<PadLevel> in(vl.inputs.size());
        for (size_t i = 0; i < in.size(); i++)
            in[i] = vl.inputs[i] ? PadLevel::One : PadLevel::Zero;
        std::vector<bool> out = step(fabric, st, in);

        bool ok = true;
        if (vl.expected) {
            if (vl.expected->size() != out.size())
                throw ParseError("cycle " + std::to_string(cyc) + ": expected " +
                                 std::to_string(vl.expected->size()) + " output bits, fabric has " +
                                 std::to_string(out.size()) + " output pads");
            ok = *vl.expected == out;
        }
        if (!ok)
            failures++;
        for (size_t i = 0; i < vl.inputs.size(); i++)
            waves[i].values.push_back(vl.inputs[i]);
        for (size_t i = 0; i < out.size(); i++)
            waves[vl.inputs.size() + i].values.push_back(out[i]);

        if (human) {
            std::cout << "cycle " << cyc << ":";
            if (!vl.inputs.empty())
                std::cout << " in=" << bits(vl.inputs);
            std::cout << " out=" << bits(out);
            if (vl.expected)
                std::cout << " expect=" << bits(*vl.expected) << (ok ? " ok" : " MISMATCH");
            std::cout << "\n";
        } else {
            json j{{"cycle", cyc}, {"in", bits(vl.inputs)}, {"out", bits(out)}};
            if (vl.expected) {
                j["expect"] = bits(*vl.expected);
                j["ok"] = ok;
            }
            std::cout << j.dump() << "\n";
        }
    }
    if (!vcd_path.empty())
        write_text_file(vcd_path, vcd_text(waves));

    if (human)
        std::cout << (failures ? "FAIL" : "PASS") << " (" << lines.size() << " cycles, "
                  << failures << " mismatches)\n";
    else
        std::cout << json{{"result", failures ? "FAIL" : "PASS"},
                          {"cycles", lines.size()},
                          {"mismatches", failures}}
                         .dump()
                  << "\n";
    return failures ? kExitVerify : kExitOk;
}

int cmd_verify(const std::string &bits_path, const DesignPaths &paths,
               const std::string &arch_path, uint64_t seed, bool human) {
    FabricArch arch = arch_from(arch_path);
    Design d = load_design(paths, arch);
    validate_design(d, arch);
    ConfigImage image = deserialize(read_binary_file(bits_path));
    if (image.arch != arch)
        throw Error("bitstream was built for channel_width=" +
                    std::to_string(image.arch.channel_width) + " sb_topology=" +
                    to_string(image.arch.topology) + ", the arch config disagrees");

    EquivalenceOptions opt;
    opt.seed = seed;
    EquivalenceVerdict v = equivalence_check(d.netlist, image, pad_map_from_design(d), opt);
    if (human) {
        std::cout << (v.equivalent ? "EQUIVALENT" : "NOT EQUIVALENT") << " (" << v.vectors
                  << " vectors)\n";
        if (!v.equivalent)
            std::cout << v.reason << "\n";
    } else {
        json j{{"equivalent", v.equivalent}, {"vectors", v.vectors}};
        if (!v.equivalent)
            j["reason"] = v.reason;
        std::cout << j.dump() << "\n";
    }
    return v.equivalent ? kExitOk : kExitVerify;
}

int cmd_busplay(const std::string &bits_path, const std::string &faults_path,
                const std::string &trace_path, bool human) {
    ConfigImage image = deserialize(read_binary_file(bits_path));
    DeviceState dev;
    if (!faults_path.empty())
        for (const StuckBit &f : parse_faults(read_text_file(faults_path)))
            dev.inject(f.addr, f.value);

    std::vector<BusTransaction> txns = image_to_transactions(image);
    for (const BusTransaction &t : txns)
        apply(dev, t);
    std::vector<Mismatch> report = readback_verify(dev, image);
    if (!trace_path.empty()) {
        for (const BusTransaction &w : image_to_transactions(image))
            txns.push_back({BusOp::Read, w.row, w.col, w.word, 0});
        write_text_file(trace_path, print_trace(txns));
    }

    if (human) {
        for (const Mismatch &m : report)
            std::cout << "stuck bit at " << m.addr.str() << ": wrote " << m.expected << ", read "
                      << m.observed << "\n";
        std::cout << (report.empty() ? "readback clean" : "readback FAILED") << " ("
                  << kPayloadBytes << " words, " << report.size() << " bad bits)\n";
    } else {
        std::cout << mismatch_csv(report);
    }
    return report.empty() ? kExitOk : kExitVerify;
}

int cmd_route_lab(const std::string &config_path, const std::string &out, bool serial,
                  bool human) {
    LabConfig cfg;
    if (!config_path.empty())
        cfg = parse_lab_config(read_text_file(config_path));
    LabReport rep = serial ? run_lab(cfg) : run_lab_parallel(cfg);
    if (!out.empty())
        write_text_file(out, rep.csv());
    if (human)
        std::cout << rep.summary();
    else if (out.empty())
        std::cout << rep.csv();
    return kExitOk;
}

int cmd_stats(const std::string &arch_path, const std::string &dump_map, bool human) {
    FabricArch arch = arch_from(arch_path);
    int census[5] = {};
    for (int r = 0; r < kGridRows; r++)
        for (int c = 0; c < kGridCols; c++)
            census[(int)block_kind_at(r, c)]++;
    RRGraph g = build_rr_graph(arch);
    if (!dump_map.empty())
        write_text_file(dump_map, memory_map_csv(enumerate_config_bits(arch)));

    if (human) {
        std::cout << "grid " << kGridRows << "x" << kGridCols << ", channel_width "
                  << arch.channel_width << ", sb_topology " << to_string(arch.topology) << "\n"
                  << "clb " << census[(int)BlockKind::Clb] << ", io "
                  << census[(int)BlockKind::IoBlock] << ", sb "
                  << census[(int)BlockKind::SwitchBlock] << ", cb "
                  << census[(int)BlockKind::HConnBlock] + census[(int)BlockKind::VConnBlock]
                  << ", unused " << census[(int)BlockKind::Unused] << "\n"
                  << "config bits " << kCapacityBits << " (" << kPayloadBytes << " bytes), file "
                  << kBitstreamFileBytes << " bytes\n"
                  << "rr nodes " << g.nodes.size() << ", sb switches " << g.sb_switch_edges
                  << "\n";
    } else {
        json j{{"rows", kGridRows},
               {"cols", kGridCols},
               {"channel_width", arch.channel_width},
               {"sb_topology", to_string(arch.topology)},
               {"clb", census[(int)BlockKind::Clb]},
               {"io", census[(int)BlockKind::IoBlock]},
               {"sb", census[(int)BlockKind::SwitchBlock]},
               {"cb", census[(int)BlockKind::HConnBlock] + census[(int)BlockKind::VConnBlock]},
               {"unused", census[(int)BlockKind::Unused]},
               {"config_bits", kCapacityBits},
               {"payload_bytes", kPayloadBytes},
               {"file_bytes", kBitstreamFileBytes},
               {"rr_nodes", g.nodes.size()},
               {"sb_switches", g.sb_switch_edges}};
        std::cout << j.dump() << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"bitstream and fabric tooling for the 19x19 island eFPGA"};
    app.require_subcommand(1);

    bool human = false;
    uint64_t seed = 0;
    app.add_flag("--human", human, "human-readable reports instead of JSON/CSV");
    app.add_option("--seed", seed, "RNG seed for randomized subcommands")->default_val(0);

    std::function<int()> action;

    DesignPaths gen_paths;
    std::string gen_arch, gen_out = "out.bit";
    auto *genbits = app.add_subcommand("genbits", "design files -> configuration bitstream");
    add_design_options(genbits, gen_paths);
    genbits->add_option("--arch", gen_arch, "arch config (default: W=8 wilton)");
    genbits->add_option("--out", gen_out, "bitstream output path");
    genbits->callback(
        [&] { action = [&] { return cmd_genbits(gen_paths, gen_arch, gen_out, human); }; });

    std::string dec_bits, dec_out;
    auto *decode = app.add_subcommand("decode", "bitstream -> per-block text dump");
    decode->add_option("--bits", dec_bits, "bitstream file")->required();
    decode->add_option("--out", dec_out, "write the dump here instead of stdout");
    decode->callback([&] { action = [&] { return cmd_decode(dec_bits, dec_out); }; });

    std::string sim_bits, sim_vectors, sim_vcd;
    auto *sim = app.add_subcommand("sim", "run test vectors on a configured fabric");
    sim->add_option("--bits", sim_bits, "bitstream file")->required();
    sim->add_option("--vectors", sim_vectors, "vector file, one cycle per line")->required();
    sim->add_option("--vcd", sim_vcd, "write pad waveforms as VCD");
    sim->callback([&] { action = [&] { return cmd_sim(sim_bits, sim_vectors, sim_vcd, human); }; });

    DesignPaths ver_paths;
    std::string ver_bits, ver_arch;
    auto *verify = app.add_subcommand("verify", "bitstream vs netlist equivalence");
    verify->add_option("--bits", ver_bits, "bitstream file")->required();
    add_design_options(verify, ver_paths);
    verify->add_option("--arch", ver_arch, "arch config (default: W=8 wilton)");
    verify->callback([&] {
        action = [&] { return cmd_verify(ver_bits, ver_paths, ver_arch, seed, human); };
    });

    std::string bus_bits, bus_faults, bus_trace;
    auto *busplay = app.add_subcommand("busplay", "load + readback over the config bus");
    busplay->add_option("--bits", bus_bits, "bitstream file")->required();
    busplay->add_option("--faults", bus_faults, "stuck-at fault spec");
    busplay->add_option("--trace", bus_trace, "write the bus transaction trace");
    busplay->callback(
        [&] { action = [&] { return cmd_busplay(bus_bits, bus_faults, bus_trace, human); }; });

    std::string lab_config, lab_out;
    bool lab_serial = false;
    auto *lab = app.add_subcommand("route-lab", "switch-block W_min experiment");
    lab->add_option("--config", lab_config, "experiment config (default: 3x100 trials)");
    lab->add_option("--out", lab_out, "write the CSV here");
    lab->add_flag("--serial", lab_serial, "use the serial reference runner");
    lab->callback(
        [&] { action = [&] { return cmd_route_lab(lab_config, lab_out, lab_serial, human); }; });

    std::string st_arch, st_map;
    auto *stats = app.add_subcommand("stats", "fabric census and memory map");
    stats->add_option("--arch", st_arch, "arch config (default: W=8 wilton)");
    stats->add_option("--dump-map", st_map, "write the full config-bit map as CSV");
    stats->callback([&] { action = [&] { return cmd_stats(st_arch, st_map, human); }; });

    // --human/--seed may trail the subcommand
    for (CLI::App *sub : app.get_subcommands([](const CLI::App *) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }
    try {
        return action();
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
