// Acceptance gate: one PASS/FAIL line per criterion, exit 0 only when all hold.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sys/wait.h>

#include "minifab/blif.hpp"
#include "minifab/bus.hpp"
#include "minifab/router.hpp"
#include "minifab/sim.hpp"

using namespace minifab;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void expect(bool cond, const std::string &what) {
    if (!cond)
        throw std::runtime_error(what);
}

// Runs one criterion; the body returns a short success detail. A time limit
// of 0 means untimed.
void criterion(int num, const std::string &label, double limit_s,
               const std::function<std::string()> &body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string verdict, detail;
    try {
        detail = body();
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char buf[64];
        std::snprintf(buf, sizeof buf, " (%.2f s)", dt);
        if (limit_s > 0 && dt >= limit_s) {
            verdict = "FAIL";
            detail += buf;
            detail += " exceeds the " + std::to_string((int)limit_s) + " s limit";
        } else {
            verdict = "PASS";
            detail += buf;
        }
    } catch (const std::exception &e) {
        verdict = "FAIL";
        detail = e.what();
    }
    if (verdict == "FAIL")
        g_failures++;
    std::cout << verdict << "  " << num << ". " << label << ": " << detail << "\n";
}

std::string fixture(const std::string &name) {
    return read_text_file(std::string(MINIFAB_FIXTURES) + "/" + name);
}

Design load_fixture(const std::string &stem, const FabricArch &arch) {
    Design d;
    d.netlist = parse_blif(fixture(stem + ".blif"));
    d.packed = parse_net(fixture(stem + ".net"));
    d.placement = parse_place(fixture(stem + ".place"));
    d.routes = parse_route(fixture(stem + ".route"), arch);
    return d;
}

// --------------------------------------------------------------------------

std::string crit_memory_map() {
    for (FabricArch arch : {FabricArch(8, SbTopology::Wilton), FabricArch(2, SbTopology::Disjoint),
                            FabricArch(12, SbTopology::Universal)}) {
        MemoryMap map = enumerate_config_bits(arch);
        std::vector<char> seen(kCapacityBits, 0);
        long total = 0;
        for (const auto &e : map.assigned) {
            expect(!seen[e.addr.bit_index()], "duplicate address " + e.addr.str());
            seen[e.addr.bit_index()] = 1;
            total++;
        }
        for (const auto &addr : map.spare) {
            expect(!seen[addr.bit_index()], "spare overlaps " + addr.str());
            seen[addr.bit_index()] = 1;
            total++;
        }
        expect(total == kCapacityBits, "covered " + std::to_string(total) + " addresses");
    }
    return "25992 addresses per arch, injective, full cover at W=8/2/12";
}

std::string crit_census() {
    std::map<BlockKind, int> census;
    for (int r = 0; r < kGridRows; r++)
        for (int c = 0; c < kGridCols; c++)
            census[block_kind_at(r, c)]++;
    expect(census[BlockKind::Clb] == 64, "CLB count " + std::to_string(census[BlockKind::Clb]));
    expect(census[BlockKind::IoBlock] == 16,
           "IO count " + std::to_string(census[BlockKind::IoBlock]));
    int sites = 0;
    for (auto [k, n] : census)
        sites += n;
    expect(sites == 361, "grid visits " + std::to_string(sites) + " sites");
    return "64 CLBs and 16 GPIO over all 361 sites";
}

std::string crit_switch_law() {
    long switches = 0;
    for (SbTopology topo : {SbTopology::Disjoint, SbTopology::Universal, SbTopology::Wilton})
        for (int w = kMinChannelWidth; w <= kMaxChannelWidth; w++) {
            std::map<std::pair<Side, int>, std::set<std::pair<Side, int>>> ends;
            for (int g = 0; g < kSbGroupCount; g++) {
                std::set<int> image;
                for (int t = 0; t < w; t++) {
                    SwitchPoint sp = sb_switch_point(topo, (SbGroup)g, t, w);
                    expect(image.insert(sp.track_b).second, "group map is not a bijection");
                    ends[{sp.side_a, sp.track_a}].insert({sp.side_b, sp.track_b});
                    ends[{sp.side_b, sp.track_b}].insert({sp.side_a, sp.track_a});
                    // the enable bit is reachable from both endpoints
                    auto fwd = sb_find_switch(topo, sp.side_a, sp.track_a, sp.side_b, sp.track_b, w);
                    auto rev = sb_find_switch(topo, sp.side_b, sp.track_b, sp.side_a, sp.track_a, w);
                    expect(fwd.has_value() && rev.has_value() && *fwd == *rev,
                           "switch lookup is not symmetric");
                    switches++;
                }
            }
            expect((long)ends.size() == 4L * w, "not every (side, track) participates");
            for (const auto &[from, to] : ends)
                expect(to.size() == 3, "a track connects to " + std::to_string(to.size()) +
                                           " endpoints instead of 3");
        }
    return "3 topologies x W=2..12: every track reaches exactly 3 others, symmetric, " +
           std::to_string(switches) + " switches checked";
}

std::string crit_counter() {
    FabricArch arch = parse_arch_config(fixture("counter4.arch"));
    Design d = load_fixture("counter4", arch);
    expect(d.packed.blocks.size() == 4, "counter uses " + std::to_string(d.packed.blocks.size()) +
                                            " CLBs, expected 4");
    ConfiguredFabric f = configure(generate_bitstream(arch, d));
    FabricState st = initial_state(f); // reset: DFFs and half-latches at 0
    NetlistSimulator oracle(d.netlist);
    for (int k = 0; k < 16; k++) {
        std::vector<bool> out = step(f, st, {});
        std::vector<bool> ref = oracle.step({});
        expect(out == ref, "fabric and oracle disagree at cycle " + std::to_string(k));
        for (int b = 0; b < 4; b++)
            expect(out[b] == ((k >> b) & 1), "count wrong at cycle " + std::to_string(k));
    }
    return "4 CLBs; counts 0-15 over 16 cycles, matching the netlist oracle";
}

std::string crit_fullutil() {
    FabricArch arch = parse_arch_config(fixture("fullutil.arch"));
    Design d = load_fixture("fullutil", arch);
    expect((int)d.packed.blocks.size() == kClbCount, "uses " +
                                                         std::to_string(d.packed.blocks.size()) +
                                                         "/64 CLBs");
    ConfigImage img = generate_bitstream(arch, d);
    configure(img);

    EquivalenceOptions opt;
    opt.strategy = EquivalenceOptions::Strategy::Random;
    opt.runs = 16;
    opt.cycles = 64;
    opt.seed = 1;
    EquivalenceVerdict v = equivalence_check(d.netlist, img, pad_map_from_design(d), opt);
    expect(v.vectors >= 1000, "only " + std::to_string(v.vectors) + " vectors");
    expect(v.equivalent, "not equivalent: " + v.reason);
    return "64/64 CLBs; equivalent over " + std::to_string(v.vectors) + " random vectors";
}

std::string crit_roundtrip() {
    Rng rng(123);
    for (int i = 0; i < 1000; i++) {
        ConfigImage img;
        img.arch = FabricArch(2 + (int)rng.below(11), (SbTopology)rng.below(3));
        for (auto &b : img.bytes)
            b = (uint8_t)rng.below(256);
        ConfigImage back = deserialize(serialize(img));
        expect(back.arch == img.arch && back.bytes == img.bytes,
               "round trip " + std::to_string(i) + " not bit-exact");
    }
    // decode(generate(D)) names exactly D's resource set: re-asserting every
    // decoded address reproduces the image bit-for-bit
    for (const std::string &stem : {std::string("counter4"), std::string("fullutil")}) {
        FabricArch arch = parse_arch_config(fixture(stem + ".arch"));
        ConfigImage img = generate_bitstream(arch, load_fixture(stem, arch));
        DecodedConfig dec = decode(img);
        expect(dec.spare_warnings.empty() && dec.driver_conflicts.empty(),
               stem + ": decode found stray bits");
        std::map<std::string, ConfigAddress> byname;
        for (const auto &e : enumerate_config_bits(arch).assigned)
            byname.emplace(e.name, e.addr);
        ConfigImage rebuilt;
        rebuilt.arch = arch;
        for (const std::string &name : dec.enabled)
            rebuilt.set(byname.at(name), true);
        expect(rebuilt.bytes == img.bytes, stem + ": decoded set does not rebuild the image");
    }
    return "1000 random images bit-exact; decode inverts generate on both fixtures";
}

std::string crit_fault_sweep() {
    FabricArch arch = parse_arch_config(fixture("counter4.arch"));
    ConfigImage img = generate_bitstream(arch, load_fixture("counter4", arch));
    FaultSweepResult res = fault_sweep_parallel(img);
    expect(res.trials == 2L * kCapacityBits, "ran " + std::to_string(res.trials) + " trials");
    expect(res.detectable == kCapacityBits,
           "detectable " + std::to_string(res.detectable) + " != " + std::to_string(kCapacityBits));
    expect(res.detected == res.detectable, "missed " +
                                               std::to_string(res.detectable - res.detected) +
                                               " detectable faults");
    expect(res.failures.empty(), res.failures.empty() ? "" : res.failures.front());
    return "51984 stuck-at trials: all 25992 detectable faults flagged, 0 false positives";
}

std::string crit_routability() {
    LabConfig cfg; // 3 topologies x seeds 0-99, 10-30 nets, W in 2-12
    LabReport rep = run_lab_parallel(cfg);
    expect(rep.rows.size() == 300, "expected 300 rows");

    const size_t S = cfg.seeds.size();
    auto w_of = [&](size_t ti, size_t si) { return rep.rows[ti * S + si].w_min; };
    std::vector<size_t> common;
    for (size_t si = 0; si < S; si++)
        if (w_of(0, si) > 0 && w_of(1, si) > 0 && w_of(2, si) > 0)
            common.push_back(si);
    expect(common.size() >= 100, "only " + std::to_string(common.size()) +
                                     " instances routed by every topology");
    double mean[3] = {};
    for (size_t ti = 0; ti < 3; ti++) {
        for (size_t si : common)
            mean[ti] += w_of(ti, si);
        mean[ti] /= (double)common.size();
    }
    // topologies order: disjoint, universal, wilton
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "%zu instances: mean W_min wilton=%.3f <= disjoint=%.3f, universal=%.3f",
                  common.size(), mean[2], mean[0], mean[1]);
    expect(mean[2] <= mean[0] && mean[2] <= mean[1], buf);
    return buf;
}

std::string crit_mutation() {
    FabricArch arch = parse_arch_config(fixture("counter4.arch"));
    Design d = load_fixture("counter4", arch);
    ConfigImage img = generate_bitstream(arch, d);
    MutationSweepResult res =
        lut_mutation_sweep_parallel(d.netlist, img, pad_map_from_design(d), {});
    expect(res.flips == kClbCount * kLutEntries, "ran " + std::to_string(res.flips) + " flips");
    expect(res.missed.empty() && res.detected == res.flips,
           std::to_string(res.flips - res.detected) + " silent passes, first: " +
               (res.missed.empty() ? "?" : res.missed.front()));
    return "all 4096 single-bit LUT flips detected with a witness";
}

std::string crit_determinism() {
    fs::path dir = fs::temp_directory_path() / "minifab_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string fix = MINIFAB_FIXTURES;
    const std::string design = " --blif " + fix + "/counter4.blif --net " + fix +
                               "/counter4.net --place " + fix + "/counter4.place --route " + fix +
                               "/counter4.route --arch " + fix + "/counter4.arch";
    std::string bit = (dir / "a.bit").string();
    write_text_file((dir / "lab.cfg").string(),
                    "topologies = disjoint,wilton\nseeds = 0-3\nnets = 4-6\nw = 2-8\n");

    // subcommand -> stdout plus the artifact it writes (empty = none)
    const std::vector<std::pair<std::string, std::string>> cmds = {
        {"genbits" + design + " --out " + bit, bit},
        {"decode --bits " + bit, ""},
        {"sim --bits " + bit + " --vectors " + fix + "/counter4.vectors --vcd " +
             (dir / "a.vcd").string(),
         (dir / "a.vcd").string()},
        {"verify --bits " + bit + design + " --seed 7", ""},
        {"busplay --bits " + bit + " --trace " + (dir / "a.trace").string(),
         (dir / "a.trace").string()},
        {"route-lab --config " + (dir / "lab.cfg").string(), ""},
        {"stats --dump-map " + (dir / "map.csv").string(), (dir / "map.csv").string()},
    };
    int compared = 0;
    for (const auto &[args, artifact] : cmds) {
        std::vector<uint8_t> out[2], art[2];
        for (int run = 0; run < 2; run++) {
            fs::path stdout_path = dir / ("out." + std::to_string(run));
            std::string cmd = std::string(MINIFAB_CLI) + " " + args + " > " +
                              stdout_path.string() + " 2>/dev/null";
            int rc = std::system(cmd.c_str());
            expect(WIFEXITED(rc) && WEXITSTATUS(rc) == 0,
                   "'" + args.substr(0, args.find(' ')) + "' exited nonzero");
            out[run] = read_binary_file(stdout_path.string());
            if (!artifact.empty())
                art[run] = read_binary_file(artifact);
        }
        expect(out[0] == out[1],
               "'" + args.substr(0, args.find(' ')) + "' stdout differs between runs");
        expect(art[0] == art[1],
               "'" + args.substr(0, args.find(' ')) + "' artifact differs between runs");
        compared++;
    }
    fs::remove_all(dir);
    return "all " + std::to_string(compared) + " subcommands byte-identical across repeat runs";
}

} // namespace

int main() {
    criterion(1, "config memory map", 1.0, crit_memory_map);
    criterion(2, "block census", 0, crit_census);
    criterion(3, "switch-block law", 1.0, crit_switch_law);
    criterion(4, "end-to-end counter", 0, crit_counter);
    criterion(5, "full utilization", 0, crit_fullutil);
    criterion(6, "bitstream round trip", 0, crit_roundtrip);
    criterion(7, "readback fault coverage", 60.0, crit_fault_sweep);
    criterion(8, "routability direction", 0, crit_routability);
    criterion(9, "mutation sensitivity", 0, crit_mutation);
    criterion(10, "CLI determinism", 0, crit_determinism);

    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all 10 criteria passed\n";
    return 0;
}
