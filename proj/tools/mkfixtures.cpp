// mkfixtures - regenerate the committed reference designs under fixtures/.
// The .route files come out of the library's own router, then pass the same
// validators any externally produced file would.
#include <filesystem>
#include <iostream>
#include <sstream>

#include "minifab/bitstream.hpp"
#include "minifab/blif.hpp"
#include "minifab/router.hpp"
#include "minifab/sim.hpp"

using namespace minifab;

namespace {

struct Fixture {
    std::string name;
    FabricArch arch;
    LogicNetlist netlist;
    PackedNetlist packed;
    Placement place;
};

Placement empty_place() {
    Placement p;
    p.declared_rows = kGridRows;
    p.declared_cols = kGridCols;
    return p;
}

// Four-bit ripple-free synchronous counter on four CLBs. Every counter bit
// loops through the fabric back into its own next-state LUT.
Fixture counter4() {
    Fixture f;
    f.name = "counter4";
    f.arch = FabricArch(4, SbTopology::Wilton);
    f.netlist = parse_blif(".model counter4\n"
                           ".inputs\n"
                           ".outputs c0 c1 c2 c3\n"
                           ".names c0 n0\n"
                           "0 1\n"
                           ".names c0 c1 n1\n"
                           "01 1\n"
                           "10 1\n"
                           ".names c0 c1 c2 n2\n"
                           "110 1\n"
                           "0-1 1\n"
                           "-01 1\n"
                           ".names c0 c1 c2 c3 n3\n"
                           "1110 1\n"
                           "0--1 1\n"
                           "-0-1 1\n"
                           "--01 1\n"
                           ".latch n0 c0 re clk 0\n"
                           ".latch n1 c1 re clk 0\n"
                           ".latch n2 c2 re clk 0\n"
                           ".latch n3 c3 re clk 0\n"
                           ".end\n");
    for (int i = 0; i < 4; i++) {
        PackedBlock b;
        b.name = "c" + std::to_string(i);
        b.lut = "n" + std::to_string(i);
        b.latch = "c" + std::to_string(i);
        for (int j = 0; j <= i; j++)
            b.pin_bindings.push_back({"c" + std::to_string(j), j});
        f.packed.blocks.push_back(std::move(b));
    }
    f.place = empty_place();
    for (int i = 0; i < 4; i++)
        f.place.entries.push_back({"c" + std::to_string(i), 2 + 2 * i, 2, 0});
    for (int i = 0; i < 4; i++)
        f.place.entries.push_back({"out:c" + std::to_string(i), 3 + 4 * i, 0, 0});
    return f;
}

// 64 shift-register stages in four snaking lanes; uses every CLB and every
// GPIO. Stages 0, 5 and 10 of each lane mix in a pad input through XOR.
Fixture fullutil() {
    Fixture f;
    f.name = "fullutil";
    f.arch = FabricArch(12, SbTopology::Wilton);
    f.place = empty_place();

    auto q = [](int l, int s) { return "q" + std::to_string(l) + "_" + std::to_string(s); };
    auto n = [](int l, int s) { return "n" + std::to_string(l) + "_" + std::to_string(s); };

    std::ostringstream blif;
    blif << ".model fullutil\n.inputs";
    for (int i = 0; i < 12; i++)
        blif << " pi" << i;
    blif << "\n.outputs";
    for (int l = 0; l < 4; l++)
        blif << " " << q(l, 15);
    blif << "\n";
    for (int l = 0; l < 4; l++)
        for (int s = 0; s < 16; s++) {
            int row = s < 8 ? 2 + 4 * l : 4 + 4 * l;
            int col = s < 8 ? 2 + 2 * s : 16 - 2 * (s - 8);
            int tap = s == 0 ? 0 : s == 5 ? 1 : s == 10 ? 2 : -1;
            std::string pi = tap < 0 ? "" : "pi" + std::to_string(3 * l + tap);

            PackedBlock b;
            b.name = q(l, s);
            b.lut = n(l, s);
            b.latch = q(l, s);
            if (s == 0) {
                blif << ".names " << pi << " " << n(l, s) << "\n1 1\n";
                b.pin_bindings.push_back({pi, 0});
            } else if (tap >= 0) {
                blif << ".names " << q(l, s - 1) << " " << pi << " " << n(l, s)
                     << "\n01 1\n10 1\n";
                b.pin_bindings.push_back({q(l, s - 1), s % 2 ? 3 : 0});
                b.pin_bindings.push_back({pi, s % 2 ? 1 : 4});
            } else {
                blif << ".names " << q(l, s - 1) << " " << n(l, s) << "\n1 1\n";
                b.pin_bindings.push_back({q(l, s - 1), s % 2 ? 3 : 0});
            }
            blif << ".latch " << n(l, s) << " " << q(l, s) << " re clk 0\n";
            f.packed.blocks.push_back(std::move(b));
            f.place.entries.push_back({q(l, s), col, row, 0});
        }
    blif << ".end\n";
    f.netlist = parse_blif(blif.str());

    static const std::pair<int, int> pad_sites[12] = {
        {0, 3},  {0, 7},  {0, 11},  {0, 15},  // north
        {3, 18}, {7, 18}, {11, 18}, {15, 18}, // east
        {18, 3}, {18, 7}, {18, 11}, {18, 15}, // south
    };
    for (int i = 0; i < 12; i++)
        f.place.entries.push_back(
            {"pi" + std::to_string(i), pad_sites[i].second, pad_sites[i].first, 0});
    for (int l = 0; l < 4; l++)
        f.place.entries.push_back({"out:" + q(l, 15), 0, 3 + 4 * l, 0});
    return f;
}

void emit(const Fixture &f, const std::filesystem::path &dir) {
    Design d;
    d.netlist = f.netlist;
    d.packed = f.packed;
    d.placement = f.place;

    RouterResult rr = route_nets(build_rr_graph(f.arch), design_demand(d));
    if (!rr.success) {
        std::cerr << f.name << ": routing failed, " << rr.overused << " overused nodes after "
                  << rr.iterations << " iterations\n";
        exit(1);
    }
    d.routes = rr.forest;
    validate_design(d, f.arch);
    generate_bitstream(f.arch, d); // must succeed on what we ship

    std::ostringstream arch;
    arch << "channel_width=" << f.arch.channel_width << "\n"
         << "sb_topology=" << to_string(f.arch.topology) << "\n";
    write_text_file((dir / (f.name + ".arch")).string(), arch.str());
    write_text_file((dir / (f.name + ".blif")).string(), print_blif(f.netlist));
    write_text_file((dir / (f.name + ".net")).string(), print_net(f.packed));
    write_text_file((dir / (f.name + ".place")).string(), print_place(f.place));
    write_text_file((dir / (f.name + ".route")).string(), print_route(rr.forest));
    std::cout << f.name << ": " << rr.forest.nets.size() << " nets routed in " << rr.iterations
              << " iteration(s)\n";
}

} // namespace

int main(int argc, char **argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir);
    try {
        Fixture c4 = counter4();
        emit(c4, dir);

        // expected counter waveform, one line per clock
        NetlistSimulator oracle(c4.netlist);
        std::vector<VectorLine> lines;
        for (int cyc = 0; cyc < 16; cyc++) {
            VectorLine vl;
            vl.expected = oracle.step({});
            lines.push_back(std::move(vl));
        }
        write_text_file((dir / "counter4.vectors").string(), print_vectors(lines));

        emit(fullutil(), dir);

        write_text_file((dir / "routelab.cfg").string(),
                        "# switch-block comparison, small run\n"
                        "topologies = disjoint,universal,wilton\n"
                        "seeds = 0-39\n"
                        "nets = 10-30\n"
                        "w = 2-12\n");
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
