// The OpenMP kernels must agree bit-for-bit with their serial references.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minifab/blif.hpp"
#include "minifab/bus.hpp"
#include "minifab/router.hpp"
#include "minifab/sim.hpp"

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

TEST_CASE("fault sweep: serial == parallel") {
    FabricArch arch(4, SbTopology::Wilton);
    ConfigImage img = generate_bitstream(arch, counter_design(arch));

    FaultSweepResult serial = fault_sweep(img);
    FaultSweepResult parallel = fault_sweep_parallel(img);
    CHECK(serial == parallel);
    CHECK(serial.trials == 2L * kCapacityBits);
    CHECK(serial.detectable == kCapacityBits);
    CHECK(serial.detected == kCapacityBits);
    CHECK(serial.clean());

    Rng rng(11);
    ConfigImage noise;
    noise.arch = FabricArch(8, SbTopology::Disjoint);
    for (int i = 0; i < kCapacityBits; i++)
        noise.set(ConfigAddress::from_bit_index(i), rng.coin());
    CHECK(fault_sweep(noise) == fault_sweep_parallel(noise));
}

TEST_CASE("mutation sweep: serial == parallel") {
    FabricArch arch(4, SbTopology::Wilton);
    Design d = counter_design(arch);
    ConfigImage img = generate_bitstream(arch, d);
    PadMap map = pad_map_from_design(d);
    EquivalenceOptions opt;

    MutationSweepResult serial = lut_mutation_sweep(d.netlist, img, map, opt);
    MutationSweepResult parallel = lut_mutation_sweep_parallel(d.netlist, img, map, opt);
    CHECK(serial == parallel);
    CHECK(serial.flips == kClbCount * kLutEntries);
    CHECK(serial.detected == serial.flips);
}

TEST_CASE("routing lab: serial == parallel") {
    LabConfig cfg;
    cfg.seeds = {0, 1, 2, 3, 4, 5};
    cfg.min_nets = 4;
    cfg.max_nets = 8;
    cfg.w_lo = 2;
    cfg.w_hi = 8;

    LabReport serial = run_lab(cfg);
    LabReport parallel = run_lab_parallel(cfg);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    CHECK(serial.rows == parallel.rows);
    CHECK(serial.csv() == parallel.csv());
    CHECK(serial.summary() == parallel.summary());
}
