// Serial reference kernels vs their OpenMP twins on fixture-sized inputs.
#include <benchmark/benchmark.h>

#include "minifab/blif.hpp"
#include "minifab/bus.hpp"
#include "minifab/router.hpp"
#include "minifab/sim.hpp"

using namespace minifab;

namespace {

std::string fixture(const std::string &name) {
    return read_text_file(std::string(MINIFAB_FIXTURES) + "/" + name);
}

struct Bundle {
    FabricArch arch;
    Design design;
    ConfigImage image;
    PadMap pads;
};

const Bundle &counter() {
    static Bundle b = [] {
        Bundle r;
        r.arch = parse_arch_config(fixture("counter4.arch"));
        r.design.netlist = parse_blif(fixture("counter4.blif"));
        r.design.packed = parse_net(fixture("counter4.net"));
        r.design.placement = parse_place(fixture("counter4.place"));
        r.design.routes = parse_route(fixture("counter4.route"), r.arch);
        r.image = generate_bitstream(r.arch, r.design);
        r.pads = pad_map_from_design(r.design);
        return r;
    }();
    return b;
}

LabConfig lab_config() {
    LabConfig cfg;
    cfg.seeds.assign({0, 1, 2, 3, 4, 5, 6, 7});
    cfg.min_nets = 8;
    cfg.max_nets = 16;
    cfg.w_lo = 2;
    cfg.w_hi = 8;
    return cfg;
}

void BM_FaultSweepSerial(benchmark::State &state) {
    const ConfigImage &img = counter().image;
    for (auto _ : state)
        benchmark::DoNotOptimize(fault_sweep(img));
    state.SetItemsProcessed(state.iterations() * 2L * kCapacityBits);
}

void BM_FaultSweepParallel(benchmark::State &state) {
    const ConfigImage &img = counter().image;
    for (auto _ : state)
        benchmark::DoNotOptimize(fault_sweep_parallel(img));
    state.SetItemsProcessed(state.iterations() * 2L * kCapacityBits);
}

void BM_MutationSweepSerial(benchmark::State &state) {
    const Bundle &b = counter();
    for (auto _ : state)
        benchmark::DoNotOptimize(lut_mutation_sweep(b.design.netlist, b.image, b.pads, {}));
    state.SetItemsProcessed(state.iterations() * kClbCount * kLutEntries);
}

void BM_MutationSweepParallel(benchmark::State &state) {
    const Bundle &b = counter();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            lut_mutation_sweep_parallel(b.design.netlist, b.image, b.pads, {}));
    state.SetItemsProcessed(state.iterations() * kClbCount * kLutEntries);
}

void BM_RouteLabSerial(benchmark::State &state) {
    LabConfig cfg = lab_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(run_lab(cfg));
    state.SetItemsProcessed(state.iterations() * (long)(cfg.seeds.size() * 3));
}

void BM_RouteLabParallel(benchmark::State &state) {
    LabConfig cfg = lab_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(run_lab_parallel(cfg));
    state.SetItemsProcessed(state.iterations() * (long)(cfg.seeds.size() * 3));
}

void BM_RouteSingle(benchmark::State &state) {
    const int w = (int)state.range(0);
    RRGraph g = build_rr_graph(FabricArch(w, SbTopology::Wilton));
    Rng rng(3);
    std::vector<LabNet> nets = random_lab_nets(rng, 20);
    for (auto _ : state)
        benchmark::DoNotOptimize(route_nets(g, nets));
}

BENCHMARK(BM_FaultSweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FaultSweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MutationSweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MutationSweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RouteLabSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RouteLabParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RouteSingle)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
