// router.hpp - routing-resource graph, negotiated-congestion router, W_min lab
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minifab/design.hpp"
#include "minifab/route.hpp"

namespace minifab {

// Flat directed graph over the same node vocabulary as .route files, so a
// finished route converts straight into a RouteForest and is re-checked by
// the independent validators.
struct RRGraph {
    FabricArch arch;
    std::vector<RouteNode> nodes;
    std::vector<std::vector<int>> out_edges;
    std::map<RouteNode, int> index;
    long sb_switch_edges = 0; // undirected switch count across all SBs

    int id_of(const RouteNode &n) const;
};

RRGraph build_rr_graph(const FabricArch &arch);

// A routing request net: one CLB output to one or more CLB input pins.
struct LabNet {
    std::string name;
    int src_row = 0, src_col = 0;
    struct Sink {
        int row = 0, col = 0, pin = 0;
    };
    std::vector<Sink> sinks;
};

struct RouterOptions {
    int max_iterations = 20;
    int stall_limit = 5;        // abort when overuse stops shrinking
    double pres_fac = 0.6;      // present-congestion factor, grows per iteration
    double pres_fac_mult = 1.7;
    double hist_fac = 1.0;
};

struct RouterResult {
    bool success = false;
    RouteForest forest; // valid on success, passes validate_route_forest
    int iterations = 0;
    int overused = 0; // overused nodes at the final iteration
};

// Pathfinder-style: full rip-up per iteration, cheapest-path expansion with
// history + present congestion costs, ties broken by node id. Deterministic.
RouterResult route_nets(const RRGraph &graph, const std::vector<LabNet> &nets,
                        const RouterOptions &opt = {});

// Least W in [w_lo, w_hi] routing all nets, assuming routability is monotone
// in W (binary search). nullopt when even w_hi fails.
std::optional<int> min_channel_width(SbTopology topo, const std::vector<LabNet> &nets,
                                     const RouterOptions &opt = {},
                                     int w_lo = kMinChannelWidth, int w_hi = kMaxChannelWidth);

// Uniformly placed two-terminal nets: distinct source CLBs, Manhattan-bounded
// sinks, globally distinct (sink, pin) slots.
std::vector<LabNet> random_lab_nets(Rng &rng, int count);

// Routing demand of a packed and placed design (routes ignored): one LabNet
// per net that taps at least one pin, in netlist net order.
std::vector<LabNet> design_demand(const Design &d);

// Experiment config, key=value:
//   topologies=disjoint,universal,wilton
//   seeds=0-99            (range or comma list)
//   nets=10-30
//   w=2-12
struct LabConfig {
    std::vector<SbTopology> topologies = {SbTopology::Disjoint, SbTopology::Universal,
                                          SbTopology::Wilton};
    std::vector<uint64_t> seeds;
    int min_nets = 10, max_nets = 30;
    int w_lo = kMinChannelWidth, w_hi = kMaxChannelWidth;

    LabConfig();
};
LabConfig parse_lab_config(const std::string &text);

struct LabRow {
    SbTopology topology;
    uint64_t seed = 0;
    int nets = 0;
    int w_min = -1; // -1 = unroutable at w_hi

    bool operator==(const LabRow &) const = default;
};

struct LabReport {
    LabConfig config;
    std::vector<LabRow> rows; // topology-major, then seed order

    std::string csv() const;
    std::string summary() const; // per-topology histograms, means, reductions
};

LabReport run_lab(const LabConfig &cfg);          // serial reference
LabReport run_lab_parallel(const LabConfig &cfg); // OpenMP twin

} // namespace minifab
