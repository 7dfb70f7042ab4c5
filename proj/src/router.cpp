#include "minifab/router.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace minifab {

int RRGraph::id_of(const RouteNode &n) const {
    auto it = index.find(n);
    if (it == index.end())
        throw Error("no such routing node: " + n.str());
    return it->second;
}

RRGraph build_rr_graph(const FabricArch &arch) {
    RRGraph g;
    g.arch = arch;
    const int w = arch.channel_width;

    auto add = [&](RouteNode n) {
        g.index.emplace(n, (int)g.nodes.size());
        g.nodes.push_back(n);
    };
    for (int row = 0; row < kGridRows; row++)
        for (int col = 0; col < kGridCols; col++) {
            if (is_clb_site(row, col)) {
                add({RouteNodeKind::Source, col, row});
                add({RouteNodeKind::Opin, col, row, kClbOutputPin});
                for (int p = 0; p < kClbInputPins; p++)
                    add({RouteNodeKind::Ipin, col, row, p});
                add({RouteNodeKind::Sink, col, row});
            }
            if (is_io_site(row, col)) {
                add({RouteNodeKind::Source, col, row});
                add({RouteNodeKind::Opin, col, row, 0});
                add({RouteNodeKind::Ipin, col, row, 0});
                add({RouteNodeKind::Sink, col, row});
            }
            if (is_chanx_site(row, col))
                for (int t = 0; t < w; t++)
                    add({RouteNodeKind::Chanx, col, row, -1, t});
            if (is_chany_site(row, col))
                for (int t = 0; t < w; t++)
                    add({RouteNodeKind::Chany, col, row, -1, t});
        }

    g.out_edges.resize(g.nodes.size());
    auto link = [&](const RouteNode &a, const RouteNode &b) {
        g.out_edges[g.id_of(a)].push_back(g.id_of(b));
    };
    for (int row = 0; row < kGridRows; row++)
        for (int col = 0; col < kGridCols; col++) {
            if (is_clb_site(row, col)) {
                RouteNode opin{RouteNodeKind::Opin, col, row, kClbOutputPin};
                link({RouteNodeKind::Source, col, row}, opin);
                for (int t = 0; t < w; t++) {
                    link(opin, {RouteNodeKind::Chanx, col, row - 1, -1, t});
                    link(opin, {RouteNodeKind::Chany, col - 1, row, -1, t});
                }
                for (int p = 0; p < kClbInputPins; p++)
                    link({RouteNodeKind::Ipin, col, row, p}, {RouteNodeKind::Sink, col, row});
            }
            if (is_io_site(row, col)) {
                RouteNodeKind seg =
                    is_chanx_site(row, col) ? RouteNodeKind::Chanx : RouteNodeKind::Chany;
                link({RouteNodeKind::Source, col, row}, {RouteNodeKind::Opin, col, row, 0});
                link({RouteNodeKind::Ipin, col, row, 0}, {RouteNodeKind::Sink, col, row});
                for (int t = 0; t < w; t++) {
                    link({RouteNodeKind::Opin, col, row, 0}, {seg, col, row, -1, t});
                    link({seg, col, row, -1, t}, {RouteNodeKind::Ipin, col, row, 0});
                }
            }
            if (is_chanx_site(row, col) && is_clb_site(row + 1, col))
                for (int t = 0; t < w; t++)
                    for (int p = 0; p <= 2; p++)
                        link({RouteNodeKind::Chanx, col, row, -1, t},
                             {RouteNodeKind::Ipin, col, row + 1, p});
            if (is_chany_site(row, col) && is_clb_site(row, col + 1))
                for (int t = 0; t < w; t++)
                    for (int p = 3; p <= 5; p++)
                        link({RouteNodeKind::Chany, col, row, -1, t},
                             {RouteNodeKind::Ipin, col + 1, row, p});
            if (block_kind_at(row, col) == BlockKind::SwitchBlock)
                for (int gi = 0; gi < kSbGroupCount; gi++)
                    for (int t = 0; t < w; t++) {
                        SwitchPoint sp = sb_switch_point(arch.topology, (SbGroup)gi, t, w);
                        auto seg_of = [&](Side s, int track) -> RouteNode {
                            switch (s) {
                            case Side::North:
                                return {RouteNodeKind::Chany, col, row - 1, -1, track};
                            case Side::South:
                                return {RouteNodeKind::Chany, col, row + 1, -1, track};
                            case Side::West:
                                return {RouteNodeKind::Chanx, col - 1, row, -1, track};
                            case Side::East:
                                return {RouteNodeKind::Chanx, col + 1, row, -1, track};
                            }
                            throw Error("bad side");
                        };
                        RouteNode a = seg_of(sp.side_a, sp.track_a);
                        RouteNode b = seg_of(sp.side_b, sp.track_b);
                        link(a, b);
                        link(b, a);
                        g.sb_switch_edges++;
                    }
        }
    return g;
}

// ---------------------------------------------------------------------------
// Negotiated-congestion routing
// ---------------------------------------------------------------------------

RouterResult route_nets(const RRGraph &g, const std::vector<LabNet> &nets,
                        const RouterOptions &opt) {
    RouterResult res;
    const int n = (int)g.nodes.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();

    struct Want {
        int source;
        std::vector<int> ipins;
    };
    std::vector<Want> want(nets.size());
    for (size_t i = 0; i < nets.size(); i++) {
        const LabNet &ln = nets[i];
        want[i].source = g.id_of({RouteNodeKind::Source, ln.src_col, ln.src_row});
        for (const auto &s : ln.sinks)
            want[i].ipins.push_back(g.id_of({RouteNodeKind::Ipin, s.col, s.row, s.pin}));
        if (want[i].ipins.empty())
            throw Error("net '" + ln.name + "' has no sinks");
    }

    std::vector<double> hist(n, 0.0);
    std::vector<int> usage(n, 0);
    // Sinks absorb one leg per tapped pin of their block; exclusivity lives
    // on the IPIN nodes, so sink usage never counts as congestion.
    auto congestible = [&](int id) { return g.nodes[id].kind != RouteNodeKind::Sink; };
    std::vector<std::vector<int>> tree_nodes(nets.size());
    std::vector<std::vector<int>> tree_parent(nets.size());
    std::vector<double> dist(n);
    std::vector<int> prev(n);
    std::vector<int> pos_of(n, -1); // position within the net currently routing

    double pres = opt.pres_fac;
    int best_overused = INT_MAX;
    int stall = 0;

    for (int iter = 1; iter <= opt.max_iterations; iter++) {
        res.iterations = iter;
        std::fill(usage.begin(), usage.end(), 0);

        for (size_t ni = 0; ni < nets.size(); ni++) {
            std::vector<int> &tn = tree_nodes[ni];
            std::vector<int> &tp = tree_parent[ni];
            tn.assign(1, want[ni].source);
            tp.assign(1, -1);
            pos_of[want[ni].source] = 0;
            usage[want[ni].source]++;

            std::set<int> remaining(want[ni].ipins.begin(), want[ni].ipins.end());
            while (!remaining.empty()) {
                std::fill(dist.begin(), dist.end(), kInf);
                std::fill(prev.begin(), prev.end(), -1);
                std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                                    std::greater<>>
                    pq;
                for (int id : tn) {
                    dist[id] = 0;
                    pq.push({0.0, id});
                }
                int found = -1;
                while (!pq.empty()) {
                    auto [d, u] = pq.top();
                    pq.pop();
                    if (d > dist[u])
                        continue;
                    if (remaining.count(u)) {
                        found = u;
                        break;
                    }
                    for (int v : g.out_edges[u]) {
                        double c =
                            d + (1.0 + hist[v] * opt.hist_fac) * (1.0 + usage[v] * pres);
                        if (c < dist[v]) {
                            dist[v] = c;
                            prev[v] = u;
                            pq.push({c, v});
                        }
                    }
                }
                if (found < 0)
                    throw Error("net '" + nets[ni].name +
                                "' has an unreachable sink; the graph is disconnected");
                std::vector<int> path;
                int u = found;
                while (pos_of[u] < 0) {
                    path.push_back(u);
                    u = prev[u];
                }
                int parent = pos_of[u];
                for (auto it = path.rbegin(); it != path.rend(); ++it) {
                    tn.push_back(*it);
                    tp.push_back(parent);
                    parent = (int)tn.size() - 1;
                    pos_of[*it] = parent;
                    usage[*it]++;
                }
                remaining.erase(found);
                const RouteNode &ip = g.nodes[found];
                int sink = g.id_of({RouteNodeKind::Sink, ip.x, ip.y});
                if (pos_of[sink] >= 0)
                    throw Error("net '" + nets[ni].name + "' reaches one SINK twice");
                tn.push_back(sink);
                tp.push_back(pos_of[found]);
                pos_of[sink] = (int)tn.size() - 1;
            }
            for (int id : tn)
                pos_of[id] = -1;
        }

        int overused = 0;
        for (int v = 0; v < n; v++)
            if (usage[v] > 1 && congestible(v))
                overused++;
        res.overused = overused;
        if (overused == 0) {
            RouteForest forest;
            for (size_t ni = 0; ni < nets.size(); ni++) {
                NetRoute nr;
                nr.name = nets[ni].name;
                for (int id : tree_nodes[ni])
                    nr.nodes.push_back(g.nodes[id]);
                nr.parent = tree_parent[ni];
                forest.nets.push_back(std::move(nr));
            }
            // independent legality gate, same one .route files go through
            validate_route_forest(forest, g.arch);
            res.forest = std::move(forest);
            res.success = true;
            return res;
        }
        for (int v = 0; v < n; v++)
            if (usage[v] > 1 && congestible(v))
                hist[v] += (usage[v] - 1) * opt.hist_fac;
        pres *= opt.pres_fac_mult;
        if (overused < best_overused) {
            best_overused = overused;
            stall = 0;
        } else if (++stall >= opt.stall_limit) {
            break;
        }
    }
    return res;
}

std::optional<int> min_channel_width(SbTopology topo, const std::vector<LabNet> &nets,
                                     const RouterOptions &opt, int w_lo, int w_hi) {
    auto feasible = [&](int w) {
        return route_nets(build_rr_graph(FabricArch(w, topo)), nets, opt).success;
    };
    if (!feasible(w_hi))
        return std::nullopt;
    int lo = w_lo, hi = w_hi;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (feasible(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

// ---------------------------------------------------------------------------
// Random instances and the experiment harness
// ---------------------------------------------------------------------------

std::vector<LabNet> random_lab_nets(Rng &rng, int count) {
    if (count > kClbCount)
        throw Error("more nets than CLB sources");
    std::vector<LabNet> nets;
    std::set<int> used_src;
    std::set<std::pair<int, int>> used_sink;
    for (int i = 0; i < count; i++) {
        int src;
        do
            src = (int)rng.below(kClbCount);
        while (used_src.count(src));
        used_src.insert(src);
        int sr = (src / 8 + 1) * 2, sc = (src % 8 + 1) * 2;
        LabNet net;
        net.name = "n" + std::to_string(i);
        net.src_row = sr;
        net.src_col = sc;
        for (int attempt = 0;; attempt++) {
            if (attempt > 10000)
                throw Error("could not place lab nets");
            int dst = (int)rng.below(kClbCount);
            if (dst == src)
                continue;
            int dr = (dst / 8 + 1) * 2, dc = (dst % 8 + 1) * 2;
            if (std::abs(dr - sr) + std::abs(dc - sc) > 12)
                continue; // keep nets local-ish
            int pin = (int)rng.below(kClbInputPins);
            if (used_sink.count({dst, pin}))
                continue;
            used_sink.insert({dst, pin});
            net.sinks.push_back({dr, dc, pin});
            break;
        }
        nets.push_back(std::move(net));
    }
    return nets;
}

std::vector<LabNet> design_demand(const Design &d) {
    std::map<std::string, std::vector<LabNet::Sink>> sinks;
    for (const RoutedSink &s : required_sinks(d))
        sinks[s.net].push_back({s.row, s.col, s.pin});
    std::vector<LabNet> nets;
    for (const NetInfo &ni : d.netlist.nets) {
        auto it = sinks.find(ni.name);
        if (it == sinks.end())
            continue;
        LabNet net;
        net.name = ni.name;
        std::tie(net.src_row, net.src_col) = net_source_site(d, ni.name);
        net.sinks = std::move(it->second);
        nets.push_back(std::move(net));
    }
    return nets;
}

LabConfig::LabConfig() {
    for (uint64_t s = 0; s < 100; s++)
        seeds.push_back(s);
}

namespace {

std::vector<uint64_t> parse_seed_list(const std::string &val, int lineno) {
    std::vector<uint64_t> out;
    for (const std::string &part : split_on(val, ',')) {
        std::string p = trim(part);
        auto dash = p.find('-', 1); // allow plain numbers; ranges are a-b
        try {
            if (dash == std::string::npos) {
                out.push_back(std::stoull(p));
            } else {
                uint64_t a = std::stoull(p.substr(0, dash));
                uint64_t b = std::stoull(p.substr(dash + 1));
                if (b < a)
                    throw ParseError("empty seed range '" + p + "'", lineno);
                for (uint64_t s = a; s <= b; s++)
                    out.push_back(s);
            }
        } catch (const ParseError &) {
            throw;
        } catch (const std::exception &) {
            throw ParseError("bad seed '" + p + "'", lineno);
        }
    }
    if (out.empty())
        throw ParseError("no seeds", lineno);
    return out;
}

std::pair<int, int> parse_int_range(const std::string &val, int lineno) {
    auto dash = val.find('-', 1);
    try {
        if (dash == std::string::npos) {
            int v = std::stoi(val);
            return {v, v};
        }
        int a = std::stoi(val.substr(0, dash));
        int b = std::stoi(val.substr(dash + 1));
        return {a, b};
    } catch (const std::exception &) {
        throw ParseError("bad range '" + val + "'", lineno);
    }
}

} // namespace

LabConfig parse_lab_config(const std::string &text) {
    LabConfig cfg;
    int lineno = 0;
    for (const std::string &raw : split_on(text, '\n')) {
        lineno++;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value", lineno);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "topologies") {
            cfg.topologies.clear();
            for (const std::string &part : split_on(val, ','))
                cfg.topologies.push_back(topology_from_string(trim(part)));
        } else if (key == "seeds") {
            cfg.seeds = parse_seed_list(val, lineno);
        } else if (key == "nets") {
            std::tie(cfg.min_nets, cfg.max_nets) = parse_int_range(val, lineno);
        } else if (key == "w") {
            std::tie(cfg.w_lo, cfg.w_hi) = parse_int_range(val, lineno);
        } else {
            throw ParseError("unknown key '" + key + "'", lineno);
        }
    }
    if (cfg.topologies.empty())
        throw Error("lab config selects no topologies");
    if (cfg.min_nets < 1 || cfg.max_nets < cfg.min_nets)
        throw Error("bad net-count range");
    if (cfg.w_lo < kMinChannelWidth || cfg.w_hi > kMaxChannelWidth || cfg.w_lo > cfg.w_hi)
        throw Error("bad channel-width range");
    return cfg;
}

namespace {

LabRow lab_trial(const LabConfig &cfg, size_t ti, size_t si) {
    // the instance depends on the seed only, so every topology sees the
    // same nets for a given seed
    Rng rng(cfg.seeds[si]);
    int count = cfg.min_nets + (int)rng.below((uint64_t)(cfg.max_nets - cfg.min_nets + 1));
    std::vector<LabNet> nets = random_lab_nets(rng, count);
    LabRow row;
    row.topology = cfg.topologies[ti];
    row.seed = cfg.seeds[si];
    row.nets = count;
    row.w_min = min_channel_width(cfg.topologies[ti], nets, {}, cfg.w_lo, cfg.w_hi).value_or(-1);
    return row;
}

} // namespace

LabReport run_lab(const LabConfig &cfg) {
    LabReport rep;
    rep.config = cfg;
    rep.rows.resize(cfg.topologies.size() * cfg.seeds.size());
    for (size_t ti = 0; ti < cfg.topologies.size(); ti++)
        for (size_t si = 0; si < cfg.seeds.size(); si++)
            rep.rows[ti * cfg.seeds.size() + si] = lab_trial(cfg, ti, si);
    return rep;
}

LabReport run_lab_parallel(const LabConfig &cfg) {
    LabReport rep;
    rep.config = cfg;
    const long total = (long)(cfg.topologies.size() * cfg.seeds.size());
    rep.rows.resize(total);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < total; i++)
        rep.rows[i] = lab_trial(cfg, (size_t)i / cfg.seeds.size(), (size_t)i % cfg.seeds.size());
    return rep;
}

std::string LabReport::csv() const {
    std::ostringstream ss;
    ss << "topology,seed,nets,w_min\n";
    for (const LabRow &r : rows)
        ss << to_string(r.topology) << "," << r.seed << "," << r.nets << "," << r.w_min << "\n";
    return ss.str();
}

std::string LabReport::summary() const {
    const size_t T = config.topologies.size(), S = config.seeds.size();
    std::ostringstream ss;
    char buf[64];

    auto w_of = [&](size_t ti, size_t si) { return rows[ti * S + si].w_min; };
    std::vector<size_t> common; // seeds every topology routed
    for (size_t si = 0; si < S; si++) {
        bool all = true;
        for (size_t ti = 0; ti < T; ti++)
            all = all && w_of(ti, si) > 0;
        if (all)
            common.push_back(si);
    }

    ss << "instances: " << S << " seeds, " << common.size() << " routed by every topology\n";
    std::vector<double> mean(T, 0.0);
    for (size_t ti = 0; ti < T; ti++) {
        std::array<int, kMaxChannelWidth + 1> histo{};
        for (size_t si : common)
            histo[w_of(ti, si)]++;
        double sum = 0;
        for (size_t si : common)
            sum += w_of(ti, si);
        mean[ti] = common.empty() ? 0.0 : sum / (double)common.size();
        std::snprintf(buf, sizeof buf, "%-10s mean_w_min=%.4f histogram:",
                      to_string(config.topologies[ti]), mean[ti]);
        ss << buf;
        for (int w = config.w_lo; w <= config.w_hi; w++)
            ss << " " << w << ":" << histo[w];
        ss << "\n";
    }

    // reduction of Wilton relative to each other topology, per common seed
    auto wilton = std::find(config.topologies.begin(), config.topologies.end(),
                            SbTopology::Wilton);
    if (wilton != config.topologies.end() && !common.empty()) {
        size_t wi = (size_t)(wilton - config.topologies.begin());
        for (size_t ti = 0; ti < T; ti++) {
            if (ti == wi)
                continue;
            std::vector<double> red;
            for (size_t si : common)
                red.push_back(100.0 * (w_of(ti, si) - w_of(wi, si)) / (double)w_of(ti, si));
            std::sort(red.begin(), red.end());
            double rsum = 0;
            for (double r : red)
                rsum += r;
            std::snprintf(buf, sizeof buf, "%.2f%% (min %.2f%%, median %.2f%%, max %.2f%%)",
                          rsum / (double)red.size(), red.front(), red[red.size() / 2],
                          red.back());
            ss << "wilton reduction vs " << to_string(config.topologies[ti]) << ": mean " << buf
               << "\n";
        }
    }
    return ss.str();
}

} // namespace minifab
