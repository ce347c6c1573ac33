#pragma once

#include "altroute/alternative_graph.hpp"
#include "altroute/dijkstra.hpp"
#include "altroute/graph.hpp"
#include "altroute/io.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <tuple>
#include <vector>

namespace testing {

using namespace altroute;

inline RoadGraph graph_of(NodeId n, std::vector<std::tuple<NodeId, NodeId, Weight>> arcs) {
    return RoadGraph::from_weighted_arcs(n, std::move(arcs));
}

// s=0, a=1, b=2, t=3: s->a, a->t, s->b, b->t
inline RoadGraph diamond(Weight sa = 1, Weight at = 1, Weight sb = 1, Weight bt = 1) {
    return graph_of(4, {{0, 1, sa}, {1, 3, at}, {0, 2, sb}, {2, 3, bt}});
}

inline AlternativeGraph full_ag(const RoadGraph& g, NodeId s, NodeId t, const std::vector<std::vector<EdgeId>>& routes) {
    std::vector<Path> paths;
    for (const auto& r : routes) paths.push_back(make_path(g, s, t, r));
    return ag_from_paths(g, paths, s, t);
}

inline std::vector<Weight> bellman_ford(const RoadGraph& g, NodeId root, WeightFn f = 0, bool backward = false) {
    std::vector<Weight> d(g.node_count(), kInfinity);
    d[root] = 0;
    for (NodeId round = 0; round < g.node_count(); ++round) {
        bool changed = false;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            NodeId u = g.source(e), v = g.target(e);
            if (backward) std::swap(u, v);
            if (d[u] != kInfinity && d[u] + g.weight(e, f) < d[v]) {
                d[v] = d[u] + g.weight(e, f);
                changed = true;
            }
        }
        if (!changed) break;
    }
    return d;
}

// Every loop-free s-t path as an edge list.
inline std::vector<std::vector<EdgeId>> all_simple_paths(const RoadGraph& g, NodeId s, NodeId t) {
    std::vector<std::vector<EdgeId>> out;
    std::vector<EdgeId> cur;
    std::vector<bool> seen(g.node_count(), false);
    std::function<void(NodeId)> go = [&](NodeId u) {
        if (u == t) {
            out.push_back(cur);
            return;
        }
        seen[u] = true;
        for (EdgeId e : g.out_edges(u)) {
            const NodeId v = g.target(e);
            if (seen[v]) continue;
            cur.push_back(e);
            go(v);
            cur.pop_back();
        }
        seen[u] = false;
    };
    go(s);
    return out;
}

// Edmonds-Karp with unit capacity per directed edge.
inline int unit_max_flow(const RoadGraph& g, NodeId s, NodeId t) {
    struct Res {
        NodeId to;
        int cap;
        std::size_t rev;
    };
    std::vector<std::vector<Res>> adj(g.node_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const NodeId u = g.source(e), v = g.target(e);
        adj[u].push_back({v, 1, adj[v].size()});
        adj[v].push_back({u, 0, adj[u].size() - 1});
    }
    int flow = 0;
    while (true) {
        std::vector<std::pair<NodeId, std::size_t>> prev(g.node_count(), {kNoNode, 0});
        std::queue<NodeId> q;
        q.push(s);
        prev[s] = {s, 0};
        while (!q.empty() && prev[t].first == kNoNode) {
            const NodeId u = q.front();
            q.pop();
            for (std::size_t i = 0; i < adj[u].size(); ++i)
                if (adj[u][i].cap > 0 && prev[adj[u][i].to].first == kNoNode) {
                    prev[adj[u][i].to] = {u, i};
                    q.push(adj[u][i].to);
                }
        }
        if (prev[t].first == kNoNode) return flow;
        for (NodeId v = t; v != s;) {
            auto [u, i] = prev[v];
            adj[u][i].cap -= 1;
            adj[v][adj[u][i].rev].cap += 1;
            v = u;
        }
        ++flow;
    }
}

inline RoadGraph unit_grid(std::uint32_t w, std::uint32_t h) { return generate_grid(w, h, 1, 0); }

// Random directed graph where node 0 reaches node n-1.
inline RoadGraph random_graph(std::mt19937_64& rng, NodeId n, std::size_t m, Weight max_w,
                              std::size_t weight_functions = 1) {
    std::vector<Arc> arcs;
    for (NodeId v = 0; v + 1 < n; ++v) arcs.push_back({v, v + 1});
    while (arcs.size() < m) {
        const NodeId u = static_cast<NodeId>(rng() % n), v = static_cast<NodeId>(rng() % n);
        if (u != v) arcs.push_back({u, v});
    }
    std::shuffle(arcs.begin(), arcs.end(), rng);
    std::vector<std::string> names;
    std::vector<std::vector<Weight>> weights(weight_functions);
    for (std::size_t f = 0; f < weight_functions; ++f) {
        names.push_back(f == 0 ? "main" : "w" + std::to_string(f));
        for (std::size_t i = 0; i < arcs.size(); ++i) weights[f].push_back(1 + static_cast<Weight>(rng() % max_w));
    }
    return RoadGraph(n, std::move(arcs), names, weights);
}

// s-t route found by Dijkstra under random additive noise.
inline Path random_route(const RoadGraph& g, NodeId s, NodeId t, std::mt19937_64& rng, Weight noise) {
    WeightOverlay noisy(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e) noisy.add(e, static_cast<Weight>(rng() % (noise + 1)));
    const auto p = shortest_path(noisy, s, t);
    return make_path(g, s, t, p.edges);
}

// Union of `paths` random routes between two distinct random nodes of `g`.
inline AlternativeGraph random_ag(const RoadGraph& g, std::mt19937_64& rng, std::size_t paths, Weight noise = 30) {
    const NodeId s = static_cast<NodeId>(rng() % g.node_count());
    NodeId t = static_cast<NodeId>(rng() % g.node_count());
    while (t == s) t = static_cast<NodeId>(rng() % g.node_count());
    std::vector<Path> routes;
    for (std::size_t i = 0; i < paths; ++i) routes.push_back(random_route(g, s, t, rng, noise));
    return ag_from_paths(g, routes, s, t);
}

// Cost vectors of all simple paths, keeping those no other path dominates
// componentwise (ties kept once).
inline std::vector<std::vector<Weight>> brute_pareto(const RoadGraph& g, NodeId s, NodeId t,
                                                     const std::vector<WeightFn>& fs) {
    std::vector<std::vector<Weight>> costs;
    for (const auto& p : all_simple_paths(g, s, t)) {
        std::vector<Weight> c;
        for (WeightFn f : fs) c.push_back(path_weight(g, p, f));
        costs.push_back(c);
    }
    std::vector<std::vector<Weight>> front;
    for (const auto& a : costs) {
        bool dominated = false;
        for (const auto& b : costs) {
            bool le = true, lt = false;
            for (std::size_t i = 0; i < a.size(); ++i) {
                le = le && b[i] <= a[i];
                lt = lt || b[i] < a[i];
            }
            if (le && lt) dominated = true;
        }
        if (!dominated) front.push_back(a);
    }
    std::sort(front.begin(), front.end());
    front.erase(std::unique(front.begin(), front.end()), front.end());
    return front;
}

} // namespace testing
