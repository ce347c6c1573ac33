#include "altroute/dijkstra.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>

namespace altroute {

namespace {

using QueueEntry = std::pair<Weight, NodeId>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

bool flagged(std::span<const std::uint8_t> flags, std::size_t i) {
    return !flags.empty() && flags[i] != 0;
}

std::uint8_t preference(std::span<const std::uint8_t> prefs, EdgeId e) {
    return prefs.empty() ? 0 : prefs[e];
}

} // namespace

std::vector<EdgeId> ShortestPathTree::route(const RoadGraph& graph, NodeId v) const {
    std::vector<EdgeId> out;
    if (!reached(v)) return out;
    NodeId at = v;
    while (at != root_) {
        const EdgeId e = parent_[at];
        out.push_back(e);
        at = direction_ == Direction::Forward ? graph.source(e) : graph.target(e);
    }
    if (direction_ == Direction::Forward) std::reverse(out.begin(), out.end());
    return out;
}

ShortestPathTree dijkstra(const WeightOverlay& weights, NodeId root, Direction direction,
                          const SearchOptions& options) {
    const RoadGraph& graph = weights.graph();
    const NodeId n = graph.node_count();
    if (root >= n) throw Error(ErrorCode::IdOutOfRange, "dijkstra root");

    std::vector<Weight> dist(n, kInfinity);
    std::vector<EdgeId> parent(n, kNoEdge);
    std::vector<std::uint8_t> settled(n, 0);
    const bool forward = direction == Direction::Forward;

    MinQueue queue;
    if (!flagged(options.blocked_nodes, root)) {
        dist[root] = 0;
        queue.emplace(0, root);
    }
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (settled[u] || d != dist[u]) continue;
        if (d > options.radius) break;
        settled[u] = 1;
        if (u == options.stop_at) break;

        for (EdgeId e : forward ? graph.out_edges(u) : graph.in_edges(u)) {
            if (flagged(options.blocked_edges, e)) continue;
            const NodeId v = forward ? graph.target(e) : graph.source(e);
            if (settled[v] || flagged(options.blocked_nodes, v)) continue;
            const Weight nd = d + weights.effective(e);
            if (nd < dist[v]) {
                dist[v] = nd;
                parent[v] = e;
                queue.emplace(nd, v);
            } else if (nd == dist[v] && parent[v] != kNoEdge) {
                const auto pe = preference(options.edge_preference, e);
                const auto pc = preference(options.edge_preference, parent[v]);
                if (pe > pc || (pe == pc && e < parent[v])) parent[v] = e;
            }
        }
    }
    if (options.radius != kInfinity) {
        for (NodeId v = 0; v < n; ++v)
            if (!settled[v]) {
                dist[v] = kInfinity;
                parent[v] = kNoEdge;
            }
    } else if (options.stop_at != kNoNode) {
        // Tentative labels beyond the stop node are not final.
        for (NodeId v = 0; v < n; ++v)
            if (!settled[v]) {
                dist[v] = kInfinity;
                parent[v] = kNoEdge;
            }
    }
    return ShortestPathTree(root, direction, std::move(dist), std::move(parent));
}

ShortestPathTree dijkstra(const RoadGraph& graph, NodeId root, Direction direction, WeightFn f) {
    return dijkstra(WeightOverlay(graph, f), root, direction);
}

Path shortest_path(const WeightOverlay& weights, NodeId s, NodeId t, const SearchOptions& options) {
    const RoadGraph& graph = weights.graph();
    if (s >= graph.node_count() || t >= graph.node_count())
        throw Error(ErrorCode::IdOutOfRange, "shortest_path endpoint");
    if (s == t) return Path{s, t, {}, 0};
    SearchOptions local = options;
    local.stop_at = t;
    const auto tree = dijkstra(weights, s, Direction::Forward, local);
    if (!tree.reached(t))
        throw Error(ErrorCode::NoRoute, "no route from " + std::to_string(s) + " to " + std::to_string(t));
    return Path{s, t, tree.route(graph, t), tree.distance(t)};
}

Path shortest_path(const RoadGraph& graph, NodeId s, NodeId t, WeightFn f) {
    return shortest_path(WeightOverlay(graph, f), s, t);
}

std::vector<Weight> undirected_ball(const RoadGraph& graph, WeightFn f, std::span<const NodeId> sources,
                                    Weight radius) {
    std::vector<Weight> dist(graph.node_count(), kInfinity);
    std::vector<std::uint8_t> settled(graph.node_count(), 0);
    MinQueue queue;
    for (NodeId s : sources) {
        dist[s] = 0;
        queue.emplace(0, s);
    }
    auto relax = [&](NodeId v, Weight nd) {
        if (nd < dist[v] && nd < radius) {
            dist[v] = nd;
            queue.emplace(nd, v);
        }
    };
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (settled[u] || d != dist[u]) continue;
        settled[u] = 1;
        for (EdgeId e : graph.out_edges(u)) relax(graph.target(e), d + graph.weight(e, f));
        for (EdgeId e : graph.in_edges(u)) relax(graph.source(e), d + graph.weight(e, f));
    }
    return dist;
}

} // namespace altroute
