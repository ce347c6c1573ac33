#include "altroute/alternative_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

namespace altroute {

const char* to_string(Violation::Kind kind) noexcept {
    switch (kind) {
    case Violation::Kind::MissingEndpoint: return "MissingEndpoint";
    case Violation::Kind::UnknownNode: return "UnknownNode";
    case Violation::Kind::UnreachableFromSource: return "UnreachableFromSource";
    case Violation::Kind::CannotReachTarget: return "CannotReachTarget";
    case Violation::Kind::WeightMismatch: return "WeightMismatch";
    case Violation::Kind::BrokenUnderlying: return "BrokenUnderlying";
    }
    return "Unknown";
}

void canonicalize(AlternativeGraph& ag) {
    std::sort(ag.nodes.begin(), ag.nodes.end());
    ag.nodes.erase(std::unique(ag.nodes.begin(), ag.nodes.end()), ag.nodes.end());
    std::sort(ag.edges.begin(), ag.edges.end(), [](const AGEdge& a, const AGEdge& b) {
        return std::tie(a.from, a.to, a.weight, a.underlying) < std::tie(b.from, b.to, b.weight, b.underlying);
    });
}

AlternativeGraph ag_from_paths(const RoadGraph& graph, std::span<const Path> paths, NodeId s, NodeId t,
                               WeightFn main) {
    AlternativeGraph ag;
    ag.source = s;
    ag.target = t;
    ag.main_weight = graph.weight_name(main);
    std::set<EdgeId> used;
    ag.nodes = {s, t};
    for (const Path& p : paths) {
        if (p.source != s || p.target != t)
            throw Error(ErrorCode::InvalidPath, "candidate path does not run from source to target");
        NodeId at = s;
        for (EdgeId e : p.edges) {
            if (e >= graph.edge_count() || graph.source(e) != at)
                throw Error(ErrorCode::InvalidPath, "candidate path is not connected");
            at = graph.target(e);
            used.insert(e);
            ag.nodes.push_back(at);
        }
        if (at != t) throw Error(ErrorCode::InvalidPath, "candidate path does not reach the target");
    }
    for (EdgeId e : used) {
        const NodeId u = graph.source(e);
        const NodeId v = graph.target(e);
        const Weight w = graph.weight(e, main);
        ag.edges.push_back(AGEdge{u, v, w, Segment{{u, v}, {e}, {w}}});
    }
    canonicalize(ag);
    return ag;
}

namespace {

struct Reachability {
    std::vector<bool> from_source;
    std::vector<bool> to_target;
};

// Reachability over the AG's own edges, keyed by position in `ag.nodes`.
// Edges with endpoints outside the node list are ignored.
Reachability reachability(const AlternativeGraph& ag, const std::unordered_map<NodeId, std::size_t>& index) {
    const std::size_t n = ag.nodes.size();
    std::vector<std::vector<std::size_t>> out(n), in(n);
    for (const auto& e : ag.edges) {
        auto fu = index.find(e.from);
        auto fv = index.find(e.to);
        if (fu == index.end() || fv == index.end()) continue;
        out[fu->second].push_back(fv->second);
        in[fv->second].push_back(fu->second);
    }
    auto sweep = [n](std::size_t start, const std::vector<std::vector<std::size_t>>& adj) {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{start};
        seen[start] = true;
        while (!stack.empty()) {
            const auto u = stack.back();
            stack.pop_back();
            for (auto v : adj[u])
                if (!seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
        }
        return seen;
    };
    Reachability r;
    r.from_source = index.count(ag.source) ? sweep(index.at(ag.source), out) : std::vector<bool>(n, false);
    r.to_target = index.count(ag.target) ? sweep(index.at(ag.target), in) : std::vector<bool>(n, false);
    return r;
}

std::unordered_map<NodeId, std::size_t> node_index(const AlternativeGraph& ag) {
    std::unordered_map<NodeId, std::size_t> index;
    for (std::size_t i = 0; i < ag.nodes.size(); ++i) index.emplace(ag.nodes[i], i);
    return index;
}

std::string edge_name(const AGEdge& e) {
    return "(" + std::to_string(e.from) + " -> " + std::to_string(e.to) + ")";
}

} // namespace

std::vector<Violation> validate(const AlternativeGraph& ag) {
    std::vector<Violation> out;
    const auto index = node_index(ag);
    if (!index.count(ag.source))
        out.push_back({Violation::Kind::MissingEndpoint, kNoEdge, ag.source, "source not in node list"});
    if (!index.count(ag.target))
        out.push_back({Violation::Kind::MissingEndpoint, kNoEdge, ag.target, "target not in node list"});

    std::vector<bool> touched(ag.nodes.size(), false);
    const auto reach = reachability(ag, index);
    for (EdgeId i = 0; i < ag.edges.size(); ++i) {
        const auto& e = ag.edges[i];
        auto fu = index.find(e.from);
        auto fv = index.find(e.to);
        if (fu == index.end() || fv == index.end()) {
            out.push_back({Violation::Kind::UnknownNode, i, kNoNode, "edge " + edge_name(e) + " uses a node outside the node list"});
            continue;
        }
        if (!reach.from_source[fu->second]) {
            touched[fu->second] = touched[fv->second] = true;
            out.push_back({Violation::Kind::UnreachableFromSource, i, kNoNode,
                           "edge " + edge_name(e) + " is not reachable from the source"});
        } else if (!reach.to_target[fv->second]) {
            touched[fu->second] = touched[fv->second] = true;
            out.push_back({Violation::Kind::CannotReachTarget, i, kNoNode,
                           "edge " + edge_name(e) + " cannot reach the target"});
        }

        const auto& seg = e.underlying;
        const bool shape_ok = !seg.nodes.empty() && seg.nodes.size() == seg.edges.size() + 1 &&
                              seg.steps.size() == seg.edges.size() && seg.nodes.front() == e.from &&
                              seg.nodes.back() == e.to;
        if (!shape_ok) {
            out.push_back({Violation::Kind::BrokenUnderlying, i, kNoNode,
                           "edge " + edge_name(e) + " has a malformed underlying route"});
        } else if (std::accumulate(seg.steps.begin(), seg.steps.end(), Weight{0}) != e.weight) {
            out.push_back({Violation::Kind::WeightMismatch, i, kNoNode,
                           "edge " + edge_name(e) + " weight " + std::to_string(e.weight) +
                               " differs from its underlying route"});
        }
    }
    for (std::size_t i = 0; i < ag.nodes.size(); ++i) {
        if (touched[i]) continue;
        if (!reach.from_source[i] || !reach.to_target[i])
            out.push_back({reach.from_source[i] ? Violation::Kind::CannotReachTarget
                                                : Violation::Kind::UnreachableFromSource,
                           kNoEdge, ag.nodes[i], "node " + std::to_string(ag.nodes[i]) + " is not on any s-t route"});
    }
    return out;
}

std::vector<Violation> validate_against(const RoadGraph& graph, const AlternativeGraph& ag) {
    auto out = validate(ag);
    WeightFn main = 0;
    try {
        main = graph.weight_index(ag.main_weight);
    } catch (const Error&) {
        out.push_back({Violation::Kind::BrokenUnderlying, kNoEdge, kNoNode,
                       "unknown main weight '" + ag.main_weight + "'"});
        return out;
    }
    for (EdgeId i = 0; i < ag.edges.size(); ++i) {
        const auto& seg = ag.edges[i].underlying;
        if (seg.nodes.size() != seg.edges.size() + 1 || seg.steps.size() != seg.edges.size()) continue;
        for (std::size_t k = 0; k < seg.edges.size(); ++k) {
            const EdgeId e = seg.edges[k];
            if (e >= graph.edge_count() || graph.source(e) != seg.nodes[k] || graph.target(e) != seg.nodes[k + 1] ||
                graph.weight(e, main) != seg.steps[k]) {
                out.push_back({Violation::Kind::BrokenUnderlying, i, kNoNode,
                               "edge " + edge_name(ag.edges[i]) + " step " + std::to_string(k) +
                                   " does not match the road graph"});
                break;
            }
        }
    }
    return out;
}

AlternativeGraph reduce(const AlternativeGraph& ag) {
    std::unordered_map<NodeId, std::vector<std::size_t>> out_of;
    std::unordered_map<NodeId, std::size_t> indeg;
    for (std::size_t i = 0; i < ag.edges.size(); ++i) {
        out_of[ag.edges[i].from].push_back(i);
        ++indeg[ag.edges[i].to];
    }
    auto contractible = [&](NodeId v) {
        if (v == ag.source || v == ag.target) return false;
        auto o = out_of.find(v);
        auto in = indeg.find(v);
        if (o == out_of.end() || in == indeg.end() || o->second.size() != 1 || in->second != 1) return false;
        return ag.edges[o->second.front()].to != v;
    };

    AlternativeGraph out;
    out.source = ag.source;
    out.target = ag.target;
    out.main_weight = ag.main_weight;
    for (NodeId v : ag.nodes)
        if (!contractible(v)) out.nodes.push_back(v);

    for (std::size_t i = 0; i < ag.edges.size(); ++i) {
        const auto& first = ag.edges[i];
        if (contractible(first.from)) continue;
        AGEdge merged = first;
        std::size_t guard = 0;
        while (contractible(merged.to) && guard++ <= ag.edges.size()) {
            const auto& next = ag.edges[out_of[merged.to].front()];
            merged.weight += next.weight;
            auto& seg = merged.underlying;
            seg.nodes.insert(seg.nodes.end(), next.underlying.nodes.begin() + 1, next.underlying.nodes.end());
            seg.edges.insert(seg.edges.end(), next.underlying.edges.begin(), next.underlying.edges.end());
            seg.steps.insert(seg.steps.end(), next.underlying.steps.begin(), next.underlying.steps.end());
            merged.to = next.to;
        }
        out.edges.push_back(std::move(merged));
    }
    canonicalize(out);
    return out;
}

AlternativeGraph expand(const AlternativeGraph& ag) {
    AlternativeGraph out;
    out.source = ag.source;
    out.target = ag.target;
    out.main_weight = ag.main_weight;
    out.nodes = {ag.source, ag.target};
    std::map<EdgeId, AGEdge> unique;
    for (const auto& e : ag.edges) {
        const auto& seg = e.underlying;
        for (std::size_t k = 0; k < seg.edges.size(); ++k) {
            out.nodes.push_back(seg.nodes[k]);
            out.nodes.push_back(seg.nodes[k + 1]);
            unique.try_emplace(seg.edges[k], AGEdge{seg.nodes[k], seg.nodes[k + 1], seg.steps[k],
                                                    Segment{{seg.nodes[k], seg.nodes[k + 1]}, {seg.edges[k]}, {seg.steps[k]}}});
        }
    }
    for (auto& [id, edge] : unique) out.edges.push_back(std::move(edge));
    canonicalize(out);
    return out;
}

AlternativeGraph prune(const AlternativeGraph& ag) {
    AlternativeGraph cur = ag;
    canonicalize(cur);
    for (;;) {
        const auto index = node_index(cur);
        if (!index.count(cur.source) || !index.count(cur.target)) return cur;
        const auto reach = reachability(cur, index);
        AlternativeGraph next;
        next.source = cur.source;
        next.target = cur.target;
        next.main_weight = cur.main_weight;
        for (const auto& e : cur.edges) {
            auto fu = index.find(e.from);
            auto fv = index.find(e.to);
            if (fu == index.end() || fv == index.end()) continue;
            if (reach.from_source[fu->second] && reach.to_target[fv->second]) next.edges.push_back(e);
        }
        next.nodes = {cur.source, cur.target};
        for (const auto& e : next.edges) {
            next.nodes.push_back(e.from);
            next.nodes.push_back(e.to);
        }
        canonicalize(next);
        if (next == cur) return cur;
        cur = std::move(next);
    }
}

AlternativeGraph merge(const RoadGraph& graph, std::span<const AlternativeGraph> ags,
                       const std::string& main_weight) {
    if (ags.empty()) throw Error(ErrorCode::InvalidArgument, "merge needs at least one alternative graph");
    const WeightFn main = graph.weight_index(main_weight);
    AlternativeGraph uni;
    uni.source = ags.front().source;
    uni.target = ags.front().target;
    uni.main_weight = main_weight;
    uni.nodes = {uni.source, uni.target};
    std::set<EdgeId> used;
    for (const auto& ag : ags) {
        if (ag.source != uni.source || ag.target != uni.target)
            throw Error(ErrorCode::MixedEndpoints, "merged alternative graphs must share source and target");
        for (EdgeId e : road_edges(ag)) {
            if (e >= graph.edge_count()) throw Error(ErrorCode::IdOutOfRange, "underlying edge id");
            used.insert(e);
        }
    }
    for (EdgeId e : used) {
        const NodeId u = graph.source(e);
        const NodeId v = graph.target(e);
        const Weight w = graph.weight(e, main);
        uni.nodes.push_back(u);
        uni.nodes.push_back(v);
        uni.edges.push_back(AGEdge{u, v, w, Segment{{u, v}, {e}, {w}}});
    }
    canonicalize(uni);
    return reduce(prune(uni));
}

std::vector<EdgeId> road_edges(const AlternativeGraph& ag) {
    std::vector<EdgeId> out;
    for (const auto& e : ag.edges) out.insert(out.end(), e.underlying.edges.begin(), e.underlying.edges.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t count_simple_paths(const AlternativeGraph& ag, std::uint64_t cap) {
    if (cap == 0) throw Error(ErrorCode::InvalidArgument, "count_simple_paths cap must be >= 1");
    const auto index = node_index(ag);
    if (!index.count(ag.source) || !index.count(ag.target)) return 0;
    if (ag.source == ag.target) return 1;
    const std::size_t n = ag.nodes.size();
    std::vector<std::vector<std::size_t>> out(n);
    for (const auto& e : ag.edges) {
        auto fu = index.find(e.from);
        auto fv = index.find(e.to);
        if (fu != index.end() && fv != index.end()) out[fu->second].push_back(fv->second);
    }
    const auto reach = reachability(ag, index);
    const std::size_t s = index.at(ag.source);
    const std::size_t t = index.at(ag.target);

    // Acyclic graphs: saturating path counts in reverse topological order.
    std::vector<std::size_t> indeg(n, 0), order;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v : out[u]) ++indeg[v];
    for (std::size_t u = 0; u < n; ++u)
        if (indeg[u] == 0) order.push_back(u);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t v : out[order[i]])
            if (--indeg[v] == 0) order.push_back(v);
    if (order.size() == n) {
        std::vector<std::uint64_t> paths(n, 0);
        paths[t] = 1;
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            if (*it == t) continue;
            std::uint64_t sum = 0;
            for (std::size_t v : out[*it]) sum = std::min(cap, sum + paths[v]);
            paths[*it] = sum;
        }
        return std::min(paths[s], cap);
    }

    std::uint64_t count = 0;
    std::vector<bool> on_path(n, false);
    // Iterative DFS: frame = (node, next child position).
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    on_path[s] = true;
    while (!stack.empty() && count < cap) {
        auto& [u, child] = stack.back();
        if (child == out[u].size()) {
            on_path[u] = false;
            stack.pop_back();
            continue;
        }
        const std::size_t v = out[u][child++];
        if (on_path[v] || !reach.to_target[v]) continue;
        if (v == t) {
            ++count;
            continue;
        }
        on_path[v] = true;
        stack.emplace_back(v, 0);
    }
    return std::min(count, cap);
}

} // namespace altroute
