#include "altroute/methods.hpp"

#include "altroute/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace altroute {

const char* to_string(Method m) noexcept {
    switch (m) {
    case Method::Plateau: return "plateau";
    case Method::Disjoint: return "disjoint";
    case Method::Yen: return "yen";
    case Method::Pareto: return "pareto";
    case Method::Penalty: return "penalty";
    }
    return "unknown";
}

Method method_from_string(const std::string& name) {
    for (Method m : {Method::Plateau, Method::Disjoint, Method::Yen, Method::Pareto, Method::Penalty})
        if (name == to_string(m)) return m;
    throw Error(ErrorCode::InvalidArgument, "unknown method '" + name + "'");
}

// ---------------------------------------------------------------- plateau

namespace {

struct PlateauRoute {
    std::vector<EdgeId> edges;
    Weight length = 0;
    Weight plateau_length = 0;
    NodeId plateau_from = kNoNode;
    NodeId plateau_to = kNoNode;
};

// All plateau routes between a and b, unsorted. Throws NoRoute.
std::vector<PlateauRoute> plateau_routes(const WeightOverlay& weights, NodeId a, NodeId b) {
    const RoadGraph& graph = weights.graph();
    const auto fwd = dijkstra(weights, a, Direction::Forward);
    if (!fwd.reached(b))
        throw Error(ErrorCode::NoRoute, "no route from " + std::to_string(a) + " to " + std::to_string(b));

    std::vector<std::uint8_t> prefer(graph.edge_count(), 0);
    for (NodeId v = 0; v < graph.node_count(); ++v)
        if (fwd.parent_edge(v) != kNoEdge) prefer[fwd.parent_edge(v)] = 1;
    for (EdgeId e : fwd.route(graph, b)) prefer[e] = 2;
    SearchOptions opts;
    opts.edge_preference = prefer;
    const auto bwd = dijkstra(weights, b, Direction::Backward, opts);

    // Each node has at most one forward parent and one backward successor, so
    // the shared edges form node-disjoint simple chains.
    std::vector<EdgeId> next(graph.node_count(), kNoEdge);
    std::vector<std::uint8_t> has_prev(graph.node_count(), 0);
    for (NodeId v = 0; v < graph.node_count(); ++v) {
        const EdgeId e = bwd.parent_edge(v);
        if (e == kNoEdge || !fwd.reached(graph.source(e)) || !fwd.is_tree_edge(graph, e)) continue;
        next[v] = e;
        has_prev[graph.target(e)] = 1;
    }

    std::vector<PlateauRoute> out;
    for (NodeId u = 0; u < graph.node_count(); ++u) {
        if (next[u] == kNoEdge || has_prev[u]) continue;
        PlateauRoute r;
        r.plateau_from = u;
        r.edges = fwd.route(graph, u);
        NodeId at = u;
        while (next[at] != kNoEdge) {
            r.edges.push_back(next[at]);
            at = graph.target(next[at]);
        }
        r.plateau_to = at;
        r.plateau_length = fwd.distance(at) - fwd.distance(u);
        const auto tail = bwd.route(graph, at);
        r.edges.insert(r.edges.end(), tail.begin(), tail.end());
        r.length = fwd.distance(u) + r.plateau_length + bwd.distance(at);
        out.push_back(std::move(r));
    }
    return out;
}

bool simple_route(const RoadGraph& graph, NodeId s, std::span<const EdgeId> edges) {
    std::vector<NodeId> nodes{s};
    for (EdgeId e : edges) nodes.push_back(graph.target(e));
    std::sort(nodes.begin(), nodes.end());
    return std::adjacent_find(nodes.begin(), nodes.end()) == nodes.end();
}

} // namespace

std::vector<Candidate> plateau_candidates(const WeightOverlay& weights, NodeId s, NodeId t,
                                          const PlateauConfig& cfg) {
    const RoadGraph& graph = weights.graph();
    if (cfg.partitions == 0) throw Error(ErrorCode::InvalidArgument, "plateau partitions must be >= 1");
    if (s == t) return {Candidate{Path{s, t, {}, 0}, 0, Method::Plateau, "trivial"}};

    auto routes = plateau_routes(weights, s, t);

    if (cfg.partitions > 1) {
        const auto base = shortest_path(weights, s, t);
        const auto nodes = base.nodes(graph);
        const std::size_t m = base.edges.size();
        const std::size_t parts = std::min(cfg.partitions, m);
        for (std::size_t i = 0; i < parts; ++i) {
            const std::size_t lo = i * m / parts;
            const std::size_t hi = (i + 1) * m / parts;
            if (hi - lo < 2) continue;
            const Weight prefix = path_weight(weights, std::span(base.edges).subspan(0, lo));
            const Weight suffix = path_weight(weights, std::span(base.edges).subspan(hi));
            for (auto& r : plateau_routes(weights, nodes[lo], nodes[hi])) {
                PlateauRoute full = r;
                full.edges.assign(base.edges.begin(), base.edges.begin() + static_cast<std::ptrdiff_t>(lo));
                full.edges.insert(full.edges.end(), r.edges.begin(), r.edges.end());
                full.edges.insert(full.edges.end(), base.edges.begin() + static_cast<std::ptrdiff_t>(hi), base.edges.end());
                full.length = prefix + r.length + suffix;
                routes.push_back(std::move(full));
            }
        }
    }

    std::sort(routes.begin(), routes.end(), [](const PlateauRoute& a, const PlateauRoute& b) {
        return std::tuple(a.length - a.plateau_length, a.length, a.plateau_from, a.edges) <
               std::tuple(b.length - b.plateau_length, b.length, b.plateau_from, b.edges);
    });
    std::vector<Candidate> out;
    std::set<std::vector<EdgeId>> seen;
    for (auto& r : routes) {
        if (out.size() >= cfg.max_candidates) break;
        if (!simple_route(graph, s, r.edges) || !seen.insert(r.edges).second) continue;
        Candidate c;
        c.rank_key = r.length - r.plateau_length;
        c.method = Method::Plateau;
        c.origin = "plateau " + std::to_string(r.plateau_from) + "->" + std::to_string(r.plateau_to) +
                       " length " + std::to_string(r.plateau_length);
        c.path = Path{s, t, std::move(r.edges), r.length};
        out.push_back(std::move(c));
    }
    return out;
}

// ---------------------------------------------------------------- disjoint

std::vector<Candidate> disjoint_candidates(const WeightOverlay& weights, NodeId s, NodeId t,
                                           std::size_t max_candidates) {
    const RoadGraph& graph = weights.graph();
    std::vector<std::uint8_t> blocked(graph.edge_count(), 0);
    std::vector<Candidate> out;
    SearchOptions opts;
    opts.blocked_edges = blocked;
    while (out.size() < max_candidates) {
        Path p;
        try {
            p = shortest_path(weights, s, t, opts);
        } catch (const Error& err) {
            if (err.code() == ErrorCode::NoRoute && !out.empty()) break;
            throw;
        }
        for (EdgeId e : p.edges) blocked[e] = 1;
        const Weight w = p.weight;
        out.push_back(Candidate{std::move(p), w, Method::Disjoint, "disjoint #" + std::to_string(out.size() + 1)});
        if (s == t) break;
    }
    return out;
}

// ---------------------------------------------------------------- yen

std::vector<Candidate> yen_candidates(const WeightOverlay& weights, NodeId s, NodeId t, std::size_t k,
                                      double max_stretch) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
    const RoadGraph& graph = weights.graph();
    std::vector<Path> accepted{shortest_path(weights, s, t)};
    const Weight base = accepted.front().weight;
    if (s == t) return {Candidate{accepted.front(), 0, Method::Yen, "yen #1"}};

    std::set<std::vector<EdgeId>> known{accepted.front().edges};
    std::set<std::pair<Weight, std::vector<EdgeId>>> pending;
    std::vector<std::uint8_t> blocked_edges(graph.edge_count(), 0);
    std::vector<std::uint8_t> blocked_nodes(graph.node_count(), 0);

    while (accepted.size() < k) {
        const Path& last = accepted.back();
        const auto nodes = last.nodes(graph);
        Weight root_weight = 0;
        for (std::size_t i = 0; i < last.edges.size(); ++i) {
            const NodeId spur = nodes[i];
            const std::span<const EdgeId> root(last.edges.data(), i);
            std::vector<EdgeId> cut;
            for (const Path& p : accepted)
                if (p.edges.size() > i && std::equal(root.begin(), root.end(), p.edges.begin())) cut.push_back(p.edges[i]);
            for (EdgeId e : cut) blocked_edges[e] = 1;
            for (std::size_t j = 0; j < i; ++j) blocked_nodes[nodes[j]] = 1;

            SearchOptions opts;
            opts.blocked_edges = blocked_edges;
            opts.blocked_nodes = blocked_nodes;
            try {
                Path spur_path = shortest_path(weights, spur, t, opts);
                std::vector<EdgeId> full(root.begin(), root.end());
                full.insert(full.end(), spur_path.edges.begin(), spur_path.edges.end());
                if (!known.count(full)) pending.emplace(root_weight + spur_path.weight, std::move(full));
            } catch (const Error& err) {
                if (err.code() != ErrorCode::NoRoute) throw;
            }

            for (EdgeId e : cut) blocked_edges[e] = 0;
            for (std::size_t j = 0; j < i; ++j) blocked_nodes[nodes[j]] = 0;
            root_weight += weights.effective(last.edges[i]);
        }
        if (pending.empty()) break;
        auto best = pending.extract(pending.begin()).value();
        if (!within_stretch(best.first, base, max_stretch)) break;
        known.insert(best.second);
        accepted.push_back(Path{s, t, std::move(best.second), best.first});
    }

    std::vector<Candidate> out;
    for (std::size_t i = 0; i < accepted.size(); ++i) {
        const Weight w = accepted[i].weight;
        out.push_back(Candidate{std::move(accepted[i]), w, Method::Yen, "yen #" + std::to_string(i + 1)});
    }
    return out;
}

// ---------------------------------------------------------------- pareto

namespace {

constexpr std::int64_t kRuleUnit = 1'000'000;

std::int64_t fixed(double x) { return std::llround(x * static_cast<double>(kRuleUnit)); }

struct DominanceRules {
    std::optional<std::int64_t> epsilon; // fixed-point
    std::optional<std::int64_t> gamma;   // fixed-point

    explicit DominanceRules(const ParetoConfig& cfg) {
        if (cfg.epsilon && std::isfinite(*cfg.epsilon)) epsilon = fixed(*cfg.epsilon);
        if (cfg.gamma) gamma = fixed(*cfg.gamma);
    }

    bool dominates(std::span<const Weight> a, std::span<const Weight> b) const {
        bool all_le = true;
        bool some_lt = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] > b[i]) all_le = false;
            if (a[i] < b[i]) some_lt = true;
        }
        if (all_le && some_lt) return true;
        using Wide = __int128;
        if (epsilon && Wide(b[0]) * kRuleUnit >= Wide(a[0]) * (kRuleUnit + *epsilon)) return true;
        if (gamma && b[0] > a[0]) {
            Wide sum_a = 0, sum_b = 0;
            for (std::size_t i = 1; i < a.size(); ++i) {
                sum_a += a[i];
                sum_b += b[i];
            }
            // sum_b / sum_a > a.len / (gamma * b.len), cross-multiplied.
            if (sum_b * *gamma * b[0] > sum_a * a[0] * kRuleUnit) return true;
        }
        return false;
    }
};

} // namespace

void ParetoConfig::check() const {
    if (criteria.size() < 2) throw Error(ErrorCode::InvalidArgument, "pareto needs at least two weight functions");
    if (epsilon && !(*epsilon > 0)) throw Error(ErrorCode::InvalidArgument, "pareto epsilon must be > 0");
    if (gamma && !(*gamma > 0 && std::isfinite(*gamma)))
        throw Error(ErrorCode::InvalidArgument, "pareto gamma must be finite and > 0");
    if (max_stretch && !(*max_stretch >= 0)) throw Error(ErrorCode::InvalidArgument, "max stretch must be >= 0");
    if (label_cap == 0) throw Error(ErrorCode::InvalidArgument, "label cap must be >= 1");
}

bool tightened_dominates(std::span<const Weight> a, std::span<const Weight> b, const ParetoConfig& cfg) {
    return DominanceRules(cfg).dominates(a, b);
}

ParetoResult pareto_candidates(const RoadGraph& graph, NodeId s, NodeId t, const ParetoConfig& cfg) {
    cfg.check();
    if (s >= graph.node_count() || t >= graph.node_count()) throw Error(ErrorCode::IdOutOfRange, "pareto endpoint");
    const std::size_t dims = cfg.criteria.size();
    std::vector<std::span<const Weight>> crit;
    for (const auto& name : cfg.criteria) crit.push_back(graph.weights(graph.weight_index(name)));
    const DominanceRules rules(cfg);

    const WeightFn length_fn = graph.weight_index(cfg.criteria.front());
    const auto lower = dijkstra(graph, t, Direction::Backward, length_fn);
    if (!lower.reached(s)) throw Error(ErrorCode::NoRoute, "no route from " + std::to_string(s) + " to " + std::to_string(t));
    const Weight base = lower.distance(s);

    std::vector<Weight> costs;       // flat, dims per label
    std::vector<NodeId> label_node;
    std::vector<std::uint32_t> parent;
    std::vector<EdgeId> via;
    std::vector<std::uint8_t> alive;
    std::vector<std::vector<std::uint32_t>> bag(graph.node_count());

    auto cost_of = [&](std::uint32_t id) { return std::span<const Weight>(costs.data() + id * dims, dims); };
    auto lex_greater = [&](std::uint32_t a, std::uint32_t b) {
        auto ca = cost_of(a), cb = cost_of(b);
        if (std::lexicographical_compare(cb.begin(), cb.end(), ca.begin(), ca.end())) return true;
        if (std::equal(ca.begin(), ca.end(), cb.begin())) return a > b;
        return false;
    };
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, decltype(lex_greater)> queue(lex_greater);

    ParetoResult result;
    auto blocked_by = [&](NodeId v, std::span<const Weight> c) {
        for (auto id : bag[v]) {
            auto other = cost_of(id);
            if (std::equal(other.begin(), other.end(), c.begin()) || rules.dominates(other, c)) return true;
        }
        return false;
    };

    costs.assign(dims, 0);
    label_node.push_back(s);
    parent.push_back(UINT32_MAX);
    via.push_back(kNoEdge);
    alive.push_back(1);
    bag[s].push_back(0);
    queue.push(0);

    std::vector<Weight> next(dims);
    while (!queue.empty()) {
        const std::uint32_t id = queue.top();
        queue.pop();
        if (!alive[id]) continue;
        const NodeId u = label_node[id];
        if (u == t) continue;
        for (EdgeId e : graph.out_edges(u)) {
            const NodeId v = graph.target(e);
            auto c = cost_of(id);
            for (std::size_t i = 0; i < dims; ++i) next[i] = c[i] + crit[i][e];
            if (!lower.reached(v)) continue;
            if (cfg.max_stretch && !within_stretch(next[0] + lower.distance(v), base, *cfg.max_stretch)) continue;
            if (v != t && blocked_by(t, next)) continue;
            if (blocked_by(v, next)) continue;

            if (label_node.size() >= cfg.label_cap) {
                result.label_cap_exceeded = true;
                break;
            }
            auto& b = bag[v];
            std::erase_if(b, [&](std::uint32_t other) {
                if (rules.dominates(next, cost_of(other))) {
                    alive[other] = 0;
                    return true;
                }
                return false;
            });
            const auto nid = static_cast<std::uint32_t>(label_node.size());
            costs.insert(costs.end(), next.begin(), next.end());
            label_node.push_back(v);
            parent.push_back(id);
            via.push_back(e);
            alive.push_back(1);
            b.push_back(nid);
            queue.push(nid);
        }
        if (result.label_cap_exceeded) break;
    }
    result.labels_created = label_node.size();

    std::vector<std::uint32_t> finals = bag[t];
    std::sort(finals.begin(), finals.end(), [&](std::uint32_t a, std::uint32_t b) { return lex_greater(b, a); });
    for (auto id : finals) {
        std::vector<EdgeId> edges;
        for (auto at = id; via[at] != kNoEdge; at = parent[at]) edges.push_back(via[at]);
        std::reverse(edges.begin(), edges.end());
        auto c = cost_of(id);
        std::string prov = "pareto (";
        for (std::size_t i = 0; i < dims; ++i) prov += (i ? ", " : "") + std::to_string(c[i]);
        prov += ")";
        Path p{s, t, std::move(edges), c[0]};
        result.candidates.push_back(Candidate{std::move(p), c[0], Method::Pareto, std::move(prov)});
    }
    if (result.candidates.empty() || result.candidates.front().path.weight != base) {
        // Only reachable when the label cap cut the search short.
        Path sp = shortest_path(graph, s, t, length_fn);
        const Weight w = sp.weight;
        result.candidates.insert(result.candidates.begin(), Candidate{std::move(sp), w, Method::Pareto, "pareto fallback"});
    }
    return result;
}

std::vector<Weight> shortest_path_overlap_weights(const RoadGraph& graph, NodeId s, NodeId t, WeightFn f) {
    std::vector<Weight> out(graph.edge_count(), 0);
    for (EdgeId e : shortest_path(graph, s, t, f).edges) out[e] = graph.weight(e, f);
    return out;
}

} // namespace altroute
