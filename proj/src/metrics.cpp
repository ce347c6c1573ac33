#include "altroute/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

namespace altroute {

namespace {

std::unordered_map<NodeId, Weight> ag_dijkstra(const AlternativeGraph& ag, NodeId root, bool forward) {
    std::unordered_map<NodeId, std::vector<std::pair<NodeId, Weight>>> adj;
    for (const auto& e : ag.edges) {
        if (forward) adj[e.from].emplace_back(e.to, e.weight);
        else adj[e.to].emplace_back(e.from, e.weight);
    }
    std::unordered_map<NodeId, Weight> dist;
    using Entry = std::pair<Weight, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[root] = 0;
    queue.emplace(0, root);
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (d != dist[u]) continue;
        auto it = adj.find(u);
        if (it == adj.end()) continue;
        for (const auto& [v, w] : it->second) {
            auto [slot, inserted] = dist.try_emplace(v, kInfinity);
            if (d + w < slot->second) {
                slot->second = d + w;
                queue.emplace(d + w, v);
            }
        }
    }
    return dist;
}

Rational position(const AGDistances& dist, NodeId u) {
    const Weight a = dist.source_to(u);
    const Weight b = dist.to_target_from(u);
    if (a == kInfinity || b == kInfinity)
        throw Error(ErrorCode::InvalidArgument, "node " + std::to_string(u) + " is not on an s-t route");
    if (a + b == 0) return Rational(0);
    Rational r(a, a + b);
    r.canonicalize();
    return r;
}

Rational rational_of(double x) { return Rational(x); }

} // namespace

Weight AGDistances::source_to(NodeId u) const {
    auto it = from_source.find(u);
    return it == from_source.end() ? kInfinity : it->second;
}

Weight AGDistances::to_target_from(NodeId u) const {
    auto it = to_target.find(u);
    return it == to_target.end() ? kInfinity : it->second;
}

AGDistances ag_distances(const AlternativeGraph& ag) {
    return AGDistances{ag_dijkstra(ag, ag.source, true), ag_dijkstra(ag, ag.target, false)};
}

Rational pos(const AlternativeGraph& ag, NodeId u) {
    if (std::find(ag.nodes.begin(), ag.nodes.end(), u) == ag.nodes.end())
        throw Error(ErrorCode::NodeNotInAG, "node " + std::to_string(u));
    return position(ag_distances(ag), u);
}

Rational total_distance(const AlternativeGraph& ag) {
    const auto dist = ag_distances(ag);
    Rational sum(0);
    for (const auto& e : ag.edges) {
        const Weight a = dist.source_to(e.from);
        const Weight b = dist.to_target_from(e.to);
        if (a == kInfinity || b == kInfinity)
            throw Error(ErrorCode::InvalidArgument, "edge not on an s-t route; validate the graph first");
        const Weight through = a + e.weight + b;
        if (through == 0) continue;
        Rational term(e.weight, through);
        term.canonicalize();
        sum += term;
    }
    return sum;
}

Rational average_distance(const AlternativeGraph& ag, Weight base_distance) {
    if (base_distance <= 0) throw Error(ErrorCode::ZeroBaseDistance, "d_G(s,t) must be positive");
    const Rational total = total_distance(ag);
    // An edgeless graph (s == t) carries no alternative at all.
    if (total == 0) return Rational(0);
    Weight sum = 0;
    for (const auto& e : ag.edges) sum += e.weight;
    Rational r = Rational(sum) / (Rational(base_distance) * total);
    r.canonicalize();
    return r;
}

std::int64_t decision_edges(const AlternativeGraph& ag) {
    const auto reduced = reduce(ag);
    if (reduced.edges.empty()) return 0;
    std::int64_t out = 0;
    for (const auto& e : reduced.edges)
        if (e.from != reduced.target) ++out;
    return out - 1;
}

std::int64_t PositionCoverage::count_at(const Rational& x) const {
    if (breakpoints.size() < 2) return 0;
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    std::size_t i = it == breakpoints.begin() ? 0 : static_cast<std::size_t>(it - breakpoints.begin()) - 1;
    i = std::min(i, counts.size() - 1);
    return counts[i];
}

PositionCoverage position_coverage(const AlternativeGraph& ag) {
    const auto reduced = reduce(ag);
    const auto dist = ag_distances(reduced);
    std::vector<std::pair<Rational, Rational>> spans;
    PositionCoverage cov;
    cov.breakpoints = {Rational(0), Rational(1)};
    for (const auto& e : reduced.edges) {
        Rational a = position(dist, e.from);
        Rational b = position(dist, e.to);
        if (b < a) std::swap(a, b);
        cov.breakpoints.push_back(a);
        cov.breakpoints.push_back(b);
        spans.emplace_back(std::move(a), std::move(b));
    }
    std::sort(cov.breakpoints.begin(), cov.breakpoints.end());
    cov.breakpoints.erase(std::unique(cov.breakpoints.begin(), cov.breakpoints.end()), cov.breakpoints.end());
    for (std::size_t i = 0; i + 1 < cov.breakpoints.size(); ++i) {
        std::int64_t count = 0;
        for (const auto& [lo, hi] : spans)
            if (lo <= cov.breakpoints[i] && cov.breakpoints[i + 1] <= hi) ++count;
        cov.counts.push_back(count);
    }
    return cov;
}

Rational variance(const AlternativeGraph& ag) {
    const Rational mean = total_distance(ag);
    const auto cov = position_coverage(ag);
    Rational sum(0);
    for (std::size_t i = 0; i < cov.counts.size(); ++i) {
        const Rational gap = mean - cov.counts[i];
        sum += gap * gap * (cov.breakpoints[i + 1] - cov.breakpoints[i]);
    }
    sum.canonicalize();
    return sum;
}

Rational cov_squared(const AlternativeGraph& ag) {
    const Rational mean = total_distance(ag);
    if (mean == 0) return Rational(0);
    Rational r = variance(ag) / (mean * mean);
    r.canonicalize();
    return r;
}

double coefficient_of_variation(const AlternativeGraph& ag) { return std::sqrt(cov_squared(ag).get_d()); }

MetricsReport compute_metrics(const AlternativeGraph& ag, Weight base_distance, std::uint64_t path_count_cap) {
    MetricsReport r;
    r.base_distance = base_distance;
    r.total_distance = total_distance(ag);
    r.average_distance = average_distance(ag, base_distance);
    r.decision_edges = decision_edges(ag);
    r.variance = variance(ag);
    if (r.total_distance != 0) {
        r.cov_squared = r.variance / (r.total_distance * r.total_distance);
        r.cov_squared.canonicalize();
    }
    r.coefficient_of_variation = std::sqrt(r.cov_squared.get_d());
    r.simple_path_count = count_simple_paths(ag, path_count_cap);
    return r;
}

void ObjectiveConfig::check() const {
    if (!(alpha >= 0) || !std::isfinite(alpha)) throw Error(ErrorCode::InvalidArgument, "alpha must be >= 0");
    if (!(max_stretch >= 0)) throw Error(ErrorCode::InvalidArgument, "max stretch must be >= 0");
    if (max_decision_edges < 0) throw Error(ErrorCode::InvalidArgument, "max decision edges must be >= 0");
    if (max_cov && !(*max_cov >= 0)) throw Error(ErrorCode::InvalidArgument, "max CoV must be >= 0");
}

bool within_stretch(Weight weight, Weight base, double stretch) {
    if (std::isinf(stretch) && stretch > 0) return true;
    return Rational(weight) <= (Rational(1) + rational_of(stretch)) * Rational(base);
}

Rational objective_score(const AlternativeGraph& ag, double alpha, Weight base_distance) {
    if (base_distance <= 0) throw Error(ErrorCode::ZeroBaseDistance, "d_G(s,t) must be positive");
    const Rational total = total_distance(ag);
    if (total == 0) return total;
    Weight sum = 0;
    for (const auto& e : ag.edges) sum += e.weight;
    Rational score = total - rational_of(alpha) * Rational(sum) / (Rational(base_distance) * total);
    score.canonicalize();
    return score;
}

Evaluation evaluate(const AlternativeGraph& ag, const ObjectiveConfig& cfg, Weight base_distance,
                    std::span<const Weight> path_weights) {
    cfg.check();
    Evaluation ev;
    ev.report = compute_metrics(ag, base_distance);
    ev.score = ev.report.total_distance - rational_of(cfg.alpha) * ev.report.average_distance;
    ev.score.canonicalize();

    bool feasible = ev.report.decision_edges <= cfg.max_decision_edges;
    for (Weight w : path_weights) feasible = feasible && within_stretch(w, base_distance, cfg.max_stretch);
    if (feasible) {
        const auto dist = ag_distances(ag);
        for (const auto& e : ag.edges) {
            const Weight through = dist.source_to(e.from) + e.weight + dist.to_target_from(e.to);
            if (!within_stretch(through, base_distance, cfg.max_stretch)) {
                feasible = false;
                break;
            }
        }
    }
    if (feasible && cfg.max_cov) {
        const Rational cap = rational_of(*cfg.max_cov);
        feasible = ev.report.cov_squared <= cap * cap;
    }
    ev.feasible = feasible;
    return ev;
}

} // namespace altroute
