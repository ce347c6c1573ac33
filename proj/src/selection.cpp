#include "altroute/selection.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <unordered_set>

namespace altroute {

SelectionResult greedy_select(const RoadGraph& graph, NodeId s, NodeId t, std::span<const Candidate> candidates,
                              const ObjectiveConfig& cfg, WeightFn main) {
    if (candidates.empty()) throw Error(ErrorCode::NoCandidates, "greedy selection needs at least one candidate");
    cfg.check();
    const Weight base = shortest_path(graph, s, t, main).weight;

    std::vector<Weight> weights;
    for (const auto& c : candidates) {
        if (c.path.source != s || c.path.target != t)
            throw Error(ErrorCode::InvalidPath, "candidate does not run from source to target");
        weights.push_back(path_weight(graph, c.path.edges, main));
    }
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(weights[a], candidates[a].rank_key) < std::tie(weights[b], candidates[b].rank_key);
    });

    SelectionResult out;
    std::vector<Path> paths{candidates[order.front()].path};
    std::vector<Weight> path_weights{weights[order.front()]};
    out.chosen.push_back(order.front());
    out.ag = ag_from_paths(graph, paths, s, t, main);
    out.evaluation = evaluate(out.ag, cfg, base, path_weights);
    out.scores.push_back(out.evaluation.score);

    std::vector<bool> taken(candidates.size(), false);
    taken[order.front()] = true;
    for (;;) {
        std::unordered_set<EdgeId> current;
        for (const auto& p : paths) current.insert(p.edges.begin(), p.edges.end());

        std::optional<std::size_t> best;
        AlternativeGraph best_ag;
        Evaluation best_eval;
        for (std::size_t idx : order) {
            if (taken[idx]) continue;
            if (!within_stretch(weights[idx], base, cfg.max_stretch)) continue;
            const auto& edges = candidates[idx].path.edges;
            if (std::all_of(edges.begin(), edges.end(), [&](EdgeId e) { return current.count(e) > 0; })) continue;

            paths.push_back(candidates[idx].path);
            path_weights.push_back(weights[idx]);
            auto ag = ag_from_paths(graph, paths, s, t, main);
            auto ev = evaluate(ag, cfg, base, path_weights);
            paths.pop_back();
            path_weights.pop_back();

            if (!ev.feasible || ev.score <= out.evaluation.score) continue;
            // `order` already sorts by weight then rank key, so only a strictly
            // better score replaces the incumbent.
            if (!best || ev.score > best_eval.score) {
                best = idx;
                best_ag = std::move(ag);
                best_eval = std::move(ev);
            }
        }
        if (!best) break;
        taken[*best] = true;
        paths.push_back(candidates[*best].path);
        path_weights.push_back(weights[*best]);
        out.chosen.push_back(*best);
        out.ag = std::move(best_ag);
        out.evaluation = std::move(best_eval);
        out.scores.push_back(out.evaluation.score);
    }
    return out;
}

namespace {

// The shortest s-t route inside the graph, as a one-edge reduced graph.
AlternativeGraph best_single_route(const AlternativeGraph& reduced) {
    const auto dist = ag_distances(reduced);
    AlternativeGraph out;
    out.source = reduced.source;
    out.target = reduced.target;
    out.main_weight = reduced.main_weight;
    out.nodes = {reduced.source, reduced.target};
    NodeId at = reduced.source;
    std::size_t guard = 0;
    while (at != reduced.target && guard++ <= reduced.edges.size()) {
        const AGEdge* next = nullptr;
        for (const auto& e : reduced.edges) {
            if (e.from != at) continue;
            const Weight rest = dist.to_target_from(e.to);
            if (rest == kInfinity || e.weight + rest != dist.to_target_from(at)) continue;
            next = &e;
            break;
        }
        if (!next) break;
        out.edges.push_back(*next);
        out.nodes.push_back(next->to);
        at = next->to;
    }
    canonicalize(out);
    return reduce(out);
}

bool routes_within_stretch(const AlternativeGraph& g, const ObjectiveConfig& cfg, Weight base) {
    const auto dist = ag_distances(g);
    for (const auto& e : g.edges)
        if (!within_stretch(dist.source_to(e.from) + e.weight + dist.to_target_from(e.to), base, cfg.max_stretch))
            return false;
    return true;
}

// Same topology, but every edge carries a single token (its index) instead of
// its road segment, so pruning and contracting trial graphs stays cheap.
AlternativeGraph skeleton(const AlternativeGraph& reduced) {
    AlternativeGraph out = reduced;
    for (std::size_t i = 0; i < out.edges.size(); ++i) {
        auto& e = out.edges[i];
        e.underlying = Segment{{e.from, e.to}, {static_cast<EdgeId>(i)}, {e.weight}};
    }
    return out;
}

AlternativeGraph flesh_out(const AlternativeGraph& reduced, const AlternativeGraph& skel) {
    std::vector<bool> keep(reduced.edges.size(), false);
    for (const auto& e : skel.edges)
        for (EdgeId token : e.underlying.edges) keep[token] = true;
    AlternativeGraph out;
    out.source = reduced.source;
    out.target = reduced.target;
    out.main_weight = reduced.main_weight;
    out.nodes = {reduced.source, reduced.target};
    for (std::size_t i = 0; i < reduced.edges.size(); ++i) {
        if (!keep[i]) continue;
        out.edges.push_back(reduced.edges[i]);
        out.nodes.push_back(reduced.edges[i].from);
        out.nodes.push_back(reduced.edges[i].to);
    }
    std::sort(out.nodes.begin(), out.nodes.end());
    out.nodes.erase(std::unique(out.nodes.begin(), out.nodes.end()), out.nodes.end());
    return reduce(prune(out));
}

} // namespace

AlternativeGraph refine(const AlternativeGraph& ag, const ObjectiveConfig& cfg, Weight base_distance) {
    cfg.check();
    const AlternativeGraph full = reduce(prune(ag));
    Evaluation cur_eval = evaluate(full, cfg, base_distance);
    AlternativeGraph cur = skeleton(full);

    struct Trial {
        AlternativeGraph ag;
        Rational score;
        std::int64_t decisions = 0;
        bool feasible = false;
    };
    auto judge = [&](AlternativeGraph g) {
        Trial trial;
        trial.score = objective_score(g, cfg.alpha, base_distance);
        trial.decisions = decision_edges(g);
        trial.feasible = trial.decisions <= cfg.max_decision_edges && routes_within_stretch(g, cfg, base_distance) &&
                         (!cfg.max_cov || cov_squared(g) <= Rational(*cfg.max_cov) * Rational(*cfg.max_cov));
        trial.ag = std::move(g);
        return trial;
    };
    // Feasible beats infeasible, then higher score, then fewer decision edges.
    auto better = [](const Trial& a, const Trial& b) {
        if (a.feasible != b.feasible) return a.feasible;
        if (a.score != b.score) return a.score > b.score;
        return a.decisions < b.decisions;
    };

    Trial current = judge(cur);
    bool changed = false;
    while (current.ag.edges.size() > 1) {
        std::optional<Trial> best;
        for (std::size_t i = 0; i < current.ag.edges.size(); ++i) {
            AlternativeGraph g = current.ag;
            g.edges.erase(g.edges.begin() + static_cast<std::ptrdiff_t>(i));
            g = reduce(prune(g));
            if (g.edges.empty()) continue;
            Trial trial = judge(std::move(g));
            if (!best || better(trial, *best)) best = std::move(trial);
        }
        if (!best) break;
        if (current.feasible && !(best->feasible && best->score > current.score)) break;
        current = std::move(*best);
        changed = true;
    }
    cur = changed ? flesh_out(full, current.ag) : full;
    if (changed) cur_eval = evaluate(cur, cfg, base_distance);

    auto single = best_single_route(cur);
    if (!single.edges.empty() && single != cur) {
        auto ev = evaluate(single, cfg, base_distance);
        if ((ev.feasible && !cur_eval.feasible) || (ev.feasible == cur_eval.feasible && ev.score > cur_eval.score))
            return single;
    }
    return cur;
}

} // namespace altroute
