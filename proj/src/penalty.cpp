#include "altroute/penalty.hpp"

#include "altroute/metrics.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>

namespace altroute {

double grade_constant(double) { return 1.0; }
double grade_favor_start(double pos) { return 2.0 - 2.0 * pos; }
double grade_favor_end(double pos) { return 2.0 * pos; }

void PenaltyConfig::check() const {
    if (!std::isfinite(factor) || factor < 1.0) throw Error(ErrorCode::InvalidArgument, "penalty factor must be >= 1");
    if (!(rejoin_fraction >= 0.0 && rejoin_fraction <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "rejoin fraction must lie in [0, 1]");
    if (max_increases_per_edge < 1) throw Error(ErrorCode::InvalidArgument, "max increases per edge must be >= 1");
    if (!(increase_damping > 0.0 && increase_damping <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "increase damping must lie in (0, 1]");
    if (max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max iterations must be >= 1");
    if (tube_radius < 0) throw Error(ErrorCode::InvalidArgument, "tube radius must be >= 0");
    if (!(tube_decay > 0.0)) throw Error(ErrorCode::InvalidArgument, "tube decay must be > 0");
    if (!(cov_penalty_scale >= 0.0)) throw Error(ErrorCode::InvalidArgument, "CoV penalty scale must be >= 0");
    if (!(max_stretch >= 0.0)) throw Error(ErrorCode::InvalidArgument, "max stretch must be >= 0");
    if (!(min_new_fraction >= 0.0 && min_new_fraction <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "minimum new fraction must lie in [0, 1]");
    if (resolution < 1) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 1");
}

PenaltyState::PenaltyState(const RoadGraph& graph, NodeId s, NodeId t, WeightFn main, Weight resolution)
    : overlay(graph, main, resolution) {
    ag.source = s;
    ag.target = t;
    ag.main_weight = graph.weight_name(main);
    ag.nodes = {s, t};
    canonicalize(ag);
}

void PenaltyState::add_path(const Path& path) {
    const RoadGraph& graph = overlay.graph();
    const WeightFn main = overlay.base();
    for (EdgeId e : path.edges) {
        if (!ag_edges.insert(e).second) continue;
        const NodeId u = graph.source(e);
        const NodeId v = graph.target(e);
        const Weight w = graph.weight(e, main);
        ag.edges.push_back(AGEdge{u, v, w, Segment{{u, v}, {e}, {w}}});
        ag.nodes.push_back(u);
        ag.nodes.push_back(v);
        ag_nodes.insert(u);
        ag_nodes.insert(v);
    }
    canonicalize(ag);
}

namespace {

std::int64_t step_factor(const PenaltyConfig& cfg, std::int64_t prior_increases) {
    const double step = 1.0 + (cfg.factor - 1.0) * std::pow(cfg.increase_damping, static_cast<double>(prior_increases));
    return to_fixed_factor(step);
}

// One capped multiplicative increase; true when the weight actually grew.
bool increase(PenaltyState& state, EdgeId e, std::int64_t factor, const PenaltyConfig& cfg) {
    auto& count = state.increase_count[e];
    if (count >= cfg.max_increases_per_edge || factor <= WeightOverlay::kFactorUnit) return false;
    const Weight before = state.overlay.effective(e);
    state.overlay.multiply(e, factor);
    ++count;
    return state.overlay.effective(e) > before || state.overlay.graph().weight(e, state.overlay.base()) == 0;
}

} // namespace

std::size_t apply_factor_increase(PenaltyState& state, const Path& path, const PenaltyConfig& cfg) {
    std::size_t increased = 0;
    for (EdgeId e : path.edges) {
        const auto prior = state.increase_count.count(e) ? state.increase_count[e] : 0;
        if (increase(state, e, step_factor(cfg, prior), cfg)) ++increased;
    }
    return increased;
}

std::size_t apply_tube_increase(PenaltyState& state, const Path& path, const PenaltyConfig& cfg,
                                std::size_t* path_increases) {
    if (path_increases) *path_increases = 0;
    if (cfg.tube_radius <= 0) return 0;
    const RoadGraph& graph = state.overlay.graph();
    const WeightFn main = state.overlay.base();
    const auto nodes = path.nodes(graph);
    const auto dist = undirected_ball(graph, main, nodes, cfg.tube_radius);
    std::unordered_set<EdgeId> on_path(path.edges.begin(), path.edges.end());

    std::size_t touched = 0;
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        const Weight du = dist[graph.source(e)];
        const Weight dv = dist[graph.target(e)];
        if (du >= cfg.tube_radius || dv >= cfg.tube_radius) continue;
        const double reach = on_path.count(e) ? 0.0 : static_cast<double>(std::max(du, dv));
        const double closeness = 1.0 - reach / static_cast<double>(cfg.tube_radius);
        const auto prior = state.increase_count.count(e) ? state.increase_count[e] : 0;
        const double damped = (cfg.factor - 1.0) * std::pow(cfg.increase_damping, static_cast<double>(prior));
        const auto factor = to_fixed_factor(1.0 + damped * std::pow(closeness, cfg.tube_decay));
        if (increase(state, e, factor, cfg)) {
            ++touched;
            if (path_increases && on_path.count(e)) ++*path_increases;
        }
    }
    return touched;
}

std::size_t apply_rejoin_penalty(PenaltyState& state, const Path& path, const PenaltyConfig& cfg) {
    if (state.ag_edges.empty() || cfg.rejoin_fraction == 0.0) return 0;
    const RoadGraph& graph = state.overlay.graph();
    const double bound = (cfg.factor - 1.0) * static_cast<double>(state.base_distance);
    const double amount = cfg.rejoin_fraction * bound * static_cast<double>(state.overlay.resolution());
    const auto dist = ag_distances(state.ag);
    auto position = [&](NodeId u) {
        const Weight a = dist.source_to(u);
        const Weight b = dist.to_target_from(u);
        if (a == kInfinity || b == kInfinity || a + b == 0) return 0.0;
        return static_cast<double>(a) / static_cast<double>(a + b);
    };

    std::size_t penalised = 0;
    for (EdgeId e : path.edges) {
        const NodeId u = graph.source(e);
        const NodeId v = graph.target(e);
        const bool tail_on = state.ag_nodes.count(u) > 0;
        const bool head_on = state.ag_nodes.count(v) > 0;
        if (tail_on == head_on) continue;
        const NodeId junction = tail_on ? u : v;
        const double grade = cfg.rejoin_grading ? cfg.rejoin_grading(position(junction)) : 1.0;
        const auto add = static_cast<Weight>(std::llround(std::max(0.0, amount * grade)));
        state.overlay.add(e, add);
        ++penalised;
    }
    return penalised;
}

void apply_cov_penalty(PenaltyState& state, const PenaltyConfig& cfg) {
    for (const auto& [e, amount] : state.balance) state.overlay.add(e, -amount);
    state.balance.clear();
    if (cfg.cov_penalty_scale <= 0.0 || state.ag_edges.empty()) return;

    const auto cov = coefficient_of_variation(state.ag);
    if (cov == 0.0) return;
    const Rational mean = total_distance(state.ag);
    const auto coverage = position_coverage(state.ag);
    const auto dist = ag_distances(state.ag);
    auto position = [&](NodeId u) {
        const Weight a = dist.source_to(u);
        const Weight b = dist.to_target_from(u);
        return a + b == 0 ? Rational(0) : Rational(a, a + b);
    };
    const RoadGraph& graph = state.overlay.graph();
    for (const auto& edge : state.ag.edges) {
        const Rational mid = (position(edge.from) + position(edge.to)) / 2;
        const Rational gap = mean - coverage.count_at(mid);
        if (gap <= 0) continue;
        const EdgeId e = edge.underlying.edges.front();
        const double amount = cfg.cov_penalty_scale * cov * gap.get_d() *
                              static_cast<double>(graph.weight(e, state.overlay.base())) *
                              static_cast<double>(state.overlay.resolution());
        const auto add = static_cast<Weight>(std::llround(std::max(0.0, amount)));
        if (add == 0) continue;
        state.overlay.add(e, add);
        state.balance[e] = add;
    }
}

PenaltyResult penalty_alternatives(const RoadGraph& graph, NodeId s, NodeId t, const PenaltyConfig& cfg,
                                   const AlternativeGraph* seed, WeightFn main) {
    cfg.check();
    const Path base = shortest_path(graph, s, t, main);
    PenaltyState state(graph, s, t, main, cfg.resolution);
    state.base_distance = base.weight;
    if (seed) {
        if (seed->source != s || seed->target != t)
            throw Error(ErrorCode::MixedEndpoints, "seed graph must share source and target");
        for (EdgeId e : road_edges(*seed)) {
            if (e >= graph.edge_count()) throw Error(ErrorCode::IdOutOfRange, "seed underlying edge id");
            state.add_path(Path{graph.source(e), graph.target(e), {e}, graph.weight(e, main)});
        }
    }

    PenaltyResult result;
    result.base_distance = base.weight;
    while (state.iteration < cfg.max_iterations) {
        ++state.iteration;
        apply_cov_penalty(state, cfg);
        const Path found = shortest_path(state.overlay, s, t);
        Path original = make_path(graph, s, t, found.edges, main);

        Weight fresh = 0;
        for (EdgeId e : original.edges)
            if (!state.ag_edges.count(e)) fresh += graph.weight(e, main);
        const bool short_enough = within_stretch(original.weight, base.weight, cfg.max_stretch);
        const bool different = state.ag_edges.empty() ||
                               (original.weight == 0 ? fresh > 0
                                                     : Rational(fresh) >= Rational(cfg.min_new_fraction) * original.weight);

        const std::size_t hops = apply_rejoin_penalty(state, original, cfg);
        std::size_t increased = 0;
        if (cfg.tube_radius > 0) apply_tube_increase(state, original, cfg, &increased);
        else increased = apply_factor_increase(state, original, cfg);

        const bool accept = short_enough && different;
        if (accept) {
            state.add_path(original);
            result.accepted.push_back(original);
        }
        spdlog::debug("penalty iteration {}: length {} (stretch ok {}, new {}/{}), {} hop edges, {} increased, {}",
                      state.iteration, original.weight, short_enough, fresh, original.weight, hops, increased,
                      accept ? "accepted" : "rejected");
        if (increased == 0) break;
    }
    result.iterations = state.iteration;

    std::vector<AlternativeGraph> parts;
    if (seed) parts.push_back(*seed);
    if (!result.accepted.empty()) parts.push_back(ag_from_paths(graph, result.accepted, s, t, main));
    result.ag = merge(graph, parts, graph.weight_name(main));
    return result;
}

} // namespace altroute
