#pragma once

#include "altroute/alternative_graph.hpp"
#include "altroute/dijkstra.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace altroute {

struct PenaltyConfig {
    /// Multiplicative increase k applied to the latest route, in [1, 2] typically.
    double factor = 1.4;
    /// Rejoin penalty as a fraction of its upper bound (k - 1) * d(s,t).
    double rejoin_fraction = 0.5;
    /// Scales the rejoin penalty by the position (in [0,1]) of the junction
    /// node. Empty means constant 1.
    std::function<double(double)> rejoin_grading;
    std::int64_t max_increases_per_edge = 4;
    /// Successive increases of one edge use 1 + (k - 1) * damping^n. 1 = off.
    double increase_damping = 1.0;
    std::size_t max_iterations = 20;
    /// Weight-distance radius around the route that also gets increased. 0 = off.
    Weight tube_radius = 0;
    /// Exponent of the fall-off 1 + (k - 1) * (1 - d / radius)^decay.
    double tube_decay = 1.0;
    /// Multiplier of the balancing penalty. 0 = off.
    double cov_penalty_scale = 0.0;
    /// Accept a route only within this stretch over d(s,t) (original weights) ...
    double max_stretch = 0.25;
    /// ... and when at least this share of its length is new to the graph.
    double min_new_fraction = 0.2;
    /// Sub-unit resolution of penalised weights.
    Weight resolution = 1000;

    void check() const;
};

struct PenaltyState {
    WeightOverlay overlay;
    std::unordered_map<EdgeId, std::int64_t> increase_count;
    /// Currently accumulated alternative graph, one AGEdge per road edge.
    AlternativeGraph ag;
    std::unordered_set<EdgeId> ag_edges;
    std::unordered_set<NodeId> ag_nodes;
    /// Balancing amounts currently folded into the overlay.
    std::unordered_map<EdgeId, Weight> balance;
    Weight base_distance = 0;
    std::size_t iteration = 0;

    PenaltyState(const RoadGraph& graph, NodeId s, NodeId t, WeightFn main, Weight resolution);

    void add_path(const Path& path);
};

struct PenaltyResult {
    AlternativeGraph ag;          // reduced and validated
    std::vector<Path> accepted;   // weights under the original main weight
    std::size_t iterations = 0;
    Weight base_distance = 0;
};

/// Repeated shortest-path search on penalised weights. The returned graph is
/// the union of the seed (if any) and every accepted route.
PenaltyResult penalty_alternatives(const RoadGraph& graph, NodeId s, NodeId t, const PenaltyConfig& cfg,
                                   const AlternativeGraph* seed = nullptr, WeightFn main = 0);

/// Multiplies the route's edges by the (damped) factor, respecting the
/// per-edge cap. Returns the number of edges whose weight increased.
std::size_t apply_factor_increase(PenaltyState& state, const Path& path, const PenaltyConfig& cfg);

/// Additive penalty on the route's edges that leave or join the current
/// graph. Returns the number of penalised edges.
std::size_t apply_rejoin_penalty(PenaltyState& state, const Path& path, const PenaltyConfig& cfg);

/// Multiplicative increase on every edge whose endpoints both lie closer than
/// tube_radius to the route. Returns the number of edges touched; fills
/// `path_increases` with how many of them belong to the route.
std::size_t apply_tube_increase(PenaltyState& state, const Path& path, const PenaltyConfig& cfg,
                                std::size_t* path_increases = nullptr);

/// Replaces the previous balancing amounts with fresh ones for the current graph.
void apply_cov_penalty(PenaltyState& state, const PenaltyConfig& cfg);

/// Grading functions for the rejoin penalty.
double grade_constant(double pos);
double grade_favor_start(double pos); // 2 - 2 pos
double grade_favor_end(double pos);   // 2 pos

} // namespace altroute
