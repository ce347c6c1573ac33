#pragma once

#include "altroute/alternative_graph.hpp"
#include "altroute/methods.hpp"
#include "altroute/metrics.hpp"

#include <span>
#include <vector>

namespace altroute {

struct SelectionResult {
    AlternativeGraph ag;
    /// Indices into the candidate list, in the order they were taken.
    std::vector<std::size_t> chosen;
    /// Score after each step; scores[0] belongs to the shortest candidate alone.
    std::vector<Rational> scores;
    Evaluation evaluation;
};

/// Greedy assembly: start from the shortest candidate and keep adding the one
/// that raises the score the most while the graph stays feasible.
/// Throws NoCandidates.
SelectionResult greedy_select(const RoadGraph& graph, NodeId s, NodeId t, std::span<const Candidate> candidates,
                              const ObjectiveConfig& cfg, WeightFn main = 0);

/// Removes whole branches (edges of the reduced graph) while the graph is
/// infeasible (decision-edge cap, route stretch, CoV cap) or a removal improves
/// the score. Never goes below the best single route contained in the graph.
/// Output is reduced.
AlternativeGraph refine(const AlternativeGraph& ag, const ObjectiveConfig& cfg, Weight base_distance);

} // namespace altroute
