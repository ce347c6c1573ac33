#pragma once

#include "altroute/dijkstra.hpp"
#include "altroute/graph.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace altroute {

enum class Method { Plateau, Disjoint, Yen, Pareto, Penalty };

const char* to_string(Method m) noexcept;
/// Throws InvalidArgument for unknown names.
Method method_from_string(const std::string& name);

struct Candidate {
    Path path;
    /// Lower is better; plateau: path length - plateau length, otherwise length.
    Weight rank_key = 0;
    Method method = Method::Plateau;
    std::string origin;
};

struct PlateauConfig {
    std::size_t max_candidates = 50;
    /// Split the base shortest path into this many pieces and also search for
    /// plateaus between the piece endpoints. 1 disables.
    std::size_t partitions = 1;
};

/// Plateaus are the maximal chains shared by the forward tree from s and the
/// backward tree from t; each is completed to an s-t route through both
/// trees. The backward search prefers edges of the forward tree's s-t route,
/// so the base shortest path always comes first with rank 0. Routes that
/// would repeat a node are skipped.
std::vector<Candidate> plateau_candidates(const WeightOverlay& weights, NodeId s, NodeId t,
                                          const PlateauConfig& cfg = {});

/// Iterated shortest path with deletion of the used edges.
std::vector<Candidate> disjoint_candidates(const WeightOverlay& weights, NodeId s, NodeId t,
                                           std::size_t max_candidates);

/// Yen's k shortest loopless paths, stopping early once a path exceeds
/// (1 + max_stretch) * d(s,t).
std::vector<Candidate> yen_candidates(const WeightOverlay& weights, NodeId s, NodeId t, std::size_t k,
                                      double max_stretch);

struct ParetoConfig {
    /// Weight functions to optimise; the first one is the route length.
    std::vector<std::string> criteria;
    /// Length slack: a label is dropped if it is at least (1 + epsilon) times
    /// longer than another. nullopt disables the rule.
    std::optional<double> epsilon;
    /// Trade-off constant of the second tightening rule. nullopt disables it;
    /// the rule gets stricter as gamma grows.
    std::optional<double> gamma;
    /// Optional pruning of labels that cannot finish within this stretch.
    std::optional<double> max_stretch;
    std::size_t label_cap = 2'000'000;

    void check() const;
};

struct ParetoResult {
    std::vector<Candidate> candidates;
    bool label_cap_exceeded = false;
    std::size_t labels_created = 0;
};

/// Tightened domination between two cost vectors (index 0 is length).
bool tightened_dominates(std::span<const Weight> a, std::span<const Weight> b, const ParetoConfig& cfg);

/// Multi-criteria label-setting search with tightened domination. Surviving
/// target labels are returned ordered by length.
ParetoResult pareto_candidates(const RoadGraph& graph, NodeId s, NodeId t, const ParetoConfig& cfg);

/// Second criterion derived from a single weight function: an edge costs its
/// weight when it lies on the base shortest path and 0 otherwise. Minimising
/// it favours routes that share little with the shortest one.
std::vector<Weight> shortest_path_overlap_weights(const RoadGraph& graph, NodeId s, NodeId t, WeightFn f = 0);

} // namespace altroute
