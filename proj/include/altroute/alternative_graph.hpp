#pragma once

#include "altroute/graph.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace altroute {

/// A route through the road graph: node sequence, edge ids and the per-edge
/// weights under the alternative graph's main weight function.
struct Segment {
    std::vector<NodeId> nodes;
    std::vector<EdgeId> edges;
    std::vector<Weight> steps;

    friend bool operator==(const Segment&, const Segment&) = default;
    friend auto operator<=>(const Segment&, const Segment&) = default;
};

struct AGEdge {
    NodeId from = kNoNode;
    NodeId to = kNoNode;
    Weight weight = 0;
    Segment underlying;

    friend bool operator==(const AGEdge&, const AGEdge&) = default;
};

/// Union of s-t routes. Every edge stands for a road-graph route of the same
/// weight; in a well-formed instance every node and edge lies on some s-t
/// route inside the graph itself. Edges and nodes are kept in canonical order
/// so that equal graphs compare equal.
struct AlternativeGraph {
    NodeId source = kNoNode;
    NodeId target = kNoNode;
    std::string main_weight = "main";
    std::vector<NodeId> nodes;
    std::vector<AGEdge> edges;

    friend bool operator==(const AlternativeGraph&, const AlternativeGraph&) = default;
};

struct Violation {
    enum class Kind {
        MissingEndpoint,
        UnknownNode,
        UnreachableFromSource,
        CannotReachTarget,
        WeightMismatch,
        BrokenUnderlying,
    };
    Kind kind;
    /// Index into AlternativeGraph::edges, or kNoEdge for node violations.
    EdgeId edge = kNoEdge;
    NodeId node = kNoNode;
    std::string message;
};

const char* to_string(Violation::Kind kind) noexcept;

/// Union of the given s-t paths under weight function `main`; one AGEdge per
/// distinct road edge. Throws InvalidPath for paths not running s -> t.
AlternativeGraph ag_from_paths(const RoadGraph& graph, std::span<const Path> paths, NodeId s, NodeId t,
                               WeightFn main = 0);

/// Structural check of an alternative graph on its own (reachability from s,
/// co-reachability to t, weights equal to underlying step sums). An edge that
/// fails reachability is reported once; nodes are reported only when no
/// incident edge already explains them.
std::vector<Violation> validate(const AlternativeGraph& ag);

/// validate() plus a check of every underlying step against the road graph.
std::vector<Violation> validate_against(const RoadGraph& graph, const AlternativeGraph& ag);

/// Contracts every node other than s and t with exactly one incoming and one
/// outgoing edge. Idempotent.
AlternativeGraph reduce(const AlternativeGraph& ag);

/// Inverse view of reduce(): one AGEdge per distinct underlying road edge.
AlternativeGraph expand(const AlternativeGraph& ag);

/// Drops edges (and then nodes) that are not on any s-t walk.
AlternativeGraph prune(const AlternativeGraph& ag);

/// Union of several alternative graphs re-weighted under `main_weight`,
/// pruned back to validity and reduced. Throws MixedEndpoints.
AlternativeGraph merge(const RoadGraph& graph, std::span<const AlternativeGraph> ags,
                       const std::string& main_weight);

/// Number of loop-free s-t paths, saturating at `cap`.
std::uint64_t count_simple_paths(const AlternativeGraph& ag, std::uint64_t cap);

/// Sorts nodes and edges into canonical order.
void canonicalize(AlternativeGraph& ag);

/// Distinct road edge ids used by the graph's underlying routes.
std::vector<EdgeId> road_edges(const AlternativeGraph& ag);

} // namespace altroute
